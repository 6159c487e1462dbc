"""Tests for bimodules, hom spaces, and fibered tensor products.

Oracles:
  * sympy nullspace/rank computations on independently assembled systems;
  * hand-computed hom and tensor dimensions for column/row modules over
    matrix algebras (Schur-style counts);
  * brute-force equivariance loops.
"""

import random
from fractions import Fraction

import sympy as sm

from centrum.algebra import (
    alg_dual_numbers,
    alg_group_c2,
    alg_k,
    alg_matrix,
    alg_product_k,
    Algebra,
    center,
    is_commutative,
)
from centrum.bimodule import (
    Bimodule,
    BimoduleMap,
    Leaf,
    Node,
    comp_bar,
    direct_sum_bimodules,
    end_algebra,
    free_bimodule,
    hom_coords,
    hom_space,
    identity_bimodule_map,
    induced_map,
    interchange_check,
    middle_relations,
    pentagon_check,
    rebracket_iso,
    regular_bimodule,
    restriction_bimodule,
    assoc_iso,
    tensor_over,
    triangle_check,
    twist_bimodule,
    unit_iso_left,
    unit_iso_right,
    validate_bimodule,
    validate_bimodule_map,
)
from centrum.exactla import QQ, Matrix, random_matrix, is_invertible


def to_sympy(m: Matrix) -> sm.Matrix:
    return sm.Matrix([[sm.Rational(x.numerator, x.denominator) for x in row]
                      for row in m.data]) if m.rows else sm.zeros(0, m.cols)


# ---------------------------------------------------------------------------
# fixtures


def col_bimodule(n: int) -> Bimodule:
    """k^n as a (matrix algebra, k)-bimodule: columns."""
    a = alg_matrix(n)
    k = alg_k()
    f = QQ
    lact = []
    for i in range(n):
        for j in range(n):
            m = Matrix.zeros(n, n, f)
            m.data[i][j] = f.one
            lact.append(m)
    ract = [Matrix.identity(n, f)]
    return Bimodule(a, k, n, lact, ract, name=f"col({n})")


def row_bimodule(n: int) -> Bimodule:
    """k^n as a (k, matrix algebra)-bimodule: rows."""
    a = alg_matrix(n)
    k = alg_k()
    f = QQ
    ract = []
    for i in range(n):
        for j in range(n):
            m = Matrix.zeros(n, n, f)
            m.data[j][i] = f.one  # right action of E_ij maps e_i -> e_j
            ract.append(m)
    lact = [Matrix.identity(n, f)]
    return Bimodule(k, a, n, lact, ract, name=f"row({n})")


def weighted_point_bimodule(weights) -> Bimodule:
    """k as a (k^m, k)-bimodule where factor i acts by the 0/1 weight."""
    a = alg_product_k(len(weights))
    k = alg_k()
    f = QQ
    lact = [Matrix([[f.from_int(w)]], f) for w in weights]
    ract = [Matrix.identity(1, f)]
    return Bimodule(a, k, 1, lact, ract)


def random_twisted_free(a: Algebra, b: Algebra, d: int, rng) -> Bimodule:
    m = free_bimodule(a, b, d)
    while True:
        P = random_matrix(m.dim, m.dim, 2, rng, QQ)
        if is_invertible(P):
            return twist_bimodule(m, P)


# ---------------------------------------------------------------------------
# bimodule axioms


def test_standard_bimodules_valid():
    for bim in [
        regular_bimodule(alg_matrix(2)),
        regular_bimodule(alg_dual_numbers()),
        free_bimodule(alg_group_c2(), alg_product_k(2), 2),
        col_bimodule(2),
        row_bimodule(3),
        weighted_point_bimodule([1, 0]),
        direct_sum_bimodules([col_bimodule(2), col_bimodule(2)]),
    ]:
        assert validate_bimodule(bim) == []


def test_twist_preserves_validity():
    rng = random.Random(7)
    bim = random_twisted_free(alg_dual_numbers(), alg_group_c2(), 1, rng)
    assert validate_bimodule(bim) == []


def test_restriction_bimodule_valid():
    from centrum.algebra import AlgebraMap, unit_map

    f = unit_map(alg_matrix(2))
    bim = restriction_bimodule(f)
    assert validate_bimodule(bim) == []
    assert bim.left.dim == 1 and bim.right.dim == 4 and bim.dim == 4


def test_validate_catches_broken_action():
    bim = col_bimodule(2)
    bad = Bimodule(bim.left, bim.right, bim.dim, bim.lact,
                   [Matrix.from_int_rows([[1, 1], [0, 1]], QQ)])
    assert any("unital" in msg for msg in validate_bimodule(bad))


def test_validate_catches_noncommuting_actions():
    # left and right actions that fail to commute: both act by the same
    # noncommutative algebra on the nose
    a = alg_matrix(2)
    reg = regular_bimodule(a)
    bad = Bimodule(a, a, 4, reg.lact, reg.lact)
    msgs = validate_bimodule(bad)
    assert any("commute" in m for m in msgs) or any("anti" in m for m in msgs)


# ---------------------------------------------------------------------------
# hom spaces


def test_hom_space_regular_is_center():
    # maps A -> A of (A, A)-bimodules are right multiplications by central
    # elements, so the dimension equals dim Z(A)
    for a, zdim in [
        (alg_matrix(2), 1),
        (alg_matrix(3), 1),
        (alg_product_k(3), 3),
        (alg_dual_numbers(), 2),
        (alg_group_c2(), 2),
    ]:
        basis = hom_space(regular_bimodule(a), regular_bimodule(a))
        assert len(basis) == zdim == center(a).dim


def test_hom_space_simple_module():
    basis = hom_space(col_bimodule(2), col_bimodule(2))
    assert len(basis) == 1
    # the unique (up to scale) endomorphism is a multiple of the identity
    assert hom_coords(basis, Matrix.identity(2, QQ)) is not None


def test_hom_space_elements_are_equivariant():
    m = direct_sum_bimodules([col_bimodule(2), col_bimodule(2)])
    basis = hom_space(m, m)
    assert len(basis) == 4  # two copies of a simple: 2x2 matrix algebra
    for b in basis:
        assert validate_bimodule_map(BimoduleMap(m, m, b)) == []


def test_hom_space_disjoint_weights_is_zero():
    m1 = weighted_point_bimodule([1, 0])
    m2 = weighted_point_bimodule([0, 1])
    assert hom_space(m1, m2) == []
    assert hom_space(m1, m1) and len(hom_space(m1, m1)) == 1


def test_hom_space_sympy_cross_check():
    # independently assemble the intertwining conditions in sympy and compare
    # nullspace dimensions, over randomly twisted free bimodules
    rng = random.Random(11)
    for _ in range(5):
        a = alg_group_c2()
        b = alg_product_k(2)
        src = random_twisted_free(a, b, 1, rng)
        tgt = random_twisted_free(a, b, 1, rng)
        n_s, n_t = src.dim, tgt.dim
        unknowns = sm.Matrix(n_t, n_s, lambda i, j: sm.Symbol(f"x_{i}_{j}"))
        eqs = []
        for L_s, L_t in zip(src.lact, tgt.lact):
            diff = unknowns * to_sympy(L_s) - to_sympy(L_t) * unknowns
            eqs.extend(diff)
        for R_s, R_t in zip(src.ract, tgt.ract):
            diff = unknowns * to_sympy(R_s) - to_sympy(R_t) * unknowns
            eqs.extend(diff)
        sols = sm.linsolve(eqs, list(unknowns))
        free_syms = len(list(sols.free_symbols)) if sols else 0
        assert len(hom_space(src, tgt)) == free_syms


def test_end_algebra_of_simple_pair_is_matrix_algebra():
    m = direct_sum_bimodules([col_bimodule(2), col_bimodule(2)])
    end = end_algebra(m)
    assert end.dim == 4
    assert not is_commutative(end.algebra)
    assert center(end.algebra).dim == 1


def test_end_algebra_of_regular_is_center():
    a = alg_dual_numbers()
    end = end_algebra(regular_bimodule(a))
    assert end.dim == 2
    assert is_commutative(end.algebra)


def test_end_algebra_of_free_rank_one():
    # End of A (x) B free of rank one has dimension (dim A)(dim B)
    a = alg_product_k(2)
    end = end_algebra(free_bimodule(a, a, 1))
    assert end.dim == 4
    assert is_commutative(end.algebra)


# ---------------------------------------------------------------------------
# fibered tensor products


def test_tensor_over_scalars_is_full_tensor():
    v = free_bimodule(alg_k(), alg_k(), 2)
    w = free_bimodule(alg_k(), alg_k(), 3)
    t = tensor_over(v, w)
    assert t.dim == 6


def test_row_tensor_col_is_scalar_line():
    t = tensor_over(row_bimodule(2), col_bimodule(2))
    assert t.dim == 1
    # diagonal pure tensors agree and are nonzero; off-diagonal vanish
    e0, e1 = [QQ.one, QQ.zero], [QQ.zero, QQ.one]
    assert t.pure(e0, e0) == t.pure(e1, e1)
    assert any(t.pure(e0, e0))
    assert not any(t.pure(e0, e1))


def test_col_tensor_row_is_matrix_algebra_bimodule():
    t = tensor_over(col_bimodule(2), row_bimodule(2))
    assert t.dim == 4
    # as an (M2, M2)-bimodule this is the regular one: one-dimensional hom
    # space with an invertible representative
    basis = hom_space(regular_bimodule(alg_matrix(2)), t.product)
    assert len(basis) == 1
    assert is_invertible(basis[0])


def test_tensor_dim_sympy_cross_check():
    rng = random.Random(23)
    for _ in range(4):
        b = alg_group_c2()
        m = random_twisted_free(alg_k(), b, 1, rng)
        n = random_twisted_free(b, alg_product_k(2), 1, rng)
        rel = middle_relations(m.dim, n.dim, m.ract, n.lact, QQ)
        t = tensor_over(m, n)
        assert t.dim == m.dim * n.dim - to_sympy(rel).rank()
        assert validate_bimodule(t.product) == []


def test_pure_respects_middle_relations():
    b = alg_group_c2()
    m = free_bimodule(alg_k(), b, 1)
    n = free_bimodule(b, alg_k(), 1)
    t = tensor_over(m, n)
    rng = random.Random(5)
    for _ in range(10):
        mv = [QQ.from_int(rng.randint(-3, 3)) for _ in range(m.dim)]
        nv = [QQ.from_int(rng.randint(-3, 3)) for _ in range(n.dim)]
        bv = [QQ.from_int(rng.randint(-3, 3)) for _ in range(b.dim)]
        left = t.pure(m.ract_of(bv).apply(mv), nv)
        right = t.pure(mv, n.lact_of(bv).apply(nv))
        assert left == right


def test_induced_map_descends_and_composes():
    m = direct_sum_bimodules([col_bimodule(2), col_bimodule(2)])
    n = row_bimodule(2)
    t = tensor_over(m, n)
    end_m = end_algebra(m)
    for coords in ([1, 0, 0, 1], [2, 1, 1, 1]):
        xi = BimoduleMap(m, m, end_m.matrix_of([QQ.from_int(c) for c in coords]))
        ind = induced_map(xi, identity_bimodule_map(n), t, t)
        assert validate_bimodule_map(ind) == []


# ---------------------------------------------------------------------------
# unit and associativity isomorphisms


def test_unit_iso_left_and_right():
    a = alg_matrix(2)
    m = col_bimodule(2)
    t = tensor_over(regular_bimodule(a), m)
    iso = unit_iso_left(t)
    assert validate_bimodule_map(iso) == []
    d = alg_dual_numbers()
    n = free_bimodule(alg_group_c2(), d, 1)
    t2 = tensor_over(n, regular_bimodule(d))
    iso2 = unit_iso_right(t2)
    assert validate_bimodule_map(iso2) == []


def test_assoc_iso_small_chain():
    tl, tr, iso, inv = assoc_iso(col_bimodule(2), row_bimodule(2), col_bimodule(2))
    assert tl.bim.dim == tr.bim.dim == 2
    assert iso.mat @ inv.mat == Matrix.identity(tr.bim.dim, QQ)


def test_assoc_iso_with_nontrivial_middles():
    b = alg_group_c2()
    c = alg_dual_numbers()
    m = free_bimodule(alg_k(), b, 1)
    n = free_bimodule(b, c, 1)
    p = free_bimodule(c, alg_k(), 1)
    tl, tr, iso, inv = assoc_iso(m, n, p)
    assert tl.bim.dim == tr.bim.dim
    assert iso.mat @ inv.mat == Matrix.identity(tr.bim.dim, QQ)


def test_pentagon_matrix_chain():
    assert pentagon_check(
        col_bimodule(2), row_bimodule(2), col_bimodule(2), row_bimodule(2)
    )


def test_pentagon_free_chain():
    b = alg_group_c2()
    bims = [
        free_bimodule(alg_k(), b, 1),
        regular_bimodule(b),
        free_bimodule(b, alg_k(), 1),
        free_bimodule(alg_k(), alg_k(), 2),
    ]
    assert pentagon_check(*bims)


def test_triangle():
    assert triangle_check(col_bimodule(2), row_bimodule(2))
    b = alg_dual_numbers()
    assert triangle_check(free_bimodule(alg_k(), b, 1), free_bimodule(b, alg_k(), 1))


def test_interchange():
    m = direct_sum_bimodules([col_bimodule(2), col_bimodule(2)])
    n = direct_sum_bimodules([row_bimodule(2), row_bimodule(2)])
    end_m = end_algebra(m)
    end_n = end_algebra(n)
    rng = random.Random(3)
    for _ in range(5):
        xi = BimoduleMap(
            m, m, end_m.matrix_of([QQ.from_int(rng.randint(-2, 2))
                                   for _ in range(end_m.dim)])
        )
        zeta = BimoduleMap(
            n, n, end_n.matrix_of([QQ.from_int(rng.randint(-2, 2))
                                   for _ in range(end_n.dim)])
        )
        assert interchange_check(xi, zeta)


# ---------------------------------------------------------------------------
# descended composition


def test_comp_bar_simple_chain_iso():
    c = col_bimodule(2)
    res = comp_bar(c, c, c)
    assert res.mat.shape == (1, 1)
    assert res.is_iso


def test_comp_bar_regular_chain_iso():
    r = regular_bimodule(alg_dual_numbers())
    res = comp_bar(r, r, r)
    assert res.mat.shape == (2, 2)
    assert res.is_iso


def test_comp_bar_through_vector_space():
    # [N,P] (x)_{[N,N]} [M,N] with M = P = k and N = k^2 over (k, k):
    # rows tensor columns over a matrix algebra, composition is the pairing
    k = alg_k()
    m = free_bimodule(k, k, 1)
    n = free_bimodule(k, k, 2)
    res = comp_bar(m, n, m)
    assert res.tensor.dim == 1
    assert res.is_iso


def test_comp_bar_not_iso_for_disjoint_weights():
    m = weighted_point_bimodule([1, 0])
    n = weighted_point_bimodule([0, 1])
    res = comp_bar(m, n, m)
    assert res.tensor.dim == 0
    assert res.mat.shape == (1, 0)
    assert not res.is_iso


def test_comp_bar_agrees_with_plain_composition():
    m = direct_sum_bimodules([col_bimodule(2), col_bimodule(2)])
    res = comp_bar(m, m, m)
    assert res.is_iso
    # comp_bar o rho == composition on every pair of basis maps
    for i, bi in enumerate(res.basis_np):
        for j, bj in enumerate(res.basis_mn):
            f = QQ
            flat = [f.zero] * (len(res.basis_np) * len(res.basis_mn))
            flat[i * len(res.basis_mn) + j] = f.one
            cls = res.tensor.quot.project(flat)
            expect = hom_coords(res.basis_mp, bi @ bj)
            assert res.mat.apply(cls) == expect
