"""Exact linear algebra: unit tests plus sympy cross-checks.

sympy's Rational matrices are an independent implementation of rank/nullspace/
inverse; agreeing with them on random instances is the oracle for this layer.
"""

import random
from fractions import Fraction

import pytest
import sympy

from centrum.exactla import (
    QQ,
    Matrix,
    PrimeField,
    Quotient,
    Subspace,
    cokernel,
    column_echelon,
    column_space,
    field_from_name,
    inverse,
    is_invertible,
    kernel,
    quotient_induced,
    random_matrix,
    random_point,
    rank,
    rref,
    solve,
    solve_matrix,
    tensor_permutation,
)


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(
        [[sympy.Rational(a.numerator, a.denominator) for a in row] for row in m.data]
    )


def test_field_parsing():
    assert field_from_name("rational") is QQ
    gf = field_from_name("gfp:7")
    assert isinstance(gf, PrimeField) and gf.p == 7
    with pytest.raises(ValueError):
        field_from_name("gfp:8")
    with pytest.raises(ValueError):
        field_from_name("real")
    assert QQ.parse("-3/4") == Fraction(-3, 4)
    assert QQ.fmt(Fraction(-3, 4)) == "-3/4"
    assert QQ.fmt(Fraction(6, 3)) == "2"


def test_matrix_basics():
    a = Matrix.from_int_rows([[1, 2], [3, 4]], QQ)
    b = Matrix.from_int_rows([[0, 1], [1, 0]], QQ)
    assert (a @ b) == Matrix.from_int_rows([[2, 1], [4, 3]], QQ)
    assert (a + b - b) == a
    assert a.transpose().transpose() == a
    assert a.apply([QQ.one, QQ.zero]) == [Fraction(1), Fraction(3)]
    i2 = Matrix.identity(2, QQ)
    assert (a @ i2) == a
    k = a.kron(i2)
    assert k.shape == (4, 4)
    # left factor major: (i,k),(j,l) entry is a[i][j] * I[k][l]
    assert k.data[0][0] == 1 and k.data[1][1] == 1
    assert k.data[0][2] == 2 and k.data[2][0] == 3


def test_rref_small():
    m = Matrix.from_int_rows([[1, 2, 3], [2, 4, 6], [1, 1, 1]], QQ)
    R, piv = rref(m)
    assert piv == [0, 1]
    assert rank(m) == 2
    assert R.data[0][0] == 1 and R.data[1][1] == 1
    # fully reduced: pivot columns are standard basis vectors
    assert R.data[0][1] == 0


@pytest.mark.parametrize("seed", range(25))
def test_rank_kernel_match_sympy(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 6)
    c = rng.randint(1, 6)
    m = random_matrix(r, c, 4, rng, QQ)
    sm = to_sympy(m)
    assert rank(m) == sm.rank()
    ker = kernel(m)
    assert ker.dim == c - sm.rank()
    # every basis vector really is in the kernel
    for col in ker.basis.columns():
        assert all(not x for x in m.apply(col))
    # sympy nullspace spans the same space
    sns = sm.nullspace()
    for v in sns:
        vec = [Fraction(x.p, x.q) for x in v]
        assert ker.contains(vec)


@pytest.mark.parametrize("seed", range(15))
def test_solve_and_inverse_match_sympy(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(1, 5)
    m = random_matrix(n, n, 4, rng, QQ)
    inv = inverse(m)
    sm = to_sympy(m)
    if sm.det() == 0:
        assert inv is None
        assert not is_invertible(m)
    else:
        assert inv is not None
        assert to_sympy(inv) == sm.inv()
        b = random_point(n, 5, rng, QQ)
        x = solve(m, b)
        assert x is not None and m.apply(x) == b


def test_solve_inconsistent_and_free_vars():
    m = Matrix.from_int_rows([[1, 1], [1, 1]], QQ)
    assert solve(m, [QQ.one, QQ.zero]) is None
    # underdetermined: free variables are zeroed
    m2 = Matrix.from_int_rows([[1, 1]], QQ)
    x = solve(m2, [Fraction(5)])
    assert x == [Fraction(5), Fraction(0)]
    # solve_matrix rejects if any column inconsistent
    B = Matrix.from_int_rows([[1, 1], [1, 0]], QQ)
    assert solve_matrix(m, B) is None


def test_subspace_canonical_equality():
    # same plane presented by two different spanning sets
    b1 = Matrix.from_int_rows([[1, 0], [0, 1], [1, 1]], QQ)
    b2 = Matrix.from_int_rows([[2, 1], [2, 3], [4, 4]], QQ)
    s1 = Subspace(3, b1, QQ)
    s2 = Subspace(3, b2, QQ)
    assert s1 == s2
    assert s1.basis == column_echelon(b2)
    assert s1.dim == 2
    assert s1.contains([Fraction(3), Fraction(5), Fraction(8)])
    assert not s1.contains([Fraction(0), Fraction(0), Fraction(1)])


@pytest.mark.parametrize("seed", range(25))
def test_cokernel_witnesses(seed):
    rng = random.Random(200 + seed)
    n = rng.randint(1, 7)
    r = rng.randint(0, 7)
    rel = random_matrix(n, r, 3, rng, QQ) if r else Matrix.zeros(n, 0, QQ)
    q = cokernel(rel)
    d = rank(rel) if r else 0
    assert q.dim == n - d
    assert (q.proj @ q.sect) == Matrix.identity(q.dim, QQ)
    assert (q.proj @ q.relations).is_zero()
    if r:
        assert (q.proj @ rel).is_zero()
    # proj is surjective and ker proj == relation space
    assert rank(q.proj) == q.dim
    assert kernel(q.proj) == column_space(rel if r else Matrix.zeros(n, 0, QQ))
    # section embeds standard basis vectors only
    for j in range(q.sect.cols):
        col = q.sect.col_list(j)
        assert sum(1 for x in col if x) == 1


def test_quotient_induced_descends():
    # quotient of k^2 by span(e0 - e1); the swap map descends, projection to e0 does not
    rel = Matrix.from_int_rows([[1], [-1]], QQ)
    q = cokernel(rel)
    assert q.dim == 1
    swap = Matrix.from_int_rows([[0, 1], [1, 0]], QQ)
    ind = quotient_induced(q, swap, q)
    assert ind == Matrix.identity(1, QQ)
    bad = Matrix.from_int_rows([[1, 0], [0, 0]], QQ)
    with pytest.raises(ValueError):
        quotient_induced(q, bad, q)


def test_random_point_reproducible():
    a = random_point(6, 10, random.Random(42), QQ)
    b = random_point(6, 10, random.Random(42), QQ)
    assert a == b
    assert all(-10 <= x <= 10 for x in a)


def test_tensor_permutation_middle_swap():
    # swap the middle two slots of a 4-fold tensor
    dims = [2, 3, 2, 2]
    P = tensor_permutation(dims, [0, 2, 1, 3], QQ)
    Pinv = tensor_permutation([2, 2, 3, 2], [0, 2, 1, 3], QQ)
    assert (Pinv @ P) == Matrix.identity(24, QQ)
    # spot check: source index (1,2,0,1) -> target (1,0,2,1)
    src = ((1 * 3 + 2) * 2 + 0) * 2 + 1
    tgt = ((1 * 2 + 0) * 3 + 2) * 2 + 1
    assert P.data[tgt][src] == 1


def test_prime_field_linear_algebra():
    gf = PrimeField(5)
    m = Matrix.from_int_rows([[1, 2], [3, 4]], gf)
    inv = inverse(m)
    assert inv is not None
    assert (m @ inv) == Matrix.identity(2, gf)
    sing = Matrix.from_int_rows([[1, 2], [2, 4]], gf)
    assert inverse(sing) is None
    assert kernel(sing).dim == 1
