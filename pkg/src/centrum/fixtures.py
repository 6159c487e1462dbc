"""Reusable corpus builders and seeded random generators: commutative
algebras, cospans with central legs, 2-diagram grids, bimodules, and
composable chains of algebra maps.

Everything is deterministic given the caller's random.Random instance.
"""

from __future__ import annotations

from .algebra import (
    Algebra,
    AlgebraMap,
    alg_dual_numbers,
    alg_group_c2,
    alg_k,
    alg_matrix,
    alg_product_k,
    compose_maps,
    identity_map,
    matrix_algebra,
    product_algebra,
    tensor_algebra,
    unit_map,
)
from .bimodule import (
    Bimodule,
    BimoduleMap,
    direct_sum_bimodules,
    free_bimodule,
    hom_space,
    regular_bimodule,
    twist_bimodule,
)
from .cospanbicat import (
    Cospan,
    TwoDiagram,
    cospan_morphism_2diagram,
    identity_2diagram,
    identity_cospan,
)
from .exactla import QQ, Matrix, inverse, is_invertible, random_matrix


# ---------------------------------------------------------------------------
# commutative algebras


def commutative_pool(field=QQ):
    """Small commutative algebras: a field line, split and non-split
    two-dimensional algebras, and a three-dimensional split one."""
    return [
        alg_k(field),
        alg_product_k(2, field),
        alg_dual_numbers(field),
        alg_group_c2(field),
        alg_product_k(3, field),
    ]


def random_commutative(rng, field=QQ, max_dim=3) -> Algebra:
    pool = [a for a in commutative_pool(field) if a.dim <= max_dim]
    return pool[rng.randrange(len(pool))]


# ---------------------------------------------------------------------------
# cospans


def tensor_product_cospan(a: Algebra, b: Algebra) -> Cospan:
    """A -> A (x) B <- B with the outer inclusions; legs are central because
    the tensor factors commute and A, B are commutative."""
    apex = tensor_algebra(a, b)
    f = a.field
    la_cols = []
    for j in range(a.dim):
        col = [f.zero] * apex.dim
        for kzi, u in enumerate(b.unit):
            if u:
                col[j * b.dim + kzi] = u
        la_cols.append(col)
    lb_cols = []
    for j in range(b.dim):
        col = [f.zero] * apex.dim
        for i, u in enumerate(a.unit):
            if u:
                col[i * b.dim + j] = u
        lb_cols.append(col)
    leg_a = AlgebraMap(a, apex, Matrix.from_columns(la_cols, apex.dim, f))
    leg_b = AlgebraMap(b, apex, Matrix.from_columns(lb_cols, apex.dim, f))
    return Cospan(leg_a, leg_b)


def scalar_embedding(base: Algebra, ext: Algebra) -> AlgebraMap:
    """base -> base (x) ext, x -> x (x) 1."""
    apex = tensor_algebra(base, ext)
    f = base.field
    cols = []
    for j in range(base.dim):
        col = [f.zero] * apex.dim
        for kzi, u in enumerate(ext.unit):
            if u:
                col[j * ext.dim + kzi] = u
        cols.append(col)
    return AlgebraMap(base, apex, Matrix.from_columns(cols, apex.dim, f))


def extend_cospan(c: Cospan, ext: Algebra):
    """Tensor the apex with a commutative algebra; returns the extended
    cospan and the induced 2-diagram from c to it."""
    h = scalar_embedding(c.apex, ext)
    new = Cospan(compose_maps(h, c.leg_a), compose_maps(h, c.leg_b))
    return new, cospan_morphism_2diagram(c, new, h)


def matrix_cospan(a: Algebra, b: Algebra, n: int) -> Cospan:
    """A -> M_n(A (x) B) <- B with scalar-diagonal legs; the apex is not
    commutative for n > 1 but the leg images are central."""
    base = tensor_algebra(a, b)
    apex = matrix_algebra(base, n)
    f = a.field
    d = base.dim

    def scalar_col(vec):
        col = [f.zero] * apex.dim
        for i in range(n):
            for kzi, u in enumerate(vec):
                if u:
                    col[(i * n + i) * d + kzi] = u
        return col

    tp = tensor_product_cospan(a, b)
    la_cols = [scalar_col(tp.leg_a.mat.col_list(j)) for j in range(a.dim)]
    lb_cols = [scalar_col(tp.leg_b.mat.col_list(j)) for j in range(b.dim)]
    leg_a = AlgebraMap(a, apex, Matrix.from_columns(la_cols, apex.dim, f))
    leg_b = AlgebraMap(b, apex, Matrix.from_columns(lb_cols, apex.dim, f))
    return Cospan(leg_a, leg_b)


def random_cospan(a: Algebra, b: Algebra, rng, allow_matrix=True) -> Cospan:
    roll = rng.randrange(3 if allow_matrix else 2)
    if roll == 0:
        return tensor_product_cospan(a, b)
    if roll == 1:
        ext = random_commutative(rng, a.field, max_dim=2)
        return extend_cospan(tensor_product_cospan(a, b), ext)[0]
    return matrix_cospan(a, b, 2)


# ---------------------------------------------------------------------------
# 2-diagrams


def direct_sum_2diagrams(parts) -> TwoDiagram:
    """Direct sum of 2-diagrams between the same pair of cospans."""
    src, tgt = parts[0].src, parts[0].tgt
    M = direct_sum_bimodules([p.M for p in parts])
    f = parts[0].f
    g = parts[0].g
    for p in parts[1:]:
        f = f.vstack(p.f)
        g = g.vstack(p.g)
    return TwoDiagram(src, tgt, M, f, g)


def twist_2diagram(d: TwoDiagram, P: Matrix) -> TwoDiagram:
    """Transport a 2-diagram along an invertible change of basis of M."""
    return TwoDiagram(d.src, d.tgt, twist_bimodule(d.M, P), P @ d.f, P @ d.g)


def random_invertible(dim: int, rng, field=QQ, bound=2) -> Matrix:
    while True:
        P = random_matrix(dim, dim, bound, rng, field)
        if is_invertible(P):
            return P


def random_signed_permutation(dim: int, rng, field=QQ) -> Matrix:
    """A uniformly random monomial matrix with entries in {1, -1}: invertible
    by construction and sparse, so twists by it stay cheap exactly."""
    perm = list(range(dim))
    rng.shuffle(perm)
    rows = [[0] * dim for _ in range(dim)]
    for i, j in enumerate(perm):
        rows[i][j] = 1 if rng.random() < 0.5 else -1
    return Matrix.from_int_rows(rows, field)


def random_2diagram(src: Cospan, rng, extend_by=None) -> TwoDiagram:
    """A random 2-diagram out of src: either the identity or an extension
    morphism diagram, optionally twisted."""
    if extend_by is None and rng.random() < 0.4:
        d = identity_2diagram(src)
    else:
        ext = extend_by if extend_by is not None else random_commutative(rng, src.apex.field, max_dim=2)
        _, d = extend_cospan(src, ext)
    if rng.random() < 0.5:
        d = twist_2diagram(d, random_invertible(d.M.dim, rng, d.M.field))
    return d


def random_vertical_pair(base: Cospan, rng, max_ext=2):
    """Two stacked 2-diagrams base => mid => top, kept small."""
    exts = [a for a in commutative_pool(base.apex.field) if a.dim <= max_ext]
    lower = random_2diagram(base, rng, extend_by=exts[rng.randrange(len(exts))])
    upper = random_2diagram(lower.tgt, rng)
    return upper, lower


def random_interchanger_grid(rng, field=QQ):
    """A 2x2 grid (d1p, d1, d2p, d2) sized for interchanger construction:
    left column over (k, B), right column over (B, k), with B of dimension
    at most 2 and at most one proper extension per column."""
    k = alg_k(field)
    b = random_commutative(rng, field, max_dim=2)
    s1 = tensor_product_cospan(k, b)
    t1 = tensor_product_cospan(b, k)
    exts = [a for a in commutative_pool(field) if a.dim == 2]
    ext_l = exts[rng.randrange(len(exts))]
    ext_r = exts[rng.randrange(len(exts))]
    if rng.random() < 0.5:
        _, d1 = extend_cospan(s1, ext_l)
        d1p = identity_2diagram(d1.tgt)
    else:
        d1 = identity_2diagram(s1)
        _, d1p = extend_cospan(s1, ext_l)
    if rng.random() < 0.5:
        _, d2 = extend_cospan(t1, ext_r)
        d2p = identity_2diagram(d2.tgt)
    else:
        d2 = identity_2diagram(t1)
        _, d2p = extend_cospan(t1, ext_r)
    return d1p, d1, d2p, d2


# ---------------------------------------------------------------------------
# bimodules


def random_bimodule(a: Algebra, b: Algebra, rng, max_rank=2, twist=True) -> Bimodule:
    """A randomly twisted direct sum of free pieces (and the regular piece
    when the two algebras coincide on the nose)."""
    parts = []
    for _ in range(rng.randrange(1, max_rank + 1)):
        if a.equal_on_the_nose(b) and rng.random() < 0.4:
            parts.append(regular_bimodule(a))
        else:
            parts.append(free_bimodule(a, b, 1))
    m = parts[0] if len(parts) == 1 else direct_sum_bimodules(parts)
    if twist:
        m = twist_bimodule(m, random_invertible(m.dim, rng, a.field))
    return m


def _elementary(n, i, j, field):
    rows = [[1 if (r == i and c == j) else 0 for c in range(n)] for r in range(n)]
    return Matrix.from_int_rows(rows, field)


def col_bimodule(n: int, field=QQ) -> Bimodule:
    """Column vectors as the simple (M_n, k)-bimodule."""
    mn = alg_matrix(n, field)
    k = alg_k(field)
    lact = [_elementary(n, i, j, field) for i in range(n) for j in range(n)]
    return Bimodule(mn, k, n, lact, [Matrix.identity(n, field)], name=f"col{n}")


def row_bimodule(n: int, field=QQ) -> Bimodule:
    """Row vectors as the simple (k, M_n)-bimodule."""
    mn = alg_matrix(n, field)
    k = alg_k(field)
    ract = [_elementary(n, j, i, field) for i in range(n) for j in range(n)]
    return Bimodule(k, mn, n, [Matrix.identity(n, field)], ract, name=f"row{n}")


def random_hom_element(src: Bimodule, tgt: Bimodule, rng, bound=2):
    """A random equivariant map src -> tgt (zero if the hom space is zero)."""
    basis = hom_space(src, tgt)
    f = src.field
    if not basis:
        return BimoduleMap(src, tgt, Matrix.zeros(tgt.dim, src.dim, f))
    out = Matrix.zeros(tgt.dim, src.dim, f)
    for bmat in basis:
        c = f.from_int(rng.randint(-bound, bound))
        if c:
            out = out + bmat.scale(c)
    return BimoduleMap(src, tgt, out)


# ---------------------------------------------------------------------------
# algebra maps and chains


def conjugation_automorphism(a: Algebra, P: Matrix) -> AlgebraMap:
    """x -> P x P^{-1} on a matrix algebra presented on matrix units."""
    Pinv = inverse(P)
    assert Pinv is not None
    mat = P.kron(Pinv.transpose())
    return AlgebraMap(a, a, mat)


def diagonal_inclusion(n: int, field=QQ) -> AlgebraMap:
    """k^n -> M_n onto the diagonal matrix units."""
    kn = alg_product_k(n, field)
    mn = alg_matrix(n, field)
    cols = []
    for p in range(n):
        col = [field.zero] * mn.dim
        col[p * n + p] = field.one
        cols.append(col)
    return AlgebraMap(kn, mn, Matrix.from_columns(cols, mn.dim, field))


def algebra_map_pool(field=QQ):
    """Composable algebra maps over a shared family of small algebras."""
    k = alg_k(field)
    k2 = alg_product_k(2, field)
    m2 = alg_matrix(2, field)
    dual = alg_dual_numbers(field)
    c2 = alg_group_c2(field)
    maps = [
        unit_map(m2),
        unit_map(dual),
        unit_map(c2),
        unit_map(k2),
        # split idempotents into diagonal matrix units
        AlgebraMap(k2, m2, Matrix.from_columns(
            [[field.one, field.zero, field.zero, field.zero],
             [field.zero, field.zero, field.zero, field.one]], 4, field)),
        # group generator to the swap matrix
        AlgebraMap(c2, m2, Matrix.from_columns(
            [[field.one, field.zero, field.zero, field.one],
             [field.zero, field.one, field.one, field.zero]], 4, field)),
        # nilpotent to a strictly upper triangular matrix
        AlgebraMap(dual, m2, Matrix.from_columns(
            [[field.one, field.zero, field.zero, field.one],
             [field.zero, field.one, field.zero, field.zero]], 4, field)),
        # swap the two points
        AlgebraMap(k2, k2, Matrix.from_int_rows([[0, 1], [1, 0]], field)),
        # sign of the group generator
        AlgebraMap(c2, c2, Matrix.from_int_rows([[1, 0], [0, -1]], field)),
        # rescale the nilpotent
        AlgebraMap(dual, dual, Matrix.from_int_rows([[1, 0], [0, 2]], field)),
        conjugation_automorphism(m2, Matrix.from_int_rows([[1, 1], [0, 1]], field)),
        identity_map(m2),
        identity_map(dual),
    ]
    return maps


def random_map_chain(rng, length=2, field=QQ, pool=None):
    """A composable chain [f1, f2, ...] with f_{i+1}.src is f_i.tgt."""
    maps = pool if pool is not None else algebra_map_pool(field)
    chain = [maps[rng.randrange(len(maps))]]
    while len(chain) < length:
        nxt = [m for m in maps if m.src is chain[-1].tgt]
        if not nxt:
            chain = [maps[rng.randrange(len(maps))]]
            continue
        chain.append(nxt[rng.randrange(len(nxt))])
    return chain


# ---------------------------------------------------------------------------
# semisimple corpus


def semisimple_pool(field=QQ):
    """Products of matrix algebras (separable over the rationals)."""
    return [
        alg_k(field),
        alg_product_k(2, field),
        alg_matrix(2, field),
        product_algebra([alg_k(field), alg_matrix(2, field)]),
    ]
