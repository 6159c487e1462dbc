"""Bimodules over pairs of algebras, their hom spaces, and fibered tensor
products M (x)_B N realized as explicit quotients with projection/section
witnesses.

Conventions:
  * actions are matrices acting on column vectors from the left;
  * lact[i] is the action of the i-th basis vector of the left algebra and is
    multiplicative (lact[e_i e_j] = lact[i] lact[j]);
  * ract[j] is the action of the j-th basis vector of the right algebra and is
    anti-multiplicative as a matrix family (ract[e_i e_j] = ract[j] ract[i]),
    which is what "right action" means once maps act from the left;
  * tensor products index the left factor major: (i, j) -> i * dimN + j.

Every descended map (induced maps, tensor actions, descended composition)
verifies the coequalizer property exactly at construction; failure raises.
"""

from __future__ import annotations

from .algebra import Algebra, AlgebraMap
from .exactla import (
    Matrix,
    cokernel,
    inverse,
    kernel,
    quotient_induced,
    solve,
    stack_rows,
)


class Bimodule:
    """An (A, B)-bimodule: left action of A, right action of B, commuting."""

    __slots__ = ("left", "right", "dim", "lact", "ract", "name")

    def __init__(self, left: Algebra, right: Algebra, dim: int, lact, ract, name=""):
        assert left.field == right.field
        assert len(lact) == left.dim and len(ract) == right.dim
        for m in list(lact) + list(ract):
            assert m.shape == (dim, dim)
        self.left = left
        self.right = right
        self.dim = dim
        self.lact = list(lact)
        self.ract = list(ract)
        self.name = name

    @property
    def field(self):
        return self.left.field

    def lact_of(self, x) -> Matrix:
        """Action matrix of an element x of the left algebra."""
        out = Matrix.zeros(self.dim, self.dim, self.field)
        for i, xi in enumerate(x):
            if xi:
                out = out + self.lact[i].scale(xi)
        return out

    def ract_of(self, y) -> Matrix:
        """Action matrix of an element y of the right algebra."""
        out = Matrix.zeros(self.dim, self.dim, self.field)
        for j, yj in enumerate(y):
            if yj:
                out = out + self.ract[j].scale(yj)
        return out

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"Bimodule(dim {self.dim}{tag})"


def validate_bimodule(m: Bimodule) -> list[str]:
    """Violations of the bimodule axioms; empty == valid."""
    out = []
    A, B = m.left, m.right
    I = Matrix.identity(m.dim, m.field)
    if m.lact_of(A.unit) != I:
        out.append("left action is not unital")
    if m.ract_of(B.unit) != I:
        out.append("right action is not unital")
    for i in range(A.dim):
        for j in range(A.dim):
            prod = m.lact_of(A.multiply(A.basis_vector(i), A.basis_vector(j)))
            if prod != m.lact[i] @ m.lact[j]:
                out.append(f"left action not multiplicative at (e{i}, e{j})")
    for i in range(B.dim):
        for j in range(B.dim):
            prod = m.ract_of(B.multiply(B.basis_vector(i), B.basis_vector(j)))
            if prod != m.ract[j] @ m.ract[i]:
                out.append(f"right action not anti-multiplicative at (e{i}, e{j})")
    for i in range(A.dim):
        for j in range(B.dim):
            if m.lact[i] @ m.ract[j] != m.ract[j] @ m.lact[i]:
                out.append(f"actions do not commute at (left e{i}, right e{j})")
    return out


# ---------------------------------------------------------------------------
# standard bimodules


def regular_bimodule(a: Algebra) -> Bimodule:
    """A as an (A, A)-bimodule by multiplication."""
    lact = [a.left_mult(a.basis_vector(i)) for i in range(a.dim)]
    ract = [a.right_mult(a.basis_vector(i)) for i in range(a.dim)]
    return Bimodule(a, a, a.dim, lact, ract, name=f"reg({a.name})" if a.name else "")


def restriction_bimodule(f: AlgebraMap) -> Bimodule:
    """The target of f as a (src, tgt)-bimodule: the source acts through f."""
    b = f.tgt
    lact = [b.left_mult(f.apply(f.src.basis_vector(i))) for i in range(f.src.dim)]
    ract = [b.right_mult(b.basis_vector(j)) for j in range(b.dim)]
    return Bimodule(f.src, b, b.dim, lact, ract)


def corestriction_bimodule(f: AlgebraMap) -> Bimodule:
    """The target of f as a (tgt, src)-bimodule: the source acts through f
    on the right."""
    b = f.tgt
    lact = [b.left_mult(b.basis_vector(i)) for i in range(b.dim)]
    ract = [b.right_mult(f.apply(f.src.basis_vector(j))) for j in range(f.src.dim)]
    return Bimodule(b, f.src, b.dim, lact, ract)


def free_bimodule(a: Algebra, b: Algebra, d: int) -> Bimodule:
    """A (x) k^d (x) B with outer multiplication actions."""
    Ib = Matrix.identity(b.dim, a.field)
    Id = Matrix.identity(d, a.field)
    Ia = Matrix.identity(a.dim, a.field)
    lact = [a.left_mult(a.basis_vector(i)).kron(Id).kron(Ib) for i in range(a.dim)]
    ract = [Ia.kron(Id).kron(b.right_mult(b.basis_vector(j))) for j in range(b.dim)]
    return Bimodule(a, b, a.dim * d * b.dim, lact, ract)


def direct_sum_bimodules(parts) -> Bimodule:
    """Direct sum of bimodules over the same pair of algebras."""
    a, b = parts[0].left, parts[0].right
    f = parts[0].field
    assert all(
        (p.left is a or p.left.equal_on_the_nose(a))
        and (p.right is b or p.right.equal_on_the_nose(b))
        for p in parts
    )
    dim = sum(p.dim for p in parts)

    def block_diag(mats):
        out = Matrix.zeros(dim, dim, f)
        off = 0
        for m in mats:
            for i in range(m.rows):
                for j in range(m.cols):
                    out.data[off + i][off + j] = m.data[i][j]
            off += m.rows
        return out

    lact = [block_diag([p.lact[i] for p in parts]) for i in range(a.dim)]
    ract = [block_diag([p.ract[j] for p in parts]) for j in range(b.dim)]
    return Bimodule(a, b, dim, lact, ract)


def twist_bimodule(m: Bimodule, P: Matrix) -> Bimodule:
    """Transport the actions along an invertible change of basis P."""
    Pinv = inverse(P)
    assert Pinv is not None, "change of basis must be invertible"
    lact = [P @ L @ Pinv for L in m.lact]
    ract = [P @ R @ Pinv for R in m.ract]
    return Bimodule(m.left, m.right, m.dim, lact, ract)


# ---------------------------------------------------------------------------
# bimodule maps and hom spaces


class BimoduleMap:
    """A linear map of bimodules over the same pair, as a matrix."""

    __slots__ = ("src", "tgt", "mat")

    def __init__(self, src: Bimodule, tgt: Bimodule, mat: Matrix):
        assert mat.rows == tgt.dim and mat.cols == src.dim
        self.src = src
        self.tgt = tgt
        self.mat = mat

    def apply(self, vec):
        return self.mat.apply(vec)

    def __repr__(self):
        return f"BimoduleMap({self.src.dim} -> {self.tgt.dim})"


def identity_bimodule_map(m: Bimodule) -> BimoduleMap:
    return BimoduleMap(m, m, Matrix.identity(m.dim, m.field))


def validate_bimodule_map(f: BimoduleMap) -> list[str]:
    """Violations of equivariance for both actions; empty == valid."""
    out = []
    for i in range(f.src.left.dim):
        if f.mat @ f.src.lact[i] != f.tgt.lact[i] @ f.mat:
            out.append(f"does not intertwine left action of e{i}")
    for j in range(f.src.right.dim):
        if f.mat @ f.src.ract[j] != f.tgt.ract[j] @ f.mat:
            out.append(f"does not intertwine right action of e{j}")
    return out


def hom_space(src: Bimodule, tgt: Bimodule):
    """Basis of the space of bimodule maps src -> tgt over the common pair.

    Returns a list of (tgt.dim x src.dim) matrices.  The basis is canonical:
    the row-major vectorizations form a reduced column echelon basis, so the
    same pair of bimodules always yields the same list.
    """
    f = src.field
    nt, ns = tgt.dim, src.dim
    It = Matrix.identity(nt, f)
    Is = Matrix.identity(ns, f)
    blocks = []
    # X L_src = L_tgt X  <=>  (L_tgt (x) I - I (x) L_src^T) vec(X) = 0
    for i in range(src.left.dim):
        blocks.append(tgt.lact[i].kron(Is) - It.kron(src.lact[i].transpose()))
    for j in range(src.right.dim):
        blocks.append(tgt.ract[j].kron(Is) - It.kron(src.ract[j].transpose()))
    ker = kernel(stack_rows(blocks))
    mats = []
    for v in ker.basis.columns():
        mats.append(
            Matrix([[v[r * ns + c] for c in range(ns)] for r in range(nt)], f, ncols=ns)
        )
    return mats


def hom_coords(basis, X: Matrix):
    """Coordinates of the map X in a hom-space basis (or None)."""
    if not basis:
        return [] if X.is_zero() else None
    f = X.field
    nt, ns = X.rows, X.cols
    cols = [[b.data[r][c] for r in range(nt) for c in range(ns)] for b in basis]
    B = Matrix.from_columns(cols, nt * ns, f)
    target = [X.data[r][c] for r in range(nt) for c in range(ns)]
    return solve(B, target)


class EndAlgebra:
    """The endomorphism algebra of a bimodule, with its acting basis.

    Multiplication is composition: e_i * e_j acts as basis[i] o basis[j]."""

    __slots__ = ("bimodule", "basis", "algebra")

    def __init__(self, m: Bimodule):
        self.bimodule = m
        self.basis = hom_space(m, m)
        f = m.field
        d = len(self.basis)
        sc = [[None] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                coords = hom_coords(self.basis, self.basis[i] @ self.basis[j])
                assert coords is not None, "endomorphisms must close under composition"
                sc[i][j] = coords
        unit = hom_coords(self.basis, Matrix.identity(m.dim, f))
        assert unit is not None, "the identity must lie in the endomorphism space"
        self.algebra = Algebra(d, sc, unit, f)

    @property
    def dim(self):
        return self.algebra.dim

    def matrix_of(self, coords) -> Matrix:
        """The endomorphism with the given coordinates, as a matrix."""
        out = Matrix.zeros(self.bimodule.dim, self.bimodule.dim, self.bimodule.field)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def coords_of(self, X: Matrix):
        return hom_coords(self.basis, X)

    def __repr__(self):
        return f"EndAlgebra(dim {self.dim})"


def end_algebra(m: Bimodule) -> EndAlgebra:
    return EndAlgebra(m)


def hom_bimodule(src: Bimodule, tgt: Bimodule, end_tgt: EndAlgebra, end_src: EndAlgebra):
    """[src, tgt] as an (End(tgt), End(src))-bimodule by post-/pre-composition.

    Returns (bimodule over (end_tgt.algebra, end_src.algebra), hom basis)."""
    assert end_tgt.bimodule is tgt and end_src.bimodule is src
    basis = hom_space(src, tgt)
    f = src.field
    d = len(basis)

    def act_matrix(transform):
        cols = []
        for b in basis:
            coords = hom_coords(basis, transform(b))
            assert coords is not None, "action leaves the hom space"
            cols.append(coords)
        return Matrix.from_columns(cols, d, f)

    lact = [act_matrix(lambda b, E=end_tgt.basis[i]: E @ b) for i in range(end_tgt.dim)]
    ract = [act_matrix(lambda b, E=end_src.basis[j]: b @ E) for j in range(end_src.dim)]
    return Bimodule(end_tgt.algebra, end_src.algebra, d, lact, ract), basis


# ---------------------------------------------------------------------------
# the fibered tensor product


def middle_relations(dim_m: int, dim_n: int, ract_mid, lact_mid, field) -> Matrix:
    """Relation matrix for M (x)_B N: columns span
    { m.b (x) n  -  m (x) b.n } over all middle basis elements b."""
    Im = Matrix.identity(dim_m, field)
    In = Matrix.identity(dim_n, field)
    blocks = [Rb.kron(In) - Im.kron(Lb) for Rb, Lb in zip(ract_mid, lact_mid)]
    if not blocks:
        return Matrix.zeros(dim_m * dim_n, 0, field)
    out = blocks[0]
    for b in blocks[1:]:
        out = out.hstack(b)
    return out


class TensorResult:
    """M (x)_B N: the quotient with witnesses plus the induced outer
    bimodule structure over (left of M, right of N); every induced action is
    verified to descend through the quotient."""

    __slots__ = ("left_factor", "right_factor", "quot", "product")

    def __init__(self, m: Bimodule, n: Bimodule):
        assert m.right is n.left or m.right.equal_on_the_nose(n.left), (
            "middle algebras must agree"
        )
        f = m.field
        rel = middle_relations(m.dim, n.dim, m.ract, n.lact, f)
        quot = cokernel(rel)
        In = Matrix.identity(n.dim, f)
        Im = Matrix.identity(m.dim, f)
        lact = [
            quotient_induced(quot, m.lact[i].kron(In), quot) for i in range(m.left.dim)
        ]
        ract = [
            quotient_induced(quot, Im.kron(n.ract[j]), quot) for j in range(n.right.dim)
        ]
        self.left_factor = m
        self.right_factor = n
        self.quot = quot
        self.product = Bimodule(m.left, n.right, quot.dim, lact, ract)

    @property
    def dim(self):
        return self.quot.dim

    def pure(self, mvec, nvec):
        """Class of the pure tensor m (x) n, in quotient coordinates."""
        f = self.left_factor.field
        amb = [f.zero] * (self.left_factor.dim * self.right_factor.dim)
        for i, a in enumerate(mvec):
            if not a:
                continue
            for j, b in enumerate(nvec):
                if b:
                    amb[i * self.right_factor.dim + j] = a * b
        return self.quot.project(amb)

    def __repr__(self):
        return f"TensorResult(dim {self.dim})"


def tensor_over(m: Bimodule, n: Bimodule) -> TensorResult:
    """The fibered tensor product M (x)_B N over the shared middle algebra."""
    return TensorResult(m, n)


def induced_map(
    phi: BimoduleMap, psi: BimoduleMap, t_src: TensorResult, t_tgt: TensorResult
) -> BimoduleMap:
    """phi (x) psi on the quotients; raises if it does not descend."""
    assert t_src.left_factor is phi.src and t_src.right_factor is psi.src
    assert t_tgt.left_factor is phi.tgt and t_tgt.right_factor is psi.tgt
    mat = quotient_induced(t_tgt.quot, phi.mat.kron(psi.mat), t_src.quot)
    return BimoduleMap(t_src.product, t_tgt.product, mat)


# ---------------------------------------------------------------------------
# towers of iterated tensor products and the canonical rebracketing maps


class Leaf:
    """A single bimodule as a trivial tensor tower."""

    __slots__ = ("bim", "flat_dim", "flat_proj", "flat_sect", "leaves")

    def __init__(self, bim: Bimodule):
        self.bim = bim
        f = bim.field
        self.flat_dim = bim.dim
        self.flat_proj = Matrix.identity(bim.dim, f)
        self.flat_sect = Matrix.identity(bim.dim, f)
        self.leaves = [bim]


class Node:
    """tensor_over of two towers; tracks the surjection from the flat
    (unbracketed) tensor of all leaves and a section of it."""

    __slots__ = ("left", "right", "tensor", "bim", "flat_dim", "flat_proj",
                 "flat_sect", "leaves")

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.tensor = tensor_over(left.bim, right.bim)
        self.bim = self.tensor.product
        self.flat_dim = left.flat_dim * right.flat_dim
        self.flat_proj = self.tensor.quot.proj @ left.flat_proj.kron(right.flat_proj)
        self.flat_sect = left.flat_sect.kron(right.flat_sect) @ self.tensor.quot.sect
        self.leaves = left.leaves + right.leaves
        f = self.bim.field
        assert (self.flat_proj @ self.flat_sect) == Matrix.identity(self.bim.dim, f)


def left_nested_tower(bims):
    """(((b0 (x) b1) (x) b2) ...) as a tower."""
    t = Leaf(bims[0])
    for b in bims[1:]:
        t = Node(t, Leaf(b))
    return t


def right_nested_tower(bims):
    """(... (b_{n-2} (x) (b_{n-1} ...))) as a tower."""
    t = Leaf(bims[-1])
    for b in reversed(bims[:-1]):
        t = Node(Leaf(b), t)
    return t


def descend_flat_map(F: Matrix, src, tgt) -> Matrix:
    """Descend a map between flat multi-tensors to the bracketed quotients.

    F is tgt.flat_dim x src.flat_dim on the unbracketed tensors.  The descent
    property (tgt.flat_proj o F factors through src.flat_proj) is verified
    exactly; raises ValueError if it fails.
    """
    down = tgt.flat_proj @ F
    mat = down @ src.flat_sect
    if (mat @ src.flat_proj) != down:
        raise ValueError("flat map does not descend through the towers")
    return mat


def rebracket_iso(src, tgt) -> Matrix:
    """The canonical iso between two bracketings of the same leaf sequence."""
    assert [l.dim for l in src.leaves] == [l.dim for l in tgt.leaves]
    return descend_flat_map(Matrix.identity(src.flat_dim, src.bim.field), src, tgt)


def assoc_iso(m: Bimodule, n: Bimodule, p: Bimodule):
    """Both bracketings of M (x) N (x) P and the canonical iso between them.

    Returns (left tower, right tower, iso, inverse iso); the iso is checked to
    be a two-sided inverse and an equivariant map.
    """
    tl = Node(Node(Leaf(m), Leaf(n)), Leaf(p))
    tr = Node(Leaf(m), Node(Leaf(n), Leaf(p)))
    fwd = rebracket_iso(tl, tr)
    bwd = rebracket_iso(tr, tl)
    f = m.field
    assert (bwd @ fwd) == Matrix.identity(tl.bim.dim, f)
    assert (fwd @ bwd) == Matrix.identity(tr.bim.dim, f)
    iso = BimoduleMap(tl.bim, tr.bim, fwd)
    bad = validate_bimodule_map(iso)
    assert not bad, f"associator is not equivariant: {bad}"
    return tl, tr, iso, BimoduleMap(tr.bim, tl.bim, bwd)


def _left_action_collapse(m: Bimodule) -> Matrix:
    """Flat map A (x) M -> M, e_i (x) e_j -> lact[i] e_j (A = left algebra)."""
    cols = []
    for i in range(m.left.dim):
        for j in range(m.dim):
            cols.append(m.lact[i].col_list(j))
    return Matrix.from_columns(cols, m.dim, m.field)


def _right_action_collapse(m: Bimodule) -> Matrix:
    """Flat map M (x) B -> M, e_i (x) e_j -> ract[j] e_i (B = right algebra)."""
    cols = []
    for i in range(m.dim):
        for j in range(m.right.dim):
            cols.append(m.ract[j].col_list(i))
    return Matrix.from_columns(cols, m.dim, m.field)


def unit_iso_left(t: TensorResult) -> BimoduleMap:
    """A (x)_A M -> M, a (x) m -> a.m, with a two-sided inverse checked.

    The left factor must be the regular bimodule of the left algebra."""
    m = t.right_factor
    a = t.left_factor
    f = m.field
    assert a.dim == m.left.dim
    act = _left_action_collapse(m)
    assert (act @ t.quot.relations).is_zero(), "action does not descend"
    mat = act @ t.quot.sect
    unit_col = Matrix.from_columns([a.left.unit], a.dim, f)
    back = t.quot.proj @ unit_col.kron(Matrix.identity(m.dim, f))
    assert (mat @ back) == Matrix.identity(m.dim, f)
    assert (back @ mat) == Matrix.identity(t.dim, f)
    return BimoduleMap(t.product, m, mat)


def unit_iso_right(t: TensorResult) -> BimoduleMap:
    """M (x)_B B -> M, m (x) b -> m.b, with a two-sided inverse checked.

    The right factor must be the regular bimodule of the right algebra."""
    m = t.left_factor
    b = t.right_factor
    f = m.field
    assert b.dim == m.right.dim
    act = _right_action_collapse(m)
    assert (act @ t.quot.relations).is_zero(), "action does not descend"
    mat = act @ t.quot.sect
    unit_col = Matrix.from_columns([b.left.unit], b.dim, f)
    back = t.quot.proj @ Matrix.identity(m.dim, f).kron(unit_col)
    assert (mat @ back) == Matrix.identity(m.dim, f)
    assert (back @ mat) == Matrix.identity(t.dim, f)
    return BimoduleMap(t.product, m, mat)


def pentagon_check(b1: Bimodule, b2: Bimodule, b3: Bimodule, b4: Bimodule) -> bool:
    """The rebracketing isos of a 4-fold product commute around the pentagon."""
    t1 = Node(Node(Node(Leaf(b1), Leaf(b2)), Leaf(b3)), Leaf(b4))  # ((12)3)4
    t2 = Node(Node(Leaf(b1), Node(Leaf(b2), Leaf(b3))), Leaf(b4))  # (1(23))4
    t3 = Node(Node(Leaf(b1), Leaf(b2)), Node(Leaf(b3), Leaf(b4)))  # (12)(34)
    t4 = Node(Leaf(b1), Node(Node(Leaf(b2), Leaf(b3)), Leaf(b4)))  # 1((23)4)
    t5 = Node(Leaf(b1), Node(Leaf(b2), Node(Leaf(b3), Leaf(b4))))  # 1(2(34))
    two_step = rebracket_iso(t3, t5) @ rebracket_iso(t1, t3)
    three_step = rebracket_iso(t4, t5) @ rebracket_iso(t2, t4) @ rebracket_iso(t1, t2)
    return two_step == three_step


def triangle_check(m: Bimodule, n: Bimodule) -> bool:
    """(M (x) B) (x) N -> M (x) (B (x) N) is compatible with the unit isos:
    (1 (x) collapse) o rebracket == (collapse (x) 1)."""
    B = regular_bimodule(m.right)
    tl = Node(Node(Leaf(m), Leaf(B)), Leaf(n))
    tr = Node(Leaf(m), Node(Leaf(B), Leaf(n)))
    target = Node(Leaf(m), Leaf(n))
    alpha = rebracket_iso(tl, tr)
    f = m.field
    left_map = descend_flat_map(
        _right_action_collapse(m).kron(Matrix.identity(n.dim, f)), tl, target
    )
    right_map = descend_flat_map(
        Matrix.identity(m.dim, f).kron(_left_action_collapse(n)), tr, target
    )
    return (right_map @ alpha) == left_map


def interchange_check(xi: BimoduleMap, zeta: BimoduleMap) -> bool:
    """(xi (x) 1') o (1 (x) zeta) == (1' (x) zeta) o (xi (x) 1) == xi (x) zeta
    as maps M (x)_B N -> M' (x)_B N'."""
    M, Mp = xi.src, xi.tgt
    N, Np = zeta.src, zeta.tgt
    t_m_n = tensor_over(M, N)
    t_mp_n = tensor_over(Mp, N)
    t_m_np = tensor_over(M, Np)
    t_mp_np = tensor_over(Mp, Np)
    first = (
        induced_map(xi, identity_bimodule_map(Np), t_m_np, t_mp_np).mat
        @ induced_map(identity_bimodule_map(M), zeta, t_m_n, t_m_np).mat
    )
    second = (
        induced_map(identity_bimodule_map(Mp), zeta, t_mp_n, t_mp_np).mat
        @ induced_map(xi, identity_bimodule_map(N), t_m_n, t_mp_n).mat
    )
    both = induced_map(xi, zeta, t_m_n, t_mp_np).mat
    return first == second == both


# ---------------------------------------------------------------------------
# composition of hom spaces and its descent to the fibered tensor product


class CompBarResult:
    """Composition descended to [N,P] (x)_{[N,N]} [M,N] -> [M,P]: the unique
    map whose composite with the quotient map is plain composition.

    Fields: tensor (the fibered product of hom bimodules), mat (matrix in the
    canonical hom bases), map (as an equivariant map over ([P,P], [M,M])),
    is_iso, and the three hom bases."""

    __slots__ = ("tensor", "mat", "map", "is_iso", "basis_np", "basis_mn", "basis_mp")

    def __init__(self, tensor, mat, map_, is_iso, basis_np, basis_mn, basis_mp):
        self.tensor = tensor
        self.mat = mat
        self.map = map_
        self.is_iso = is_iso
        self.basis_np = basis_np
        self.basis_mn = basis_mn
        self.basis_mp = basis_mp


def comp_bar(m: Bimodule, n: Bimodule, p: Bimodule) -> CompBarResult:
    """Descend composition [N,P] x [M,N] -> [M,P] through the fibered tensor
    product over [N,N]; the coequalizer property is verified exactly."""
    f = m.field
    end_m = end_algebra(m)
    end_n = end_algebra(n)
    end_p = end_algebra(p)
    hom_np, basis_np = hom_bimodule(n, p, end_p, end_n)
    hom_mn, basis_mn = hom_bimodule(m, n, end_n, end_m)
    hom_mp, basis_mp = hom_bimodule(m, p, end_p, end_m)
    tensor = tensor_over(hom_np, hom_mn)
    cols = []
    for bi in basis_np:
        for bj in basis_mn:
            coords = hom_coords(basis_mp, bi @ bj)
            assert coords is not None, "composite leaves the hom space"
            cols.append(coords)
    flat = Matrix.from_columns(cols, len(basis_mp), f)
    assert (flat @ tensor.quot.relations).is_zero(), (
        "composition does not factor through the middle tensor"
    )
    mat = flat @ tensor.quot.sect
    map_ = BimoduleMap(tensor.product, hom_mp, mat)
    bad = validate_bimodule_map(map_)
    assert not bad, f"descended composition is not equivariant: {bad}"
    is_iso = inverse(mat) is not None
    return CompBarResult(tensor, mat, map_, is_iso, basis_np, basis_mn, basis_mp)
