"""The full-center construction.

Objects (algebras) go to their centers; algebra maps and bimodules go to
cospans of commutative algebras whose apex is a centralizer respectively an
endomorphism algebra; bimodule maps go to 2-diagrams between those cospans.
On top of the assignment sit the comparison maps between the center of a
composite and the composite of centers -- the multiplication maps -- together
with executable checks: the lax-functor laws (associativity and units), the
naturality of the multiplication (its 3-cell property, the two triangle
identities, the interchanger hexagon, and the unit reduction), the Morita
invariance of centers, and the invertibility criteria under which the whole
assignment is a genuine (non-lax) 2-functor.
"""

from .algebra import (
    Algebra,
    AlgebraMap,
    center,
    centralizer,
    compose_maps,
    identity_map,
    is_commutative,
    is_isomorphism,
    matrix_algebra,
    subalgebra_map,
    validate_algebra_map,
)
from .bimodule import (
    Bimodule,
    BimoduleMap,
    comp_bar,
    end_algebra,
    hom_bimodule,
    hom_coords,
    hom_space,
    identity_bimodule_map,
    induced_map,
    middle_relations,
    regular_bimodule,
    restriction_bimodule,
    tensor_over,
)
from .cospanbicat import (
    CoherenceReport,
    Cospan,
    ThreeCell,
    TwoDiagram,
    beta_cell,
    compose_cospans,
    cospan_morphism_2diagram,
    horizontal_compose,
    pushout_universal,
    unit_column,
    validate_2diagram,
    validate_3cell,
    validate_cospan,
    vertical_compose,
)
from .exactla import Matrix, cokernel, inverse, is_invertible, quotient_induced, rank


# ---------------------------------------------------------------------------
# the assignment on objects, 1-cells and 2-cells


class ZObjectResult:
    """An algebra together with its center as a commutative subalgebra."""

    __slots__ = ("algebra", "center")

    def __init__(self, algebra: Algebra, sub):
        self.algebra = algebra
        self.center = sub

    @property
    def dim(self):
        return self.center.dim

    def __repr__(self):
        return f"ZObjectResult(dim {self.dim} center of dim {self.algebra.dim})"


def Z_object(a: Algebra) -> ZObjectResult:
    sub = center(a)
    assert is_commutative(sub.algebra), "the center must be commutative"
    return ZObjectResult(a, sub)


class ZMorphismResult:
    """The cospan assigned to a 1-cell (an algebra map or a bimodule).

    kind is "map" or "bimodule"; realization is the centralizer Subalgebra
    respectively the EndAlgebra realizing the apex; z_left / z_right are the
    centers of the outer algebras, in the coordinates used by the legs."""

    __slots__ = ("kind", "source", "cospan", "apex", "realization",
                 "z_left", "z_right")

    def __init__(self, kind, source, cospan, apex, realization, z_left, z_right):
        self.kind = kind
        self.source = source
        self.cospan = cospan
        self.apex = apex
        self.realization = realization
        self.z_left = z_left
        self.z_right = z_right

    def __repr__(self):
        return f"ZMorphismResult({self.kind}, apex dim {self.apex.dim})"


def Z_hom(f: AlgebraMap, z_src=None, z_tgt=None) -> ZMorphismResult:
    """The cospan Z(A) -> Z(f) <- Z(B) on the centralizer of the image of f.

    The first leg sends a central z to f(z); the second is the inclusion of
    Z(B) into the centralizer."""
    za = z_src if z_src is not None else center(f.src)
    zb = z_tgt if z_tgt is not None else center(f.tgt)
    cz = centralizer(f)
    leg_a = subalgebra_map(za, cz, f.mat)
    leg_b = subalgebra_map(zb, cz, Matrix.identity(f.tgt.dim, f.tgt.field))
    cospan = Cospan(leg_a, leg_b)
    bad = validate_cospan(cospan)
    assert not bad, f"centralizer cospan is invalid: {bad}"
    return ZMorphismResult("map", f, cospan, cz.algebra, cz, za, zb)


def Z_bimodule(m: Bimodule, z_left=None, z_right=None, end=None) -> ZMorphismResult:
    """The cospan Z(A) -> End(M) <- Z(B) with legs z -> (x -> z.x) and
    z' -> (x -> x.z')."""
    ea = end if end is not None else end_algebra(m)
    zl = z_left if z_left is not None else center(m.left)
    zr = z_right if z_right is not None else center(m.right)

    def leg(sub, act_of):
        cols = []
        for i in range(sub.dim):
            op = act_of(sub.embed(sub.algebra.basis_vector(i)))
            coords = ea.coords_of(op)
            assert coords is not None, "central action is not a bimodule map"
            cols.append(coords)
        return AlgebraMap(sub.algebra, ea.algebra,
                          Matrix.from_columns(cols, ea.dim, m.field))

    cospan = Cospan(leg(zl, m.lact_of), leg(zr, m.ract_of))
    bad = validate_cospan(cospan)
    assert not bad, f"endomorphism cospan is invalid: {bad}"
    return ZMorphismResult("bimodule", m, cospan, ea.algebra, ea, zl, zr)


class AgreementResult:
    """The evaluation-at-unit isomorphism between the bimodule-level and the
    map-level cospan of an algebra map, with its verification report."""

    __slots__ = ("z_bim", "z_map", "iso", "report")

    def __init__(self, z_bim, z_map, iso, report):
        self.z_bim = z_bim
        self.z_map = z_map
        self.iso = iso
        self.report = report


def z_restriction_agreement(f: AlgebraMap) -> AgreementResult:
    """For the bimodule B with left action through f, evaluation at 1 is an
    algebra isomorphism End -> centralizer commuting with both legs."""
    zb = Z_bimodule(restriction_bimodule(f))
    zh = Z_hom(f)
    unit = f.tgt.unit
    cols = []
    for b in zb.realization.basis:
        coords = zh.realization.coords(b.apply(unit))
        assert coords is not None, "evaluation leaves the centralizer"
        cols.append(coords)
    ev = AlgebraMap(zb.apex, zh.apex,
                    Matrix.from_columns(cols, zh.apex.dim, f.tgt.field))
    rep = CoherenceReport()
    rep.add("algebra map", validate_algebra_map(ev) == [])
    rep.add("isomorphism", is_isomorphism(ev) is not None)
    rep.add("left legs agree", ev.mat @ zb.cospan.leg_a.mat == zh.cospan.leg_a.mat)
    rep.add("right legs agree", ev.mat @ zb.cospan.leg_b.mat == zh.cospan.leg_b.mat)
    return AgreementResult(zb, zh, ev, rep)


class Z2CellResult:
    """The 2-diagram assigned to a bimodule map: apex is the hom space of the
    two bimodules with post-/pre-composition legs."""

    __slots__ = ("source", "diagram", "z_src", "z_tgt", "basis")

    def __init__(self, source, diagram, z_src, z_tgt, basis):
        self.source = source
        self.diagram = diagram
        self.z_src = z_src
        self.z_tgt = z_tgt
        self.basis = basis


def _hom_operator(basis, transform, field) -> Matrix:
    """Matrix, in hom-space coordinates, of a linear operator on a hom space."""
    cols = []
    for b in basis:
        coords = hom_coords(basis, transform(b))
        assert coords is not None, "operator leaves the hom space"
        cols.append(coords)
    return Matrix.from_columns(cols, len(basis), field)


def Z_2cell(phi: BimoduleMap, z_src=None, z_tgt=None) -> Z2CellResult:
    """The 2-diagram from the cospan of phi's source to that of its target:
    bimodule [M, N] over the two endomorphism algebras, legs xi -> phi o xi
    and eta -> eta o phi."""
    zs = z_src if z_src is not None else Z_bimodule(phi.src)
    zt = z_tgt if z_tgt is not None else Z_bimodule(phi.tgt)
    hom_bm, basis = hom_bimodule(phi.src, phi.tgt, zt.realization, zs.realization)
    field = phi.src.field
    fmat = _hom_operator_into(basis, zs.realization.basis,
                              lambda e: phi.mat @ e, field)
    gmat = _hom_operator_into(basis, zt.realization.basis,
                              lambda e: e @ phi.mat, field)
    d = TwoDiagram(zs.cospan, zt.cospan, hom_bm, fmat, gmat)
    bad = validate_2diagram(d)
    assert not bad, f"hom-space 2-diagram is invalid: {bad}"
    return Z2CellResult(phi, d, zs, zt, basis)


def _hom_operator_into(basis_out, basis_in, transform, field) -> Matrix:
    """Matrix of a map between hom spaces given on the input basis."""
    cols = []
    for e in basis_in:
        coords = hom_coords(basis_out, transform(e))
        assert coords is not None, "image leaves the hom space"
        cols.append(coords)
    return Matrix.from_columns(cols, len(basis_out), field)


# ---------------------------------------------------------------------------
# the multiplication comparison maps


class MultTransformResult:
    """The comparison map Z(f) (x)_{Z(B)} Z(g) -> Z(g o f), z (x) z' ->
    g(z) z', as a verified algebra map, with the 2-diagram it defines and its
    rank data."""

    __slots__ = ("f", "g", "gf", "zf", "zg", "zgf", "comp", "m", "diagram",
                 "rank", "codomain_dim", "is_iso")

    def __init__(self, f, g, gf, zf, zg, zgf, comp, m, diagram):
        self.f = f
        self.g = g
        self.gf = gf
        self.zf = zf
        self.zg = zg
        self.zgf = zgf
        self.comp = comp
        self.m = m
        self.diagram = diagram
        self.rank = rank(m.mat)
        self.codomain_dim = zgf.apex.dim
        self.is_iso = is_invertible(m.mat)

    def __repr__(self):
        return (f"MultTransformResult(rank {self.rank} of {self.codomain_dim}, "
                f"{'iso' if self.is_iso else 'not iso'})")


def mult_transform(f: AlgebraMap, g: AlgebraMap,
                   zf=None, zg=None, zgf=None) -> MultTransformResult:
    """The multiplication map for a composable pair of algebra maps."""
    assert g.src is f.tgt or g.src.equal_on_the_nose(f.tgt), "maps must compose"
    gf = compose_maps(g, f)
    zf = zf if zf is not None else Z_hom(f)
    zg = zg if zg is not None else Z_hom(g, z_src=zf.z_right)
    zgf = zgf if zgf is not None else Z_hom(gf, z_src=zf.z_left, z_tgt=zg.z_right)
    comp = compose_cospans(zg.cospan, zf.cospan)
    w = subalgebra_map(zf.realization, zgf.realization, g.mat)
    v = subalgebra_map(zg.realization, zgf.realization,
                       Matrix.identity(g.tgt.dim, g.tgt.field))
    m = pushout_universal(comp, w, v)
    diagram = cospan_morphism_2diagram(comp.cospan, zgf.cospan, m)
    return MultTransformResult(f, g, gf, zf, zg, zgf, comp, m, diagram)


class MultBimoduleResult:
    """The bimodule-level multiplication map Z(M) (x)_{Z(B)} Z(N) ->
    Z(M (x)_B N), xi (x) zeta -> xi (x) zeta as endomorphisms, with the
    tensor witnesses and the induced 2-diagram."""

    __slots__ = ("m_bim", "n_bim", "tens", "zm", "zn", "zmn", "comp", "mult",
                 "diagram", "is_iso")

    def __init__(self, m_bim, n_bim, tens, zm, zn, zmn, comp, mult, diagram):
        self.m_bim = m_bim
        self.n_bim = n_bim
        self.tens = tens
        self.zm = zm
        self.zn = zn
        self.zmn = zmn
        self.comp = comp
        self.mult = mult
        self.diagram = diagram
        self.is_iso = is_invertible(mult.mat)

    def __repr__(self):
        return f"MultBimoduleResult({'iso' if self.is_iso else 'not iso'})"


def mult_transform_bimodule(m_bim: Bimodule, n_bim: Bimodule,
                            zm=None, zn=None, comp=None, tens=None,
                            zmn=None) -> MultBimoduleResult:
    """The multiplication map for a composable pair of bimodules."""
    zm = zm if zm is not None else Z_bimodule(m_bim)
    zn = zn if zn is not None else Z_bimodule(n_bim)
    comp = comp if comp is not None else compose_cospans(zn.cospan, zm.cospan)
    tens = tens if tens is not None else tensor_over(m_bim, n_bim)
    zmn = zmn if zmn is not None else Z_bimodule(
        tens.product, z_left=zm.z_left, z_right=zn.z_right)
    f = m_bim.field
    Im = Matrix.identity(m_bim.dim, f)
    In = Matrix.identity(n_bim.dim, f)

    def factor_map(src_z, lifted_of):
        cols = []
        for e in src_z.realization.basis:
            op = quotient_induced(tens.quot, lifted_of(e), tens.quot)
            coords = zmn.realization.coords_of(op)
            assert coords is not None, "factor endomorphism leaves the hom space"
            cols.append(coords)
        return AlgebraMap(src_z.apex, zmn.apex,
                          Matrix.from_columns(cols, zmn.apex.dim, f))

    w = factor_map(zm, lambda e: e.kron(In))
    v = factor_map(zn, lambda e: Im.kron(e))
    mult = pushout_universal(comp, w, v)
    diagram = cospan_morphism_2diagram(comp.cospan, zmn.cospan, mult)
    return MultBimoduleResult(m_bim, n_bim, tens, zm, zn, zmn, comp, mult, diagram)


class NGeneralResult:
    """The descended map [M,M'] (x)_{Z(B)} [N,N'] -> [M (x) N, M' (x) N'],
    xi (x) zeta -> xi (x) zeta, with its quotient witnesses."""

    __slots__ = ("basis_left", "basis_right", "basis_target", "tens_src",
                 "tens_tgt", "quot", "flat", "mat", "is_iso")

    def __init__(self, basis_left, basis_right, basis_target, tens_src,
                 tens_tgt, quot, flat, mat):
        self.basis_left = basis_left
        self.basis_right = basis_right
        self.basis_target = basis_target
        self.tens_src = tens_src
        self.tens_tgt = tens_tgt
        self.quot = quot
        self.flat = flat
        self.mat = mat
        self.is_iso = inverse(mat) is not None

    def __repr__(self):
        return f"NGeneralResult({self.mat.rows}x{self.mat.cols}, " \
               f"{'iso' if self.is_iso else 'not iso'})"


def n_general(m: Bimodule, mp: Bimodule, n: Bimodule, np_: Bimodule,
              tens_src=None, tens_tgt=None, z_mid=None,
              pair_quot=None) -> NGeneralResult:
    """Descend the tensor product of bimodule maps through the fibered
    product of hom spaces over the center of the middle algebra."""
    f = m.field
    basis_left = hom_space(m, mp)
    basis_right = hom_space(n, np_)
    tens_src = tens_src if tens_src is not None else tensor_over(m, n)
    tens_tgt = tens_tgt if tens_tgt is not None else tensor_over(mp, np_)
    basis_target = hom_space(tens_src.product, tens_tgt.product)
    cols = []
    for xi in basis_left:
        for zeta in basis_right:
            op = quotient_induced(tens_tgt.quot, xi.kron(zeta), tens_src.quot)
            coords = hom_coords(basis_target, op)
            assert coords is not None, "induced map leaves the hom space"
            cols.append(coords)
    flat = Matrix.from_columns(cols, len(basis_target), f)
    if pair_quot is None:
        zb = z_mid if z_mid is not None else center(m.right)
        rops = [
            _hom_operator(basis_left,
                          lambda b, z=zb.embed(zb.algebra.basis_vector(k)):
                          b @ m.ract_of(z), f)
            for k in range(zb.dim)
        ]
        lops = [
            _hom_operator(basis_right,
                          lambda b, z=zb.embed(zb.algebra.basis_vector(k)):
                          b @ n.lact_of(z), f)
            for k in range(zb.dim)
        ]
        rel = middle_relations(len(basis_left), len(basis_right), rops, lops, f)
        pair_quot = cokernel(rel)
    assert (flat @ pair_quot.relations).is_zero(), (
        "tensor of maps does not respect the middle-center relations"
    )
    mat = flat @ pair_quot.sect
    return NGeneralResult(basis_left, basis_right, basis_target, tens_src,
                          tens_tgt, pair_quot, flat, mat)


# ---------------------------------------------------------------------------
# the square 3-cell comparing the two composites around a pair of 2-cells


def zero_bimodule_map(src: Bimodule, tgt: Bimodule) -> BimoduleMap:
    return BimoduleMap(src, tgt, Matrix.zeros(tgt.dim, src.dim, src.field))


class MSquareResult:
    """The 3-cell between the two composite 2-diagrams around a square of
    bimodule maps: one route multiplies first and then applies the induced
    map on the composite, the other applies the pair of maps first and then
    multiplies.  Its matrix is independent of the maps themselves.

    Fields: the two hom-space 2-cells (d1, d2), their horizontal composite
    hq, the multiplication data of both rows (mult_src, mult_tgt), the
    induced map on composites and its 2-cell (induced, d_induced), the two
    composite 2-diagrams (lhs, rhs), the auxiliary descended map n_res, the
    pre-unit matrix mprime, the unit-collapse pair (r_mat, r_inverse), the
    3-cell itself with its validation list, and is_iso."""

    __slots__ = ("d1", "d2", "hq", "mult_src", "mult_tgt", "induced",
                 "d_induced", "lhs", "rhs", "n_res", "mprime", "r_mat",
                 "r_inverse", "cell", "valid", "is_iso")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    def __repr__(self):
        state = "iso" if self.is_iso else "not iso"
        return f"MSquareResult({state}, valid={not self.valid})"


def m_square(phi: BimoduleMap = None, psi: BimoduleMap = None,
             d1: Z2CellResult = None, d2: Z2CellResult = None,
             mult_src=None, mult_tgt=None) -> MSquareResult:
    """Build the square 3-cell for a pair of bimodule maps (or prebuilt
    hom-space 2-cells) and verify the 3-cell axioms."""
    d1 = d1 if d1 is not None else Z_2cell(phi)
    d2 = d2 if d2 is not None else Z_2cell(psi)
    phi, psi = d1.source, d2.source
    f = phi.src.field
    hq = horizontal_compose(d2.diagram, d1.diagram)
    src_comp, tgt_comp = hq.parts[3], hq.parts[4]
    if mult_src is None:
        mult_src = mult_transform_bimodule(phi.src, psi.src, zm=d1.z_src,
                                           zn=d2.z_src, comp=src_comp)
    if mult_tgt is None:
        mult_tgt = mult_transform_bimodule(phi.tgt, psi.tgt, zm=d1.z_tgt,
                                           zn=d2.z_tgt, comp=tgt_comp)
    induced = induced_map(phi, psi, mult_src.tens, mult_tgt.tens)
    d_induced = Z_2cell(induced, z_src=mult_src.zmn, z_tgt=mult_tgt.zmn)
    lhs = vertical_compose(mult_tgt.diagram, hq)
    rhs = vertical_compose(d_induced.diagram, mult_src.diagram)
    n_res = n_general(phi.src, phi.tgt, psi.src, psi.tgt,
                      tens_src=mult_src.tens, tens_tgt=mult_tgt.tens,
                      pair_quot=hq.tensor.quot)
    end_tgt = mult_tgt.zmn.realization
    end_src = mult_src.zmn.realization
    basis_t = n_res.basis_target
    # pre-unit map: the class of x (x) q composes x after the descended map
    blocks = []
    for a in range(end_tgt.dim):
        post = _hom_operator(basis_t,
                             lambda b, E=end_tgt.basis[a]: E @ b, f)
        blocks.append(post @ n_res.mat)
    mprime_flat = blocks[0]
    for b in blocks[1:]:
        mprime_flat = mprime_flat.hstack(b)
    TL = lhs.tensor
    assert (mprime_flat @ TL.quot.relations).is_zero(), (
        "pre-unit map does not respect the composite relations"
    )
    mprime = mprime_flat @ TL.quot.sect
    # the unit collapse between the target hom space and its unit tensor
    TR = rhs.tensor
    r_inverse = TR.quot.proj @ Matrix.identity(len(basis_t), f).kron(
        unit_column(end_src.algebra))
    rcols = []
    for t in range(len(basis_t)):
        for w in range(end_src.dim):
            op = basis_t[t] @ end_src.basis[w]
            coords = hom_coords(basis_t, op)
            assert coords is not None
            rcols.append(coords)
    r_flat = Matrix.from_columns(rcols, len(basis_t), f)
    r_mat = r_flat @ TR.quot.sect
    assert r_mat @ r_inverse == Matrix.identity(len(basis_t), f)
    assert r_inverse @ r_mat == Matrix.identity(TR.quot.dim, f)
    cell_mat = r_inverse @ mprime
    cell = ThreeCell(lhs, rhs, cell_mat)
    valid = validate_3cell(cell)
    return MSquareResult(d1=d1, d2=d2, hq=hq, mult_src=mult_src,
                         mult_tgt=mult_tgt, induced=induced,
                         d_induced=d_induced, lhs=lhs, rhs=rhs, n_res=n_res,
                         mprime=mprime, r_mat=r_mat, r_inverse=r_inverse,
                         cell=cell, valid=valid,
                         is_iso=is_invertible(cell_mat))


def m_prime_and_m(phi: BimoduleMap, psi: BimoduleMap):
    """The two-step construction of the square 3-cell: returns (mprime, m,
    square) so the factored definition can be audited."""
    sq = m_square(phi, psi)
    return sq.mprime, sq.cell.mat, sq


# ---------------------------------------------------------------------------
# verification harnesses


def _unit_collapse_first(zf: ZMorphismResult):
    """The canonical collapse of (identity cospan) then cospan, z (x) z' ->
    leg_a(z) z'."""
    zid = Z_hom(identity_map(zf.source.src), z_src=zf.z_left, z_tgt=zf.z_left)
    comp = compose_cospans(zf.cospan, zid.cospan)
    w = AlgebraMap(zid.apex, zf.apex, zf.cospan.leg_a.mat @ _center_change(
        zid, zf.z_left))
    u = pushout_universal(comp, w, identity_map(zf.apex))
    return comp, u


def _unit_collapse_second(zf: ZMorphismResult):
    """The canonical collapse of cospan then (identity cospan), z (x) z' ->
    z leg_b(z')."""
    zid = Z_hom(identity_map(zf.source.tgt), z_src=zf.z_right, z_tgt=zf.z_right)
    comp = compose_cospans(zid.cospan, zf.cospan)
    v = AlgebraMap(zid.apex, zf.apex, zf.cospan.leg_b.mat @ _center_change(
        zid, zf.z_right))
    u = pushout_universal(comp, identity_map(zf.apex), v)
    return comp, u


def _center_change(zid: ZMorphismResult, sub) -> Matrix:
    """Coordinates of the identity-map centralizer in a center's basis."""
    mat = zid.realization.incl
    out = []
    for j in range(zid.apex.dim):
        coords = sub.coords(mat.col_list(j))
        assert coords is not None, "identity centralizer must equal the center"
        out.append(coords)
    return Matrix.from_columns(out, sub.dim, mat.field)


def verify_lax_functor(chain) -> CoherenceReport:
    """Check the lax-functor laws on a composable chain of algebra maps:
    every multiplication map is a verified algebra map defining a valid
    2-diagram, the two association routes agree on flat triples, and the
    identity-factor multiplications equal the canonical unit collapses."""
    rep = CoherenceReport()
    for f in chain:
        for checks in _unit_checks(f):
            rep.add(*checks)
    for i in range(len(chain) - 1):
        f, g = chain[i], chain[i + 1]
        mt = mult_transform(f, g)
        rep.add(f"multiplication algebra map {i}",
                validate_algebra_map(mt.m) == [])
        rep.add(f"multiplication 2-diagram {i}",
                validate_2diagram(mt.diagram) == [])
    for i in range(len(chain) - 2):
        f, g, h = chain[i], chain[i + 1], chain[i + 2]
        rep.add(f"associativity {i}", _associativity_square(f, g, h))
    return rep


def _unit_checks(f: AlgebraMap):
    zf = Z_hom(f)
    mt_first = mult_transform(identity_map(f.src), f, zg=zf)
    _, u1 = _unit_collapse_first(zf)
    mt_second = mult_transform(f, identity_map(f.tgt), zf=zf)
    _, u2 = _unit_collapse_second(zf)
    zida = mt_first.zf
    zidb = mt_second.zg
    yield ("identity cospan legs strict",
           zida.cospan.leg_a.mat == Matrix.identity(zida.apex.dim, f.src.field)
           and zidb.cospan.leg_b.mat == Matrix.identity(zidb.apex.dim, f.src.field))
    yield ("unit first factor", mt_first.m.mat == u1.mat)
    yield ("unit second factor", mt_second.m.mat == u2.mat)


def _associativity_square(f, g, h) -> bool:
    """The two routes from flat triples Z(f) (x) Z(g) (x) Z(h) into
    Z(h o g o f) agree."""
    field = f.src.field
    m1 = mult_transform(f, g)
    m2 = mult_transform(m1.gf, h, zf=m1.zgf)
    m1p = mult_transform(g, h, zf=m1.zg, zg=m2.zg)
    m2p = mult_transform(f, m1p.gf, zf=m1.zf, zg=m1p.zgf, zgf=m2.zgf)
    Ih = Matrix.identity(m1p.zg.apex.dim, field)
    If = Matrix.identity(m1.zf.apex.dim, field)
    route_a = m2.m.mat @ m2.comp.quot.proj @ (m1.m.mat @ m1.comp.quot.proj).kron(Ih)
    route_b = m2p.m.mat @ m2p.comp.quot.proj @ If.kron(m1p.m.mat @ m1p.comp.quot.proj)
    return route_a == route_b


def check_m_unit_axiom(b: Algebra) -> bool:
    """On the pair of regular bimodules over one algebra, the square 3-cell
    equals the unit collapse composed with the left-action collapse computed
    through the endomorphism algebra's own multiplication."""
    reg = regular_bimodule(b)
    sq = m_square(identity_bimodule_map(reg), identity_bimodule_map(reg))
    alg = sq.mult_src.zmn.apex
    blocks = []
    for a in range(alg.dim):
        blocks.append(alg.left_mult(alg.basis_vector(a)) @ sq.mult_src.mult.mat)
    lflat = blocks[0]
    for blk in blocks[1:]:
        lflat = lflat.hstack(blk)
    TL = sq.lhs.tensor
    if not (lflat @ TL.quot.relations).is_zero():
        return False
    l_desc = lflat @ TL.quot.sect
    return sq.cell.mat == sq.r_inverse @ l_desc


def check_m_hexagon(phi: BimoduleMap, phip: BimoduleMap,
                    psi: BimoduleMap, psip: BimoduleMap) -> bool:
    """The interchanger coherence of the square 3-cells: starting from flat
    triples (endomorphism of the doubly-primed composite, upper square class,
    lower square class), rebracketing with the interchanger and composing the
    two columns before multiplying agrees with multiplying row by row and
    composing afterwards."""
    f = phi.src.field
    d1 = Z_2cell(phi)
    d1p = Z_2cell(phip, z_src=d1.z_tgt)
    d2 = Z_2cell(psi)
    d2p = Z_2cell(psip, z_src=d2.z_tgt)
    sq1 = m_square(d1=d1, d2=d2)
    sq2 = m_square(d1=d1p, d2=d2p, mult_src=sq1.mult_tgt)
    comp_phi = BimoduleMap(phi.src, phip.tgt, phip.mat @ phi.mat)
    comp_psi = BimoduleMap(psi.src, psip.tgt, psip.mat @ psi.mat)
    d1c = Z_2cell(comp_phi, z_src=d1.z_src, z_tgt=d1p.z_tgt)
    d2c = Z_2cell(comp_psi, z_src=d2.z_src, z_tgt=d2p.z_tgt)
    sq3 = m_square(d1=d1c, d2=d2c, mult_src=sq1.mult_src, mult_tgt=sq2.mult_tgt)

    beta = beta_cell(d1p.diagram, d1.diagram, d2p.diagram, d2.diagram)
    cb_left = comp_bar(phi.src, phi.tgt, phip.tgt)
    cb_right = comp_bar(psi.src, psi.tgt, psip.tgt)
    cb_mid = comp_bar(sq1.mult_src.tens.product, sq1.mult_tgt.tens.product,
                      sq2.mult_tgt.tens.product)

    q1dim = sq1.hq.M.dim
    xdim = sq2.mult_tgt.zmn.apex.dim
    xidim = len(sq2.n_res.basis_target)
    vdim = sq1.mult_src.zmn.apex.dim

    # row-by-row side
    m2f = sq2.rhs.tensor.quot.sect @ sq2.cell.mat @ sq2.lhs.tensor.quot.proj
    m1f = sq1.rhs.tensor.quot.sect @ sq1.cell.mat @ sq1.lhs.tensor.quot.proj
    cbm = cb_mid.mat @ cb_mid.tensor.quot.proj
    side_rows = (
        sq3.rhs.tensor.quot.proj
        @ cbm.kron(Matrix.identity(vdim, f))
        @ Matrix.identity(xidim, f).kron(m1f)
        @ m2f.kron(Matrix.identity(q1dim, f))
    )

    # interchange-and-compose-columns side
    pb = beta.cell.mat @ beta.src_diagram.tensor.quot.proj
    cc = quotient_induced(sq3.hq.tensor.quot,
                          cb_left.mat.kron(cb_right.mat),
                          beta.tgt_diagram.tensor.quot)
    fl3 = sq3.cell.mat @ sq3.lhs.tensor.quot.proj
    side_columns = fl3 @ Matrix.identity(xdim, f).kron(cc @ pb)

    return side_rows == side_columns


def verify_m_naturality(phi: BimoduleMap, psi: BimoduleMap,
                        phip: BimoduleMap = None,
                        psip: BimoduleMap = None) -> CoherenceReport:
    """Check the naturality package of the square 3-cell: its 3-cell axioms,
    the two triangle identities factoring its legs through the descended
    tensor-of-maps, the equivariance making that map a morphism over the two
    composite apexes, the unit reduction over the middle algebra, and (when a
    second square is supplied) the interchanger hexagon."""
    rep = CoherenceReport()
    sq = m_square(phi, psi)
    f = phi.src.field
    rep.add("square is a 3-cell", sq.valid == [], "; ".join(sq.valid))
    end_src = sq.mult_src.zmn.realization
    end_tgt = sq.mult_tgt.zmn.realization
    basis_t = sq.n_res.basis_target
    post_phi = _hom_operator_into(basis_t, end_src.basis,
                                  lambda e: sq.induced.mat @ e, f)
    pre_phi = _hom_operator_into(basis_t, end_tgt.basis,
                                 lambda e: e @ sq.induced.mat, f)
    rep.add("upper triangle via n",
            sq.cell.mat @ sq.lhs.f
            == sq.r_inverse @ sq.n_res.mat @ sq.hq.f)
    rep.add("upper triangle via multiplication",
            sq.rhs.f == sq.r_inverse @ post_phi @ sq.mult_src.mult.mat)
    rep.add("lower triangle",
            sq.n_res.mat @ sq.hq.g == pre_phi @ sq.mult_tgt.mult.mat)
    ok_r = True
    for y in range(sq.mult_src.comp.cospan.apex.dim):
        w = end_src.matrix_of(sq.mult_src.mult.mat.col_list(y))
        pre = _hom_operator(basis_t, lambda b, W=w: b @ W, f)
        if sq.n_res.mat @ sq.hq.M.ract[y] != pre @ sq.n_res.mat:
            ok_r = False
    rep.add("descended map right equivariant", ok_r)
    ok_l = True
    for y in range(sq.mult_tgt.comp.cospan.apex.dim):
        w = end_tgt.matrix_of(sq.mult_tgt.mult.mat.col_list(y))
        post = _hom_operator(basis_t, lambda b, W=w: W @ b, f)
        if sq.n_res.mat @ sq.hq.M.lact[y] != post @ sq.n_res.mat:
            ok_l = False
    rep.add("descended map left equivariant", ok_l)
    rep.add("unit reduction", check_m_unit_axiom(phi.src.right))
    if phip is not None and psip is not None:
        rep.add("hexagon", check_m_hexagon(phi, phip, psi, psip))
    return rep


class MoritaReport:
    """The diagonal-scalar embedding of a center into the center of the
    matrix amplification, with its verification."""

    __slots__ = ("algebra", "n", "amplified", "z_small", "z_big", "iso", "ok")

    def __init__(self, algebra, n, amplified, z_small, z_big, iso, ok):
        self.algebra = algebra
        self.n = n
        self.amplified = amplified
        self.z_small = z_small
        self.z_big = z_big
        self.iso = iso
        self.ok = ok

    def __repr__(self):
        return f"MoritaReport(n={self.n}, {'ok' if self.ok else 'FAILED'})"


def morita_center_check(a: Algebra, n: int) -> MoritaReport:
    """z -> z . identity is an algebra isomorphism from the center of A onto
    the center of the n x n matrix algebra over A."""
    f = a.field
    big = matrix_algebra(a, n)
    za = center(a)
    zb = center(big)
    d = a.dim
    cols = []
    for i in range(za.dim):
        z = za.embed(za.algebra.basis_vector(i))
        vec = [f.zero] * big.dim
        for block in range(n):
            base = (block * n + block) * d
            for k in range(d):
                vec[base + k] = z[k]
        coords = zb.coords(vec)
        assert coords is not None, "diagonal image must be central"
        cols.append(coords)
    iso = AlgebraMap(za.algebra, zb.algebra,
                     Matrix.from_columns(cols, zb.dim, f))
    ok = (validate_algebra_map(iso) == [] and is_isomorphism(iso) is not None
          and za.dim == zb.dim)
    return MoritaReport(a, n, big, za, zb, iso, ok)


class Thm58Report:
    """Per-instance invertibility verdicts for the comparison maps, with the
    aggregate verdict string."""

    __slots__ = ("entries", "all_iso", "verdict")

    def __init__(self, entries):
        self.entries = entries
        self.all_iso = all(ok for _, ok, _ in entries)
        self.verdict = ("non-lax on this corpus" if self.all_iso
                        else "lax behaviour witnessed")

    def __repr__(self):
        return f"Thm58Report({self.verdict}, {len(self.entries)} entries)"


def check_theorem58_hypotheses(chains=(), squares=()) -> Thm58Report:
    """Evaluate the invertibility hypotheses on a corpus.

    chains: triples (M, N, P) of bimodules over one algebra pair; the
    composition map [N,P] (x)_{[N,N]} [M,N] -> [M,P] must be invertible.
    squares: quadruples (M, M', N, N') of composable bimodules; the
    descended tensor-of-maps, the square 3-cell, and the multiplication
    2-cells of both composable pairs must be invertible.
    If every entry is invertible the assignment restricts to a genuine
    2-functor on the corpus and the verdict says so."""
    entries = []
    seen = []
    for m, n, p in chains:
        cb = comp_bar(m, n, p)
        entries.append(("composition collapse", cb.is_iso,
                        f"{cb.mat.rows}x{cb.mat.cols} rank {rank(cb.mat)}"))
        for alg in (m.left, m.right):
            if not any(alg is s for s in seen):
                seen.append(alg)
    for m, mp, n, np_ in squares:
        sq = m_square(zero_bimodule_map(m, mp), zero_bimodule_map(n, np_))
        entries.append(("descended tensor of maps", sq.n_res.is_iso,
                        f"{sq.n_res.mat.rows}x{sq.n_res.mat.cols} "
                        f"rank {rank(sq.n_res.mat)}"))
        entries.append(("square 3-cell", sq.is_iso and sq.valid == [],
                        f"{sq.cell.mat.rows}x{sq.cell.mat.cols} "
                        f"rank {rank(sq.cell.mat)}"))
        for mt in (sq.mult_src, sq.mult_tgt):
            entries.append(("multiplication 2-cell", mt.is_iso,
                            f"{mt.mult.mat.rows}x{mt.mult.mat.cols} "
                            f"rank {rank(mt.mult.mat)}"))
        for alg in (m.left, m.right, n.right):
            if not any(alg is s for s in seen):
                seen.append(alg)
    for alg in seen:
        ea = end_algebra(regular_bimodule(alg))
        entries.append(("identity center strict", ea.dim == center(alg).dim,
                        f"dim {ea.dim}"))
    return Thm58Report(entries)
