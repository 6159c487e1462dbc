"""A walk through the bimodule calculus and the cospan bicategory: fibered
tensor products with their quotient witnesses, unit and associator
isomorphisms, pentagon/triangle spot checks, the horizontal interchanger on a
2x2 grid with its naturality, and invertibility certificates for cospans and
2-diagrams (including one refusal and one probabilistic certificate with its
reported failure bound).

Deterministic (fixed seed), exact arithmetic; exits 0 iff every check
holds."""

import random
import sys

from centrum.algebra import alg_matrix, alg_product_k
from centrum.bimodule import (
    pentagon_check,
    regular_bimodule,
    tensor_over,
    triangle_check,
    unit_iso_left,
    validate_bimodule,
)
from centrum.corpus import random_pentagon_chain
from centrum.cospanbicat import (
    beta_cell,
    check_beta_naturality,
    find_invertible_3cell,
    identity_2diagram,
    identity_cospan,
    is_invertible_cospan,
    validate_3cell,
)
from centrum.exactla import Matrix, QQ, inverse, rank
from centrum.fixtures import (
    col_bimodule,
    diagonal_inclusion,
    random_interchanger_grid,
    random_invertible,
    row_bimodule,
    twist_2diagram,
)
from centrum.fullcenter import Z_hom

WIDTH = 72


def section(title):
    print()
    print("=" * WIDTH)
    print(f"  {title}")
    print("=" * WIDTH)


def kv(key, value, pad=52):
    print(f"  {key:<{pad}} {value}")


def mark(flag):
    return "ok" if flag else "FAIL"


def main():
    rng = random.Random(2024)
    all_ok = True

    section("fibered tensor products and their witnesses")
    for left, right, label in (
        (col_bimodule(2), row_bimodule(2), "col_2 (x)_k row_2"),
        (row_bimodule(2), col_bimodule(2), "row_2 (x)_{M_2} col_2"),
    ):
        t = tensor_over(left, right)
        q = t.quot
        wit = (q.proj @ q.sect == Matrix.identity(q.dim, QQ)
               and (q.proj @ q.relations).is_zero()
               and validate_bimodule(t.product) == []
               and t.dim == q.ambient - rank(q.relations))
        all_ok &= wit
        kv(label, f"ambient {q.ambient} -> dim {t.dim}  witnesses {mark(wit)}")

    section("unit isomorphism")
    m = col_bimodule(2)
    t = tensor_over(regular_bimodule(alg_matrix(2)), m)
    u = unit_iso_left(t)
    uinv = inverse(u.mat)
    two_sided = (u.mat @ uinv == Matrix.identity(m.dim, QQ)
                 and uinv @ u.mat == Matrix.identity(t.dim, QQ))
    all_ok &= two_sided
    kv("M_2 (x)_{M_2} col_2 -> col_2", f"two-sided inverse {mark(two_sided)}")

    section("pentagon and triangle on seeded chains")
    for i in range(3):
        chain = random_pentagon_chain(rng)
        p = pentagon_check(*chain)
        tr = triangle_check(chain[0], chain[1])
        all_ok &= p and tr
        kv(f"chain {i + 1}  dims {[b.dim for b in chain]}",
           f"pentagon {mark(p)}  triangle {mark(tr)}")

    section("the horizontal interchanger on a 2x2 grid")
    grid = random_interchanger_grid(rng)
    b = beta_cell(*grid)
    two_sided = (b.cell.mat @ b.inverse_cell.mat
                 == Matrix.identity(b.tgt_diagram.M.dim, QQ)
                 and b.inverse_cell.mat @ b.cell.mat
                 == Matrix.identity(b.src_diagram.M.dim, QQ))
    cells_ok = (validate_3cell(b.cell) == []
                and validate_3cell(b.inverse_cell) == [])
    ps = [random_invertible(x.M.dim, rng, bound=1) for x in grid]
    twisted = tuple(twist_2diagram(x, P) for x, P in zip(grid, ps))
    natural = check_beta_naturality(b, beta_cell(*twisted), *ps)
    all_ok &= two_sided and cells_ok and natural
    kv("grid hom dims", [x.M.dim for x in grid])
    kv("interchanger two-sided", mark(two_sided))
    kv("both directions are 3-cells", mark(cells_ok))
    kv("natural under random twists", mark(natural))

    section("invertibility certificates")
    good = is_invertible_cospan(identity_cospan(alg_product_k(2)))
    all_ok &= good.invertible
    kv("identity cospan on k^2",
       f"invertible {mark(good.invertible)} (with identity-comparison"
       f" witnesses)")

    refused = is_invertible_cospan(Z_hom(diagonal_inclusion(2)).cospan)
    all_ok &= not refused.invertible
    kv("centralizer cospan of the diagonal inclusion",
       f"refused {mark(not refused.invertible)}")
    for reason in refused.reasons:
        kv("  reason", reason)

    d = identity_2diagram(identity_cospan(alg_product_k(2)))
    d = twist_2diagram(d, random_invertible(d.M.dim, rng))
    search = find_invertible_3cell(d, identity_2diagram(d.src), rng=rng)
    cert = search.found and validate_3cell(search.cell) == []
    all_ok &= cert
    kv("twisted identity 2-diagram", f"invertible 3-cell found {mark(cert)}")
    kv("  certificate", search.detail)
    if not search.certified:
        kv("  failure bound", f"{float(search.failure_bound):.3e}")

    section("summary")
    kv("all checks", mark(all_ok))
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
