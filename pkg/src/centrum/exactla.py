"""Exact linear algebra over the rationals or a prime field.

Everything here is deterministic and exact: no floats anywhere.  Matrices are
dense lists-of-lists of field elements; vectors are plain lists.  Subspaces
are stored in reduced column echelon form, so two equal subspaces have equal
basis matrices and can be compared with ==.  Quotients carry explicit
projection/section witnesses with proj @ sect == I and proj @ relations == 0,
checked at construction time.
"""

from __future__ import annotations

from fractions import Fraction


# ---------------------------------------------------------------------------
# fields


class Rationals:
    """The field of rational numbers; elements are fractions.Fraction."""

    name = "rational"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def parse(self, s: str):
        return Fraction(s)

    def fmt(self, x) -> str:
        return str(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rational")


class FpElem:
    """An element of GF(p), with operator overloading so the generic matrix
    code works unchanged.  Truthiness == nonzero, as for Fraction."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def __add__(self, other):
        return FpElem(self.v + other.v, self.p)

    def __sub__(self, other):
        return FpElem(self.v - other.v, self.p)

    def __neg__(self):
        return FpElem(-self.v, self.p)

    def __mul__(self, other):
        return FpElem(self.v * other.v, self.p)

    def __truediv__(self, other):
        if other.v == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return FpElem(self.v * pow(other.v, self.p - 2, self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, FpElem) and self.v == other.v and self.p == other.p

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """GF(p) for a prime p."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"gfp:{p}"
        self.zero = FpElem(0, p)
        self.one = FpElem(1, p)

    def from_int(self, n: int):
        return FpElem(n, self.p)

    def parse(self, s: str):
        return FpElem(int(s), self.p)

    def fmt(self, x) -> str:
        return str(x.v)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("gfp", self.p))


QQ = Rationals()


def field_from_name(name: str):
    """Parse a field spec: "rational" or "gfp:<p>"."""
    if name == "rational":
        return QQ
    if name.startswith("gfp:"):
        return PrimeField(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown field {name!r}")


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Dense matrix over an exact field.  Rows-of-rows storage; treat as
    immutable after construction."""

    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, data, field, ncols=None):
        self.data = [list(r) for r in data]
        self.rows = len(self.data)
        if self.rows:
            self.cols = len(self.data[0])
        else:
            self.cols = 0 if ncols is None else ncols
        for r in self.data:
            assert len(r) == self.cols, "ragged matrix"
        self.field = field

    # -- constructors -------------------------------------------------------

    @staticmethod
    def identity(n: int, field) -> "Matrix":
        z, o = field.zero, field.one
        return Matrix([[o if i == j else z for j in range(n)] for i in range(n)], field)

    @staticmethod
    def zeros(r: int, c: int, field) -> "Matrix":
        z = field.zero
        return Matrix([[z] * c for _ in range(r)], field, ncols=c)

    @staticmethod
    def from_int_rows(data, field) -> "Matrix":
        return Matrix([[field.from_int(x) for x in row] for row in data], field)

    @staticmethod
    def from_columns(columns, ambient: int, field) -> "Matrix":
        """Build an ambient x len(columns) matrix from a list of vectors."""
        cols = list(columns)
        for c in cols:
            assert len(c) == ambient
        return Matrix([[c[i] for c in cols] for i in range(ambient)], field,
                      ncols=len(cols))

    @staticmethod
    def column(vec, field) -> "Matrix":
        return Matrix([[x] for x in vec], field)

    # -- basic ops ----------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"

    def copy(self) -> "Matrix":
        return Matrix(self.data, self.field, ncols=self.cols)

    def __add__(self, other) -> "Matrix":
        assert self.shape == other.shape
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
            self.field,
            ncols=self.cols,
        )

    def __sub__(self, other) -> "Matrix":
        assert self.shape == other.shape
        return Matrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
            self.field,
            ncols=self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self.data], self.field, ncols=self.cols)

    def scale(self, c) -> "Matrix":
        return Matrix([[c * a for a in row] for row in self.data], self.field, ncols=self.cols)

    def __matmul__(self, other) -> "Matrix":
        assert self.cols == other.rows, f"shape mismatch {self.shape} @ {other.shape}"
        zero = self.field.zero
        ot = other.data
        out = []
        for row in self.data:
            nz = [(k, a) for k, a in enumerate(row) if a]
            new = [zero] * other.cols
            for k, a in nz:
                rk = ot[k]
                for j in range(other.cols):
                    b = rk[j]
                    if b:
                        new[j] = new[j] + a * b
            out.append(new)
        return Matrix(out, self.field, ncols=other.cols)

    def apply(self, vec):
        """Matrix-vector product; vec is a plain list."""
        assert len(vec) == self.cols
        zero = self.field.zero
        out = []
        for row in self.data:
            s = zero
            for a, x in zip(row, vec):
                if a and x:
                    s = s + a * x
            out.append(s)
        return out

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.field,
            ncols=self.rows,
        )

    def kron(self, other) -> "Matrix":
        """Kronecker product; row-major, left factor major: index (i,k) of the
        product space is i*other.rows + k."""
        z = self.field.zero
        out = []
        for i in range(self.rows):
            ri = self.data[i]
            for k in range(other.rows):
                rk = other.data[k]
                row = []
                for j in range(self.cols):
                    a = ri[j]
                    if a:
                        row.extend(a * b for b in rk)
                    else:
                        row.extend([z] * other.cols)
                out.append(row)
        return Matrix(out, self.field, ncols=self.cols * other.cols)

    def hstack(self, other) -> "Matrix":
        assert self.rows == other.rows
        return Matrix(
            [ra + rb for ra, rb in zip(self.data, other.data)],
            self.field,
            ncols=self.cols + other.cols,
        )

    def vstack(self, other) -> "Matrix":
        assert self.cols == other.cols
        return Matrix(self.data + other.data, self.field, ncols=self.cols)

    def col_list(self, j: int):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.col_list(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(not a for row in self.data for a in row)

    def to_int_grid(self):
        """Convenience for tests: entries as ints (fails if non-integral)."""
        out = []
        for row in self.data:
            r = []
            for a in row:
                f = Fraction(a) if not isinstance(a, FpElem) else Fraction(a.v)
                assert f.denominator == 1
                r.append(int(f))
            out.append(r)
        return out


def stack_rows(mats) -> Matrix:
    """Vertical stack of a nonempty list of matrices."""
    out = mats[0]
    for m in mats[1:]:
        out = out.vstack(m)
    return out


def stack_cols(mats) -> Matrix:
    out = mats[0]
    for m in mats[1:]:
        out = out.hstack(m)
    return out


def tensor_permutation(dims, perm, field) -> Matrix:
    """Permutation matrix reordering tensor slots.

    dims: sizes of the slots of the source flat space (row-major flattening,
    leftmost slot major).  perm: the target's slot i is the source's slot
    perm[i].  Returns P with P @ e_flat(src multi-index) = e_flat(permuted).
    """
    n = 1
    for d in dims:
        n *= d
    tgt_dims = [dims[p] for p in perm]
    P = Matrix.zeros(n, n, field)
    one = field.one
    # enumerate source multi-indices in row-major order
    idx = [0] * len(dims)
    for flat in range(n):
        # compute source multi-index
        rem = flat
        for s in range(len(dims) - 1, -1, -1):
            idx[s] = rem % dims[s]
            rem //= dims[s]
        # target flat index
        t = 0
        for s in range(len(perm)):
            t = t * tgt_dims[s] + idx[perm[s]]
        P.data[t][flat] = one
    return P


# ---------------------------------------------------------------------------
# elimination


def rref(m: Matrix):
    """Reduced row echelon form.  Returns (R, pivots)."""
    R = [row[:] for row in m.data]
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pr = None
        for i in range(r, rows):
            if R[i][c]:
                pr = i
                break
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        pv = R[r][c]
        if pv != m.field.one:
            inv_row = [a / pv for a in R[r]]
            R[r] = inv_row
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                Ri, Rr = R[i], R[r]
                R[i] = [a - f * b for a, b in zip(Ri, Rr)]
        pivots.append(c)
        r += 1
    return Matrix(R, m.field, ncols=cols), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def column_echelon(m: Matrix) -> Matrix:
    """Reduced column echelon form of the column space of m: each basis column
    has leading entry 1 at a distinct row, that row is zero in the other
    columns, columns ordered by leading row.  Canonical: equal subspaces give
    equal matrices."""
    R, pivots = rref(m.transpose())
    cols = [R.data[i] for i in range(len(pivots))]
    return Matrix.from_columns(cols, m.rows, m.field)


class Subspace:
    """A subspace of k^ambient with canonical (reduced column echelon) basis."""

    __slots__ = ("ambient", "basis", "field")

    def __init__(self, ambient: int, basis: Matrix, field, canonical=False):
        self.ambient = ambient
        self.field = field
        self.basis = basis if canonical else column_echelon(basis)
        assert self.basis.rows == ambient

    @property
    def dim(self) -> int:
        return self.basis.cols

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient})"

    def contains(self, vec) -> bool:
        return solve(self.basis, vec) is not None

    def coords(self, vec):
        """Coordinates of vec in the canonical basis, or None."""
        return solve(self.basis, vec)

    def leading_rows(self):
        rows = []
        for j in range(self.basis.cols):
            for i in range(self.ambient):
                if self.basis.data[i][j]:
                    rows.append(i)
                    break
        return rows


def kernel(m: Matrix) -> Subspace:
    """Kernel of m as a canonical subspace of the source."""
    R, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    z, o = m.field.zero, m.field.one
    cols = []
    for j in free:
        v = [z] * m.cols
        v[j] = o
        for i, p in enumerate(pivots):
            v[p] = -R.data[i][j]
        cols.append(v)
    basis = Matrix.from_columns(cols, m.cols, m.field)
    return Subspace(m.cols, basis, m.field)


def column_space(m: Matrix) -> Subspace:
    return Subspace(m.rows, column_echelon(m), m.field, canonical=True)


def solve(A: Matrix, b) -> "list | None":
    """One solution of A x = b with free variables set to zero, or None."""
    X = solve_matrix(A, Matrix.from_columns([b], A.rows, A.field))
    return X.col_list(0) if X is not None else None


def solve_matrix(A: Matrix, B: Matrix) -> "Matrix | None":
    """Solve A X = B for all columns at once (free variables zero).
    Returns None if any column is inconsistent."""
    assert A.rows == B.rows
    aug = A.hstack(B)
    R, pivots = rref(aug)
    usable = [p for p in pivots if p < A.cols]
    if len(usable) != len(pivots):
        return None
    z = A.field.zero
    out = [[z] * B.cols for _ in range(A.cols)]
    for i, p in enumerate(usable):
        for j in range(B.cols):
            out[p][j] = R.data[i][A.cols + j]
    X = Matrix(out, A.field, ncols=B.cols)
    return X


def inverse(m: Matrix) -> "Matrix | None":
    """Two-sided inverse of a square matrix, or None."""
    if m.rows != m.cols:
        return None
    X = solve_matrix(m, Matrix.identity(m.rows, m.field))
    if X is None:
        return None
    if (m @ X) != Matrix.identity(m.rows, m.field):
        return None
    assert (X @ m) == Matrix.identity(m.rows, m.field)
    return X


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


# ---------------------------------------------------------------------------
# quotients


class Quotient:
    """Quotient of k^ambient by a relation subspace, with explicit witnesses.

    relations: canonical basis matrix of the relation subspace (ambient x r).
    proj: dim x ambient, the projection onto quotient coordinates.
    sect: ambient x dim, a section (spanned by standard basis vectors at the
    non-leading rows of the relation space), with proj @ sect == I.
    """

    __slots__ = ("ambient", "relations", "dim", "proj", "sect", "field")

    def __init__(self, ambient, relations, dim, proj, sect, field):
        self.ambient = ambient
        self.relations = relations
        self.dim = dim
        self.proj = proj
        self.sect = sect
        self.field = field

    def project(self, vec):
        return self.proj.apply(vec)

    def lift(self, vec):
        return self.sect.apply(vec)

    def __repr__(self):
        return f"Quotient(k^{self.ambient} -> k^{self.dim})"


def cokernel(rel: Matrix) -> Quotient:
    """Quotient of the target space k^rel.rows by the column space of rel."""
    field = rel.field
    n = rel.rows
    B = column_echelon(rel)
    d = B.cols
    lead = set()
    for j in range(d):
        for i in range(n):
            if B.data[i][j]:
                lead.add(i)
                break
    free = [i for i in range(n) if i not in lead]
    z, o = field.zero, field.one
    sect = Matrix.zeros(n, n - d, field)
    for j, i in enumerate(free):
        sect.data[i][j] = o
    if d == 0:
        proj = Matrix.identity(n, field)
        return Quotient(n, B, n, proj, sect, field)
    # write x uniquely as B a + sect c; quotient coords of x are c
    MB = B.hstack(sect)
    Minv = inverse(MB)
    assert Minv is not None, "echelon basis + complement must be invertible"
    proj = Matrix(Minv.data[d:], field, ncols=n)
    assert (proj @ sect) == Matrix.identity(n - d, field)
    assert (proj @ B).is_zero()
    return Quotient(n, B, n - d, proj, sect, field)


def quotient_induced(q_tgt: Quotient, F: Matrix, q_src: Quotient) -> Matrix:
    """The map induced by F: ambient_src -> ambient_tgt on the quotients.

    Raises if F does not descend (i.e. if F does not map the source relations
    into the target relations).
    """
    assert F.rows == q_tgt.ambient and F.cols == q_src.ambient
    down = q_tgt.proj @ F
    if not (down @ q_src.relations).is_zero():
        raise ValueError("map does not descend to the quotient")
    return down @ q_src.sect


# ---------------------------------------------------------------------------
# randomness (seeded by the caller; uniform integer coordinates)


def random_point(dim: int, bound: int, rng, field):
    """A vector with integer entries drawn uniformly from [-bound, bound]."""
    return [field.from_int(rng.randint(-bound, bound)) for _ in range(dim)]


def random_matrix(rows: int, cols: int, bound: int, rng, field) -> Matrix:
    return Matrix(
        [
            [field.from_int(rng.randint(-bound, bound)) for _ in range(cols)]
            for _ in range(rows)
        ],
        field,
    )
