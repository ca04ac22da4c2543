"""Matrices over the supported rings, Smith normal form and linear solvers."""
from __future__ import annotations

from typing import Callable, Iterable, Optional, Sequence

from . import linalg
from . import poly as P
from .errors import NonInvertible, RingMismatch, ShapeError, UnsupportedRing
from .rings import (
    PID_KINDS,
    RingDesc,
    RingElem,
    RingHom,
    associate_unit,
    embed,
    exact_quotient,
    norm,
)


class Mat:
    """Immutable rows x cols matrix of RingElems sharing one ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: RingDesc, entries: Sequence[Sequence], cols: Optional[int] = None):
        conv = []
        for r in entries:
            row = []
            for x in r:
                if not isinstance(x, RingElem):
                    x = ring(x)
                elif x.ring != ring:
                    raise RingMismatch(f"entry in {x.ring}, matrix over {ring}")
                row.append(x)
            conv.append(tuple(row))
        self.ring = ring
        self.rows = len(conv)
        self.cols = len(conv[0]) if conv else (cols or 0)
        if any(len(r) != self.cols for r in conv):
            raise ShapeError("ragged matrix")
        self.entries = tuple(conv)

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, ring: RingDesc, rows: int, cols: int) -> "Mat":
        z = ring.zero()
        return cls(ring, [[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, ring: RingDesc, n: int) -> "Mat":
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, ring: RingDesc, ds: Sequence, rows: Optional[int] = None, cols: Optional[int] = None) -> "Mat":
        rows = len(ds) if rows is None else rows
        cols = len(ds) if cols is None else cols
        z = ring.zero()
        out = [[z] * cols for _ in range(rows)]
        for i, d in enumerate(ds):
            out[i][i] = d if isinstance(d, RingElem) else ring(d)
        return cls(ring, out, cols)

    @classmethod
    def column(cls, ring: RingDesc, xs: Sequence) -> "Mat":
        return cls(ring, [[x] for x in xs], 1)

    # -- access --------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.ring == other.ring
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.shape, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.entries)
        return f"Mat[{self.rows}x{self.cols} over {self.ring}]({body})"

    def tolist(self) -> list[list[RingElem]]:
        return [list(r) for r in self.entries]

    # -- arithmetic ----------------------------------------------------------
    def _same(self, other: "Mat"):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "Mat") -> "Mat":
        self._same(other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} + {other.shape}")
        return Mat(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __neg__(self) -> "Mat":
        return Mat(self.ring, [[-a for a in r] for r in self.entries], self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._same(other)
        if self.cols != other.rows:
            raise ShapeError(f"{self.shape} @ {other.shape}")
        R = self.ring
        z = R.zero()
        ocols = other.col
        cols = [ocols(j) for j in range(other.cols)]
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a.num and b.num:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Mat(R, out, other.cols)

    def scale(self, c) -> "Mat":
        c = c if isinstance(c, RingElem) else self.ring(c)
        return Mat(self.ring, [[c * a for a in r] for r in self.entries], self.cols)

    def T(self) -> "Mat":
        return Mat(self.ring, [list(self.col(j)) for j in range(self.cols)], self.rows)

    def map(self, f: Callable[[RingElem], RingElem], ring: RingDesc) -> "Mat":
        return Mat(ring, [[f(a) for a in r] for r in self.entries], self.cols)

    def apply_hom(self, hom: RingHom) -> "Mat":
        if hom.source != self.ring:
            raise RingMismatch(f"hom source {hom.source} vs matrix ring {self.ring}")
        return self.map(hom, hom.target)

    def embed(self, ring: RingDesc) -> "Mat":
        return self.map(lambda a: embed(a, ring), ring)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Mat":
        rows, cols = list(rows), list(cols)
        return Mat(self.ring, [[self.entries[i][j] for j in cols] for i in rows], len(cols))

    def hstack(self, other: "Mat") -> "Mat":
        self._same(other)
        if self.rows != other.rows:
            raise ShapeError("hstack row mismatch")
        return Mat(self.ring, [list(a) + list(b) for a, b in zip(self.entries, other.entries)], self.cols + other.cols)

    def vstack(self, other: "Mat") -> "Mat":
        self._same(other)
        if self.cols != other.cols:
            raise ShapeError("vstack column mismatch")
        return Mat(self.ring, list(self.entries) + list(other.entries), self.cols)

    def kron(self, other: "Mat") -> "Mat":
        self._same(other)
        out = []
        for a_row in self.entries:
            for b_row in other.entries:
                out.append([a * b for a in a_row for b in b_row])
        return Mat(self.ring, out, self.cols * other.cols)

    def is_zero(self) -> bool:
        return all(not a.num for r in self.entries for a in r)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Mat.identity(self.ring, self.rows)

    def is_diagonal(self) -> bool:
        return all(not self.entries[i][j].num for i in range(self.rows) for j in range(self.cols) if i != j)

    # -- determinants and inverses --------------------------------------------
    def det(self) -> RingElem:
        """Determinant, computed by elimination in the fraction field."""
        if self.rows != self.cols:
            raise ShapeError("det of non-square matrix")
        K = self.ring.fraction_field
        A = [[embed(x, K) for x in r] for r in self.entries]
        n = self.rows
        d = K.one()
        for c in range(n):
            piv = next((i for i in range(c, n) if A[i][c].num), None)
            if piv is None:
                return self.ring.zero()
            if piv != c:
                A[c], A[piv] = A[piv], A[c]
                d = -d
            d = d * A[c][c]
            inv = A[c][c].inverse()
            for i in range(c + 1, n):
                if A[i][c].num:
                    f = A[i][c] * inv
                    A[i] = [x - f * y for x, y in zip(A[i], A[c])]
        return embed(d, self.ring) if self.ring != K else d

    def inverse(self) -> "Mat":
        """Inverse over the matrix ring itself; NonInvertible otherwise."""
        if self.rows != self.cols:
            raise ShapeError("inverse of non-square matrix")
        K = self.ring.fraction_field
        n = self.rows
        A = [[embed(x, K) for x in r] + [K.one() if i == j else K.zero() for j in range(n)]
             for i, r in enumerate(self.entries)]
        for c in range(n):
            piv = next((i for i in range(c, n) if A[i][c].num), None)
            if piv is None:
                raise NonInvertible("singular matrix")
            A[c], A[piv] = A[piv], A[c]
            inv = A[c][c].inverse()
            A[c] = [x * inv for x in A[c]]
            for i in range(n):
                if i != c and A[i][c].num:
                    f = A[i][c]
                    A[i] = [x - f * y for x, y in zip(A[i], A[c])]
        try:
            out = Mat(self.ring, [[embed(x, self.ring) if self.ring != K else x for x in r[n:]] for r in A], n)
        except ValueError as exc:
            raise NonInvertible(f"inverse has entries outside {self.ring}") from exc
        return out

    def degree_range(self) -> tuple[int, int]:
        """(min valuation, max degree) over nonzero Laurent/polynomial entries."""
        lo, hi = None, None
        for r in self.entries:
            for a in r:
                if a.num:
                    v, d = a.valuation(), a.degree()
                    lo = v if lo is None else min(lo, v)
                    hi = d if hi is None else max(hi, d)
        return (0, 0) if lo is None else (lo, hi)


def block_diag(ring: RingDesc, *blocks: Mat) -> Mat:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = ring.zero()
    out = [[z] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return Mat(ring, out, cols)


# -- Smith normal form ----------------------------------------------------------


def _require_pid(R: RingDesc):
    if R.kind not in PID_KINDS:
        raise UnsupportedRing(f"{R} is not a supported PID")


def _bezout(a: RingElem, b: RingElem) -> tuple:
    """(s, u, a/g, b/g) with s a + u b = g a gcd of a and b (neither divides)."""
    R = a.ring
    F = R.field
    q = exact_quotient(a, b)
    if q is not None:
        return R.zero(), R.one(), q, R.one()
    g, s, u = P.xgcd(F, a.num, b.num)
    ge = R.elem(g)
    s = R.elem(s) * R.elem(a.den)
    u = R.elem(u) * R.elem(b.den)
    return s, u, exact_quotient(a, ge), exact_quotient(b, ge)


def smith_normal_form(m: Mat, track_inverse: bool = False) -> tuple:
    """Return (U, D, V) with U @ m @ V == D.

    U and V are invertible over the ring, D is diagonal with each diagonal
    entry dividing the next, and nonzero diagonal entries are canonical
    associates (see :func:`eqpatch.rings.associate_unit`).
    """
    R = m.ring
    _require_pid(R)
    nr, nc = m.rows, m.cols
    D = [list(r) for r in m.entries]
    U = [list(r) for r in Mat.identity(R, nr).entries]
    V = [list(r) for r in Mat.identity(R, nc).entries]
    W = [list(r) for r in Mat.identity(R, nr).entries] if track_inverse else None  # U^-1

    def row_op(i, j, q):  # row_i -= q * row_j
        D[i] = [a - q * b for a, b in zip(D[i], D[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]
        if W is not None:
            for r in W:
                r[j] = r[j] + q * r[i]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in D:
            r[i] = r[i] - q * r[j]
        for r in V:
            r[i] = r[i] - q * r[j]

    def row_bezout(i, j, s, u, a, b):
        # rows (i, j) <- [[s, u], [-b, a]] (rows i, j), a unimodular step
        for M_ in (D, U):
            ri, rj = M_[i], M_[j]
            M_[i] = [s * x + u * y for x, y in zip(ri, rj)]
            M_[j] = [a * y - b * x for x, y in zip(ri, rj)]
        if W is not None:
            for r in W:
                x, y = r[i], r[j]
                r[i] = a * x + b * y
                r[j] = s * y - u * x

    def col_bezout(i, j, s, u, a, b):
        for M_ in (D, V):
            for r in M_:
                x, y = r[i], r[j]
                r[i] = s * x + u * y
                r[j] = a * y - b * x

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        if W is not None:
            for r in W:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if D[i][j].num:
                    nv = norm(D[i][j])
                    if best is None or nv < best[0]:
                        best = (nv, i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if D[i][t].num:
                    q = exact_quotient(D[i][t], D[t][t])
                    if q is not None:
                        row_op(i, t, q)
                    else:
                        row_bezout(t, i, *_bezout(D[t][t], D[i][t]))
                        dirty = True
            for j in range(t + 1, nc):
                if D[t][j].num:
                    q = exact_quotient(D[t][j], D[t][t])
                    if q is not None:
                        col_op(j, t, q)
                    else:
                        col_bezout(t, j, *_bezout(D[t][t], D[t][j]))
                        dirty = True
            if dirty and any(D[i][t].num for i in range(t + 1, nr)):
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if D[i][j].num and exact_quotient(D[i][j], D[t][t]) is None:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # pull the offending row into the pivot row and reduce again
            D[t] = [a + b for a, b in zip(D[t], D[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
            if W is not None:
                for r in W:
                    r[bad] = r[bad] - r[t]
        u = associate_unit(D[t][t])
        if not u.is_one():
            D[t] = [a * u for a in D[t]]
            U[t] = [a * u for a in U[t]]
            if W is not None:
                ui = u.inverse()
                for r in W:
                    r[t] = r[t] * ui
        t += 1
    out = (Mat(R, U, nr), Mat(R, D, nc), Mat(R, V, nc))
    return out + (Mat(R, W, nr),) if W is not None else out


def diagonal(D: Mat) -> list[RingElem]:
    return [D[i, i] for i in range(min(D.rows, D.cols))]


def invariant_factors(m: Mat) -> list[RingElem]:
    """Nonzero SNF diagonal entries (units included)."""
    _, D, _ = smith_normal_form(m)
    return [d for d in diagonal(D) if d.num]


# -- exact solvers ------------------------------------------------------------


def _field_solve(m: Mat, rhs: Mat) -> Optional[Mat]:
    """Gaussian elimination for matrices over a field kind."""
    R = m.ring
    n = m.cols
    k = rhs.cols
    A = [list(r) + list(s) for r, s in zip(m.entries, rhs.entries)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(A)) if A[i][c].num), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c].num:
                f = A[i][c]
                A[i] = [x - f * y if y.num else x for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    for i in range(r, len(A)):
        if any(x.num for x in A[i][n:]):
            return None
    z = R.zero()
    X = [[z] * k for _ in range(n)]
    for row, c in zip(A, pivots):
        X[c] = list(row[n:])
    return Mat(R, X, k)


def solve_exact(m: Mat, rhs: Mat) -> Optional[Mat]:
    """Some X over the ring with m @ X == rhs, or None (PID kinds, no bound)."""
    m._same(rhs)
    if m.rows != rhs.rows:
        raise ShapeError("solve: row mismatch")
    R = m.ring
    if R.is_field:
        return _field_solve(m, rhs)
    U, D, V = smith_normal_form(m)
    b = U @ rhs
    n = m.cols
    z = R.zero()
    Y = [[z] * rhs.cols for _ in range(n)]
    ds = diagonal(D)
    for i in range(m.rows):
        d = ds[i] if i < len(ds) else z
        for j in range(rhs.cols):
            if d.num:
                q = exact_quotient(b[i, j], d)
                if q is None:
                    return None
                Y[i][j] = q
            elif b[i, j].num:
                return None
    return V @ Mat(R, Y, rhs.cols)


def kernel_basis(m: Mat) -> Mat:
    """Columns form a free basis of {x : m x = 0}."""
    R = m.ring
    _require_pid(R)
    if m.rows == 0:
        return Mat.identity(R, m.cols)
    _, D, V = smith_normal_form(m)
    r = sum(1 for d in diagonal(D) if d.num)
    return V.submatrix(range(m.cols), range(r, m.cols)) if r < m.cols else Mat.zero(R, m.cols, 0)


def certified_degree_bound(m: Mat, rhs: Mat) -> int:
    """Cramer-rule style bound: sum of max entry degrees plus slack 2."""
    total = 0
    for M in (m, rhs):
        for r in M.entries:
            best = 0
            for a in r:
                if a.num:
                    lo, hi = a.valuation(), a.degree()
                    best = max(best, abs(lo), abs(hi))
            total += best
    return total + 2


def solve_linear(m: Mat, rhs: Mat, degree_bound: int) -> Optional[Mat]:
    """Solve m X = rhs with X entries of degree at most ``degree_bound``.

    Over k[t] the unknown entries are polynomials of degree <= bound; over
    k[t,1/t] they are Laurent polynomials supported in [-bound, bound].  The
    search is a linear system over the base field, so it is sound and
    complete within the window.  Field kinds and k[t]_(t) have no degree
    window; they are solved exactly.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be >= 0")
    m._same(rhs)
    R = m.ring
    if R.kind not in ("poly", "laurent"):
        return solve_exact(m, rhs)
    F = R.field
    lo_x = 0 if R.kind == "poly" else -degree_bound
    width = degree_bound - lo_x + 1
    n, k = m.cols, rhs.cols
    # unknown index: ((l * k) + j) * width + (e - lo_x) for X[l][j] coefficient of t^e
    lo_m, hi_m = m.degree_range()
    lo_b, hi_b = rhs.degree_range()
    e_lo = min(lo_m + lo_x, lo_b)
    e_hi = max(hi_m + degree_bound, hi_b)
    nexp = e_hi - e_lo + 1
    nunk = n * k * width
    rows = []
    rhs_vec = []
    mcoef = [[(a.laurent_coeffs() if a.num else (0, ())) for a in r] for r in m.entries]
    for i in range(m.rows):
        for j in range(k):
            block = [[0] * nunk for _ in range(nexp)]
            for l in range(n):
                off, cs = mcoef[i][l]
                for a_i, c in enumerate(cs):
                    if not c:
                        continue
                    for w in range(width):
                        e = off + a_i + lo_x + w
                        block[e - e_lo][((l * k) + j) * width + w] += c
            target = rhs[i, j]
            for e in range(e_lo, e_hi + 1):
                rows.append(block[e - e_lo])
                rhs_vec.append(target.coeff(e) if target.num else 0)
    sol = linalg.solve(F, rows, rhs_vec) if rows else [0] * nunk
    if sol is None:
        return None
    X = []
    for l in range(n):
        row = []
        for j in range(k):
            base = ((l * k) + j) * width
            row.append(R.laurent(sol[base:base + width], lo_x))
        X.append(row)
    return Mat(R, X, k)


def solve_linear_certified(m: Mat, rhs: Mat, cap: int = 256) -> Optional[Mat]:
    """solve_linear with the certified bound, doubling on failure up to ``cap``."""
    b = certified_degree_bound(m, rhs)
    while True:
        x = solve_linear(m, rhs, b)
        if x is not None:
            return x
        if b >= cap:
            return None
        b = min(2 * b, cap)


def is_unit_matrix(m: Mat) -> bool:
    return m.rows == m.cols and m.det().is_unit()
