"""Birkhoff factorization of Laurent matrices and vector bundles on the two-chart line.

Conventions.  ``t`` is the coordinate on the 0-chart, ``s = 1/t`` on the
infinity chart, and the overlap ring is k[t, 1/t].  A cocycle ``c`` factors as
``c = M_minus . diag(t^a) . M_plus`` with ``M_minus`` invertible over k[s],
``M_plus`` invertible over k[t] and ``a`` sorted in descending order.

A two-chart datum uses row vectors: a section is a pair of rows
``(s_inf over k[s], s_0 over k[t])`` with ``s_0 = s_inf . phi``.  With this
convention the datum ``phi = diag(t^a)`` is O(a_1) + ... + O(a_n).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import BoundExceeded, InternalCheckFailure, NonInvertible, ShapeError
from .linalg import nullspace
from .matrix import Mat, diagonal, kernel_basis, smith_normal_form, solve_exact
from .rings import Laurent, Poly, RingDesc, RingElem, RingHom


def _rings(k: RingDesc):
    return Laurent(k), Poly(k), Poly(k, "s")


def s_to_laurent(k: RingDesc) -> RingHom:
    L, _, S = _rings(k)
    return RingHom(S, L, L.monomial(1, -1))


def t_to_laurent(k: RingDesc) -> RingHom:
    L, T, _ = _rings(k)
    return RingHom(T, L)


def _top(x: RingElem) -> int:
    return x.degree()


# -- domain types ------------------------------------------------------------------


class Cocycle:
    """An invertible n x n matrix over k[t, 1/t]."""

    __slots__ = ("field", "matrix", "inverse")

    def __init__(self, matrix: Mat, inverse: Optional[Mat] = None):
        L = matrix.ring
        if L.kind != "laurent":
            raise ShapeError("cocycles live over k[t,1/t]")
        if matrix.rows != matrix.cols:
            raise ShapeError("cocycle must be square")
        if inverse is None:
            inverse = matrix.inverse()  # NonInvertible if det is not a monomial
        elif not (matrix @ inverse).is_identity():
            raise NonInvertible("stored inverse is wrong")
        self.field = L.base
        self.matrix = matrix
        self.inverse = inverse

    @property
    def n(self) -> int:
        return self.matrix.rows

    def det_valuation(self) -> int:
        return self.matrix.det().valuation()

    def __repr__(self):
        return f"Cocycle({self.matrix!r})"


@dataclass(frozen=True)
class SplittingType:
    exponents: tuple

    def __post_init__(self):
        if list(self.exponents) != sorted(self.exponents, reverse=True):
            raise ValueError("splitting type must be sorted in descending order")

    def shifted(self, n: int) -> "SplittingType":
        return SplittingType(tuple(a + n for a in self.exponents))

    def is_trivial(self) -> bool:
        return all(a == 0 for a in self.exponents)

    def h0(self) -> int:
        return sum(max(a + 1, 0) for a in self.exponents)


@dataclass(frozen=True)
class TwoChartDatum:
    """Free modules of rank n on both charts glued by ``phi`` (row convention)."""

    phi: Cocycle

    @property
    def n(self) -> int:
        return self.phi.n

    @property
    def field(self) -> RingDesc:
        return self.phi.field


def diagonal_cocycle(k: RingDesc, exps) -> Cocycle:
    L = Laurent(k)
    return Cocycle(Mat.diag(L, [L.monomial(1, a) for a in exps]))


# -- factorization -----------------------------------------------------------------------


@dataclass
class Factorization:
    minus: Mat  # over k[s]
    type: SplittingType
    plus: Mat  # over k[t]
    normalized_at_infinity: bool

    def product(self) -> Mat:
        k = self.plus.ring.base
        L = Laurent(k)
        D = Mat.diag(L, [L.monomial(1, a) for a in self.type.exponents])
        return self.minus.apply_hom(s_to_laurent(k)) @ D @ self.plus.apply_hom(t_to_laurent(k))


def _laurent_to_s(x: RingElem, S: RingDesc) -> RingElem:
    """An element of k[t,1/t] with no positive powers, as a polynomial in s."""
    if not x.num:
        return S.zero()
    off, cs = x.laurent_coeffs()
    top = off + len(cs) - 1
    if top > 0:
        raise InternalCheckFailure(f"{x} has positive powers of t")
    out = [0] * (-off + 1)
    for i, c in enumerate(cs):
        out[-(off + i)] = c
    return S.elem(out)


def _laurent_to_t(x: RingElem, T: RingDesc) -> RingElem:
    if not x.num:
        return T.zero()
    off, cs = x.laurent_coeffs()
    if off < 0:
        raise InternalCheckFailure(f"{x} has negative powers of t")
    return T.laurent(cs, off)


def birkhoff_factorize(c: Cocycle) -> Factorization:
    """c = M_minus . diag(t^a) . M_plus with exponents descending.

    Column reduction: right-multiplying by elementary k[t]-matrices, lower the
    top t-degree of a column whenever the matrix of top coefficients is
    singular.  When it becomes invertible, c . U . diag(t^-d) is invertible
    over k[s].  Constants are then moved into M_plus when the exponent
    pattern allows it, giving M_minus(infinity) = I.
    """
    k = c.field
    L, T, S = _rings(k)
    F = L.field
    n = c.n
    W = [list(r) for r in c.matrix.entries]
    U = [list(r) for r in Mat.identity(T, n).entries]

    def col_degree(j):
        return max(_top(W[i][j]) for i in range(n) if W[i][j].num)

    guard = 0
    while True:
        d = [col_degree(j) for j in range(n)]
        lead = [[W[i][j].coeff(d[j]) for j in range(n)] for i in range(n)]
        ker = nullspace(F, lead, n)
        if not ker:
            break
        guard += 1
        if guard > 10_000:
            raise InternalCheckFailure("column reduction does not terminate")
        x = ker[0]
        supp = [i for i in range(n) if x[i]]
        j = max(supp, key=lambda i: (d[i], i))
        xj_inv = F.inv(x[j])
        for i in supp:
            if i == j:
                continue
            q = x[i] * xj_inv
            q = q % F.char if F.char else q
            e = d[j] - d[i]
            mL, mT = L.monomial(q, e), T.monomial(q, e)
            for r in range(n):
                W[r][j] = W[r][j] + mL * W[r][i]
                U[r][j] = U[r][j] + mT * U[r][i]
    d = [col_degree(j) for j in range(n)]
    order = sorted(range(n), key=lambda j: (-d[j], j))
    a = [d[j] for j in order]
    Wp = [[W[i][j] for j in order] for i in range(n)]
    Up = Mat(T, [[U[i][j] for j in order] for i in range(n)], n)
    Mm = Mat(S, [[_laurent_to_s(Wp[i][j] * L.monomial(1, -a[j]), S) for j in range(n)] for i in range(n)], n)
    lam = [[Mm[i, j].coeff(0) for j in range(n)] for i in range(n)]
    Uinv = Up.inverse()
    # M_minus(inf) can be cleared iff it is block lower triangular for the exponent blocks
    in_parabolic = all(not lam[i][j] for i in range(n) for j in range(n) if a[i] > a[j])
    if in_parabolic:
        g = Mat(S, [[S.elem((lam[i][j],)) for j in range(n)] for i in range(n)], n)
        Mm = Mm @ g.inverse()
        conj = Mat(T, [[T.monomial(lam[i][j], a[j] - a[i]) if lam[i][j] else T.zero() for j in range(n)] for i in range(n)], n)
        Mp = conj @ Uinv
    else:
        Mp = Uinv
    fac = Factorization(Mm, SplittingType(tuple(a)), Mp, in_parabolic)
    if fac.product() != c.matrix:
        raise InternalCheckFailure("factorization does not reproduce the cocycle")
    return fac


def splitting_type(c: Cocycle) -> SplittingType:
    return birkhoff_factorize(c).type


# -- independent oracle -------------------------------------------------------------------


def min_column_degree(c: Cocycle, degree_bound: int) -> int:
    """min over nonzero x in k[t]^n with deg x <= bound of the top t-degree of c x.

    Decided by linear algebra over k: for each candidate e, look for x whose
    product has no coefficients above t^e.  Equals the smallest splitting
    exponent once the bound is large enough.
    """
    M = c.matrix
    F = M.ring.field
    n = c.n
    lo, hi = M.degree_range()
    D = degree_bound
    nv = n * (D + 1)
    for e in range(lo, hi + D + 1):
        rows = []
        for i in range(n):
            for p in range(e + 1, hi + D + 1):
                row = [0] * nv
                for j in range(n):
                    for q in range(D + 1):
                        row[j * (D + 1) + q] = M[i, j].coeff(p - q)
                rows.append(row)
        if not rows or nullspace(F, rows, nv):
            return e
    raise InternalCheckFailure("no vector found; the cocycle is not invertible")


def oracle_exponents(c: Cocycle, degree_bound: int = 6) -> tuple:
    """Splitting exponents for n <= 2 from the minimal column degree and det valuation."""
    if c.n == 1:
        return (c.matrix[0, 0].valuation(),)
    if c.n != 2:
        raise ShapeError("oracle is implemented for n <= 2")
    a2 = min_column_degree(c, degree_bound)
    return (c.det_valuation() - a2, a2)


# -- two-chart data ---------------------------------------------------------------------------


def twist(d: TwoChartDatum, n: int) -> TwoChartDatum:
    L = d.phi.matrix.ring
    tn = L.monomial(1, n)
    return TwoChartDatum(Cocycle(d.phi.matrix.scale(tn), d.phi.inverse.scale(L.monomial(1, -n))))


@dataclass
class GlobalSections:
    dim: int
    infinity_rows: list  # rows over k[s]
    zero_rows: list  # rows over k[t]
    bound: int


def section_bound(d: TwoChartDatum) -> int:
    lo, _ = d.phi.inverse.degree_range()
    return max(0, -lo)


def global_sections(d: TwoChartDatum, bound: Optional[int] = None) -> GlobalSections:
    """Basis of {(u over k[s], u . phi over k[t])} by linear algebra over k.

    A section has s-degree at most -min val(phi^-1), which is the certified
    default bound; a smaller explicit bound that cuts off sections raises.
    """
    k = d.field
    L, T, S = _rings(k)
    F = L.field
    n = d.n
    phi = d.phi.matrix
    B = section_bound(d)
    if bound is not None and bound < B:
        raise BoundExceeded(f"degree bound {bound} is below the certified bound {B}")
    lo, hi = phi.degree_range()
    nv = n * (B + 1)
    # u_i = sum_q x_{i,q} t^-q; require coefficients of t^p, p < 0, of u . phi to vanish
    rows = []
    for j in range(n):
        for p in range(lo - B, 0):
            row = [0] * nv
            for i in range(n):
                for q in range(B + 1):
                    row[i * (B + 1) + q] = phi[i, j].coeff(p + q)
            rows.append(row)
    basis = nullspace(F, rows, nv) if rows else [[1 if a == b else 0 for a in range(nv)] for b in range(nv)]
    inf_rows, zero_rows = [], []
    for v in basis:
        u = [S.elem(v[i * (B + 1):(i + 1) * (B + 1)]) for i in range(n)]
        uL = Mat(L, [[L.laurent(list(reversed(v[i * (B + 1):(i + 1) * (B + 1)])), -B) for i in range(n)]], n)
        s0 = uL @ phi
        inf_rows.append(u)
        zero_rows.append([_laurent_to_t(s0[0, j], T) for j in range(n)])
    return GlobalSections(len(basis), inf_rows, zero_rows, B)


def _generates(rows: list, R: RingDesc, n: int) -> bool:
    """Whether the given rows span R^n (all n invariant factors are units)."""
    if len(rows) < n:
        return False
    m = Mat(R, rows, n)
    _, D, _ = smith_normal_form(m)
    ds = diagonal(D)
    return len(ds) >= n and all(x.num and x.is_unit() for x in ds[:n])


def _quotient_coords(B: Mat) -> tuple[Mat, Mat]:
    """For a saturated row space B (r x h), return (V, Vinv) with x V = (coords in B, quotient coords)."""
    U, D, V = smith_normal_form(B)
    r = B.rows
    for x in diagonal(D)[:r]:
        if not x.is_unit():
            raise InternalCheckFailure("kernel is not a saturated sub-bundle")
    return V, V.inverse()


@dataclass
class Reconstruction:
    type: SplittingType
    n: int  # first twist with globally generated V(n)
    m: int  # first twist with globally generated kernel K(m)
    h: int  # dim H^0(V(n))
    h_kernel: int  # dim H^0(K(m))
    quotient: TwoChartDatum  # O(m)^h / K(m) twisted back by -(n+m): isomorphic to d
    witness_infinity: Mat  # over k[s]
    witness_zero: Mat  # over k[t]
    birkhoff_type: SplittingType
    details: dict = field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        return self.type == self.birkhoff_type


def _search_cap(d: TwoChartDatum) -> int:
    lo, hi = d.phi.matrix.degree_range()
    return 4 * max(abs(lo), abs(hi), 1) + d.n


def generation_threshold(d: TwoChartDatum, cap: Optional[int] = None) -> tuple[int, GlobalSections]:
    """Smallest n >= 0 such that global sections of d(n) generate on both charts."""
    cap = _search_cap(d) if cap is None else cap
    k = d.field
    _, T, S = _rings(k)
    for n in range(cap + 1):
        gs = global_sections(twist(d, n))
        if _generates(gs.zero_rows, T, d.n) and _generates(gs.infinity_rows, S, d.n):
            return n, gs
    raise BoundExceeded(f"no globally generated twist up to n = {cap}")


def type_from_h0(d: TwoChartDatum) -> SplittingType:
    """Read the splitting type off the jumps of k -> dim H^0(d(k)).

    dim H^0(d(k)) - dim H^0(d(k-1)) counts the exponents a_i >= -k.
    """
    lo, hi = d.phi.matrix.degree_range()
    span = max(abs(lo), abs(hi)) * d.n + 1
    counts = {}
    prev = global_sections(twist(d, -span - 1)).dim
    if prev:
        raise InternalCheckFailure("sections exist below the expected range")
    for kk in range(-span, span + 2):
        cur = global_sections(twist(d, kk)).dim
        counts[kk] = cur - prev
        prev = cur
    exps = []
    for kk in range(-span, span + 2):
        new = counts[kk] - counts.get(kk - 1, 0)
        exps += [-kk] * new
    if len(exps) != d.n:
        raise InternalCheckFailure("jump count does not match the rank")
    return SplittingType(tuple(sorted(exps, reverse=True)))


def reconstruct(d: TwoChartDatum) -> Reconstruction:
    """Present d(n + m) as a cokernel of globally generated free data and read off its type.

    1. n: first twist where H^0(d(n)) generates d(n) on both charts.
    2. K: kernel of the evaluation O^h -> d(n), a bundle with its own cocycle.
    3. m: first twist where K(m) is globally generated.
    4. d(n + m) = coker(H^0(K(m)) x O -> O(m)^h); the quotient is a new
       two-chart datum whose type is read off from H^0 jumps, shifted back,
       and compared with the Birkhoff factorization.
    An explicit isomorphism between the quotient datum and d is returned.
    """
    k = d.field
    L, T, S = _rings(k)
    rank = d.n
    n, gs = generation_threshold(d)
    h = gs.dim
    G0 = Mat(T, gs.zero_rows, rank)
    Ginf = Mat(S, gs.infinity_rows, rank)
    # kernel rows of the evaluation on each chart
    K0 = _left_kernel(G0)
    Kinf = _left_kernel(Ginf)
    r = h - rank
    if K0.rows != r or Kinf.rows != r:
        raise InternalCheckFailure("evaluation kernel has the wrong rank")
    tL, sL = t_to_laurent(k), s_to_laurent(k)
    if r:
        # psi . K0 == Kinf over the overlap (row convention for K)
        sol = solve_exact(K0.apply_hom(tL).T(), Kinf.apply_hom(sL).T())
        if sol is None:
            raise InternalCheckFailure("kernel charts do not agree on the overlap")
        psi = sol.T()
        K = TwoChartDatum(Cocycle(psi))
        m, gsK = generation_threshold(K)
        hK = gsK.dim
        # image of H^0(K(m)) in O(m)^h: rows gsK.* @ K-basis; it spans K(m) on each chart
        img0 = Mat(T, gsK.zero_rows, r) @ K0 if hK else Mat.zero(T, 0, h)
        imginf = Mat(S, gsK.infinity_rows, r) @ Kinf if hK else Mat.zero(S, 0, h)
        if not (_same_rowspace(img0, K0) and _same_rowspace(imginf, Kinf)):
            raise InternalCheckFailure("sections of K(m) do not generate K(m)")
        V0, V0inv = _quotient_coords(K0)
        _, Viinv = _quotient_coords(Kinf)
    else:
        m, hK = 0, 0
        V0, V0inv = Mat.identity(T, h), Mat.identity(T, h)
        Viinv = Mat.identity(S, h)
    # quotient O^h / K: transition theta with q0(x) = q_inf(x) . theta for constant x
    theta_full = Viinv.apply_hom(sL) @ V0.apply_hom(tL)
    theta = theta_full.submatrix(range(r, h), range(r, h))
    Q = TwoChartDatum(Cocycle(theta))  # isomorphic to d(n)
    # isomorphism Q -> d(n): w |-> (0, w) V^-1 G
    f_inf = (Viinv @ Ginf).submatrix(range(r, h), range(rank))
    f_0 = (V0inv @ G0).submatrix(range(r, h), range(rank))
    phin = twist(d, n).phi.matrix
    if theta @ f_0.apply_hom(tL) != f_inf.apply_hom(sL) @ phin:
        raise InternalCheckFailure("reconstruction witness does not intertwine the cocycles")
    if not (f_0.det().is_unit() and f_inf.det().is_unit()):
        raise InternalCheckFailure("reconstruction witness is not invertible")
    # d(n + m) is the quotient of O(m)^h, i.e. twist(Q, m); its type shifted back is the type of d
    Qnm = twist(Q, m)
    typ = type_from_h0(Qnm).shifted(-(n + m))
    bt = birkhoff_factorize(d.phi).type
    return Reconstruction(
        typ, n, m, h, hK, twist(Q, -n), f_inf, f_0, bt,
        {"quotient_rank": Q.n, "kernel_rank": r},
    )


def _left_kernel(G: Mat) -> Mat:
    """Rows spanning {x : x G = 0}."""
    Kb = kernel_basis(G.T())
    return Kb.T()


def _same_rowspace(A: Mat, B: Mat) -> bool:
    if A.rows == 0 or B.rows == 0:
        return A.rows == B.rows
    return solve_exact(A.T(), B.T()) is not None and solve_exact(B.T(), A.T()) is not None


# -- equivalence of cocycles ---------------------------------------------------------------------


def act(c: Cocycle, A: Mat, B: Mat) -> Cocycle:
    """A(s) . c . B(t) for A invertible over k[s] and B invertible over k[t]."""
    k = c.field
    return Cocycle(A.apply_hom(s_to_laurent(k)) @ c.matrix @ B.apply_hom(t_to_laurent(k)))


def equivalence_witness(c1: Cocycle, c2: Cocycle) -> Optional[tuple[Mat, Mat]]:
    """(A over k[s], B over k[t]) with A c1 B == c2, or None when the splitting types differ."""
    f1, f2 = birkhoff_factorize(c1), birkhoff_factorize(c2)
    if f1.type != f2.type:
        return None
    A = f2.minus @ f1.minus.inverse()
    B = f1.plus.inverse() @ f2.plus
    if act(c1, A, B).matrix != c2.matrix:
        raise InternalCheckFailure("equivalence witness fails")
    return A, B
