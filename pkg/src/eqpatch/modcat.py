"""Finitely presented modules over the PID kinds.

A module ``R^g / im(A)`` is stored as its presentation matrix ``A`` (g x r).
A map ``M -> N`` is a ``N.gens x M.gens`` matrix ``F`` together with a
witness ``W`` such that ``F @ M.rel == N.rel @ W`` (relations go to
relations).  Two maps are equal when their difference lands in ``im(N.rel)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import poly as P
from .errors import NonInvertible, RingMismatch, ShapeError, UnsupportedRing
from .linalg import rank, solve
from .matrix import Mat, block_diag, kernel_basis, smith_normal_form, solve_exact, diagonal
from .rings import PID_KINDS, RingDesc, RingElem, RingHom, associate_unit, euclid_divmod, exact_quotient


class PresentedModule:
    __slots__ = ("ring", "gens", "rel")

    def __init__(self, ring: RingDesc, gens: int, rel: Optional[Mat] = None):
        if rel is None:
            rel = Mat.zero(ring, gens, 0)
        if rel.ring != ring:
            raise RingMismatch(f"relations over {rel.ring}, module over {ring}")
        if rel.rows != gens:
            raise ShapeError(f"presentation has {rel.rows} rows for {gens} generators")
        self.ring = ring
        self.gens = gens
        self.rel = rel

    def __eq__(self, other):
        return isinstance(other, PresentedModule) and self.ring == other.ring and self.gens == other.gens and self.rel == other.rel

    def __hash__(self):
        return hash((self.ring, self.gens, self.rel))

    def __repr__(self):
        return f"PresentedModule({self.ring}, gens={self.gens}, rels={self.rel.cols})"

    @classmethod
    def free(cls, ring: RingDesc, n: int) -> "PresentedModule":
        return cls(ring, n)

    @classmethod
    def cyclic(cls, a: RingElem) -> "PresentedModule":
        """R/(a)."""
        return cls(a.ring, 1, Mat(a.ring, [[a]]))

    @classmethod
    def from_invariants(cls, ring: RingDesc, torsion: Sequence[RingElem], rank: int) -> "PresentedModule":
        g = len(torsion) + rank
        return cls(ring, g, Mat.diag(ring, list(torsion), g, len(torsion)))

    def identity(self) -> "ModuleMap":
        return ModuleMap(self, self, Mat.identity(self.ring, self.gens), Mat.identity(self.ring, self.rel.cols))


class ModuleMap:
    __slots__ = ("source", "target", "matrix", "witness")

    def __init__(self, source: PresentedModule, target: PresentedModule, matrix: Mat, witness: Optional[Mat] = None):
        if source.ring != target.ring or matrix.ring != source.ring:
            raise RingMismatch("module map across different rings")
        if matrix.shape != (target.gens, source.gens):
            raise ShapeError(f"map matrix {matrix.shape}, expected {(target.gens, source.gens)}")
        if witness is None:
            lhs = matrix @ source.rel
            if lhs.cols and not lhs.is_zero():
                witness = solve_exact(target.rel, lhs)
                if witness is None:
                    raise ValueError("matrix does not carry relations into relations")
            else:
                witness = Mat.zero(source.ring, target.rel.cols, source.rel.cols)
        self.source = source
        self.target = target
        self.matrix = matrix
        self.witness = witness

    @property
    def ring(self) -> RingDesc:
        return self.source.ring

    def __repr__(self):
        return f"ModuleMap({self.source} -> {self.target}, {self.matrix!r})"

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition self . other."""
        if other.target.gens != self.source.gens or other.target.rel != self.source.rel:
            raise ShapeError("maps are not composable")
        return ModuleMap(
            other.source,
            self.target,
            self.matrix @ other.matrix,
            self.witness @ other.witness,
        )

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix + other.matrix, self.witness + other.witness)

    def __neg__(self) -> "ModuleMap":
        return ModuleMap(self.source, self.target, -self.matrix, -self.witness)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return self + (-other)

    def scale(self, c: RingElem) -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix.scale(c), self.witness.scale(c))

    def with_source(self, source: PresentedModule) -> "ModuleMap":
        return ModuleMap(source, self.target, self.matrix)

    def with_target(self, target: PresentedModule) -> "ModuleMap":
        return ModuleMap(self.source, target, self.matrix)


def zero_map(M: PresentedModule, N: PresentedModule) -> ModuleMap:
    R = M.ring
    return ModuleMap(M, N, Mat.zero(R, N.gens, M.gens), Mat.zero(R, N.rel.cols, M.rel.cols))


def _require_pid(R: RingDesc):
    if R.kind not in PID_KINDS:
        raise UnsupportedRing(f"{R} is not a supported PID")


def in_image(A: Mat, B: Mat) -> bool:
    """Every column of B lies in the column span of A."""
    if B.cols == 0 or B.is_zero():
        return True
    if A.cols == 0:
        return False
    return solve_exact(A, B) is not None


def maps_equal(f: ModuleMap, g: ModuleMap) -> bool:
    if f.source.gens != g.source.gens or f.target != g.target:
        raise ShapeError("comparing maps with different endpoints")
    return in_image(f.target.rel, f.matrix - g.matrix)


def is_zero_map(f: ModuleMap) -> bool:
    return in_image(f.target.rel, f.matrix)


# -- abelian structure ----------------------------------------------------------


def cokernel(f: ModuleMap) -> tuple[PresentedModule, ModuleMap]:
    """coker(f) = N / (im A_N + im F) with the projection N -> coker."""
    N = f.target
    C = PresentedModule(N.ring, N.gens, N.rel.hstack(f.matrix))
    proj = ModuleMap(N, C, Mat.identity(N.ring, N.gens))
    return C, proj


def kernel(f: ModuleMap) -> tuple[PresentedModule, ModuleMap]:
    """ker(f) with its inclusion into the source."""
    _require_pid(f.ring)
    M, N = f.source, f.target
    R = M.ring
    # x in R^gM with F x in im A_N: kernel of [F | -A_N], projected to x
    big = f.matrix.hstack(-N.rel) if N.rel.cols else f.matrix
    Kfull = kernel_basis(big)
    K = Kfull.submatrix(range(M.gens), range(Kfull.cols))
    s = K.cols
    # relations: c with K c in im A_M
    if M.rel.cols:
        rk = kernel_basis(K.hstack(-M.rel))
        rel = rk.submatrix(range(s), range(rk.cols))
    else:
        rk = kernel_basis(K) if s else Mat.zero(R, 0, 0)
        rel = rk
    Kmod = PresentedModule(R, s, rel)
    return Kmod, ModuleMap(Kmod, M, K)


def direct_sum(M: PresentedModule, N: PresentedModule) -> tuple[PresentedModule, list[ModuleMap], list[ModuleMap]]:
    """M + N with [inclusions], [projections]."""

    R = M.ring
    S = PresentedModule(R, M.gens + N.gens, block_diag(R, M.rel, N.rel))
    iM = ModuleMap(M, S, Mat.identity(R, M.gens).vstack(Mat.zero(R, N.gens, M.gens)))
    iN = ModuleMap(N, S, Mat.zero(R, M.gens, N.gens).vstack(Mat.identity(R, N.gens)))
    pM = ModuleMap(S, M, Mat.identity(R, M.gens).hstack(Mat.zero(R, M.gens, N.gens)))
    pN = ModuleMap(S, N, Mat.zero(R, N.gens, M.gens).hstack(Mat.identity(R, N.gens)))
    return S, [iM, iN], [pM, pN]


def map_sum(f: ModuleMap, g: ModuleMap, source: PresentedModule, target: PresentedModule) -> ModuleMap:
    """f + g as a block-diagonal map between given direct sums."""

    return ModuleMap(source, target, block_diag(f.ring, f.matrix, g.matrix))


# -- canonical forms ------------------------------------------------------------


@dataclass(frozen=True)
class Invariants:
    torsion: tuple  # canonical non-unit invariant factors, divisibility order
    rank: int

    def is_zero(self) -> bool:
        return not self.torsion and self.rank == 0


def canonical_form(M: PresentedModule) -> tuple[PresentedModule, ModuleMap, ModuleMap]:
    """(C, to_C, from_C): C = sum R/(d_i) + R^f, with mutually inverse isos."""
    _require_pid(M.ring)
    R = M.ring
    U, D, _, Uinv = smith_normal_form(M.rel, track_inverse=True)
    ds = diagonal(D)
    torsion_idx, torsion = [], []
    free_idx = []
    for i in range(M.gens):
        d = ds[i] if i < len(ds) else R.zero()
        if not d.num:
            free_idx.append(i)
        elif not d.is_unit():
            torsion_idx.append(i)
            torsion.append(d)
    keep = torsion_idx + free_idx
    C = PresentedModule.from_invariants(R, torsion, len(free_idx))
    to_c = ModuleMap(M, C, U.submatrix(keep, range(M.gens)))
    from_c = ModuleMap(C, M, Uinv.submatrix(range(M.gens), keep))
    return C, to_c, from_c


def invariants(M: PresentedModule) -> Invariants:
    C, _, _ = canonical_form(M)
    torsion = tuple(C.rel[i, i] for i in range(C.rel.cols))
    return Invariants(torsion, C.gens - len(torsion))


def is_zero_module(M: PresentedModule) -> bool:
    return invariants(M).is_zero()


def is_isomorphic(M: PresentedModule, N: PresentedModule) -> Optional[ModuleMap]:
    """An explicit isomorphism M -> N, or None."""
    if M.ring != N.ring:
        raise RingMismatch("modules over different rings")
    CM, toM, _ = canonical_form(M)
    CN, _, fromN = canonical_form(N)
    if CM != CN:
        return None
    return fromN @ toM


def _residue(x: RingElem, d: RingElem) -> tuple:
    """Coefficients of the representative of x in k[t]/(d), degree < deg d."""
    F = x.ring.field
    num = x.num
    if x.den != (1,):
        g, s, _ = P.xgcd(F, x.den, d.num)
        if P.deg(g) != 0:
            raise ShapeError("denominator not invertible modulo torsion invariant")
        num = P.mul(F, num, s)
    r = P.divmod_(F, num, d.num)[1]
    return tuple(r) + (0,) * (P.deg(d.num) - len(r))


def _invert_torsion_block(A: Mat, ds: Sequence[RingElem]) -> Optional[Mat]:
    """Inverse of the endomorphism A of sum R/(d_i), or None.

    The torsion module is a finite-dimensional k-space and an R-linear
    bijection has an R-linear inverse, so plain elimination suffices.
    """
    R = A.ring
    F = R.field
    degs = [P.deg(d.num) for d in ds]
    offs = [sum(degs[:i]) for i in range(len(degs))]
    dim = sum(degs)
    cols = []
    for j in range(len(ds)):
        for a in range(degs[j]):
            col = []
            for i, d in enumerate(ds):
                r = _residue(A[i, j], d)
                r = P.divmod_(F, P.shift(P.trim(list(r)), a), d.num)[1]
                col.extend(tuple(r) + (0,) * (degs[i] - len(r)))
            cols.append(col)
    L = [[cols[c][r] for c in range(dim)] for r in range(dim)]
    if rank(F, L, dim) < dim:
        return None
    out = [[R.zero()] * len(ds) for _ in ds]
    for j in range(len(ds)):
        b = [0] * dim
        b[offs[j]] = 1
        x = solve(F, L, b)
        for i in range(len(ds)):
            out[i][j] = R.elem(P.trim(list(x[offs[i]:offs[i] + degs[i]])))
    return Mat(R, out, len(ds))


def inverse_iso(f: ModuleMap) -> Optional[ModuleMap]:
    """Two-sided inverse of f, or None when f is not an isomorphism.

    Works on canonical forms, where f is block upper triangular with a
    torsion block and a free block that can be inverted separately.
    """
    M, N = f.source, f.target
    if M.ring.kind not in PID_KINDS:
        g = factor_through_epi(f, M.identity())
        if g is None or not maps_equal(f @ g, N.identity()):
            return None
        return g
    CM, toM, fromM = canonical_form(M)
    CN, toN, fromN = canonical_form(N)
    if CM != CN:
        return None
    R = M.ring
    s = CM.rel.cols
    n = CM.gens
    Fm = (toN @ f @ fromM).matrix
    ds = [CM.rel[i, i] for i in range(s)]
    if s:
        Ainv = _invert_torsion_block(Fm.submatrix(range(s), range(s)), ds)
        if Ainv is None:
            return None
    if n > s:
        try:
            Einv = Fm.submatrix(range(s, n), range(s, n)).inverse()
        except NonInvertible:
            return None
    if n == 0:
        G = Mat.zero(R, 0, 0)
    elif s == 0:
        G = Einv
    elif n == s:
        G = Ainv
    else:
        B = Fm.submatrix(range(s), range(s, n))
        top = Ainv.hstack((-(Ainv @ B @ Einv)))
        bottom = Mat.zero(R, n - s, s).hstack(Einv)
        G = top.vstack(bottom)
    return fromM @ ModuleMap(CN, CM, G) @ toN


def is_iso(f: ModuleMap) -> bool:
    return inverse_iso(f) is not None


# -- factorisations -------------------------------------------------------------


def factor_through_mono(g: ModuleMap, h: ModuleMap) -> Optional[ModuleMap]:
    """X with g . X == h, where g: P -> Q and h: S -> Q; None if impossible.

    Existence is decided for the generator images; the resulting X is a
    well-defined map whenever g is a monomorphism.
    """
    if g.target != h.target:
        raise ShapeError("g and h must share a target")
    P_, Q, S = g.source, g.target, h.source
    big = g.matrix.hstack(Q.rel) if Q.rel.cols else g.matrix
    Z = solve_exact(big, h.matrix)
    if Z is None:
        return None
    X = Z.submatrix(range(P_.gens), range(S.gens))
    try:
        return ModuleMap(S, P_, X)
    except ValueError:
        return None


def factors_through(g: ModuleMap, h: ModuleMap) -> bool:
    """Whether im(h) is contained in im(g) (g, h with a common target)."""
    Q = g.target
    big = g.matrix.hstack(Q.rel) if Q.rel.cols else g.matrix
    return solve_exact(big, h.matrix) is not None


def factor_through_epi(g: ModuleMap, h: ModuleMap) -> Optional[ModuleMap]:
    """X with X . g == h, where g: P -> Q and h: P -> S; None if impossible."""
    if g.source.gens != h.source.gens:
        raise ShapeError("g and h must share a source")
    R = g.ring
    P_, Q, S = g.source, g.target, h.target
    gS, gQ, gP = S.gens, Q.gens, P_.gens
    rS, rQ = S.rel.cols, Q.rel.cols
    I_S = Mat.identity(R, gS)
    # unknowns: vec X (gS*gQ), vec W (rS*gP), vec W2 (rS*rQ); column-major vec
    # X G - A_S W = H  and  X A_Q - A_S W2 = 0
    blocks_top = [g.matrix.T().kron(I_S)]
    blocks_bot = [Q.rel.T().kron(I_S)] if rQ else []
    nW, nW2 = rS * gP, rS * rQ
    if rS:
        blocks_top.append(-Mat.identity(R, gP).kron(S.rel))
        if rQ:
            blocks_top.append(Mat.zero(R, gS * gP, nW2))
            blocks_bot.append(Mat.zero(R, gS * rQ, nW))
            blocks_bot.append(-Mat.identity(R, rQ).kron(S.rel))
    top = blocks_top[0]
    for b in blocks_top[1:]:
        top = top.hstack(b)
    A = top
    rhs_vals = [h.matrix[i, j] for j in range(gP) for i in range(gS)]
    if blocks_bot:
        bot = blocks_bot[0]
        for b in blocks_bot[1:]:
            bot = bot.hstack(b)
        A = A.vstack(bot)
        rhs_vals += [R.zero()] * (gS * rQ)
    if A.rows == 0:
        X = Mat.zero(R, gS, gQ)
    else:
        sol = solve_exact(A, Mat.column(R, rhs_vals))
        if sol is None:
            return None
        X = Mat(R, [[sol[j * gS + i, 0] for j in range(gQ)] for i in range(gS)], gQ)
    return ModuleMap(Q, S, X)


# -- exactness ------------------------------------------------------------------


def is_mono(f: ModuleMap) -> bool:
    return is_zero_module(kernel(f)[0])


def is_epi(f: ModuleMap) -> bool:
    return is_zero_module(cokernel(f)[0])


def is_exact_at(f: ModuleMap, g: ModuleMap) -> bool:
    """im f == ker g for M -f-> N -g-> P."""
    if not is_zero_map(g @ f):
        return False
    _, inc = kernel(g)
    return factors_through(f, inc)


def is_short_exact(f: ModuleMap, g: ModuleMap) -> bool:
    return is_mono(f) and is_exact_at(f, g) and is_epi(g)


# -- monoidal structure ---------------------------------------------------------


def unit_module(R: RingDesc) -> PresentedModule:
    return PresentedModule.free(R, 1)


def tensor(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    """Generator (i, j) sits at index i * N.gens + j."""
    if M.ring != N.ring:
        raise RingMismatch("tensor of modules over different rings")
    R = M.ring
    left = M.rel.kron(Mat.identity(R, N.gens))
    right = Mat.identity(R, M.gens).kron(N.rel)
    return PresentedModule(R, M.gens * N.gens, left.hstack(right))


def tensor_maps(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    return ModuleMap(tensor(f.source, g.source), tensor(f.target, g.target), f.matrix.kron(g.matrix))


def associator(A: PresentedModule, B: PresentedModule, C: PresentedModule) -> ModuleMap:
    """(A x B) x C -> A x (B x C); the identity on the shared generator order."""
    src = tensor(tensor(A, B), C)
    tgt = tensor(A, tensor(B, C))
    return ModuleMap(src, tgt, Mat.identity(A.ring, src.gens))


def left_unitor(M: PresentedModule) -> ModuleMap:
    """1 x M -> M."""
    return ModuleMap(tensor(unit_module(M.ring), M), M, Mat.identity(M.ring, M.gens))


def right_unitor(M: PresentedModule) -> ModuleMap:
    """M x 1 -> M."""
    return ModuleMap(tensor(M, unit_module(M.ring)), M, Mat.identity(M.ring, M.gens))


def braiding(M: PresentedModule, N: PresentedModule) -> ModuleMap:
    """M x N -> N x M, (i, j) -> (j, i)."""
    R = M.ring
    n = M.gens * N.gens
    z, o = R.zero(), R.one()
    rows = [[z] * n for _ in range(n)]
    for i in range(M.gens):
        for j in range(N.gens):
            rows[j * M.gens + i][i * N.gens + j] = o
    return ModuleMap(tensor(M, N), tensor(N, M), Mat(R, rows, n))


# -- Hom ---------------------------------------------------------------------


def ring_gcd(a: RingElem, b: RingElem) -> RingElem:
    while b.num:
        a, b = b, euclid_divmod(a, b)[1]
    return a * associate_unit(a) if a.num else a


def hom_set_basis(M: PresentedModule, N: PresentedModule) -> tuple[PresentedModule, list[ModuleMap]]:
    """Hom_R(M, N) as a presented module together with its generating maps.

    The k-th generator of the returned module corresponds to the k-th map.
    """
    _require_pid(M.ring)
    R = M.ring
    CM, toM, _ = canonical_form(M)
    CN, _, fromN = canonical_form(N)
    tM = [CM.rel[i, i] for i in range(CM.rel.cols)]
    tN = [CN.rel[j, j] for j in range(CN.rel.cols)]
    orders_M = tM + [R.zero()] * (CM.gens - len(tM))
    orders_N = tN + [R.zero()] * (CN.gens - len(tN))
    gens, rels = [], []
    for i, d in enumerate(orders_M):
        for j, e in enumerate(orders_N):
            if d.num and not e.num:
                continue  # torsion to free: zero
            if d.num and e.num:
                g = ring_gcd(d, e)
                if g.is_unit():
                    continue
                mult, order = exact_quotient(e, g), g
            elif e.num:
                mult, order = R.one(), e
            else:
                mult, order = R.one(), R.zero()
            gens.append((i, j, mult))
            rels.append(order)
    maps = []
    for i, j, mult in gens:
        rows = [[R.zero()] * CM.gens for _ in range(CN.gens)]
        rows[j][i] = mult
        core = ModuleMap(CM, CN, Mat(R, rows, CM.gens))
        maps.append(fromN @ core @ toM)
    torsion_cols = [k for k, o in enumerate(rels) if o.num]
    n = len(gens)
    rel = Mat.zero(R, n, len(torsion_cols)).tolist()
    for c, k in enumerate(torsion_cols):
        rel[k][c] = rels[k]
    H = PresentedModule(R, n, Mat(R, rel, len(torsion_cols)))
    return H, maps


def hom_module(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    return hom_set_basis(M, N)[0]


def combine_maps(maps: Sequence[ModuleMap], coeffs: Sequence[RingElem], M: PresentedModule, N: PresentedModule) -> ModuleMap:
    out = zero_map(M, N)
    for f, c in zip(maps, coeffs):
        if c.num:
            out = out + f.scale(c)
    return out


def hom_coordinates(f: ModuleMap, maps: Sequence[ModuleMap]) -> Optional[list[RingElem]]:
    """Coefficients c with f == sum c_k maps[k], or None."""
    R = f.ring
    M, N = f.source, f.target
    cols = []
    for g in maps:
        cols.append([g.matrix[i, j] for j in range(M.gens) for i in range(N.gens)])
    # relation slack: f - sum c_k g_k = A_N W
    n_vec = M.gens * N.gens
    A_cols = cols[:]
    if N.rel.cols:
        slack = Mat.identity(R, M.gens).kron(N.rel)
        for c in range(slack.cols):
            A_cols.append([slack[r, c] for r in range(n_vec)])
    if not A_cols:
        return [] if is_zero_map(f) else None
    A = Mat(R, [[col[r] for col in A_cols] for r in range(n_vec)], len(A_cols))
    b = Mat.column(R, [f.matrix[i, j] for j in range(M.gens) for i in range(N.gens)])
    sol = solve_exact(A, b)
    if sol is None:
        return None
    return [sol[k, 0] for k in range(len(maps))]


# -- base change -----------------------------------------------------------------


@dataclass(frozen=True)
class BaseChangeFunctor:
    hom: RingHom

    @property
    def source(self) -> RingDesc:
        return self.hom.source

    @property
    def target(self) -> RingDesc:
        return self.hom.target

    def __call__(self, x):
        if isinstance(x, PresentedModule):
            return base_change(self, x)
        return base_change_map(self, x)


def base_change(F: BaseChangeFunctor, M: PresentedModule) -> PresentedModule:
    if M.ring != F.source:
        raise RingMismatch(f"module over {M.ring}, functor from {F.source}")
    return PresentedModule(F.target, M.gens, M.rel.apply_hom(F.hom))


def base_change_map(F: BaseChangeFunctor, f: ModuleMap) -> ModuleMap:
    return ModuleMap(
        base_change(F, f.source),
        base_change(F, f.target),
        f.matrix.apply_hom(F.hom),
        f.witness.apply_hom(F.hom),
    )
