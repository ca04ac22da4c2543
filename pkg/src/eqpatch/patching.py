"""Patching contexts R -> R0 => R1, restriction to the equalizer category, and gluing.

The affine-line context glues a module over the local ring at the origin
with a module over k[t, 1/t] along an isomorphism over k(t).  Gluing is done
exactly: the free part is the lattice of Laurent vectors whose image under
the glue matrix is regular at the origin, computed as a kernel over k[t];
torsion at the origin and away from it is carried over unchanged.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import modcat as mc
from . import poly as P
from . import samplers
from .equalizer import (
    EqContext,
    EqMorphism,
    EqObject,
    bl_eq_context,
    eq_cokernel,
    eq_kernel,
    eq_tensor,
    is_zero_morphism,
    eq_is_short_exact,
)
from .errors import ContextMismatch, InternalCheckFailure, RingMismatch, UnsupportedRing
from .linalg import nullspace, solve
from .matrix import Mat
from .modcat import BaseChangeFunctor, ModuleMap, PresentedModule
from .rings import Laurent, Poly, RingDesc, RingElem, RingHom


@dataclass(frozen=True)
class PatchingContext:
    R: RingDesc
    eq: EqContext
    d: tuple  # one RingHom R -> lane per lane
    kind: str = "generic"

    def __post_init__(self):
        if len(self.d) != len(self.eq.lanes):
            raise ContextMismatch("need one structure map per lane")
        for h, L in zip(self.d, self.eq.lanes):
            if h.source != self.R or h.target != L:
                raise ContextMismatch(f"structure map {h} does not land in lane {L}")
        # d0 . d == d1 . d, checked on the generator
        g = self.R.gen() if self.R.kind not in ("Fp", "Q") else self.R.one()
        a = self.eq.d0.functor.hom(self.d[self.eq.d0.lane](g))
        b = self.eq.d1.functor.hom(self.d[self.eq.d1.lane](g))
        if a != b:
            raise ContextMismatch("the two composites R -> R1 differ")

    @property
    def lanes(self):
        return self.eq.lanes

    @property
    def R1(self):
        return self.eq.R1


def bl_context(k: RingDesc) -> PatchingContext:
    """k[t] -> (k[t]_(t), k[t,1/t]) => k(t)."""
    eq = bl_eq_context(k)
    R = Poly(k)
    return PatchingContext(R, eq, tuple(RingHom(R, L) for L in eq.lanes), "bl")


# -- restriction ---------------------------------------------------------------------


def restrict(ctx: PatchingContext, M: PresentedModule) -> EqObject:
    if M.ring != ctx.R:
        raise RingMismatch(f"module over {M.ring}, context over {ctx.R}")
    carriers = [BaseChangeFunctor(h)(M) for h in ctx.d]
    src, tgt = ctx.eq.pull(1, carriers), ctx.eq.pull(0, carriers)
    # both composites give the same presentation, so the canonical iota is the identity matrix
    return EqObject(ctx.eq, carriers, ModuleMap(src, tgt, Mat.identity(ctx.R1, M.gens)), ModuleMap(tgt, src, Mat.identity(ctx.R1, M.gens)))


def restrict_map(ctx: PatchingContext, f: ModuleMap) -> EqMorphism:
    return EqMorphism(restrict(ctx, f.source), restrict(ctx, f.target), [BaseChangeFunctor(h)(f) for h in ctx.d])


# -- gluing ----------------------------------------------------------------------------


def _require_bl(ctx: PatchingContext):
    if ctx.kind != "bl":
        raise UnsupportedRing("gluing is implemented for the affine-line context")


def _series(F, num: tuple, den: tuple, prec: int) -> list:
    """Power series coefficients of num/den (den(0) != 0) modulo t^prec."""
    inv0 = F.inv(den[0])
    out = [0] * prec
    for n in range(prec):
        acc = num[n] if n < len(num) else 0
        for j in range(1, min(n, len(den) - 1) + 1):
            acc = acc - den[j] * out[n - j]
        out[n] = (acc * inv0) % F.char if F.char else acc * inv0
    return out


def lattice_basis(Phi: Mat, c: int, R: RingDesc) -> Mat:
    """A k[t]-basis (columns) of {w in k[t]^r : t^-c Phi w is regular at the origin}.

    Writing Phi = t^-b S with S regular at the origin, the condition is
    S w = 0 mod t^m with m = b + c.  The lattice contains t^m k[t]^r, so it is
    computed inside (k[t]/t^m)^r by linear algebra over k, and a triangular
    basis with diagonal entries t^e_i is read off coordinate by coordinate.
    """
    F = R.field
    p = F.char
    r = Phi.rows
    b = 0
    for row in Phi.tolist():
        for x in row:
            if x.num:
                b = max(b, P.val(x.den) - P.val(x.num))
    m = b + c
    if m == 0:
        return Mat.identity(R, r)
    # S = t^b Phi mod t^m, entry (i, j) as a coefficient list
    S = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            x = Phi[i, j]
            if not x.num:
                S[i][j] = [0] * m
                continue
            vd = P.val(x.den)
            shift_num = b - vd
            den = x.den[vd:]
            ser = _series(F, x.num, den, m + max(0, -shift_num))
            # t^b * num/den = t^(b - vd) * num/den'
            S[i][j] = ([0] * shift_num + ser)[:m] if shift_num >= 0 else ser[-shift_num:][:m]

    def red(z):
        return z % p if p else z

    # k-linear map on w = (w_j coefficients 0..m-1), variable index j*m + s
    n = r * m
    rows = []
    for i in range(r):
        for deg in range(m):
            row = [0] * n
            for j in range(r):
                for s in range(deg + 1):
                    row[j * m + s] = red(row[j * m + s] + S[i][j][deg - s])
            rows.append(row)
    N = nullspace(F, rows, n)  # basis of the truncated lattice as k-vectors

    cols = []
    for i in range(r):
        found = None
        for e in range(m):
            # element of span(N) with coords j < i zero, coefficients of w_i below e zero and at e one
            A, rhs = [], []
            for j in range(i):
                for s in range(m):
                    A.append([v[j * m + s] for v in N])
                    rhs.append(0)
            for s in range(e):
                A.append([v[i * m + s] for v in N])
                rhs.append(0)
            A.append([v[i * m + e] for v in N])
            rhs.append(1)
            coef = solve(F, A, rhs) if N else None
            if coef is not None:
                w = [red(sum(cf * v[q] for cf, v in zip(coef, N))) for q in range(n)]
                found = (e, w)
                break
        if found is None:
            col = [R.zero()] * r
            col[i] = R.monomial(1, m)
            cols.append(col)
            continue
        e, w = found
        polys = [P.trim(w[j * m:(j + 1) * m]) for j in range(r)]
        # normalize the unit part of w_i to one: multiply by its inverse mod t^m
        unit = P.trim(polys[i][e:])
        uinv = _series(F, (1,), unit, m)
        col = []
        for j in range(r):
            q = P.trim(P.mul(F, polys[j], P.trim(uinv))[:m])
            col.append(R.elem(q) if j != i else R.monomial(1, e))
        cols.append(col)
    return Mat(R, [[cols[j][i] for j in range(r)] for i in range(r)], r)


def _to_poly(x: RingElem, R: RingDesc) -> RingElem:
    """A lane element that happens to be a polynomial, as an element of k[t]."""
    if x.den != (1,):
        raise InternalCheckFailure(f"{x} is not a polynomial")
    return R.elem(x.num)


@dataclass
class GlueResult:
    module: PresentedModule
    witness: EqMorphism  # restrict(module) -> x, lane-wise isomorphisms
    lattice: Mat  # columns: free generators as Laurent vectors in the canonical Laurent coordinates
    shift: int


def glue(ctx: PatchingContext, x: EqObject) -> GlueResult:
    """A k[t]-module G with an explicit isomorphism restrict(G) -> x."""
    _require_bl(ctx)
    eq = ctx.eq
    if x.ctx != eq:
        raise ContextMismatch("object is not over this context")
    R, K = ctx.R, ctx.R1
    loc, lau = eq.lanes
    iL, iA = eq.d0.lane, eq.d1.lane  # local lane feeds d0, Laurent lane feeds d1
    CL, toL, fromL = mc.canonical_form(x.carriers[iL])
    CA, toA, fromA = mc.canonical_form(x.carriers[iA])
    tL = [CL.rel[i, i] for i in range(CL.rel.cols)]
    tA = [CA.rel[i, i] for i in range(CA.rel.cols)]
    r = CL.gens - len(tL)
    if CA.gens - len(tA) != r:
        raise InternalCheckFailure("lane ranks differ although the glue is an isomorphism")
    phi_c = eq.pull_map(0, _lanes(iL, iA, toL, None)) @ x.glue @ eq.pull_map(1, _lanes(iL, iA, None, fromA))
    free_L = list(range(len(tL), CL.gens))
    free_A = list(range(len(tA), CA.gens))
    Phi = phi_c.matrix.submatrix(free_L, free_A)

    if r:
        lo, _ = Phi.inverse().degree_range()
        c = max(0, -lo)
        B = lattice_basis(Phi, c, R)
    else:
        c = 0
        B = Mat.zero(R, 0, 0)

    loc_tors = [_to_poly(d, R) for d in tL]
    lau_tors = [_to_poly(d, R) for d in tA]
    ngen = len(loc_tors) + len(lau_tors) + r
    G = PresentedModule(R, ngen, Mat.diag(R, loc_tors + lau_tors, ngen, len(loc_tors) + len(lau_tors)))

    # lane maps restrict(G) -> canonical lanes
    nL, nA = len(loc_tors), len(lau_tors)
    tinv_c_A = lau.monomial(1, -c)
    rows_A = [[lau.zero()] * ngen for _ in range(CA.gens)]
    rows_L = [[loc.zero()] * ngen for _ in range(CL.gens)]
    for i in range(nL):
        rows_L[i][i] = loc.one()
    for j in range(nA):
        rows_A[j][nL + j] = lau.one()
    if r:
        W = B.apply_hom(RingHom(R, lau)).scale(tinv_c_A)  # Laurent coordinates of the free generators
        V = Phi @ W.embed(K)  # local coordinates, regular at the origin by construction
        for jj in range(r):
            col = nL + nA + jj
            for ii in range(r):
                rows_A[len(tA) + ii][col] = W[ii, jj]
                rows_L[len(tL) + ii][col] = loc(V[ii, jj])
    resG = restrict(ctx, G)
    lane_maps = [None, None]
    lane_maps[iL] = fromL @ ModuleMap(resG.carriers[iL], CL, Mat(loc, rows_L, ngen))
    lane_maps[iA] = fromA @ ModuleMap(resG.carriers[iA], CA, Mat(lau, rows_A, ngen))
    witness = EqMorphism(resG, x, lane_maps)
    for f in witness.maps:
        if not mc.is_iso(f):
            raise InternalCheckFailure("glued module does not restrict isomorphically")
    return GlueResult(G, witness, B, c)


def _lanes(iL, iA, a, b):
    out = [None, None]
    out[iL], out[iA] = a, b
    return out


def glued_module(ctx: PatchingContext, x: EqObject) -> PresentedModule:
    return glue(ctx, x).module


# -- sections ------------------------------------------------------------------------


def descend_section(res: GlueResult, lane_vectors: Sequence[Mat]) -> Mat:
    """The element of the glued module whose restriction maps to the given lane vectors.

    ``lane_vectors`` are column vectors in the lanes of the glued object x
    forming a morphism unit -> x in the equalizer category.
    """
    G = res.module
    R = G.ring
    inv = [mc.inverse_iso(f) for f in res.witness.maps]
    loc_i, lau_i = 0, 1
    vs = []
    for li, (f, v) in enumerate(zip(inv, lane_vectors)):
        vs.append(f.matrix @ v)
    vL, vA = vs[loc_i], vs[lau_i]
    nL = sum(1 for j in range(G.rel.cols) if G.rel[j, j].num and G.rel[j, j].valuation() > 0)
    out = []
    for i in range(G.gens):
        if i < G.rel.cols:
            d = G.rel[i, i]
            if i < nL:
                out.append(_reduce_local(vL[i, 0], d, R))
            else:
                out.append(_reduce_laurent(vA[i, 0], d, R))
        else:
            a, b = vL[i, 0], vA[i, 0]
            K = a.ring.fraction_field
            if K(a) != K(b):
                raise InternalCheckFailure("lane coordinates of a free generator disagree")
            out.append(_to_poly(b, R) if b.den == (1,) else _laurent_to_poly(b, R))
    return Mat.column(R, out)


def _laurent_to_poly(x: RingElem, R: RingDesc) -> RingElem:
    off, cs = x.laurent_coeffs()
    if off < 0:
        raise InternalCheckFailure(f"{x} is not regular at the origin")
    return R.laurent(cs, off)


def _reduce_local(x: RingElem, d: RingElem, R: RingDesc) -> RingElem:
    """x in k[t]_(t) modulo d = t^e, as a polynomial of degree < e."""
    F = R.field
    e = P.deg(d.num)
    inv_den = P.xgcd(F, x.den, P.monomial(F, 1, e))
    g, s, _ = inv_den
    if P.deg(g) != 0:
        raise InternalCheckFailure("denominator not invertible mod t^e")
    s = P.scale(F, s, F.inv(g[0]))
    return R.elem(P.divmod_(F, P.mul(F, x.num, s), d.num)[1])


def _reduce_laurent(x: RingElem, d: RingElem, R: RingDesc) -> RingElem:
    """x in k[t,1/t] modulo d (d(0) != 0), as a polynomial of degree < deg d."""
    F = R.field
    off, cs = x.laurent_coeffs()
    num = P.trim(list(cs))
    if off >= 0:
        return R.elem(P.divmod_(F, P.shift(num, off), d.num)[1])
    g, s, _ = P.xgcd(F, P.monomial(F, 1, -off), d.num)
    s = P.scale(F, s, F.inv(g[0]))
    return R.elem(P.divmod_(F, P.mul(F, num, s), d.num)[1])


# -- internal Hom and full faithfulness ----------------------------------------------------


def internal_hom(x: EqObject, y: EqObject) -> tuple[EqObject, list[list[ModuleMap]]]:
    """The Hom object between two equalizer objects, lane by lane, with its generating maps."""
    ctx = x.ctx
    lanes = [mc.hom_set_basis(M, N) for M, N in zip(x.carriers, y.carriers)]
    H = [h[0] for h in lanes]
    gens = [h[1] for h in lanes]
    d0 = ctx.d0.functor
    d1 = ctx.d1.functor
    base0 = [d0(g) for g in gens[ctx.d0.lane]]
    cols = []
    for g in gens[ctx.d1.lane]:
        conj = y.glue @ d1(g) @ x.glue_inv
        coords = mc.hom_coordinates(conj, base0)
        if coords is None:
            raise InternalCheckFailure("conjugated Hom generator is not in the span of the d0 generators")
        cols.append(coords)
    src, tgt = ctx.pull(1, H), ctx.pull(0, H)
    m = Mat(ctx.R1, [[cols[j][i] for j in range(len(cols))] for i in range(tgt.gens)], src.gens)
    return EqObject(ctx, H, ModuleMap(src, tgt, m)), gens


@dataclass
class FullFaithfulnessReport:
    hom_invariants: str = ""
    glued_invariants: str = ""
    natural_map_iso: bool = False
    k_dims: Optional[tuple] = None
    sampled: int = 0
    sample_failures: int = 0
    faithful_failures: int = 0

    @property
    def ok(self) -> bool:
        dims_ok = self.k_dims is None or self.k_dims[0] == self.k_dims[1]
        return self.natural_map_iso and dims_ok and self.sample_failures == 0 and self.faithful_failures == 0

    def as_dict(self) -> dict:
        return {
            "hom_invariants": self.hom_invariants,
            "glued_invariants": self.glued_invariants,
            "natural_map_iso": self.natural_map_iso,
            "k_dims": list(self.k_dims) if self.k_dims else None,
            "sampled": self.sampled,
            "sample_failures": self.sample_failures,
            "faithful_failures": self.faithful_failures,
            "ok": self.ok,
        }


def _k_dim(inv: mc.Invariants) -> Optional[int]:
    if inv.rank:
        return None
    return sum(P.deg(d.num) - P.deg(d.den) for d in inv.torsion)


def _fmt_inv(inv: mc.Invariants) -> str:
    return f"rank={inv.rank} torsion=[{', '.join(str(d) for d in inv.torsion)}]"


def check_full_faithfulness(ctx: PatchingContext, M: PresentedModule, N: PresentedModule, samples: int = 50, seed: int = 0) -> FullFaithfulnessReport:
    """Compare Hom_R(M, N) with morphisms restrict(M) -> restrict(N) in the equalizer category.

    The equalizer-side Hom is built from the lane Hom modules and glued
    independently; the natural map sends each R-linear map to its
    restriction, descended to the glued Hom module, and must be an isomorphism.
    """
    rep = FullFaithfulnessReport()
    H, hmaps = mc.hom_set_basis(M, N)
    x, y = restrict(ctx, M), restrict(ctx, N)
    Hx, lane_gens = internal_hom(x, y)
    res = glue(ctx, Hx)
    Gmod = res.module
    invH, invG = mc.invariants(H), mc.invariants(Gmod)
    rep.hom_invariants, rep.glued_invariants = _fmt_inv(invH), _fmt_inv(invG)
    dH, dG = _k_dim(invH), _k_dim(invG)
    if dH is not None or dG is not None:
        rep.k_dims = (dH, dG)

    def lane_vectors(f: ModuleMap) -> list[Mat]:
        out = []
        for h, gens in zip(ctx.d, lane_gens):
            coords = mc.hom_coordinates(BaseChangeFunctor(h)(f), gens)
            if coords is None:
                raise InternalCheckFailure("restricted map not in the lane Hom span")
            out.append(Mat.column(h.target, coords) if coords else Mat.zero(h.target, 0, 1))
        return out

    # natural map H -> Gmod on generators
    cols = [descend_section(res, lane_vectors(f)) for f in hmaps]
    R = ctx.R
    nat_m = Mat(R, [[c[i, 0] for c in cols] for i in range(Gmod.gens)], len(cols)) if cols else Mat.zero(R, Gmod.gens, 0)
    try:
        nat = ModuleMap(H, Gmod, nat_m)
        rep.natural_map_iso = mc.is_iso(nat)
    except ValueError:
        rep.natural_map_iso = False
        return rep

    rng = random.Random(seed)
    for _ in range(samples if hmaps else 0):
        coeffs = [samplers.element(R, rng, 2) for _ in hmaps]
        f = mc.combine_maps(hmaps, coeffs, M, N)
        rep.sampled += 1
        rf = restrict_map(ctx, f)  # raises if the square fails
        if mc.is_zero_map(f) != is_zero_morphism(rf):
            rep.faithful_failures += 1
        # descended element agrees with the image of the coefficient vector
        v = descend_section(res, lane_vectors(f))
        w = nat_m @ Mat.column(R, coeffs)
        same = mc.in_image(Gmod.rel, v - w) if Gmod.rel.cols else v == w
        if not same:
            rep.sample_failures += 1
    return rep


# -- essential image and flatness -------------------------------------------------------


@dataclass
class ClosureReport:
    clauses: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, clause: str, ok: bool, detail: str = ""):
        c = self.clauses.setdefault(clause, {"checked": 0, "passed": 0})
        c["checked"] += 1
        c["passed"] += int(ok)
        if not ok:
            self.failures.append({"clause": clause, "detail": detail})

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"clauses": {k: dict(v) for k, v in self.clauses.items()}, "failures": list(self.failures), "ok": self.ok}


def in_essential_image(ctx: PatchingContext, x: EqObject, expected: Optional[PresentedModule] = None) -> bool:
    """Glue x and confirm the witness; optionally compare with an expected preimage."""
    res = glue(ctx, x)
    if expected is not None and mc.is_isomorphic(res.module, expected) is None:
        return False
    return True


def extension_object(ctx: PatchingContext, a: EqObject, b: EqObject, u: RingElem) -> tuple[EqObject, EqMorphism, EqMorphism]:
    """Rank-one-by-rank-one extension 0 -> a -> E -> b -> 0 with glue [[ga, u], [0, gb]]."""
    eq = ctx.eq
    if any(M.gens != 1 or M.rel.cols for M in a.carriers + b.carriers):
        raise UnsupportedRing("extension builder expects free rank-one objects")
    K = eq.R1
    carriers = [PresentedModule.free(L, 2) for L in eq.lanes]
    g = Mat(K, [[a.glue.matrix[0, 0], u], [K.zero(), b.glue.matrix[0, 0]]])
    E = EqObject(eq, carriers, ModuleMap(eq.pull(1, carriers), eq.pull(0, carriers), g))
    inc = EqMorphism(a, E, [ModuleMap(M, Ec, Mat(M.ring, [[M.ring.one()], [M.ring.zero()]])) for M, Ec in zip(a.carriers, carriers)])
    proj = EqMorphism(E, b, [ModuleMap(Ec, M, Mat(M.ring, [[M.ring.zero(), M.ring.one()]])) for M, Ec in zip(b.carriers, carriers)])
    return E, inc, proj


def check_essential_image_closures(ctx: PatchingContext, modules: Sequence[PresentedModule], maps: Sequence[ModuleMap], rng: random.Random) -> ClosureReport:
    rep = ClosureReport()
    for M in modules:
        for N in modules[:3]:
            t = eq_tensor(restrict(ctx, M), restrict(ctx, N))
            rep.record("tensor", in_essential_image(ctx, t, mc.tensor(M, N)), f"{M} x {N}")
    for f in maps:
        rf = restrict_map(ctx, f)
        Kx, _ = eq_kernel(rf)
        rep.record("kernel", in_essential_image(ctx, Kx, mc.kernel(f)[0]), repr(f))
        Cx, _ = eq_cokernel(rf)
        rep.record("cokernel", in_essential_image(ctx, Cx, mc.cokernel(f)[0]), repr(f))
    R, K = ctx.R, ctx.R1
    one = restrict(ctx, PresentedModule.free(R, 1))
    for _ in range(max(3, len(modules))):
        u = K.monomial(samplers.scalar(K, rng, nonzero=True), rng.randint(-3, 3)) + K(samplers.element(R, rng, 2))
        E, inc, proj = extension_object(ctx, one, one, u)
        exact, _ = eq_is_short_exact(inc, proj)
        ok = exact and in_essential_image(ctx, E)
        if ok:
            G = glue(ctx, E).module
            ok = mc.invariants(G).rank == 2
        rep.record("extension", ok, f"u={u}")
    return rep


@dataclass
class FlatnessReport:
    checked: int = 0
    exact_over_R: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def as_dict(self) -> dict:
        return {"checked": self.checked, "exact_over_R": self.exact_over_R, "disagreements": list(self.disagreements), "ok": self.ok}


def check_faithful_flatness(ctx: PatchingContext, sequences: Sequence[tuple[ModuleMap, ModuleMap]]) -> FlatnessReport:
    """Base change to the lanes preserves and jointly reflects short exactness."""
    rep = FlatnessReport()
    for i, (f, g) in enumerate(sequences):
        over_R = mc.is_short_exact(f, g)
        lanes = [mc.is_short_exact(BaseChangeFunctor(h)(f), BaseChangeFunctor(h)(g)) for h in ctx.d]
        rep.checked += 1
        rep.exact_over_R += int(over_R)
        if over_R != all(lanes):
            rep.disagreements.append({"index": i, "over_R": over_R, "lanes": lanes})
    return rep


# -- random data ---------------------------------------------------------------------------


def random_module(R: RingDesc, rng: random.Random, max_gens: int = 3, max_deg: int = 4) -> PresentedModule:
    return samplers.module(R, rng, max_gens, max_deg)


def random_eq_object(ctx: PatchingContext, rng: random.Random, max_rank: int = 2, window: int = 3, torsion: bool = True) -> EqObject:
    """Free part glued by an invertible matrix with entries in t^-window..t^window, plus lane torsion.

    Carriers are then disguised by random changes of generators.
    """
    _require_bl(ctx)
    eq = ctx.eq
    k = ctx.R.base
    loc, lau = eq.lanes
    K = eq.R1
    r = rng.randint(0 if torsion else 1, max_rank)
    Phi = samplers.windowed_invertible(Laurent(k), r, rng, -window, window).embed(K) if r else Mat.zero(K, 0, 0)
    tL = [loc.monomial(1, rng.randint(1, 3)) for _ in range(rng.randint(0, 1) if torsion else 0)]
    tA = []
    if torsion and rng.random() < 0.5:
        a = samplers.scalar(ctx.R, rng, nonzero=True)
        tA.append(lau.elem((a, 1)))  # t + a, a != 0
    CL = PresentedModule.from_invariants(loc, tL, r)
    CA = PresentedModule.from_invariants(lau, tA, r)
    if CL.gens + CA.gens == 0:
        return random_eq_object(ctx, rng, max_rank, window, torsion)
    srcp, tgtp = eq.pull(1, [CL, CA]), eq.pull(0, [CL, CA])
    g = Mat.zero(K, tgtp.gens, srcp.gens).tolist()
    for i in range(r):
        for j in range(r):
            g[len(tL) + i][len(tA) + j] = Phi[i, j]
    x = EqObject(eq, [CL, CA], ModuleMap(srcp, tgtp, Mat(K, g, srcp.gens)))
    return disguise(ctx, x, rng)


def disguise(ctx: PatchingContext, x: EqObject, rng: random.Random) -> EqObject:
    """Replace each carrier by an isomorphic presentation with permuted, mixed generators."""
    eq = ctx.eq
    new, to = [], []
    for M in x.carriers:
        U = samplers.unimodular(M.ring, M.gens, rng, steps=2, max_deg=1) if M.gens else Mat.zero(M.ring, 0, 0)
        N = PresentedModule(M.ring, M.gens, U @ M.rel)
        new.append(N)
        to.append((ModuleMap(M, N, U), ModuleMap(N, M, U.inverse())))
    fwd = [a for a, _ in to]
    back = [b for _, b in to]
    glue_m = eq.pull_map(0, fwd) @ x.glue @ eq.pull_map(1, back)
    return EqObject(eq, new, glue_m)
