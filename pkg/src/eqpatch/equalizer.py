"""The equalizer category of two base-change functors between module categories.

The source "ring" ``R0`` is a tuple of lane rings (a product ring kept as
separate PID lanes); each of ``d0``, ``d1`` picks a lane and a ring map from
it into the common target ``R1``.  An object is a tuple of lane modules
together with an isomorphism ``d1*(M) -> d0*(M)`` over ``R1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import modcat as mc
from .errors import ContextMismatch, InternalCheckFailure, NonInvertible, ShapeError
from .matrix import Mat
from .modcat import BaseChangeFunctor, ModuleMap, PresentedModule
from .rings import LocalAtZero, Laurent, Poly, RationalFunctions, RingDesc, RingHom, identity_hom


@dataclass(frozen=True)
class Lane:
    """A lane index together with the base change out of that lane."""

    lane: int
    functor: BaseChangeFunctor


@dataclass(frozen=True)
class EqContext:
    lanes: tuple[RingDesc, ...]
    R1: RingDesc
    d0: Lane
    d1: Lane
    name: str = ""

    def __post_init__(self):
        for d in (self.d0, self.d1):
            if d.functor.source != self.lanes[d.lane] or d.functor.target != self.R1:
                raise ContextMismatch(f"lane functor {d.functor.hom} does not match the context rings")

    def pull(self, which: int, carriers: Sequence[PresentedModule]) -> PresentedModule:
        d = self.d0 if which == 0 else self.d1
        return d.functor(carriers[d.lane])

    def pull_map(self, which: int, maps: Sequence[ModuleMap]) -> ModuleMap:
        d = self.d0 if which == 0 else self.d1
        return d.functor(maps[d.lane])


def identity_context(R: RingDesc) -> EqContext:
    F = BaseChangeFunctor(identity_hom(R))
    return EqContext((R,), R, Lane(0, F), Lane(0, F), f"id:{R}")


def bl_eq_context(k: RingDesc) -> EqContext:
    """Lanes (k[t]_(t), k[t,1/t]) over k(t); d0 from the local lane, d1 from the Laurent lane."""
    loc, lau, K = LocalAtZero(k), Laurent(k), RationalFunctions(k)
    return EqContext(
        (loc, lau),
        K,
        Lane(0, BaseChangeFunctor(RingHom(loc, K))),
        Lane(1, BaseChangeFunctor(RingHom(lau, K))),
        f"bl:{k}",
    )


def two_chart_eq_context(k: RingDesc) -> EqContext:
    """Lanes (k[s], k[t]) with s = 1/t, overlap k[t,1/t]; d0 from the s-chart, d1 from the t-chart."""
    S, T, L = Poly(k, "s"), Poly(k), Laurent(k)
    tinv = L.monomial(1, -1)
    return EqContext(
        (S, T),
        L,
        Lane(0, BaseChangeFunctor(RingHom(S, L, tinv))),
        Lane(1, BaseChangeFunctor(RingHom(T, L))),
        f"p1:{k}",
    )


class EqObject:
    __slots__ = ("ctx", "carriers", "glue", "glue_inv")

    def __init__(self, ctx: EqContext, carriers: Sequence[PresentedModule], glue: ModuleMap, glue_inv: Optional[ModuleMap] = None):
        carriers = tuple(carriers)
        if len(carriers) != len(ctx.lanes) or any(M.ring != R for M, R in zip(carriers, ctx.lanes)):
            raise ContextMismatch("carriers do not match the context lanes")
        if glue.source != ctx.pull(1, carriers) or glue.target != ctx.pull(0, carriers):
            raise ShapeError("glue must go from d1*(carrier) to d0*(carrier)")
        if glue_inv is None:
            glue_inv = mc.inverse_iso(glue)
            if glue_inv is None:
                raise NonInvertible("glue map is not an isomorphism")
        self.ctx = ctx
        self.carriers = carriers
        self.glue = glue
        self.glue_inv = glue_inv

    def __repr__(self):
        return f"EqObject({self.ctx.name}, {self.carriers}, glue={self.glue.matrix!r})"

    def identity(self) -> "EqMorphism":
        return EqMorphism(self, self, [M.identity() for M in self.carriers])


def eq_object(ctx: EqContext, carriers: Sequence[PresentedModule], glue_matrix: Mat) -> EqObject:
    src, tgt = ctx.pull(1, carriers), ctx.pull(0, carriers)
    return EqObject(ctx, carriers, ModuleMap(src, tgt, glue_matrix))


def free_object(ctx: EqContext, glue_matrix: Mat) -> EqObject:
    n = glue_matrix.rows
    return eq_object(ctx, [PresentedModule.free(R, n) for R in ctx.lanes], glue_matrix)


def square_commutes(src: EqObject, tgt: EqObject, maps: Sequence[ModuleMap]) -> bool:
    ctx = src.ctx
    lhs = tgt.glue @ ctx.pull_map(1, maps)
    rhs = ctx.pull_map(0, maps) @ src.glue
    return mc.maps_equal(lhs, rhs)


class EqMorphism:
    __slots__ = ("source", "target", "maps")

    def __init__(self, source: EqObject, target: EqObject, maps: Sequence[ModuleMap], check: bool = True):
        if source.ctx != target.ctx:
            raise ContextMismatch("morphism between objects over different contexts")
        maps = tuple(maps)
        for f, M, N in zip(maps, source.carriers, target.carriers):
            if f.source != M or f.target != N:
                raise ShapeError("lane map does not match carriers")
        if check and not square_commutes(source, target, maps):
            raise ShapeError("glue square does not commute")
        self.source = source
        self.target = target
        self.maps = maps

    def __matmul__(self, other: "EqMorphism") -> "EqMorphism":
        return EqMorphism(other.source, self.target, [f @ g for f, g in zip(self.maps, other.maps)], check=False)

    def __add__(self, other: "EqMorphism") -> "EqMorphism":
        return EqMorphism(self.source, self.target, [f + g for f, g in zip(self.maps, other.maps)], check=False)

    def __neg__(self) -> "EqMorphism":
        return EqMorphism(self.source, self.target, [-f for f in self.maps], check=False)

    def scale(self, c) -> "EqMorphism":
        """Multiply by a scalar c of the base field."""
        return EqMorphism(self.source, self.target, [f.scale(f.ring(c)) for f in self.maps], check=False)

    def __repr__(self):
        return f"EqMorphism({[f.matrix for f in self.maps]!r})"


def morphisms_equal(f: EqMorphism, g: EqMorphism) -> bool:
    return all(mc.maps_equal(a, b) for a, b in zip(f.maps, g.maps))


def is_zero_object(x: EqObject) -> bool:
    return all(mc.is_zero_module(M) for M in x.carriers)


def is_zero_morphism(f: EqMorphism) -> bool:
    return all(mc.is_zero_map(a) for a in f.maps)


# -- abelian structure ----------------------------------------------------------


def eq_kernel(f: EqMorphism) -> tuple[EqObject, EqMorphism]:
    """Kernel with the unique glue psi making d0*(inc) . psi == glue . d1*(inc)."""
    ctx = f.source.ctx
    pairs = [mc.kernel(a) for a in f.maps]
    K = tuple(p[0] for p in pairs)
    inc = [p[1] for p in pairs]
    d0inc, d1inc = ctx.pull_map(0, inc), ctx.pull_map(1, inc)
    if not mc.is_mono(d0inc):
        raise InternalCheckFailure("d0*(kernel inclusion) is not mono; psi would not be unique")
    psi = mc.factor_through_mono(d0inc, f.source.glue @ d1inc)
    if psi is None:
        raise InternalCheckFailure("no glue map for the kernel")
    try:
        Kx = EqObject(ctx, K, psi)
    except NonInvertible as e:
        raise InternalCheckFailure("kernel glue is not an isomorphism") from e
    return Kx, EqMorphism(Kx, f.source, inc)


def eq_cokernel(f: EqMorphism) -> tuple[EqObject, EqMorphism]:
    """Cokernel with the unique glue psi making psi . d1*(proj) == d0*(proj) . glue."""
    ctx = f.source.ctx
    pairs = [mc.cokernel(a) for a in f.maps]
    C = tuple(p[0] for p in pairs)
    proj = [p[1] for p in pairs]
    d0p, d1p = ctx.pull_map(0, proj), ctx.pull_map(1, proj)
    if not mc.is_epi(d1p):
        raise InternalCheckFailure("d1*(cokernel projection) is not epi; psi would not be unique")
    psi = mc.factor_through_epi(d1p, d0p @ f.target.glue)
    if psi is None:
        raise InternalCheckFailure("no glue map for the cokernel")
    try:
        Cx = EqObject(ctx, C, psi)
    except NonInvertible as e:
        raise InternalCheckFailure("cokernel glue is not an isomorphism") from e
    return Cx, EqMorphism(f.target, Cx, proj)


def eq_direct_sum(x: EqObject, y: EqObject) -> tuple[EqObject, list[EqMorphism], list[EqMorphism]]:
    ctx = x.ctx
    sums = [mc.direct_sum(M, N) for M, N in zip(x.carriers, y.carriers)]
    S = [s[0] for s in sums]
    src, tgt = ctx.pull(1, S), ctx.pull(0, S)
    glue = mc.map_sum(x.glue, y.glue, src, tgt)
    sx = EqObject(ctx, S, glue, mc.map_sum(x.glue_inv, y.glue_inv, tgt, src))
    incs = [EqMorphism(x, sx, [s[1][0] for s in sums]), EqMorphism(y, sx, [s[1][1] for s in sums])]
    projs = [EqMorphism(sx, x, [s[2][0] for s in sums]), EqMorphism(sx, y, [s[2][1] for s in sums])]
    return sx, incs, projs


def factor_through(k: EqMorphism, f: EqMorphism) -> Optional[EqMorphism]:
    """X with k . X == f for a lane-wise mono k, or None."""
    maps = []
    for a, b in zip(k.maps, f.maps):
        X = mc.factor_through_mono(a, b)
        if X is None:
            return None
        maps.append(X)
    try:
        return EqMorphism(f.source, k.source, maps)
    except ShapeError:
        return None


# -- monoidal structure -----------------------------------------------------------

MUTATIONS = (
    "associator_sign",
    "associator_double",
    "left_unitor_double",
    "braiding_negate",
    "braiding_double",
    "tensor_glue_t",
)


@dataclass(frozen=True)
class EqMonoidal:
    """Tensor structure on an equalizer category; ``mutation`` injects a defect for testing."""

    ctx: EqContext
    mutation: Optional[str] = None

    def __post_init__(self):
        if self.mutation is not None and self.mutation not in MUTATIONS:
            raise ValueError(f"unknown mutation {self.mutation!r}")
        object.__setattr__(self, "_cache", {})

    def _check(self, *xs: EqObject):
        for x in xs:
            if x.ctx != self.ctx:
                raise ContextMismatch("object from a different context")

    def unit(self) -> EqObject:
        if "unit" not in self._cache:
            ctx = self.ctx
            carriers = [mc.unit_module(R) for R in ctx.lanes]
            one = Mat.identity(ctx.R1, 1)
            src, tgt = ctx.pull(1, carriers), ctx.pull(0, carriers)
            self._cache["unit"] = EqObject(ctx, carriers, ModuleMap(src, tgt, one), ModuleMap(tgt, src, one))
        return self._cache["unit"]

    def tensor(self, x: EqObject, y: EqObject) -> EqObject:
        """Carrier-wise tensor; glue fixed by the square glue(x@y) . J1 == J0 . (gx @ gy), J strict."""
        self._check(x, y)
        hit = self._cache.get((id(x), id(y)))
        if hit is not None:
            return hit[2]
        ctx = self.ctx
        carriers = [mc.tensor(M, N) for M, N in zip(x.carriers, y.carriers)]
        g = mc.tensor_maps(x.glue, y.glue)
        src, tgt = ctx.pull(1, carriers), ctx.pull(0, carriers)
        m, minv = g.matrix, mc.tensor_maps(x.glue_inv, y.glue_inv).matrix
        if self.mutation == "tensor_glue_t":
            K = ctx.R1
            c = K.gen() if K.kind != "Fp" and K.kind != "Q" else K(2)
            m, minv = m.scale(c), minv.scale(c.inverse())
        # the tensor of the inverse glues is the inverse glue; no elimination needed
        out = EqObject(ctx, carriers, ModuleMap(src, tgt, m), ModuleMap(tgt, src, minv))
        self._cache[(id(x), id(y))] = (x, y, out)  # keep x, y alive so ids stay unique
        return out

    def tensor_morphisms(self, f: EqMorphism, g: EqMorphism, check: bool = False) -> EqMorphism:
        src, tgt = self.tensor(f.source, g.source), self.tensor(f.target, g.target)
        maps = [mc.tensor_maps(a, b) for a, b in zip(f.maps, g.maps)]
        return EqMorphism(src, tgt, maps, check=check)

    def _lanes(self, src: EqObject, tgt: EqObject, maps, factor=1) -> EqMorphism:
        if factor != 1:
            maps = [m.scale(m.ring(factor)) for m in maps]
        return EqMorphism(src, tgt, maps, check=False)

    def associator(self, x: EqObject, y: EqObject, z: EqObject) -> EqMorphism:
        src = self.tensor(self.tensor(x, y), z)
        tgt = self.tensor(x, self.tensor(y, z))
        f = {"associator_sign": -1, "associator_double": 2}.get(self.mutation, 1)
        return self._lanes(src, tgt, [mc.associator(*t) for t in zip(x.carriers, y.carriers, z.carriers)], f)

    def left_unitor(self, x: EqObject) -> EqMorphism:
        f = 2 if self.mutation == "left_unitor_double" else 1
        return self._lanes(self.tensor(self.unit(), x), x, [mc.left_unitor(M) for M in x.carriers], f)

    def right_unitor(self, x: EqObject) -> EqMorphism:
        return self._lanes(self.tensor(x, self.unit()), x, [mc.right_unitor(M) for M in x.carriers])

    def braiding(self, x: EqObject, y: EqObject) -> EqMorphism:
        f = {"braiding_negate": -1, "braiding_double": 2}.get(self.mutation, 1)
        return self._lanes(self.tensor(x, y), self.tensor(y, x), [mc.braiding(M, N) for M, N in zip(x.carriers, y.carriers)], f)


def eq_tensor(x: EqObject, y: EqObject) -> EqObject:
    return EqMonoidal(x.ctx).tensor(x, y)


def eq_unit(ctx: EqContext) -> EqObject:
    return EqMonoidal(ctx).unit()


@dataclass
class CoherenceReport:
    diagrams: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = ""):
        self.diagrams[name] = self.diagrams.get(name, True) and ok
        if not ok:
            self.failures.append({"diagram": name, "detail": detail})

    @property
    def ok(self) -> bool:
        return all(self.diagrams.values())

    def as_dict(self) -> dict:
        return {"diagrams": dict(self.diagrams), "failures": list(self.failures), "ok": self.ok}


def _cmp(rep: CoherenceReport, name: str, f: EqMorphism, g: EqMorphism):
    ok = morphisms_equal(f, g)
    detail = "" if ok else f"lhs={[m.matrix for m in f.maps]!r} rhs={[m.matrix for m in g.maps]!r}"
    rep.record(name, ok, detail)


def check_coherence(x: EqObject, y: EqObject, z: EqObject, mutation: Optional[str] = None) -> CoherenceReport:
    """Evaluate the monoidal coherence diagrams in the equalizer category exactly.

    Covered: structure maps are morphisms of Eq, pentagon (on x, y, z, x),
    unit triangle, both hexagons, symmetry, the tensor-glue square, and
    monoidality of the canonical transformation d1* G => d0* G with strict
    comparison maps J.
    """
    T = EqMonoidal(x.ctx, mutation)
    ctx = x.ctx
    rep = CoherenceReport()
    w = x
    I = T.unit()

    def idm(o):
        return o.identity()

    def valid(name, m: EqMorphism):
        rep.record(name, square_commutes(m.source, m.target, m.maps), f"glue square fails for {name}")

    valid("associator_is_morphism", T.associator(x, y, z))
    valid("left_unitor_is_morphism", T.left_unitor(x))
    valid("right_unitor_is_morphism", T.right_unitor(x))
    valid("braiding_is_morphism", T.braiding(x, y))

    # pentagon: ((wx)y)z -> w(x(yz))
    a1 = T.associator(T.tensor(w, x), y, z)
    a2 = T.associator(w, x, T.tensor(y, z))
    b1 = T.tensor_morphisms(T.associator(w, x, y), idm(z))
    b2 = T.associator(w, T.tensor(x, y), z)
    b3 = T.tensor_morphisms(idm(w), T.associator(x, y, z))
    _cmp(rep, "pentagon", a2 @ a1, b3 @ (b2 @ b1))

    # unit triangle: (x 1) y -> x (1 y) -> x y
    lhs = T.tensor_morphisms(idm(x), T.left_unitor(y)) @ T.associator(x, I, y)
    rhs = T.tensor_morphisms(T.right_unitor(x), idm(y))
    _cmp(rep, "triangle", lhs, rhs)
    _cmp(rep, "unit_coincide", T.left_unitor(I), T.right_unitor(I))

    # hexagon: (xy)z -> x(yz) -> (yz)x -> y(zx)
    lhs = T.associator(y, z, x) @ (T.braiding(x, T.tensor(y, z)) @ T.associator(x, y, z))
    rhs = T.tensor_morphisms(idm(y), T.braiding(x, z)) @ (T.associator(y, x, z) @ T.tensor_morphisms(T.braiding(x, y), idm(z)))
    _cmp(rep, "hexagon", lhs, rhs)
    # inverse hexagon: x(yz) -> (xy)z -> z(xy) -> (zx)y
    inv_a = lambda p, q, r: _invert_structural(T.associator(p, q, r))
    lhs = inv_a(z, x, y) @ (T.braiding(T.tensor(x, y), z) @ inv_a(x, y, z))
    rhs = T.tensor_morphisms(T.braiding(x, z), idm(y)) @ (inv_a(x, z, y) @ T.tensor_morphisms(idm(x), T.braiding(y, z)))
    _cmp(rep, "hexagon_inverse", lhs, rhs)
    _cmp(rep, "symmetry", T.braiding(y, x) @ T.braiding(x, y), idm(T.tensor(x, y)))

    # tensor-glue square and monoidality of alpha (components = glue maps)
    for name, (p, q) in {"eqtensor_xy": (x, y), "eqtensor_yz": (y, z)}.items():
        pq = T.tensor(p, q)
        J1 = ModuleMap(mc.tensor(ctx.pull(1, p.carriers), ctx.pull(1, q.carriers)), ctx.pull(1, pq.carriers), Mat.identity(ctx.R1, pq.glue.source.gens))
        J0 = ModuleMap(mc.tensor(ctx.pull(0, p.carriers), ctx.pull(0, q.carriers)), ctx.pull(0, pq.carriers), Mat.identity(ctx.R1, pq.glue.target.gens))
        ok = mc.maps_equal(pq.glue @ J1, J0 @ mc.tensor_maps(p.glue, q.glue))
        rep.record(name, ok, "" if ok else f"glue={pq.glue.matrix!r}")
        ok = all(
            M == N for M, N in zip(pq.carriers, [mc.tensor(a, b) for a, b in zip(p.carriers, q.carriers)])
        )
        rep.record("projection_strict_monoidal", ok, "carrier of tensor is not the tensor of carriers")
    ok = mc.maps_equal(I.glue, ModuleMap(I.glue.source, I.glue.target, Mat.identity(ctx.R1, 1)))
    rep.record("alpha_unit", ok, "" if ok else f"unit glue={I.glue.matrix!r}")
    # naturality of alpha along the structure maps
    for name, m in (("alpha_natural_associator", T.associator(x, y, z)), ("alpha_natural_braiding", T.braiding(x, y))):
        lhs = m.target.glue @ ctx.pull_map(1, m.maps)
        rhs = ctx.pull_map(0, m.maps) @ m.source.glue
        rep.record(name, mc.maps_equal(lhs, rhs), f"{name} square fails")
    return rep


def _invert_structural(m: EqMorphism) -> EqMorphism:
    maps = []
    for f in m.maps:
        g = mc.inverse_iso(f)
        if g is None:
            raise InternalCheckFailure("structure map is not invertible")
        maps.append(g)
    return EqMorphism(m.target, m.source, maps, check=False)


# -- faithful exactness -------------------------------------------------------------


@dataclass
class ExactnessReport:
    eq_exact: bool
    carrier_exact: bool
    details: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.eq_exact == self.carrier_exact

    def as_dict(self) -> dict:
        return {"eq_exact": self.eq_exact, "carrier_exact": self.carrier_exact, "agree": self.agree, "details": dict(self.details)}


def eq_is_short_exact(f: EqMorphism, g: EqMorphism) -> tuple[bool, dict]:
    """Exactness of 0 -> X -f-> Y -g-> Z -> 0 decided with Eq kernels and cokernels."""
    det = {}
    K, _ = eq_kernel(f)
    det["mono"] = is_zero_object(K)
    C, _ = eq_cokernel(g)
    det["epi"] = is_zero_object(C)
    det["composite_zero"] = is_zero_morphism(g @ f)
    middle = False
    if det["composite_zero"]:
        Kg, kinc = eq_kernel(g)
        fac = factor_through(kinc, f)
        if fac is not None:
            Cf, _ = eq_cokernel(fac)
            middle = is_zero_object(Cf)
    det["middle"] = middle
    return all(det.values()), det


def check_faithful_exactness(f: EqMorphism, g: EqMorphism) -> ExactnessReport:
    eq_ok, det = eq_is_short_exact(f, g)
    car = all(mc.is_short_exact(a, b) for a, b in zip(f.maps, g.maps))
    return ExactnessReport(eq_ok, car, det)
