"""Finite categories, functors and natural transformations by explicit tables.

Used to check, by exhaustive enumeration, that the category of pairs
``(a, phi: d1 a -> d0 a)`` has the strict 2-categorical universal property
of an equalizer of two functors.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Hashable, Iterator, Optional

from .errors import BudgetExceeded, ShapeError

Obj = Hashable
Mor = Hashable


class FinCat:
    """A finite category given by its composition table.

    ``compose[(g, f)]`` is ``g . f`` (``f`` first) and is defined exactly when
    ``tgt(f) == src(g)``.
    """

    def __init__(self, objects, morphisms: dict, compose: dict, identities: dict, name: str = "", check: bool = True):
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)
        self.compose = dict(compose)
        self.identities = dict(identities)
        self.name = name
        self._hom: dict = {}
        for m, (a, b) in self.morphisms.items():
            self._hom.setdefault((a, b), []).append(m)
        if check:
            self.check()

    def __repr__(self):
        return f"FinCat({self.name or '?'}: {len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def src(self, m: Mor) -> Obj:
        return self.morphisms[m][0]

    def tgt(self, m: Mor) -> Obj:
        return self.morphisms[m][1]

    def hom(self, a: Obj, b: Obj) -> list:
        return self._hom.get((a, b), [])

    def comp(self, g: Mor, f: Mor) -> Mor:
        return self.compose[(g, f)]

    def is_iso(self, m: Mor) -> bool:
        return self.inverse(m) is not None

    def inverse(self, m: Mor) -> Optional[Mor]:
        a, b = self.morphisms[m]
        for n in self.hom(b, a):
            if self.compose[(n, m)] == self.identities[a] and self.compose[(m, n)] == self.identities[b]:
                return n
        return None

    def check(self):
        for a in self.objects:
            i = self.identities.get(a)
            if i is None or self.morphisms.get(i) != (a, a):
                raise ShapeError(f"bad identity at {a!r}")
        for f, (a, b) in self.morphisms.items():
            for g in (g for c in self.objects for g in self.hom(b, c)):
                if (g, f) not in self.compose:
                    raise ShapeError(f"composite {g!r}.{f!r} missing")
                h = self.compose[(g, f)]
                if self.morphisms.get(h) != (a, self.tgt(g)):
                    raise ShapeError(f"composite {g!r}.{f!r} has wrong endpoints")
            if self.compose[(self.identities[b], f)] != f or self.compose[(f, self.identities[a])] != f:
                raise ShapeError(f"identity law fails at {f!r}")
        for f, (a, b) in self.morphisms.items():
            for g in (g for c in self.objects for g in self.hom(b, c)):
                c = self.tgt(g)
                for h in (h for d in self.objects for h in self.hom(c, d)):
                    if self.compose[(h, self.compose[(g, f)])] != self.compose[(self.compose[(h, g)], f)]:
                        raise ShapeError("composition is not associative")


@dataclass(frozen=True)
class FinFunctor:
    source: FinCat
    target: FinCat
    obj: dict
    mor: dict

    def key(self) -> tuple:
        return (
            tuple(self.obj[a] for a in self.source.objects),
            tuple(self.mor[m] for m in self.source.morphisms),
        )

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, FinFunctor) and self.source is other.source and self.target is other.target and self.key() == other.key()

    def check(self):
        S, T = self.source, self.target
        for m, (a, b) in S.morphisms.items():
            if T.morphisms[self.mor[m]] != (self.obj[a], self.obj[b]):
                raise ShapeError(f"functor breaks endpoints of {m!r}")
        for a in S.objects:
            if self.mor[S.identities[a]] != T.identities[self.obj[a]]:
                raise ShapeError("functor does not preserve identities")
        for (g, f), h in S.compose.items():
            if T.compose[(self.mor[g], self.mor[f])] != self.mor[h]:
                raise ShapeError("functor does not preserve composition")

    def then(self, other: "FinFunctor") -> "FinFunctor":
        """other . self"""
        if other.source is not self.target:
            raise ShapeError("functors not composable")
        return FinFunctor(
            self.source,
            other.target,
            {a: other.obj[b] for a, b in self.obj.items()},
            {m: other.mor[n] for m, n in self.mor.items()},
        )


def identity_functor(C: FinCat) -> FinFunctor:
    return FinFunctor(C, C, {a: a for a in C.objects}, {m: m for m in C.morphisms})


@dataclass(frozen=True)
class FinNatTrans:
    """Natural transformation F => G with components F(a) -> G(a)."""

    source: FinFunctor
    target: FinFunctor
    components: dict

    def key(self) -> tuple:
        return tuple(self.components[a] for a in self.source.source.objects)

    def is_natural(self) -> bool:
        C = self.source.source
        T = self.source.target
        F, G, c = self.source, self.target, self.components
        for a in C.objects:
            if T.morphisms[c[a]] != (F.obj[a], G.obj[a]):
                return False
        for m, (a, b) in C.morphisms.items():
            if T.compose[(G.mor[m], c[a])] != T.compose[(c[b], F.mor[m])]:
                return False
        return True

    def is_iso(self) -> bool:
        T = self.source.target
        return all(T.is_iso(m) for m in self.components.values())


# -- small category library --------------------------------------------------


def discrete(n: int, name: str = "") -> FinCat:
    objs = [f"x{i}" for i in range(n)]
    mors = {f"id_{a}": (a, a) for a in objs}
    comp = {(f"id_{a}", f"id_{a}"): f"id_{a}" for a in objs}
    return FinCat(objs, mors, comp, {a: f"id_{a}" for a in objs}, name or f"disc{n}")


def terminal() -> FinCat:
    return discrete(1, "pt")


def monoid(elements: list, mult, unit, name: str = "") -> FinCat:
    """One-object category; composite g.f is mult(g, f)."""
    mors = {e: ("*", "*") for e in elements}
    comp = {(g, f): mult(g, f) for g in elements for f in elements}
    return FinCat(["*"], mors, comp, {"*": unit}, name)


def cyclic_group(n: int) -> FinCat:
    return monoid(list(range(n)), lambda g, f: (g + f) % n, 0, f"BZ{n}")


def symmetric_group3() -> FinCat:
    perms = list(itertools.permutations(range(3)))
    return monoid(perms, lambda g, f: tuple(g[f[i]] for i in range(3)), (0, 1, 2), "BS3")


def poset(n: int, leq: set, name: str = "") -> FinCat:
    """Objects 0..n-1; ``leq`` must be a reflexive transitive relation."""
    rel = {(a, b) for a, b in leq} | {(a, a) for a in range(n)}
    mors = {(a, b): (a, b) for a, b in rel}
    comp = {}
    for (a, b) in rel:
        for (b2, c) in rel:
            if b2 == b:
                comp[((b, c), (a, b))] = (a, c)
    return FinCat(range(n), mors, comp, {a: (a, a) for a in range(n)}, name or f"poset{n}")


def arrow() -> FinCat:
    return poset(2, {(0, 1)}, "arrow")


def chain(n: int) -> FinCat:
    return poset(n, {(a, b) for a in range(n) for b in range(n) if a <= b}, f"chain{n}")


def codiscrete(n: int) -> FinCat:
    """n objects, exactly one morphism between any two (all isos)."""
    return poset(n, {(a, b) for a in range(n) for b in range(n)}, f"codisc{n}")


def idempotent_monoid() -> FinCat:
    return monoid(["1", "e"], lambda g, f: "1" if g == f == "1" else "e", "1", "idem")


def product(C: FinCat, D: FinCat) -> FinCat:
    objs = [(a, b) for a in C.objects for b in D.objects]
    mors = {(f, g): ((C.src(f), D.src(g)), (C.tgt(f), D.tgt(g))) for f in C.morphisms for g in D.morphisms}
    comp = {}
    for (f2, f1) in C.compose:
        for (g2, g1) in D.compose:
            comp[((f2, g2), (f1, g1))] = (C.compose[(f2, f1)], D.compose[(g2, g1)])
    ids = {(a, b): (C.identities[a], D.identities[b]) for a, b in objs}
    return FinCat(objs, mors, comp, ids, f"{C.name}x{D.name}")


LIBRARY = {
    "pt": terminal,
    "disc2": lambda: discrete(2),
    "disc3": lambda: discrete(3),
    "arrow": arrow,
    "chain3": lambda: chain(3),
    "iso2": lambda: codiscrete(2),
    "codisc3": lambda: codiscrete(3),
    "BZ2": lambda: cyclic_group(2),
    "BZ3": lambda: cyclic_group(3),
    "BS3": symmetric_group3,
    "idem": idempotent_monoid,
    "BZ2xarrow": lambda: product(cyclic_group(2), arrow()),
}


# -- enumeration -------------------------------------------------------------------


@dataclass
class Budget:
    limit: int
    used: int = 0

    def tick(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"enumeration exceeded budget of {self.limit} steps")


def enumerate_functors(S: FinCat, T: FinCat, budget: Optional[Budget] = None) -> Iterator[FinFunctor]:
    """All functors S -> T, by backtracking with composition checks."""
    budget = budget or Budget(10**7)
    non_id = [m for m in S.morphisms if m not in set(S.identities.values())]
    comps = list(S.compose.items())

    def assign_objects(i, obj):
        if i == len(S.objects):
            yield from assign_morphisms(0, obj, {S.identities[a]: T.identities[obj[a]] for a in S.objects})
            return
        for b in T.objects:
            budget.tick()
            obj[S.objects[i]] = b
            yield from assign_objects(i + 1, obj)
        obj.pop(S.objects[i], None)

    def consistent(mor):
        for (g, f), h in comps:
            if g in mor and f in mor and h in mor:
                if T.compose[(mor[g], mor[f])] != mor[h]:
                    return False
        return True

    def assign_morphisms(i, obj, mor):
        if i == len(non_id):
            yield FinFunctor(S, T, dict(obj), dict(mor))
            return
        m = non_id[i]
        a, b = S.morphisms[m]
        for n in T.hom(obj[a], obj[b]):
            budget.tick()
            mor[m] = n
            if consistent(mor):
                yield from assign_morphisms(i + 1, obj, mor)
            del mor[m]

    yield from assign_objects(0, {})


def enumerate_nat_trans(F: FinFunctor, G: FinFunctor, budget: Optional[Budget] = None, isos_only: bool = False) -> Iterator[FinNatTrans]:
    budget = budget or Budget(10**7)
    C, T = F.source, F.target
    choices = []
    for a in C.objects:
        hs = T.hom(F.obj[a], G.obj[a])
        if isos_only:
            hs = [h for h in hs if T.is_iso(h)]
        choices.append(hs)
    for combo in itertools.product(*choices):
        budget.tick()
        eta = FinNatTrans(F, G, dict(zip(C.objects, combo)))
        if eta.is_natural():
            yield eta


# -- the equalizer category ----------------------------------------------------------


def build_equalizer_cat(d0: FinFunctor, d1: FinFunctor) -> tuple[FinCat, FinFunctor, FinNatTrans]:
    """Eq(d0, d1) with its projection G and the canonical iso alpha: d1 G => d0 G."""
    if d0.source is not d1.source or d0.target is not d1.target:
        raise ShapeError("d0 and d1 must share source and target")
    C0, C1 = d0.source, d0.target
    objs = []
    for a in C0.objects:
        for phi in C1.hom(d1.obj[a], d0.obj[a]):
            if C1.is_iso(phi):
                objs.append((a, phi))
    mors, comp = {}, {}
    by_src: dict = {}
    for x in objs:
        for y in objs:
            for f in C0.hom(x[0], y[0]):
                lhs = C1.compose[(d0.mor[f], x[1])]
                rhs = C1.compose[(y[1], d1.mor[f])]
                if lhs == rhs:
                    m = (f, x, y)
                    mors[m] = (x, y)
                    by_src.setdefault(x, []).append(m)
    for m, (x, y) in mors.items():
        for n in by_src.get(y, []):
            comp[(n, m)] = (C0.compose[(n[0], m[0])], x, n[2])
    ids = {x: (C0.identities[x[0]], x, x) for x in objs}
    Eq = FinCat(objs, mors, comp, ids, f"Eq({C0.name})")
    G = FinFunctor(Eq, C0, {x: x[0] for x in objs}, {m: m[0] for m in mors})
    alpha = FinNatTrans(G.then(d1), G.then(d0), {x: x[1] for x in objs})
    return Eq, G, alpha


# -- universal property -----------------------------------------------------------------


@dataclass
class UniversalPropertyReport:
    functors_left: int = 0
    functors_right: int = 0
    nat_left: int = 0
    nat_right: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "functors_eq_side": self.functors_left,
            "functors_pair_side": self.functors_right,
            "nat_trans_eq_side": self.nat_left,
            "nat_trans_pair_side": self.nat_right,
            "violations": list(self.violations),
            "ok": self.ok,
        }


def verify_universal_property(
    d0: FinFunctor,
    d1: FinFunctor,
    test: FinCat,
    eq: Optional[tuple[FinCat, FinFunctor, FinNatTrans]] = None,
    max_objects: int = 4,
    max_morphisms: int = 24,
    budget: int = 2_000_000,
) -> UniversalPropertyReport:
    """Check Fun(test, Eq) == Eq(Fun(test, C0) => Fun(test, C1)) on the nose.

    Functors h: test -> Eq are compared with pairs (F0, beta) where F0 is a
    functor into C0 and beta: d1 F0 => d0 F0 a natural isomorphism, via
    h |-> (G h, alpha h).  Natural transformations h1 => h2 are compared with
    natural transformations g: G h1 => G h2 satisfying
    beta2 . d1(g) == d0(g) . beta1.
    """
    if len(test.objects) > max_objects or len(test.morphisms) > max_morphisms:
        raise BudgetExceeded(f"test category {test!r} exceeds the enumeration size limits")
    B = Budget(budget)
    Eq, G, alpha = eq if eq is not None else build_equalizer_cat(d0, d1)
    C0, C1 = d0.source, d0.target
    rep = UniversalPropertyReport()

    def pair_of(h: FinFunctor):
        F0 = h.then(G)
        beta = tuple(alpha.components[h.obj[a]] for a in test.objects)
        return F0, beta

    left = list(enumerate_functors(test, Eq, B))
    rep.functors_left = len(left)
    right = []
    for F0 in enumerate_functors(test, C0, B):
        src, dst = F0.then(d1), F0.then(d0)
        for beta in enumerate_nat_trans(src, dst, B, isos_only=True):
            right.append((F0, beta.key()))
    rep.functors_right = len(right)

    images = {}
    for h in left:
        F0, beta = pair_of(h)
        k = (F0.key(), beta)
        if k in images:
            rep.violations.append(f"two functors into Eq map to the same pair {k!r}")
        images[k] = h
    right_keys = {(F0.key(), beta) for F0, beta in right}
    for k in images:
        if k not in right_keys:
            rep.violations.append(f"image pair {k!r} is not a valid (F0, beta)")
    for k in right_keys - set(images):
        rep.violations.append(f"pair {k!r} has no preimage functor into Eq")

    # natural transformations between every pair of functors into Eq
    right_by_key = {(F0.key(), beta): (F0, beta) for F0, beta in right}
    for h1, h2 in itertools.product(left, repeat=2):
        gam_left = list(enumerate_nat_trans(h1, h2, B))
        p1, p2 = pair_of(h1), pair_of(h2)
        if (p1[0].key(), p1[1]) not in right_by_key or (p2[0].key(), p2[1]) not in right_by_key:
            continue
        F1, beta1 = p1
        F2, beta2 = p2
        gam_right = []
        for g in enumerate_nat_trans(F1, F2, B):
            ok = True
            for i, a in enumerate(test.objects):
                c = g.components[a]
                if C1.compose[(beta2[i], d1.mor[c])] != C1.compose[(d0.mor[c], beta1[i])]:
                    ok = False
                    break
            if ok:
                gam_right.append(g.key())
        rep.nat_left += len(gam_left)
        rep.nat_right += len(gam_right)
        imgs = [tuple(G.mor[gl.components[a]] for a in test.objects) for gl in gam_left]
        if len(set(imgs)) != len(imgs):
            rep.violations.append("distinct natural transformations into Eq collapse under G")
        if set(imgs) != set(gam_right):
            rep.violations.append(
                f"natural transformation sets differ: {len(set(imgs))} images vs {len(set(gam_right))} squares"
            )
    return rep


# -- instance generation ---------------------------------------------------------------


@dataclass
class EqualizerInstance:
    name: str
    d0: FinFunctor
    d1: FinFunctor
    test: FinCat


def generate_instances(seed: int, count: int, max_morphisms: int = 24) -> list[EqualizerInstance]:
    """Seeded (C0, C1, d0, d1, test) instances drawn from the small library."""
    rng = random.Random(seed)
    sources = ["disc2", "arrow", "iso2", "BZ2", "BZ3", "idem", "chain3", "codisc3", "BS3"]
    targets = ["BZ2", "BZ3", "iso2", "BS3", "codisc3", "disc2", "arrow", "BZ2xarrow", "idem"]
    tests = ["pt", "arrow", "disc2", "BZ2", "iso2"]
    cats = {k: f() for k, f in LIBRARY.items()}
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 50 * count:
            raise BudgetExceeded("could not generate enough instances")
        s, t = rng.choice(sources), rng.choice(targets)
        C0, C1 = cats[s], cats[t]
        fs = list(enumerate_functors(C0, C1, Budget(200_000)))
        if not fs:
            continue
        d0, d1 = rng.choice(fs), rng.choice(fs)
        Eq, _, _ = build_equalizer_cat(d0, d1)
        if len(Eq.objects) > 8 or len(Eq.morphisms) > 64:
            continue
        test = cats[rng.choice(tests)]
        if len(test.morphisms) > max_morphisms:
            continue
        out.append(EqualizerInstance(f"{s}=>{t}|{test.name}#{len(out)}", d0, d1, test))
    return out


def remove_object(Eq: FinCat, o) -> FinCat:
    """Mutation helper: the full subcategory on every object but ``o``."""
    mors = {m: st for m, st in Eq.morphisms.items() if o not in st}
    comp = {k: v for k, v in Eq.compose.items() if k[0] in mors and k[1] in mors}
    ids = {a: m for a, m in Eq.identities.items() if a != o}
    return FinCat([a for a in Eq.objects if a != o], mors, comp, ids, Eq.name + "-minus-object")
