"""Computable commutative rings: F_p, Q, k[t], k[t,1/t], k[t]_(t) and k(t).

Every element of a function ring is stored as a reduced fraction ``num/den``
of polynomials over the base field with monic denominator, so equality is
structural.  The ring kind only restricts which denominators are allowed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from . import poly as P
from .errors import NotAUnit, RingMismatch, UnsupportedRing

FIELD_KINDS = ("Fp", "Q")
FUNCTION_KINDS = ("poly", "laurent", "local", "ratfunc")
PID_KINDS = ("Fp", "Q", "poly", "laurent", "local", "ratfunc")


@dataclass(frozen=True)
class RingDesc:
    kind: str
    p: int = 0
    base: Optional["RingDesc"] = None
    var: str = "t"

    def __post_init__(self):
        if self.kind == "Fp":
            _field_arith(self)  # validates p
        elif self.kind == "Q":
            pass
        elif self.kind in FUNCTION_KINDS:
            if self.base is None or self.base.kind not in FIELD_KINDS:
                raise UnsupportedRing("function rings need a base field F_p or Q")
        else:
            raise UnsupportedRing(f"unknown ring kind {self.kind!r}")

    # -- structure ------------------------------------------------------
    @property
    def field(self) -> P.Field:
        return _field_arith(self.base if self.kind in FUNCTION_KINDS else self)

    @property
    def scalars(self) -> "RingDesc":
        return self.base if self.kind in FUNCTION_KINDS else self

    @property
    def is_field(self) -> bool:
        return self.kind in FIELD_KINDS or self.kind == "ratfunc"

    @property
    def fraction_field(self) -> "RingDesc":
        if self.kind in FIELD_KINDS:
            return self
        return RationalFunctions(self.base, self.var)

    def __str__(self):
        if self.kind == "Fp":
            return f"F_{self.p}"
        if self.kind == "Q":
            return "Q"
        k, v = str(self.base), self.var
        return {
            "poly": f"{k}[{v}]",
            "laurent": f"{k}[{v},1/{v}]",
            "local": f"{k}[{v}]_({v})",
            "ratfunc": f"{k}({v})",
        }[self.kind]

    # -- element construction ---------------------------------------------
    def elem(self, num=(), den=(1,)) -> "RingElem":
        F = self.field
        num = P.trim([F.coerce(c) for c in num])
        den = P.trim([F.coerce(c) for c in den])
        return make(self, num, den)

    def __call__(self, x) -> "RingElem":
        if isinstance(x, RingElem):
            return embed(x, self)
        if isinstance(x, (int, Fraction)):
            return self.elem((x,))
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def zero(self) -> "RingElem":
        return RingElem(self, (), (1,))

    def one(self) -> "RingElem":
        return RingElem(self, (1,), (1,))

    def gen(self) -> "RingElem":
        if self.kind not in FUNCTION_KINDS:
            raise UnsupportedRing(f"{self} has no generator")
        return RingElem(self, (0, 1), (1,))

    def monomial(self, c, k: int) -> "RingElem":
        """c * t^k; negative k only where t is a unit."""
        F = self.field
        if k >= 0:
            return make(self, P.monomial(F, c, k), (1,))
        return make(self, P.const(F, c), P.monomial(F, 1, -k))

    def laurent(self, coeffs, offset: int = 0) -> "RingElem":
        """sum_i coeffs[i] t^(i+offset)."""
        F = self.field
        num = P.trim([F.coerce(c) for c in coeffs])
        if offset >= 0:
            return make(self, P.shift(num, offset), (1,))
        return make(self, num, P.monomial(F, 1, -offset))


@lru_cache(maxsize=None)
def _field_arith(desc: RingDesc) -> P.Field:
    if desc.kind == "Fp":
        return P.PrimeFieldArith(desc.p)
    return P.RationalArith()


def PrimeField(p: int) -> RingDesc:
    return RingDesc("Fp", p=p)


def Rationals() -> RingDesc:
    return RingDesc("Q")


def Poly(base: RingDesc, var: str = "t") -> RingDesc:
    return RingDesc("poly", base=base, var=var)


def Laurent(base: RingDesc, var: str = "t") -> RingDesc:
    return RingDesc("laurent", base=base, var=var)


def LocalAtZero(base: RingDesc, var: str = "t") -> RingDesc:
    return RingDesc("local", base=base, var=var)


def RationalFunctions(base: RingDesc, var: str = "t") -> RingDesc:
    return RingDesc("ratfunc", base=base, var=var)


def field_by_name(name: str) -> RingDesc:
    """'q' or 'f<p>' (e.g. 'f5')."""
    name = name.lower()
    if name == "q":
        return Rationals()
    if name.startswith("f") and name[1:].isdigit():
        return PrimeField(int(name[1:]))
    raise ValueError(f"unknown field {name!r}")


@dataclass(frozen=True)
class RingElem:
    ring: RingDesc
    num: tuple
    den: tuple = (1,)

    # -- arithmetic ----------------------------------------------------
    def _check(self, other) -> "RingElem":
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        if self.den == other.den:
            return make(self.ring, P.add(F, self.num, other.num), self.den)
        num = P.add(F, P.mul(F, self.num, other.den), P.mul(F, other.num, self.den))
        return make(self.ring, num, P.mul(F, self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.ring, P.neg(self.ring.field, self.num), self.den)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        if not self.num or not other.num:
            return self.ring.zero()
        if self.den == (1,) and other.den == (1,):
            return RingElem(self.ring, P.mul(F, self.num, other.num), (1,))
        return make(self.ring, P.mul(F, self.num, other.num), P.mul(F, self.den, other.den))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,)

    # -- units ------------------------------------------------------------
    def is_unit(self) -> bool:
        if not self.num:
            return False
        kind = self.ring.kind
        if kind in FIELD_KINDS or kind == "ratfunc":
            return True
        if kind == "poly":
            return len(self.num) == 1
        if kind == "laurent":
            return P.val(self.num) == P.deg(self.num)
        # local: unit iff numerator has nonzero constant term
        return bool(self.num[0])

    def inverse(self) -> "RingElem":
        if not self.is_unit():
            raise NotAUnit(f"{self} is not a unit in {self.ring}")
        F = self.ring.field
        c = F.inv(self.num[-1])
        return make(self.ring, P.scale(F, self.den, c), P.scale(F, self.num, c))

    # -- structure --------------------------------------------------------
    def valuation(self) -> int:
        """t-adic valuation (of the whole fraction); scalars have valuation 0."""
        if not self.num:
            raise ValueError("valuation of zero")
        if self.ring.kind in FIELD_KINDS:
            return 0
        return P.val(self.num) - P.val(self.den)

    def degree(self) -> int:
        """deg num - deg den; the top t-exponent for Laurent polynomials."""
        if not self.num:
            raise ValueError("degree of zero")
        return P.deg(self.num) - P.deg(self.den)

    def laurent_coeffs(self) -> tuple[int, tuple]:
        """(offset, coeffs) for polynomial or Laurent-polynomial elements."""
        if P.deg(self.den) != P.val(self.den):
            raise ValueError(f"{self} is not a Laurent polynomial")
        k = P.deg(self.den)
        if not self.num:
            return 0, ()
        v = P.val(self.num)
        return v - k, tuple(self.num[v:])

    def coeff(self, k: int):
        off, cs = self.laurent_coeffs()
        i = k - off
        return cs[i] if 0 <= i < len(cs) else 0

    def scalar(self):
        """The base-field value of a constant element."""
        if self.den != (1,) or len(self.num) > 1:
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num else 0

    def __repr__(self):
        return f"RingElem({self})"

    def __str__(self):
        F = self.ring.field
        v = self.ring.var

        def fmt(p):
            if not p:
                return "0"
            terms = []
            for i, c in enumerate(p):
                if not c:
                    continue
                s = F.fmt(c)
                if i == 0:
                    terms.append(s)
                else:
                    mono = v if i == 1 else f"{v}^{i}"
                    terms.append(mono if s == "1" else f"{s}*{mono}")
            return " + ".join(terms)

        if self.den == (1,):
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


Scalar = Union[int, Fraction]


def make(ring: RingDesc, num: tuple, den: tuple) -> RingElem:
    """Canonicalize ``num/den`` and check membership in ``ring``."""
    F = ring.field
    if not den:
        raise ZeroDivisionError("zero denominator")
    kind = ring.kind
    if not num:
        return RingElem(ring, (), (1,))
    if kind in FIELD_KINDS:
        if len(num) > 1 or len(den) > 1:
            raise ValueError(f"non-constant element in field {ring}")
        c = (num[0] * F.inv(den[0]))
        return RingElem(ring, (F.coerce(c),), (1,))
    if len(den) == 1:
        if den[0] != 1:
            num = P.scale(F, num, F.inv(den[0]))
        return RingElem(ring, num, (1,))
    if P.val(den) == P.deg(den):
        # den = c t^k: cancel common powers of t only
        k = P.deg(den)
        c = den[-1]
        if c != 1:
            num = P.scale(F, num, F.inv(c))
        v = min(P.val(num), k)
        num, k = P.shift(num, -v), k - v
        den = P.monomial(F, 1, k) if k else (1,)
    else:
        g = P.gcd(F, num, den)
        if len(g) > 1:
            num = P.divmod_(F, num, g)[0]
            den = P.divmod_(F, den, g)[0]
        c = den[-1]
        if c != 1:
            inv = F.inv(c)
            num, den = P.scale(F, num, inv), P.scale(F, den, inv)
    if kind == "poly" and den != (1,):
        raise ValueError(f"element not in {ring}: nontrivial denominator")
    if kind == "laurent" and P.val(den) != P.deg(den):
        raise ValueError(f"element not in {ring}: denominator not a power of {ring.var}")
    if kind == "local" and not den[0]:
        raise ValueError(f"element not in {ring}: pole at 0")
    return RingElem(ring, num, den)


def contains(ring: RingDesc, num: tuple, den: tuple) -> bool:
    try:
        make(ring, num, den)
    except ValueError:
        return False
    return True


def embed(x: RingElem, target: RingDesc) -> RingElem:
    """Inclusion between kinds over the same base field and variable."""
    src = x.ring
    if src == target:
        return x
    if src.kind in FIELD_KINDS:
        if target.scalars != src:
            raise RingMismatch(f"cannot embed {src} into {target}")
        return RingElem(target, x.num, (1,))
    if target.kind in FIELD_KINDS or target.base != src.base or target.var != src.var:
        raise RingMismatch(f"cannot embed {src} into {target}")
    return make(target, x.num, x.den)


# -- Euclidean structure ----------------------------------------------------


def norm(x: RingElem) -> int:
    """Euclidean norm for the PID kinds."""
    if not x.num:
        raise ValueError("norm of zero")
    kind = x.ring.kind
    if kind in FIELD_KINDS or kind == "ratfunc":
        return 0
    if kind == "poly":
        return P.deg(x.num)
    if kind == "laurent":
        return P.deg(x.num) - P.val(x.num)
    return P.val(x.num)


def euclid_divmod(a: RingElem, b: RingElem) -> tuple[RingElem, RingElem]:
    """a = q b + r with r = 0 or norm(r) < norm(b)."""
    R = a.ring
    F = R.field
    kind = R.kind
    if not b.num:
        raise ZeroDivisionError("division by zero")
    if not a.num:
        return R.zero(), R.zero()
    if kind in FIELD_KINDS or kind == "ratfunc":
        return a / b, R.zero()
    if kind == "poly":
        q, r = P.divmod_(F, a.num, b.num)
        return RingElem(R, q, (1,)), RingElem(R, r, (1,))
    if kind == "laurent":
        ka = P.deg(a.den)
        kb = P.deg(b.den)
        v = P.val(b.num)
        nb = P.shift(b.num, -v)
        q, r = P.divmod_(F, a.num, nb)
        tq = R.monomial(1, kb - v - ka)
        return make(R, q, (1,)) * tq, R.monomial(1, -ka) * make(R, r, (1,))
    if kind == "local":
        if P.val(a.num) >= P.val(b.num):
            return exact_quotient(a, b), R.zero()
        return R.zero(), a
    raise UnsupportedRing(str(R))


def exact_quotient(a: RingElem, b: RingElem) -> Optional[RingElem]:
    """a / b if b divides a in the ring, else None."""
    if not b.num:
        return a.ring.zero() if not a.num else None
    F = a.ring.field
    num = P.mul(F, a.num, b.den)
    den = P.mul(F, a.den, b.num)
    if contains(a.ring, num, den):
        return make(a.ring, num, den)
    return None


def associate_unit(x: RingElem) -> RingElem:
    """Unit u such that x*u is the canonical associate of x.

    Canonical associates: 1 over fields, monic polynomials over k[t], monic
    polynomials with nonzero constant term over k[t,1/t], and t^v over k[t]_(t).
    """
    R = x.ring
    F = R.field
    if not x.num:
        return R.one()
    kind = R.kind
    if kind in FIELD_KINDS or kind == "ratfunc":
        return x.inverse()
    if kind == "poly":
        return R.elem((F.inv(x.num[-1]),))
    if kind == "laurent":
        k = P.deg(x.den)
        v = P.val(x.num)
        return R.monomial(F.inv(x.num[-1]), k - v)
    if kind == "local":
        v = P.val(x.num)
        unit = make(R, P.shift(x.num, -v), x.den)
        return unit.inverse()
    raise UnsupportedRing(str(R))


# -- homomorphisms ------------------------------------------------------------


@dataclass(frozen=True)
class RingHom:
    """Either the canonical inclusion or the substitution ``var -> image``."""

    source: RingDesc
    target: RingDesc
    image: Optional[RingElem] = None

    def __post_init__(self):
        if self.image is None:
            probe = self.source.gen() if self.source.kind in FUNCTION_KINDS else self.source.one()
            embed(probe, self.target)
            return
        if self.image.ring != self.target:
            raise RingMismatch("substitution image must live in the target ring")
        if self.source.kind not in ("poly", "laurent"):
            raise UnsupportedRing("substitution homs are supported from k[t] and k[t,1/t] only")
        if self.source.base != self.target.scalars:
            raise RingMismatch("substitution must fix the base field")
        if self.source.kind == "laurent" and not self.image.is_unit():
            raise NotAUnit("image of t must be a unit for a Laurent source")

    @property
    def is_inclusion(self) -> bool:
        return self.image is None

    def __call__(self, x: RingElem) -> RingElem:
        if x.ring != self.source:
            raise RingMismatch(f"{x.ring} is not the source {self.source}")
        if self.image is None:
            return embed(x, self.target)
        return _subst(x, self.image)

    def then(self, other: "RingHom") -> "RingHom":
        """The composite ``other . self``."""
        if other.source != self.target:
            raise RingMismatch("homs not composable")
        if self.image is None and other.image is None:
            return RingHom(self.source, other.target)
        if self.source.kind in FUNCTION_KINDS:
            g = other(self(self.source.gen()))
            if self.source.kind in ("poly", "laurent"):
                return RingHom(self.source, other.target, g)
        raise UnsupportedRing("composite is not representable")

    def __str__(self):
        if self.image is None:
            return f"{self.source} -> {self.target}"
        return f"{self.source} -> {self.target}, {self.source.var} |-> {self.image}"


def _subst(x: RingElem, g: RingElem) -> RingElem:
    T = g.ring
    if x.ring.kind in FIELD_KINDS:
        return RingElem(T, x.num, (1,))

    def horner(p):
        acc = T.zero()
        for c in reversed(p):
            acc = acc * g + T.elem((c,))
        return acc

    num = horner(x.num)
    if x.den == (1,):
        return num
    # den is a power of t here (Laurent source); g is a unit in T
    return num * g.inverse() ** P.deg(x.den)


def identity_hom(R: RingDesc) -> RingHom:
    return RingHom(R, R)
