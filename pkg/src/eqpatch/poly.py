"""Base fields (F_p and Q) and dense univariate polynomials over them.

Polynomials are plain tuples of field scalars, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  Scalars are ``int`` in
``range(p)`` for F_p and :class:`fractions.Fraction` for Q.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NotAUnit

Poly = tuple


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Scalar arithmetic for a base field."""

    char: int

    def coerce(self, x):
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def fmt(self, x) -> str:
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def elements(self):
        raise NotImplementedError


class PrimeFieldArith(Field):
    def __init__(self, p: int):
        if not _is_prime(p) or p >= 2**31:
            raise ValueError(f"{p} is not a prime below 2^31")
        self.p = p
        self.char = p

    def coerce(self, x):
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def parse(self, s: str):
        return self.coerce(Fraction(s))

    def fmt(self, x) -> str:
        return str(x)

    def inv(self, x):
        if x % self.p == 0:
            raise NotAUnit("zero has no inverse")
        return pow(x, -1, self.p)

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeFieldArith) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class RationalArith(Field):
    char = 0

    def coerce(self, x):
        return Fraction(x)

    def parse(self, s: str):
        return Fraction(s)

    def fmt(self, x) -> str:
        return str(x)

    def inv(self, x):
        if x == 0:
            raise NotAUnit("zero has no inverse")
        return 1 / Fraction(x)

    def elements(self):
        raise ValueError("Q is infinite")

    def __eq__(self, other):
        return isinstance(other, RationalArith)

    def __hash__(self):
        return hash("Q")


# -- polynomial arithmetic -------------------------------------------------
# Every function takes the field as first argument.  Coefficients are assumed
# already reduced (in range(p) for F_p).


def trim(c: Sequence) -> Poly:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def deg(a: Poly) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(a) - 1


def val(a: Poly) -> int:
    """Lowest exponent with nonzero coefficient; -1 for zero."""
    for i, c in enumerate(a):
        if c:
            return i
    return -1


def const(F: Field, c) -> Poly:
    c = F.coerce(c)
    return (c,) if c else ()


def monomial(F: Field, c, k: int) -> Poly:
    c = F.coerce(c)
    return (0,) * k + (c,) if c else ()


def add(F: Field, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    out = list(a)
    if F.char:
        p = F.char
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
    else:
        for i, c in enumerate(b):
            out[i] = out[i] + c
    return trim(out)


def neg(F: Field, a: Poly) -> Poly:
    if F.char:
        p = F.char
        return tuple((-c) % p for c in a)
    return tuple(-c for c in a)


def sub(F: Field, a: Poly, b: Poly) -> Poly:
    return add(F, a, neg(F, b))


def scale(F: Field, a: Poly, c) -> Poly:
    if not c:
        return ()
    if F.char:
        p = F.char
        return tuple((x * c) % p for x in a)
    return tuple(x * c for x in a)


def shift(a: Poly, k: int) -> Poly:
    """Multiply by t^k (k >= 0) or divide by t^-k (caller guarantees exactness)."""
    if not a:
        return a
    if k >= 0:
        return (0,) * k + tuple(a)
    return tuple(a[-k:])


def mul(F: Field, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return scale(F, b, a[0])
    if len(b) == 1:
        return scale(F, a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    if F.char:
        p = F.char
        out = [c % p for c in out]
    return trim(out)


def divmod_(F: Field, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    r = list(a)
    db = len(b) - 1
    lc_inv = F.inv(b[-1])
    q = [0] * (len(a) - db)
    p = F.char
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if p:
            c %= p
        if not c:
            continue
        c = c * lc_inv
        if p:
            c %= p
        q[k - db] = c
        for j, y in enumerate(b):
            r[k - db + j] -= c * y
    if p:
        r = [x % p for x in r[:db]]
    else:
        r = r[:db]
    return trim(q), trim(r)


def monic(F: Field, a: Poly) -> Poly:
    if not a:
        return a
    return scale(F, a, F.inv(a[-1]))


def gcd(F: Field, a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def xgcd(F: Field, a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, u) with s*a + u*b = g monic."""
    r0, r1 = a, b
    s0, s1 = const(F, 1), ()
    u0, u1 = (), const(F, 1)
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        u0, u1 = u1, sub(F, u0, mul(F, q, u1))
    if not r0:
        return (), (), ()
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, u0, c)


def evaluate(F: Field, a: Poly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return F.coerce(acc)


def compose(F: Field, a: Poly, b: Poly) -> Poly:
    """a(b(t)) by Horner."""
    acc: Poly = ()
    for c in reversed(a):
        acc = add(F, mul(F, acc, b), const(F, c))
    return acc


def pow_(F: Field, a: Poly, k: int) -> Poly:
    out = const(F, 1)
    base = a
    while k:
        if k & 1:
            out = mul(F, out, base)
        base = mul(F, base, base)
        k >>= 1
    return out
