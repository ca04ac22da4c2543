"""Seeded random generators for ring elements, matrices and modules."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .matrix import Mat
from .modcat import PresentedModule
from .rings import RingDesc, RingElem


def scalar(R: RingDesc, rng: random.Random, nonzero: bool = False, height: int = 3):
    """A base-field scalar; over Q a small fraction."""
    while True:
        if R.field.char:
            c = rng.randrange(R.field.char)
        else:
            c = Fraction(rng.randint(-height, height), rng.randint(1, 2))
        if c or not nonzero:
            return c


def poly_coeffs(R: RingDesc, rng: random.Random, max_deg: int, nonzero: bool = False) -> list:
    while True:
        d = rng.randint(0, max_deg)
        cs = [scalar(R, rng) for _ in range(d + 1)]
        if any(cs) or not nonzero:
            return cs


def element(R: RingDesc, rng: random.Random, max_deg: int = 2, nonzero: bool = False, window: Optional[tuple[int, int]] = None) -> RingElem:
    """A random element of R with small support.

    Laurent elements use the exponent window ``window`` (default [-max_deg, max_deg]).
    """
    while True:
        if R.kind in ("Fp", "Q"):
            x = R.elem((scalar(R, rng),))
        elif R.kind == "poly":
            x = R.elem(poly_coeffs(R, rng, max_deg))
        elif R.kind == "laurent":
            lo, hi = window or (-max_deg, max_deg)
            x = R.laurent([scalar(R, rng) for _ in range(hi - lo + 1)], lo)
        elif R.kind == "local":
            den = [scalar(R, rng, nonzero=True)] + [scalar(R, rng) for _ in range(rng.randint(0, 1))]
            x = R.elem(poly_coeffs(R, rng, max_deg), den)
        else:
            den = poly_coeffs(R, rng, 1, nonzero=True)
            x = R.elem(poly_coeffs(R, rng, max_deg), den)
        if x.num or not nonzero:
            return x


def unit(R: RingDesc, rng: random.Random, max_deg: int = 2) -> RingElem:
    """A random unit of R."""
    while True:
        if R.kind == "laurent":
            return R.monomial(scalar(R, rng, nonzero=True), rng.randint(-max_deg, max_deg))
        if R.kind == "poly" or R.kind in ("Fp", "Q"):
            return R.elem((scalar(R, rng, nonzero=True),))
        x = element(R, rng, max_deg, nonzero=True)
        if x.is_unit():
            return x


def matrix(R: RingDesc, rows: int, cols: int, rng: random.Random, max_deg: int = 2, density: float = 1.0) -> Mat:
    return Mat(
        R,
        [[element(R, rng, max_deg) if rng.random() < density else R.zero() for _ in range(cols)] for _ in range(rows)],
        cols,
    )


def unimodular(R: RingDesc, n: int, rng: random.Random, steps: int = 4, max_deg: int = 1) -> Mat:
    """A random invertible matrix over R: product of elementary and unit-diagonal factors."""
    m = Mat.diag(R, [unit(R, rng, max_deg) for _ in range(n)])
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        e = [[R.one() if a == b else R.zero() for b in range(n)] for a in range(n)]
        e[i][j] = element(R, rng, max_deg)
        m = Mat(R, e, n) @ m if rng.random() < 0.5 else m @ Mat(R, e, n)
    perm = list(range(n))
    rng.shuffle(perm)
    P = Mat(R, [[R.one() if perm[i] == j else R.zero() for j in range(n)] for i in range(n)], n)
    return P @ m


def windowed_invertible(R: RingDesc, n: int, rng: random.Random, lo: int = -2, hi: int = 2, steps: int = 6) -> Mat:
    """An invertible Laurent matrix with every entry supported in t^lo..t^hi.

    Built from a monomial diagonal by elementary operations, rejecting any
    operation that leaves the exponent window.
    """
    assert R.kind == "laurent"

    def fits(m: Mat) -> bool:
        for row in m.tolist():
            for x in row:
                if x.num:
                    off, cs = x.laurent_coeffs()
                    if off < lo or off + len(cs) - 1 > hi:
                        return False
        return True

    diag = [R.monomial(scalar(R, rng, nonzero=True), rng.randint(lo, hi)) for _ in range(n)]
    m = Mat.diag(R, diag)
    for _ in range(steps if n > 1 else 0):
        for _attempt in range(8):
            i, j = rng.sample(range(n), 2)
            c = R.monomial(scalar(R, rng, nonzero=True), rng.randint(lo, hi))
            e = [[R.one() if a == b else R.zero() for b in range(n)] for a in range(n)]
            e[i][j] = c
            cand = Mat(R, e, n) @ m if rng.random() < 0.5 else m @ Mat(R, e, n)
            if fits(cand):
                m = cand
                break
    perm = list(range(n))
    rng.shuffle(perm)
    P = Mat(R, [[R.one() if perm[i] == j else R.zero() for j in range(n)] for i in range(n)], n)
    return P @ m


def module(R: RingDesc, rng: random.Random, max_gens: int = 3, max_deg: int = 4, max_rels: Optional[int] = None) -> PresentedModule:
    """A random finitely presented module with at most ``max_gens`` generators."""
    g = rng.randint(1, max_gens)
    r = rng.randint(0, max_rels if max_rels is not None else g)
    rel = Mat(R, [[element(R, rng, max_deg) if rng.random() < 0.6 else R.zero() for _ in range(r)] for _ in range(g)], r)
    return PresentedModule(R, g, rel)
