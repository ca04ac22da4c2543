"""Hypothesis strategies for ring elements and matrices."""
import random

from hypothesis import strategies as st

from eqpatch import samplers
from eqpatch.rings import Laurent, LocalAtZero, Poly, PrimeField, RationalFunctions, Rationals

FIELDS = [PrimeField(5), PrimeField(7), Rationals()]
RING_BUILDERS = [Poly, Laurent, LocalAtZero, RationalFunctions]

fields = st.sampled_from(FIELDS)
rings = st.builds(lambda b, k: b(k), st.sampled_from(RING_BUILDERS), fields)
seeds = st.integers(0, 2**32 - 1)


@st.composite
def elements(draw, ring, nonzero=False, max_deg=3):
    rng = random.Random(draw(seeds))
    return samplers.element(ring, rng, max_deg, nonzero=nonzero)


@st.composite
def ring_and_elements(draw, n=3, nonzero=False):
    R = draw(rings)
    return R, [draw(elements(R, nonzero)) for _ in range(n)]
