import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqpatch import birkhoff as bk
from eqpatch import samplers
from eqpatch.errors import BoundExceeded, NonInvertible, ShapeError
from eqpatch.matrix import Mat
from eqpatch.rings import Laurent, Poly, PrimeField, Rationals

from strategies import seeds

F5 = PrimeField(5)
L = Laurent(F5)
t = L.gen()


def cocycle(rows):
    return bk.Cocycle(Mat(L, [[L(x) for x in r] for r in rows]))


@pytest.mark.parametrize(
    "rows, exps",
    [
        ([[t**2, 0], [0, t**-1]], (2, -1)),
        ([[3, 1], [2, 1]], (0, 0)),
        ([[t, 1], [0, t**-1]], (0, 0)),
        ([[0, 1], [t, 0]], (1, 0)),
        ([[t**-3]], (-3,)),
    ],
)
def test_frozen_splitting_types(rows, exps):
    c = cocycle(rows)
    f = bk.birkhoff_factorize(c)
    assert f.type.exponents == exps
    assert f.product() == c.matrix


def test_normalization_at_infinity_not_always_possible():
    assert not bk.birkhoff_factorize(cocycle([[0, 1], [t, 0]])).normalized_at_infinity
    assert bk.birkhoff_factorize(cocycle([[t**2, 0], [0, t**-1]])).normalized_at_infinity


@pytest.mark.parametrize("exps, thr", [((-3,), 3), ((2,), 0), ((1, -1), 1), ((0, -2), 2)])
def test_frozen_generation_thresholds(exps, thr):
    n, _ = bk.generation_threshold(bk.TwoChartDatum(bk.diagonal_cocycle(F5, exps)))
    assert n == thr


@pytest.mark.parametrize("exps", [(2, -1), (0, 0), (-1, -1), (3,), (1, 1, -2)])
def test_h0_dimension_of_diagonal_data(exps):
    d = bk.TwoChartDatum(bk.diagonal_cocycle(F5, exps))
    assert bk.global_sections(d).dim == sum(max(a + 1, 0) for a in exps)
    assert bk.reconstruct(d).type.exponents == exps


def test_non_monomial_determinant_rejected():
    with pytest.raises(NonInvertible):
        cocycle([[t + 1]])


def test_non_laurent_rejected():
    R = Poly(F5)
    with pytest.raises(ShapeError):
        bk.Cocycle(Mat(R, [[R.one()]]))


def test_section_bound_enforced():
    d = bk.TwoChartDatum(bk.diagonal_cocycle(F5, (3,)))
    with pytest.raises(BoundExceeded):
        bk.global_sections(d, bound=0)


@given(seeds, st.integers(1, 3), st.sampled_from([F5, Rationals()]))
@settings(max_examples=25)
def test_factorization_reassembles(seed, n, k):
    rng = random.Random(seed)
    c = bk.Cocycle(samplers.windowed_invertible(Laurent(k), n, rng, -2, 2))
    f = bk.birkhoff_factorize(c)
    assert f.product() == c.matrix
    assert sum(f.type.exponents) == c.det_valuation()


@given(seeds, st.integers(1, 2))
@settings(max_examples=20)
def test_type_invariant_under_chart_changes(seed, n):
    rng = random.Random(seed)
    c = bk.Cocycle(samplers.windowed_invertible(L, n, rng, -2, 2))
    A = samplers.unimodular(Poly(F5, "s"), n, rng, steps=3)
    B = samplers.unimodular(Poly(F5), n, rng, steps=3)
    c2 = bk.act(c, A, B)
    assert bk.splitting_type(c) == bk.splitting_type(c2)
    assert bk.equivalence_witness(c, c2) is not None


@given(seeds)
@settings(max_examples=20)
def test_oracle_matches_on_rank_two(seed):
    rng = random.Random(seed)
    c = bk.Cocycle(samplers.windowed_invertible(L, 2, rng, -2, 2))
    assert bk.oracle_exponents(c) == bk.splitting_type(c).exponents


@given(seeds)
@settings(max_examples=15)
def test_reconstruction_agrees(seed):
    rng = random.Random(seed)
    c = bk.Cocycle(samplers.windowed_invertible(L, 2, rng, -2, 2))
    r = bk.reconstruct(bk.TwoChartDatum(c))
    assert r.agrees
    assert r.n <= max(0, -min(r.type.exponents))


def test_twist_shifts_type():
    d = bk.TwoChartDatum(bk.diagonal_cocycle(F5, (1, -2)))
    assert bk.reconstruct(bk.twist(d, 2)).type.exponents == (3, 0)
