import random

import pytest
from hypothesis import given, settings

from eqpatch import birkhoff as bk
from eqpatch import samplers
from eqpatch import torsors as ts
from eqpatch.matrix import Mat
from eqpatch.rings import Laurent, PrimeField, Rationals

from strategies import seeds

F5 = PrimeField(5)
BL = ts.bl_torsor_context(F5)
P1 = ts.p1_torsor_context(F5)
L = Laurent(F5)
s = L.gen()


def lmat(rows):
    return Mat(L, [[L(x) for x in r] for r in rows])


def test_h0_equalizer_gm_is_units_of_k():
    d = ts.h0_equalizer(BL, ts.Gm()).as_dict()
    assert d["ok"] and d["equalizer_size"] == 4 and d["image_size"] == 4


def test_h0_equalizer_sl1_is_trivial_group():
    d = ts.h0_equalizer(BL, ts.SL(1)).as_dict()
    assert d["ok"] and d["elements"] == ["1"]


def test_bl_uniformizer_glues_to_trivial_torsor():
    K = BL.R1
    c = ts.connecting_map(BL, ts.Gm(), Mat(K, [[K.gen()]]))
    assert c.trivial and c.normal_form == (0,)


@pytest.mark.parametrize(
    "rows, exps, trivial",
    [
        ([[1, 0], [0, 1]], (0, 0), True),
        ([[s, 0], [0, s**-1]], (1, -1), False),
        ([[s, 1], [0, s**-1]], (0, 0), True),
        ([[s**2, 0], [0, s**-1]], (2, -1), False),
        ([[0, 1], [1, 0]], (0, 0), True),
    ],
)
def test_p1_connecting_map_frozen(rows, exps, trivial):
    c = ts.connecting_map(P1, ts.GL(2), lmat(rows))
    assert c.normal_form == exps and c.trivial is trivial


def test_naive_mutant_misclassifies():
    g = lmat([[s, 1], [0, s**-1]])
    assert ts.connecting_map(P1, ts.GL(2), g).trivial
    assert not ts.connecting_map(P1, ts.GL(2), g, mutation="naive").trivial


def test_connecting_map_rejects_non_members():
    with pytest.raises(ValueError):
        ts.connecting_map(P1, ts.SL(2), lmat([[s, 0], [0, 1]]))


def test_coboundary_witness_reproduces_cocycle():
    g = lmat([[s, 1], [0, s**-1]])
    h = ts.coboundary_witness(P1, ts.GL(2), g)
    assert h is not None and ts.h0_map(P1, h) == g
    assert ts.coboundary_witness(P1, ts.GL(2), lmat([[s, 0], [0, s**-1]])) is None


def test_literal_formula_differs_for_nonabelian_groups():
    S, T = P1.eq.lanes
    hs = Mat(S, [[S.one(), S.gen()], [S.zero(), S.one()]])
    ht = Mat(T, [[T.one(), T.zero()], [T.gen(), T.one()]])
    h = (hs, ht)
    assert ts.h0_map(P1, h) != ts.literal_h0_map(P1, h)


@given(seeds)
@settings(max_examples=20)
def test_p1_triviality_iff_zero_splitting_type(seed):
    rng = random.Random(seed)
    g = samplers.windowed_invertible(L, 2, rng, -2, 2)
    c = ts.connecting_map(P1, ts.GL(2), g)
    assert c.trivial == bk.splitting_type(bk.Cocycle(g)).is_trivial()


@given(seeds)
@settings(max_examples=20)
def test_class_invariant_under_lane_change(seed):
    rng = random.Random(seed)
    g = samplers.windowed_invertible(L, 2, rng, -2, 2)
    S, T = P1.eq.lanes
    h = (samplers.unimodular(S, 2, rng, steps=3), samplers.unimodular(T, 2, rng, steps=3))
    a = ts.connecting_map(P1, ts.GL(2), g)
    b = ts.connecting_map(P1, ts.GL(2), ts.act(P1, g, h))
    assert a.normal_form == b.normal_form and a.trivial == b.trivial


@pytest.mark.parametrize("k", [F5, Rationals()])
def test_six_term_bl_gm(k):
    rep = ts.verify_six_term(ts.bl_torsor_context(k), ts.Gm(), seed=1, samples=15)
    assert rep.ok


@pytest.mark.parametrize("group", [ts.GL(2), ts.SL(2), ts.Gm()])
def test_six_term_p1(group):
    assert ts.verify_six_term(P1, group, seed=2, samples=12).ok


def test_six_term_mutant_detected_in_both_contexts():
    assert not ts.verify_six_term(BL, ts.Gm(), seed=0, samples=10, mutation="naive").ok
    assert not ts.verify_six_term(P1, ts.GL(2), seed=0, samples=20, mutation="naive").ok
