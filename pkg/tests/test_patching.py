import random

from hypothesis import given, settings

from eqpatch import modcat as mc
from eqpatch.equalizer import free_object
from eqpatch.matrix import Mat
from eqpatch.modcat import ModuleMap, PresentedModule
from eqpatch.patching import (
    bl_context,
    check_essential_image_closures,
    check_faithful_flatness,
    check_full_faithfulness,
    glue,
    random_eq_object,
    random_module,
    restrict,
)
from eqpatch.rings import PrimeField, Rationals

from strategies import seeds

CTX = bl_context(PrimeField(5))
R, K = CTX.R, CTX.R1
t = R.gen()


def test_glue_of_t_is_free_rank_one():
    x = free_object(CTX.eq, Mat(K, [[K.gen()]]))
    res = glue(CTX, x)
    inv = mc.invariants(res.module)
    assert inv.rank == 1 and not inv.torsion
    assert all(mc.is_iso(f) for f in res.witness.maps)


def test_glue_diagonal_powers():
    x = free_object(CTX.eq, Mat(K, [[K.gen() ** 3, K.zero()], [K.zero(), K.gen() ** -2]]))
    assert mc.invariants(glue(CTX, x).module).rank == 2


def test_restrict_then_glue_torsion_module():
    M = PresentedModule.from_invariants(R, [t**2, (t + 1) * t**2], 1)
    res = glue(CTX, restrict(CTX, M))
    assert mc.is_isomorphic(res.module, M) is not None


def test_torsion_away_from_origin_survives_on_laurent_lane():
    M = PresentedModule.from_invariants(R, [t + 2], 0)
    x = restrict(CTX, M)
    assert mc.is_zero_module(x.carriers[0])
    assert not mc.is_zero_module(x.carriers[1])


@given(seeds)
@settings(max_examples=20)
def test_glue_restrict_round_trip(seed):
    rng = random.Random(seed)
    M = random_module(R, rng, 3, 3)
    res = glue(CTX, restrict(CTX, M))
    assert mc.is_isomorphic(res.module, M) is not None


@given(seeds)
@settings(max_examples=20)
def test_restrict_glue_witness_is_lanewise_iso(seed):
    rng = random.Random(seed)
    x = random_eq_object(CTX, rng, max_rank=2, window=3)
    res = glue(CTX, x)
    assert res.witness.target.carriers == x.carriers
    assert all(mc.is_iso(f) for f in res.witness.maps)


@given(seeds)
@settings(max_examples=10)
def test_full_faithfulness_random_pairs(seed):
    rng = random.Random(seed)
    for k in (PrimeField(5), Rationals()):
        ctx = bl_context(k)
        M, N = random_module(ctx.R, rng, 2, 2), random_module(ctx.R, rng, 2, 2)
        assert check_full_faithfulness(ctx, M, N, samples=5, seed=seed).ok


def test_essential_image_closed_under_operations():
    rng = random.Random(2)
    mods = [random_module(R, rng, 2, 2) for _ in range(3)]
    F = PresentedModule.free(R, 1)
    maps = [ModuleMap(F, F, Mat(R, [[t * (t + 1)]])), ModuleMap(F, F, Mat(R, [[R.zero()]]))]
    assert check_essential_image_closures(CTX, mods, maps, rng).ok


def test_faithful_flatness_on_sequences():
    F = PresentedModule.free(R, 1)
    seqs = []
    for p in (t, t + 1, t * (t + 3)):
        mul = ModuleMap(F, F, Mat(R, [[p]]))
        C, proj = mc.cokernel(mul)
        seqs.append((mul, proj))
        # drop the middle: not exact
        seqs.append((ModuleMap(F, F, Mat(R, [[p * p]])), proj))
    rep = check_faithful_flatness(CTX, seqs)
    assert rep.ok and 0 < rep.exact_over_R < rep.checked
