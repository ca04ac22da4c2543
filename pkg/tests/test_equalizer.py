import random

import pytest
from hypothesis import given, settings

from eqpatch import modcat as mc
from eqpatch.equalizer import (
    MUTATIONS,
    EqMorphism,
    check_coherence,
    check_faithful_exactness,
    eq_cokernel,
    eq_direct_sum,
    eq_kernel,
    eq_object,
    free_object,
    is_zero_object,
    square_commutes,
)
from eqpatch.errors import NonInvertible, ShapeError
from eqpatch.matrix import Mat
from eqpatch.modcat import ModuleMap, PresentedModule
from eqpatch.patching import bl_context, random_eq_object, restrict_map
from eqpatch.rings import PrimeField, Rationals
from eqpatch.suites import candidate_sequence

from strategies import seeds

CTX = bl_context(PrimeField(5))
R, K = CTX.R, CTX.R1
t = R.gen()


def mult_by_t():
    M = PresentedModule.free(R, 1)
    return restrict_map(CTX, ModuleMap(M, M, Mat(R, [[t]])))


def test_cokernel_of_t_lives_on_local_lane():
    C, _ = eq_cokernel(mult_by_t())
    loc, lau = (mc.invariants(M) for M in C.carriers)
    assert loc.torsion == (C.carriers[0].ring.gen(),) and loc.rank == 0
    assert lau.is_zero()


def test_kernel_of_t_is_zero():
    Kr, _ = eq_kernel(mult_by_t())
    assert is_zero_object(Kr)


def test_glue_must_be_invertible():
    with pytest.raises(NonInvertible):
        free_object(CTX.eq, Mat(K, [[K.zero()]]))


def test_glue_shape_checked():
    carriers = [PresentedModule.free(L, 1) for L in CTX.eq.lanes]
    with pytest.raises(ShapeError):
        eq_object(CTX.eq, carriers, Mat(K, [[K.one(), K.one()]]))


def test_non_commuting_square_rejected():
    x = free_object(CTX.eq, Mat(K, [[K.gen()]]))
    y = free_object(CTX.eq, Mat(K, [[K.one()]]))
    maps = [PresentedModule.free(L, 1).identity() for L in CTX.eq.lanes]
    assert not square_commutes(x, y, maps)
    with pytest.raises(ShapeError):
        EqMorphism(x, y, maps)


def test_direct_sum_projections():
    rng = random.Random(4)
    x, y = random_eq_object(CTX, rng, 1, 2), random_eq_object(CTX, rng, 1, 2)
    s, incs, projs = eq_direct_sum(x, y)
    assert check_faithful_exactness(incs[0], projs[1]).eq_exact


@given(seeds)
@settings(max_examples=15)
def test_faithful_exactness_agrees(seed):
    rng = random.Random(seed)
    for k in (PrimeField(5), Rationals()):
        _, f, g = candidate_sequence(bl_context(k), rng)
        assert check_faithful_exactness(f, g).agree


@given(seeds)
@settings(max_examples=5)
def test_coherence_on_random_triples(seed):
    rng = random.Random(seed)
    objs = [random_eq_object(CTX, rng, max_rank=1, window=2) for _ in range(3)]
    assert check_coherence(*objs).ok


@pytest.mark.parametrize("mutation", MUTATIONS)
def test_each_mutation_detected(mutation):
    rng = random.Random(1)
    triples = [[random_eq_object(CTX, rng, max_rank=2, window=2, torsion=False) for _ in range(3)] for _ in range(3)]
    assert any(not check_coherence(*tr, mutation=mutation).ok for tr in triples)
