import random

from hypothesis import given

from eqpatch import modcat as mc
from eqpatch import samplers
from eqpatch.matrix import Mat
from eqpatch.modcat import ModuleMap, PresentedModule
from eqpatch.rings import Poly, PrimeField, Rationals

from strategies import rings, seeds

F5 = PrimeField(5)
R = Poly(F5)
t = R.gen()


def cyclic(d):
    return PresentedModule.from_invariants(R, [d], 0)


def test_tensor_of_cyclic_torsion():
    inv = mc.invariants(mc.tensor(cyclic(t**2), cyclic(t**3)))
    assert inv.torsion == (t**2,) and inv.rank == 0


def test_hom_of_cyclic_torsion():
    inv = mc.invariants(mc.hom_module(cyclic(t**2), cyclic(t**3)))
    assert inv.torsion == (t**2,) and inv.rank == 0


def test_hom_from_free():
    inv = mc.invariants(mc.hom_module(PresentedModule.free(R, 2), cyclic(t**2)))
    assert inv.torsion == (t**2, t**2)


def test_hom_torsion_into_free_is_zero():
    assert mc.is_zero_module(mc.hom_module(cyclic(t), PresentedModule.free(R, 1)))


def test_coprime_cyclics_split():
    M = PresentedModule.from_invariants(R, [t * (t + 1)], 0)
    N = PresentedModule.from_invariants(R, [t, t + 1], 0)
    assert mc.is_isomorphic(M, N) is not None


def test_multiplication_by_t_on_free_is_mono_not_epi():
    M = PresentedModule.free(R, 1)
    f = ModuleMap(M, M, Mat(R, [[t]]))
    assert mc.is_mono(f) and not mc.is_epi(f) and not mc.is_iso(f)


def test_unit_multiple_is_iso():
    M = cyclic(t**3)
    f = ModuleMap(M, M, Mat(R, [[R(1) + t]]))
    g = mc.inverse_iso(f)
    assert g is not None
    assert mc.maps_equal(f @ g, M.identity()) and mc.maps_equal(g @ f, M.identity())


def test_projection_onto_torsion_quotient_not_iso():
    M, N = cyclic(t**2), cyclic(t)
    assert not mc.is_iso(ModuleMap(M, N, Mat(R, [[R.one()]])))


@given(rings, seeds)
def test_inverse_iso_of_generator_change(Rg, seed):
    rng = random.Random(seed)
    M = samplers.module(Rg, rng, max_gens=3, max_deg=2)
    U = samplers.unimodular(Rg, M.gens, rng)
    N = PresentedModule(Rg, M.gens, U @ M.rel)
    f = ModuleMap(M, N, U)
    g = mc.inverse_iso(f)
    assert g is not None
    assert mc.maps_equal(g @ f, M.identity())
    assert mc.maps_equal(f @ g, N.identity())


@given(rings, seeds)
def test_kernel_cokernel_sequence_exact(Rg, seed):
    rng = random.Random(seed)
    N = samplers.module(Rg, rng, max_gens=2, max_deg=2)
    # any map out of a free module is well defined
    F = PresentedModule.free(Rg, 2)
    f = ModuleMap(F, N, samplers.matrix(Rg, N.gens, 2, rng, max_deg=1))
    K, i = mc.kernel(f)
    C, p = mc.cokernel(f)
    assert mc.is_mono(i) and mc.is_epi(p)
    assert mc.is_zero_map(f @ i) and mc.is_zero_map(p @ f)
    assert mc.is_exact_at(i, f) and mc.is_exact_at(f, p)


@given(rings, seeds)
def test_tensor_symmetric_invariants(Rg, seed):
    rng = random.Random(seed)
    M = samplers.module(Rg, rng, max_gens=2, max_deg=2)
    N = samplers.module(Rg, rng, max_gens=2, max_deg=2)
    assert mc.invariants(mc.tensor(M, N)) == mc.invariants(mc.tensor(N, M))
    assert mc.is_iso(mc.braiding(M, N))


@given(rings, seeds)
def test_canonical_form_round_trip(Rg, seed):
    rng = random.Random(seed)
    M = samplers.module(Rg, rng, max_gens=3, max_deg=3)
    C, to_c, from_c = mc.canonical_form(M)
    assert mc.maps_equal(from_c @ to_c, M.identity())
    assert mc.maps_equal(to_c @ from_c, C.identity())


def test_q_coefficients():
    Rq = Poly(Rationals())
    tq = Rq.gen()
    M = PresentedModule.from_invariants(Rq, [tq * 2 - 1], 0)
    assert mc.invariants(M).torsion == (tq - Rq(1) / 2,)

