import pytest

from eqpatch import fincat as fc
from eqpatch.errors import BudgetExceeded


def test_library_sizes():
    assert len(fc.cyclic_group(3).morphisms) == 3
    assert len(fc.symmetric_group3().morphisms) == 6
    assert len(fc.codiscrete(3).morphisms) == 9
    assert len(fc.chain(3).morphisms) == 6


def test_functor_counts():
    # monoid homs Z/2 -> Z/2 and Z/3 -> S3
    assert len(list(fc.enumerate_functors(fc.cyclic_group(2), fc.cyclic_group(2)))) == 2
    assert len(list(fc.enumerate_functors(fc.cyclic_group(3), fc.symmetric_group3()))) == 3
    # functors from the arrow category pick out morphisms
    assert len(list(fc.enumerate_functors(fc.arrow(), fc.chain(3)))) == 6


def test_equalizer_of_identity_on_bz2():
    C = fc.cyclic_group(2)
    Id = fc.identity_functor(C)
    Eq, G, alpha = fc.build_equalizer_cat(Id, Id)
    # objects: (pt, phi) for both automorphisms phi; abelian, so only endomorphisms survive
    assert len(Eq.objects) == 2
    assert len(Eq.morphisms) == 4


def test_equalizer_of_distinct_constant_functors_is_empty():
    C0, C1 = fc.terminal(), fc.discrete(2)
    fs = sorted(fc.enumerate_functors(C0, C1), key=lambda F: repr(F.obj))
    Eq, _, _ = fc.build_equalizer_cat(fs[0], fs[1])
    assert len(Eq.objects) == 0


@pytest.mark.parametrize("test_name", ["pt", "arrow", "BZ2", "iso2"])
def test_universal_property_bz2_identity(test_name):
    Id = fc.identity_functor(fc.cyclic_group(2))
    rep = fc.verify_universal_property(Id, Id, fc.LIBRARY[test_name]())
    assert rep.ok


def test_generated_instances_respect_size_limits():
    for inst in fc.generate_instances(3, 8):
        assert len(inst.test.objects) <= 4 and len(inst.test.morphisms) <= 24
        assert fc.verify_universal_property(inst.d0, inst.d1, inst.test).ok


def test_dropping_an_object_breaks_the_bijection():
    Id = fc.identity_functor(fc.cyclic_group(2))
    Eq, G, alpha = fc.build_equalizer_cat(Id, Id)
    o = sorted(Eq.objects, key=repr)[0]
    bad = fc.remove_object(Eq, o)
    assert len(bad.objects) == 1 and len(bad.morphisms) == 2
    G2 = fc.FinFunctor(bad, G.target, {a: G.obj[a] for a in bad.objects}, {m: G.mor[m] for m in bad.morphisms})
    rep = fc.verify_universal_property(Id, Id, fc.arrow(), eq=(bad, G2, alpha))
    assert not rep.ok


def test_budget_exhaustion():
    S3 = fc.symmetric_group3()
    with pytest.raises(BudgetExceeded):
        list(fc.enumerate_functors(S3, S3, fc.Budget(5)))


def test_oversized_test_category_rejected():
    Id = fc.identity_functor(fc.cyclic_group(2))
    with pytest.raises(BudgetExceeded):
        fc.verify_universal_property(Id, Id, fc.discrete(5))
