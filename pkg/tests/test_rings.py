import pytest
from fractions import Fraction
from hypothesis import given

from eqpatch.errors import NotAUnit, UnsupportedRing
from eqpatch.rings import (
    Laurent,
    LocalAtZero,
    Poly,
    PrimeField,
    RationalFunctions,
    Rationals,
    RingDesc,
    RingHom,
    associate_unit,
    euclid_divmod,
    exact_quotient,
    field_by_name,
    norm,
)

from strategies import ring_and_elements, rings

F5, Q = PrimeField(5), Rationals()


@given(ring_and_elements())
def test_commutative_ring_axioms(data):
    R, (a, b, c) = data
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + R.zero() == a and a * R.one() == a
    assert a - a == R.zero()


@given(ring_and_elements(n=1, nonzero=True))
def test_units_invert(data):
    R, (a,) = data
    if a.is_unit():
        assert a * a.inverse() == R.one()
    else:
        with pytest.raises(NotAUnit):
            a.inverse()


@given(ring_and_elements(n=2, nonzero=True))
def test_euclidean_division(data):
    R, (a, b) = data
    q, r = euclid_divmod(a, b)
    assert q * b + r == a
    assert not r.num or norm(r) < norm(b)


@given(ring_and_elements(n=1, nonzero=True))
def test_canonical_associate_is_idempotent(data):
    R, (a,) = data
    u = associate_unit(a)
    assert u.is_unit()
    c = a * u
    assert associate_unit(c) == R.one()


def test_unit_groups():
    t = Poly(F5).gen()
    assert not t.is_unit() and Poly(F5).elem((3,)).is_unit()
    L = Laurent(F5)
    assert L.gen().is_unit() and not (L.gen() + L.one()).is_unit()
    loc = LocalAtZero(F5)
    assert (loc.gen() + loc.one()).is_unit() and not loc.gen().is_unit()


def test_local_ring_rejects_poles_at_zero():
    K = RationalFunctions(Q)
    x = K.one() / K.gen()
    with pytest.raises(ValueError, match="pole at 0"):
        LocalAtZero(Q)(x)
    assert LocalAtZero(Q)(K.one() / (K.gen() + K.one())).is_unit()


def test_exact_quotient():
    R = Poly(Q)
    t = R.gen()
    assert exact_quotient(t * t - R.one(), t - R.one()) == t + R.one()
    assert exact_quotient(t, t + R.one()) is None


def test_substitution_hom_inverts_variable():
    S, L = Poly(F5, "s"), Laurent(F5)
    h = RingHom(S, L, L.monomial(1, -1))
    s = S.gen()
    assert h(s * s + S.one()) == L.monomial(1, -2) + L.one()


def test_field_names_and_validation():
    assert field_by_name("f7") == PrimeField(7)
    assert field_by_name("Q") == Q
    with pytest.raises(ValueError):
        field_by_name("z")
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(UnsupportedRing):
        RingDesc("poly")


def test_rational_scalars_reduce_mod_p():
    assert F5.elem((Fraction(1, 2),)) == F5.elem((3,))


@given(rings)
def test_fraction_field_contains_ring(R):
    K = R.fraction_field
    x = R.gen() + R.one()
    assert K(x) * K(x).inverse() == K.one()
