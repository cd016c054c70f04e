import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcurvature.exceptions import EvenPrime, NotPrime, ZeroInverse
from pcurvature.prime_field import (
    ExtField,
    PrimeField,
    ext_field,
    field_inv,
    find_irreducible,
    frobenius,
    is_irreducible,
    prime_field,
)

F25 = ext_field(5, 2)
elements_25 = st.lists(st.integers(0, 4), min_size=2, max_size=2).map(F25.from_coeffs)


def test_prime_field_rejects_composites_and_two():
    with pytest.raises(NotPrime):
        PrimeField(9)
    with pytest.raises(EvenPrime):
        PrimeField(2)


def test_prime_field_arithmetic():
    F = prime_field(7)
    assert F(3) + F(5) == F(1)
    assert F(3) * F(5) == F(1)
    assert F(3) / F(5) == F(2)
    assert -F(3) == F(4)
    assert F(3) ** 6 == F.one


def test_inverse_of_zero():
    with pytest.raises(ZeroInverse):
        field_inv(prime_field(5).zero)
    with pytest.raises(ZeroInverse):
        F25.zero.inverse()


def test_zero_inverse_is_a_zero_division_error():
    with pytest.raises(ZeroDivisionError):
        prime_field(3).one / prime_field(3).zero


@pytest.mark.parametrize(
    "p, k, expected",
    [(7, 2, (1, 0, 1)), (3, 2, (1, 0, 1)), (5, 2, (1, 1, 1)), (3, 1, (0, 1))],
)
def test_least_irreducible_modulus(p, k, expected):
    assert find_irreducible(prime_field(p), k) == expected


def test_irreducibility():
    assert is_irreducible((1, 0, 1), 7)
    assert not is_irreducible((1, 0, 1), 5)
    assert not is_irreducible((0, 1, 1), 7)


def test_ext_field_rejects_reducible_modulus():
    with pytest.raises(ValueError):
        ExtField(prime_field(5), (1, 0, 1))


def test_ext_field_of_degree_one_is_prime_field():
    assert ext_field(7, 1) is prime_field(7)


def test_generator_satisfies_modulus():
    F49 = ext_field(7, 2)
    t = F49.gen
    assert t * t + 1 == F49.zero
    assert str(t) == "t"


def test_frobenius_orbit_of_generator():
    F = ext_field(3, 4)
    t = F.gen
    images = [t]
    while (nxt := frobenius(images[-1])) != t:
        images.append(nxt)
    assert len(images) == 4
    assert t ** (F.order - 1) == F.one


def test_multiplicative_group_order():
    F = ext_field(5, 3)
    assert F.order == 125
    assert all(a ** (F.order - 1) == F.one for a in F.elements() if a)


@given(elements_25, elements_25, elements_25)
def test_field_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


@given(elements_25)
def test_pth_root_inverts_frobenius(a):
    assert F25.pth_root(frobenius(a)) == a


def test_mixing_fields_is_rejected():
    with pytest.raises(TypeError):
        prime_field(5).one + prime_field(7).one
