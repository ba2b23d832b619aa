import numpy as np
import pytest
from hypothesis import given, strategies as st

from fuzex.errors import CapacityError, ParameterError
from fuzex.field import (FieldElement, GF2m, REDUCTION_POLYNOMIALS, encode_message, fe_add,
                         fe_inverse, fe_mul, fe_pow, get_field, message_capacity)
from oracles import MODULI, poly_mul_mod


def E(v, lam=8):
    return FieldElement(v, lam)


def test_moduli_match_fixed_choices():
    assert REDUCTION_POLYNOMIALS == MODULI


def test_add_examples():
    assert fe_add(E(0), E(0)).value == 0
    assert fe_add(E(0x53), E(0x53)).value == 0
    assert fe_add(E(0xA7), E(0x1C)).value == 0xA7 ^ 0x1C


def test_mul_identity_and_annihilator():
    for v in (0, 1, 0x53, 0xFF):
        assert fe_mul(E(v), E(1)).value == v
        assert fe_mul(E(v), E(0)).value == 0


def test_mul_known_product_against_schoolbook():
    # 0x53 and 0xCA are inverses under the 0x11B modulus
    assert poly_mul_mod(0x53, 0xCA, 8) == 1
    assert fe_mul(E(0x53), E(0xCA)).value == poly_mul_mod(0x53, 0xCA, 8)


@pytest.mark.parametrize("lam", [3, 8])
def test_mul_exhaustive_against_schoolbook(lam):
    f = get_field(lam)
    size = 1 << lam
    a, b = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    table = f.mul_vec(a, b)
    for x in range(size):
        for y in range(size):
            expected = poly_mul_mod(x, y, lam)
            assert f.mul(x, y) == expected == table[x, y]


def test_mul_vec_matches_scalar_at_16(rng):
    f = get_field(16)
    a = rng.integers(0, 1 << 16, 2000)
    b = rng.integers(0, 1 << 16, 2000)
    a[:5] = 0
    got = f.mul_vec(a, b)
    assert [poly_mul_mod(int(x), int(y), 16) for x, y in zip(a, b)] == got.tolist()


@given(st.integers(0, 2**128 - 1), st.integers(0, 2**128 - 1))
def test_mul_128_against_schoolbook(a, b):
    assert fe_mul(FieldElement(a, 128), FieldElement(b, 128)).value == poly_mul_mod(a, b, 128)


@pytest.mark.parametrize("lam", [3, 8, 16, 128])
@given(data=st.data())
def test_field_axioms(lam, data):
    v = st.integers(0, (1 << lam) - 1)
    a, b, c = (FieldElement(data.draw(v), lam) for _ in range(3))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_distributivity_exhaustive_lambda3():
    f = get_field(3)
    for a in range(8):
        for b in range(8):
            for c in range(8):
                assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)


@pytest.mark.parametrize("lam", [3, 8, 16, 128])
@given(data=st.data())
def test_inverse_via_power(lam, data):
    a = FieldElement(data.draw(st.integers(1, (1 << lam) - 1)), lam)
    assert (a * fe_inverse(a)).value == 1
    assert fe_inverse(a) == a.inverse()


def test_inverse_of_zero_fails():
    with pytest.raises(ZeroDivisionError):
        get_field(8).inverse(0)


def test_pow_examples():
    assert fe_pow(E(0), 5).value == 0
    assert fe_pow(E(2), 1).value == 2
    assert fe_pow(E(7), 0).value == 1
    # group order 7 at lambda=3
    assert fe_pow(FieldElement(0b010, 3), 7).value == 1


@given(st.integers(0, 255), st.integers(0, 600))
def test_pow_matches_repeated_multiplication(a, e):
    expected = 1
    for _ in range(e % 300):
        expected = poly_mul_mod(expected, a, 8)
    assert fe_pow(E(a), e % 300).value == expected


def test_pow_vec_matches_scalar():
    f = get_field(8)
    xs = np.arange(256)
    for e in (0, 1, 7, 31, 254, 255, 1000):
        assert f.pow_vec(xs, e).tolist() == [f.pow(int(x), e) for x in xs]


def test_mismatched_widths_rejected():
    with pytest.raises(ParameterError):
        fe_add(FieldElement(1, 8), FieldElement(1, 16))
    with pytest.raises(ParameterError):
        fe_mul(FieldElement(1, 8), FieldElement(1, 3))


def test_value_must_fit():
    with pytest.raises(ParameterError):
        FieldElement(256, 8)


def test_unknown_width_rejected():
    with pytest.raises(ParameterError):
        GF2m(5)


def test_encode_examples():
    assert encode_message([], 8, 7).coeffs == (0, 0, 0)
    assert encode_message([1] * 8, 8, 7).coeffs == (0xFF, 0, 0)
    # the first bit of each block is the constant coefficient
    bits = [(0xAB >> i) & 1 for i in range(8)] + [(0xCD >> i) & 1 for i in range(8)] + [0, 1, 0, 1]
    assert encode_message(bits, 8, 8).coeffs == (0xAB, 0xCD, 0x0A, 0x00)


def test_encode_capacity():
    assert message_capacity(8, 7) == 24
    with pytest.raises(CapacityError):
        encode_message([0] * 25, 8, 7)


@given(st.data())
def test_encode_injective(data):
    n = data.draw(st.integers(0, 40))
    a = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    b = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    same = encode_message(a, 3, 19) == encode_message(b, 3, 19)
    assert same == (a == b)


def test_message_poly_horner():
    poly = encode_message([1, 0, 0, 0, 1, 0], 3, 7)  # 1 + 2*x
    f = get_field(3)
    for x in range(8):
        assert poly.evaluate(x) == 1 ^ f.mul(2, x)
