from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fuzex.errors import ParameterError
from fuzex.field import FieldElement, encode_message, get_field
from fuzex.games.mac_forgery import all_keys
from fuzex.mac import (MacKey, check_mac_length, mac_eval, mac_eval_many, mac_verify,
                       shifted_verify)
from oracles import blocks_to_coeffs, int_to_bits, mac_tag


def key(x, y, lam=8):
    return MacKey.from_ints(x, y, lam)


def test_zero_x_gives_zero_tag(rng):
    for _ in range(20):
        p = rng.integers(0, 2, 24, dtype=np.uint8)
        assert mac_eval(p, key(0, int(rng.integers(256))), 7).value == 0


def test_identity_example_lambda3():
    # m = [1, 0, 0]: tag = 1 + 1 + 1 = 1
    assert mac_eval([1, 0, 0], key(1, 1, 3), 7).value == 1


def test_small_example_against_oracle():
    p = int_to_bits(0x01, 8)
    expected = mac_tag(blocks_to_coeffs(p, 8, 7), 0x02, 0x03, 7, 8)
    assert mac_eval(p, key(2, 3), 7).value == expected


@given(st.data())
def test_eval_matches_oracle(data):
    lam = data.draw(st.sampled_from([3, 8, 16]))
    L = data.draw(st.sampled_from([7, 11, 15]))
    bits = data.draw(st.lists(st.integers(0, 1), max_size=(L - 4) * lam))
    x = data.draw(st.integers(0, (1 << lam) - 1))
    y = data.draw(st.integers(0, (1 << lam) - 1))
    assert mac_eval(bits, key(x, y, lam), L).value == mac_tag(blocks_to_coeffs(bits, lam, L), x, y, L, lam)


def test_eval_lambda128_against_oracle(rng):
    bits = rng.integers(0, 2, 128 * 3, dtype=np.uint8).tolist()
    x, y = (int.from_bytes(rng.bytes(16), "big") for _ in range(2))
    assert mac_eval(bits, key(x, y, 128), 7).value == mac_tag(blocks_to_coeffs(bits, 128, 7), x, y, 7, 128)


@given(st.lists(st.integers(0, 1), max_size=24), st.integers(0, 255), st.integers(0, 255),
       st.integers(0, 7))
def test_verify_and_tag_flip(bits, x, y, flip):
    k = key(x, y)
    tag = mac_eval(bits, k, 7)
    assert mac_verify(bits, tag, k, 7)
    assert not mac_verify(bits, FieldElement(tag.value ^ (1 << flip), 8), k, 7)


def test_shifted_verify_zero_shift_is_verify():
    k = key(0x35, 0x91)
    bits = [1, 0, 1, 1] * 4
    tag = mac_eval(bits, k, 7)
    zero = FieldElement(0, 8)
    assert shifted_verify(bits, tag, k, zero, zero, 7)


def test_from_bits_first_half_is_x():
    bits = np.array(int_to_bits(0x12, 8) + int_to_bits(0xAB, 8), np.uint8)
    k = MacKey.from_bits(bits, 8)
    assert (k.x.value, k.y.value) == (0x12, 0xAB)


def test_length_rules():
    for L in (7, 11, 31):
        check_mac_length(L, 8)
    for L in (3, 4, 5, 6, 8, 9, 10):
        with pytest.raises(ParameterError):
            check_mac_length(L, 8)
    with pytest.raises(ParameterError):
        mac_eval([0] * 25, key(1, 1), 7)
    with pytest.raises(ParameterError):
        mac_eval([0] * 8, key(1, 1), 9)


def test_eval_many_matches_scalar(rng):
    coeffs = rng.integers(0, 256, 3)
    xs, ys = all_keys(8)
    vec = mac_eval_many(coeffs, xs, ys, 7, 8)
    bits = np.concatenate([int_to_bits(int(c), 8) for c in coeffs])
    sample = rng.choice(xs.size, 300, replace=False)
    for i in sample:
        assert vec[i] == mac_eval(bits, key(int(xs[i]), int(ys[i])), 7).value


def _fraction(message, forged, respond, d1, d2):
    xs, ys = all_keys(8)
    tags = mac_eval_many(message, xs, ys, 7, 8)
    ok = respond(tags) == mac_eval_many(forged, xs ^ d1, ys ^ d2, 7, 8)
    return tags, ok


def test_unshifted_forgery_bound_delta1_zero(rng):
    """δ1 = 0 and m' ≠ m: at most (L-3)/(2^λ-1) + 2^-λ of keys accept."""
    limit = Fraction(4, 255) + Fraction(1, 256)
    for _ in range(30):
        m = rng.integers(0, 256, 3)
        m2 = m.copy()
        m2[rng.integers(3)] ^= int(rng.integers(1, 256))
        d2 = int(rng.integers(0, 256))
        c = int(rng.integers(0, 256))
        _, ok = _fraction(m, m2, lambda t: t ^ c, 0, d2)
        assert Fraction(int(ok.sum()), ok.size) <= limit


def test_conditional_forgery_bound(rng):
    """Given the observed tag, forgery acceptance among consistent keys ≤ L·2^-λ."""
    for _ in range(10):
        m = rng.integers(0, 256, 3)
        m2 = rng.integers(0, 256, 3)
        d1, d2 = int(rng.integers(0, 256)), int(rng.integers(0, 256))
        c = int(rng.integers(0, 256))
        tags, ok = _fraction(m, m2, lambda t: t ^ c, d1, d2)
        if np.array_equal(m, m2) and d1 == d2 == c == 0:
            continue
        for tag in range(256):
            consistent = tags == tag
            assert int(ok[consistent].sum()) * 256 <= 7 * int(consistent.sum())
