from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fuzex.errors import ParameterError
from fuzex.extractor import (ExtractorProfile, ToeplitzSeed, extract, extract_many,
                             lhl_epsilon, lhl_max_output, universality_check,
                             universality_exhaustive)
from oracles import toeplitz_apply, toeplitz_matrix


def test_zero_input_gives_zero(rng):
    seed = ToeplitzSeed.random(10, 4, rng)
    assert extract(np.zeros(10, np.uint8), seed).tolist() == [0] * 4


def test_small_example_against_matrix_oracle():
    seed = ToeplitzSeed(np.array([1, 0, 0, 0], np.uint8), 3, 2)
    # seed bit k sits at entries with i - j + 2 == k
    assert seed.matrix.tolist() == toeplitz_matrix([1, 0, 0, 0], 3, 2) == [[0, 0, 1], [0, 0, 0]]
    assert extract([1, 0, 1], seed).tolist() == toeplitz_apply([1, 0, 0, 0], [1, 0, 1], 2) == [1, 0]


@given(st.data())
def test_extract_matches_oracle(data):
    m = data.draw(st.integers(1, 12))
    nu = data.draw(st.integers(1, 12))
    seed = data.draw(st.lists(st.integers(0, 1), min_size=m + nu - 1, max_size=m + nu - 1))
    w = data.draw(st.lists(st.integers(0, 1), min_size=m, max_size=m))
    assert extract(w, ToeplitzSeed(np.array(seed, np.uint8), m, nu)).tolist() == toeplitz_apply(seed, w, nu)


def test_linearity_random(rng):
    for _ in range(100):
        seed = ToeplitzSeed.random(64, 40, rng)
        a, b = rng.integers(0, 2, (2, 64), dtype=np.uint8)
        assert np.array_equal(extract(a ^ b, seed), extract(a, seed) ^ extract(b, seed))


def test_linearity_exhaustive_m8(rng):
    seed = ToeplitzSeed.random(8, 5, rng)
    ws = ((np.arange(256)[:, None] >> np.arange(8)) & 1).astype(np.uint8)
    out = extract_many(ws, seed)
    for a in range(256):
        assert np.array_equal(out[a] ^ out, out[a ^ np.arange(256)])


def test_extract_many_rowwise(rng):
    seed = ToeplitzSeed.random(9, 4, rng)
    ws = rng.integers(0, 2, (7, 9), dtype=np.uint8)
    assert np.array_equal(extract_many(ws, seed), np.stack([extract(w, seed) for w in ws]))


def test_dimension_errors(rng):
    seed = ToeplitzSeed.random(4, 2, rng)
    with pytest.raises(ParameterError):
        extract([0, 1, 0], seed)
    with pytest.raises(ParameterError):
        ToeplitzSeed(np.zeros(4, np.uint8), 4, 2)


def test_lhl_examples():
    assert lhl_max_output(130, Fraction(1, 2**64)) == 4
    assert lhl_max_output(10, Fraction(1, 2**20)) == 0
    assert lhl_max_output(17, 0.5) == 17


def test_lhl_epsilon_inverts_output_length():
    for alpha in (20, 40.5, 100):
        for nu in range(1, 40):
            eps = lhl_epsilon(alpha, nu)
            if eps < 1:
                assert lhl_max_output(alpha, eps * (1 + 1e-12)) >= nu


def test_profile_enforces_lemma():
    ExtractorProfile(64, 64, 32, 2**-17)  # exactly the lemma's value
    with pytest.raises(ParameterError):
        ExtractorProfile(64, 64, 32, 2**-18)


def test_universality_exhaustive_4_2():
    table = universality_exhaustive(4, 2)
    assert len(table) == 16 * 15 // 2
    assert max(table.values()) <= Fraction(1, 4)


def test_universality_monte_carlo(rng):
    rate = universality_check(16, 8, 100_000, rng)
    sd = (2**-8 * (1 - 2**-8) / 100_000) ** 0.5
    assert abs(rate - 2**-8) <= 3 * sd


def test_lemma_bound_by_exact_enumeration():
    """Δ(E(W,Z), Z; U, Z) against ½·sqrt(2^(ν-H∞)) for a few small sources."""
    m, nu = 5, 2
    ws = ((np.arange(32)[:, None] >> np.arange(m)) & 1).astype(np.uint8)
    seeds = ((np.arange(2 ** (m + nu - 1))[:, None] >> np.arange(m + nu - 1)) & 1).astype(np.uint8)
    for support in (range(32), range(8), [1, 2, 4, 8, 16, 31]):
        support = list(support)
        pw = 1 / len(support)
        total = 0.0
        for sb in seeds:
            s = ToeplitzSeed(sb, m, nu)
            out = extract_many(ws[support], s)
            codes = out[:, 0] + 2 * out[:, 1]
            dist = np.bincount(codes, minlength=4) * pw
            total += 0.5 * np.abs(dist - 0.25).sum() / len(seeds)
        h = np.log2(len(support))
        assert total <= 0.5 * np.sqrt(2 ** (nu - h)) + 1e-12
