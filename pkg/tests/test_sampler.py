import warnings

import numpy as np
import pytest

from fuzex.errors import DigestMismatch, ParameterError
from fuzex.extractor import ToeplitzSeed
from fuzex.params import Params
from fuzex.sampler import Crs, generate_crs, sample_index_set, sample_index_sets, subsample


def test_full_coverage_is_a_permutation(rng):
    assert sorted(sample_index_set(5, 5, rng).tolist()) == [0, 1, 2, 3, 4]


def test_replay_with_fixed_seed():
    a = sample_index_set(10, 3, np.random.default_rng(5))
    b = sample_index_set(10, 3, np.random.default_rng(5))
    assert a.tolist() == b.tolist() and len(set(a.tolist())) == 3


def test_large_range(rng):
    a = sample_index_set(2**20, 64, rng)
    assert len(set(a.tolist())) == 64 and a.max() < 2**20 and a.min() >= 0


def test_too_many_indices(rng):
    with pytest.raises(ParameterError):
        sample_index_set(3, 4, rng)


def test_ordered_tuples_are_uniform(rng):
    counts = {}
    trials = 60_000
    for _ in range(trials):
        key = tuple(sample_index_set(5, 2, rng).tolist())
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 20
    expected = trials / 20
    sd = (trials * (1 / 20) * (19 / 20)) ** 0.5
    assert all(abs(c - expected) < 4.5 * sd for c in counts.values())


def test_crs_frequency(rng):
    p = Params.build(2, 32, 4, 1, 1, 1, lam=3)
    counts = np.zeros(32)
    draws = 10_000
    for _ in range(draws):
        counts[generate_crs(p, rng).index_sets.ravel()] += 1
    rate = counts / draws
    sd = ((4 / 32) * (1 - 4 / 32) / draws) ** 0.5
    assert np.all(np.abs(rate - 4 / 32) <= 3.5 * sd)


def test_subsample_examples():
    assert subsample([1, 0, 1, 1, 0], [0, 2, 3]).tolist() == [1, 1, 1]
    assert subsample(np.zeros(9, np.uint8), [8, 1]).tolist() == [0, 0]
    with pytest.raises(ParameterError):
        subsample([0, 1], [2])


def test_subsample_locality_exhaustive():
    n = 8
    idx = np.array([1, 4, 6])
    for w in range(256):
        wb = (w >> np.arange(n)) & 1
        for e in range(256):
            eb = (e >> np.arange(n)) & 1
            if not eb[idx].any():
                assert np.array_equal(subsample(wb ^ eb, idx), subsample(wb, idx))


def test_crs_dimensions_and_determinism():
    p = Params.build(2, 10, 3, 2, 1, 1, lam=2) if False else Params(2, 10, 3, 2, 0, 0, 6, lam=3)
    crs = generate_crs(p, np.random.default_rng(1))
    assert crs.index_sets.shape == (2, 3) and crs.seed.bits.size == 8
    assert crs == generate_crs(p, np.random.default_rng(1))
    assert crs != generate_crs(p, np.random.default_rng(2))


def test_crs_digest_binding(rng):
    p = Params.build(2, 64, 8, 2, 2, 2, lam=3)
    crs = generate_crs(p, rng)
    crs.check(p)
    with pytest.raises(DigestMismatch):
        crs.check(p.with_(n=65))
    with pytest.raises(DigestMismatch):
        Crs(crs.n, crs.index_sets, crs.seed, b"\x00" * 8)


def test_crs_rejects_repeated_indices(rng):
    p = Params.build(2, 64, 3, 1, 2, 2, lam=3)
    seed = ToeplitzSeed.random(3, p.nu, rng)
    with pytest.raises(ParameterError):
        Crs(64, np.array([[1, 1, 2]]), seed, p.digest)


def test_crs_warns_when_budget_exceeded(rng):
    p = Params.build(2, 64, 8, 4, 2, 2, lam=3, N=40, q_e=1)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        generate_crs(p, rng)
    assert any("budget" in str(w.message) for w in caught)


def test_index_sets_shape(rng):
    assert sample_index_sets(50, 4, 0, rng).shape == (0, 4)
    assert sample_index_sets(50, 4, 3, rng).shape == (3, 4)
