import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzex.bits import hamming_distance
from fuzex.errors import ParameterError
from fuzex.sources import (NoiseModel, SourceModel, correlated_family, perturb, random_error,
                           random_shifts, random_window_permutations, window_permutation)


def test_block_source_image_size(rng):
    model = SourceModel.block_structured(12, 3, 2)
    seen = {model.draw(rng).tobytes() for _ in range(3000)}
    assert len(seen) <= 2 ** 6
    support, probs = model.pmf()
    assert len(support) == 2 ** 6 and np.isclose(probs.sum(), 1)


def test_expansion_map_rows_nonzero():
    g = SourceModel.block_structured(40, 5, 3).expansion_map()
    assert g.shape == (8, 3) and g.any(axis=1).all()
    assert np.array_equal(g[:3], np.eye(3, dtype=np.uint8))


def test_certified_alpha():
    assert SourceModel.uniform(64).certified_alpha(16) == 16
    assert SourceModel.biased_bit(64, 0.25).certified_alpha(8) == pytest.approx(8 * 0.41503749927884376)
    assert SourceModel.biased_bit(64, 1.0).certified_alpha(8) == 0
    block = SourceModel.block_structured(64, 8, 4)
    assert block.certified_alpha(8) == 1 and block.certified_alpha(8, N=16) == 0
    with pytest.raises(ParameterError):
        SourceModel.uniform(8).certified_alpha(9)


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1), st.integers(0, 30), st.integers(1, 6))
def test_shift_family_pairwise_distance(seed, t_err, eta):
    rng = np.random.default_rng(seed)
    model = SourceModel.uniform(64)
    shifts = random_shifts(64, t_err, eta, rng)
    ws = correlated_family(model, eta, "shift", rng, shifts=shifts, t_err=t_err)
    for a in ws:
        for b in ws:
            assert hamming_distance(a, b) <= 2 * t_err


def test_family_edge_cases(rng):
    model = SourceModel.uniform(32)
    (w,) = correlated_family(model, 1, "shift", rng)
    assert w.shape == (32,)
    ws = correlated_family(model, 3, "shift", rng)
    assert all(np.array_equal(ws[0], x) for x in ws)
    with pytest.raises(ParameterError):
        correlated_family(model, 0, "shift", rng)
    with pytest.raises(ParameterError):
        correlated_family(model, 1, "shift", rng, shifts=[np.ones(32, np.uint8)], t_err=4)


def test_window_permutations(rng):
    f = window_permutation(2, [2, 0, 1])
    w = np.array([0, 0, 1, 0, 0, 1], np.uint8)
    assert f(w).tolist() == [0, 0, 0, 1, 0, 1]  # out[2+k] = w[2+perm[k]]
    model = SourceModel.uniform(64)
    ts = random_window_permutations(64, 6, 4, rng)
    ws = correlated_family(model, 4, "arbitrary", rng, transforms=ts, t_err=6)
    base = ws[0]
    assert all(hamming_distance(base, x) <= 12 for x in ws)
    with pytest.raises(ParameterError):
        window_permutation(0, [0, 0, 1])


@given(st.integers(0, 2**32 - 1), st.integers(0, 100))
def test_perturb_distance(seed, t_err):
    rng = np.random.default_rng(seed)
    w = rng.integers(0, 2, 100, dtype=np.uint8)
    assert hamming_distance(w, perturb(w, NoiseModel.random(t_err), rng)) == t_err
    assert hamming_distance(w, perturb(w, NoiseModel.random(t_err, "uniform"), rng)) <= t_err


def test_error_vector_weight(rng):
    assert random_error(10, 0, rng).sum() == 0
    assert random_error(10, 10, rng).sum() == 10
    with pytest.raises(ParameterError):
        random_error(10, 11, rng)


def test_model_dict_round_trip():
    for m in (SourceModel.uniform(9), SourceModel.block_structured(12, 4, 2),
              SourceModel.biased_bit(7, 0.3)):
        assert SourceModel.from_dict(m.to_dict()) == m
    for nm in (NoiseModel.random(5), NoiseModel.shift([0, 1, 1, 0, 1])):
        back = NoiseModel.from_dict(nm.to_dict())
        assert back.to_dict() == nm.to_dict()
