"""Shared index sets plus adversary-known shifts leak the target pad.

With a CRS the same ``A_i`` and ``Z`` serve every enrollment, so the pads of
``w ^ d_k`` and ``w ^ d_j`` differ by ``E(d_k[A_i] ^ d_j[A_i], Z)``, which the
adversary can compute. Fresh per-enrollment index sets remove the relation.
"""

import numpy as np
import pytest

from fuzex.games import (LinearAlgebraDistinguisher, XorOfPadsDistinguisher,
                         run_reusability_suite)
from fuzex.params import Params
from fuzex.sources import SourceModel

TRIALS = 150


@pytest.fixture(scope="module")
def results():
    rng_seed = 7
    p1 = Params.build(1, 2048, 32, 4, 12, 8, t_err=8, alpha=32, sigma=2**-4, N=2016, eta=8)
    p2 = Params.build(2, 2048, 32, 4, 12, 8, lam=8, t_err=8, alpha=32, sigma=2**-4, eta=8)
    model = SourceModel.uniform(2048)
    adv = [XorOfPadsDistinguisher(), LinearAlgebraDistinguisher()]
    rng = np.random.default_rng(rng_seed)
    return (run_reusability_suite("rfe", adv, model, p1, TRIALS, rng),
            run_reusability_suite("srrfe", adv, model, p2, TRIALS, rng))


def test_fresh_index_sets_resist_known_shifts(results):
    rfe, _ = results
    for est in rfe.values():
        assert est.lower == 0 and est.point < 0.15


def test_shared_crs_is_distinguishable(results):
    _, srrfe = results
    for est in srrfe.values():
        assert est.point > 0.9 and est.lower > 0.8
