"""Monte Carlo failure rates of Gen/Rep, split into miss and wrong key."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..params import Params, correctness_terms
from ..rfe import rfe_rep_trace
from ..sources import NoiseModel, SourceModel, perturb
from ..srrfe import compute_pads
from .schemes import make_scheme
from .stats import RateEstimate, trial_streams


@dataclass(frozen=True)
class CorrectnessEstimate:
    """``miss`` counts ⊥ outputs, ``wrong_key`` counts keys that differ.

    ``prefix_hits[i]`` counts trials where lock ``i`` passed the zero-prefix
    check although its subsample differed (rfe only; ``None`` otherwise),
    out of ``mismatched[i]`` such trials.
    """

    miss: RateEstimate
    wrong_key: RateEstimate
    failure: RateEstimate
    bound_miss: float
    bound_collision: float
    prefix_hits: np.ndarray | None
    mismatched: np.ndarray | None
    rng_seed: int

    @property
    def bound(self) -> float:
        return self.bound_miss + self.bound_collision

    def to_dict(self) -> dict:
        return {"miss": self.miss.to_dict(), "wrong_key": self.wrong_key.to_dict(),
                "failure": self.failure.to_dict(), "bound": self.bound,
                "bound_miss": self.bound_miss, "bound_collision": self.bound_collision,
                "rng_seed": self.rng_seed}


def measure_correctness(scheme, params: Params, model: SourceModel, noise: NoiseModel,
                        trials: int, rng) -> CorrectnessEstimate:
    scheme = make_scheme(scheme, params)
    root, streams = trial_streams(rng, trials)
    miss = wrong = 0
    hits = np.zeros(params.ell, dtype=np.int64)
    mism = np.zeros(params.ell, dtype=np.int64)
    for s in streams:
        public = scheme.setup(s)
        w = model.draw(s)
        w2 = perturb(w, noise, s)
        key, helper = scheme.gen(public, w, s)
        if scheme.name == "rfe":
            tr = rfe_rep_trace(w2, helper, public, params, w_reference=w)
            out = tr.key
            diff = ~tr.subsample_equal
            mism += diff
            hits += diff & tr.prefix_hits
        else:
            out = scheme.rep(public, w2, helper)
            if scheme.name == "srrfe":
                pads = compute_pads(w2, public) ^ helper.p
                same = (w[public.index_sets] == w2[public.index_sets]).all(axis=1)
                diff = ~same
                mism += diff
                hits += diff & ~pads[:, : params.t].any(axis=1)
        if out is None:
            miss += 1
        elif not np.array_equal(out, key):
            wrong += 1
    terms = correctness_terms(params) if params.t_err < params.n - params.m else None
    return CorrectnessEstimate(
        RateEstimate(miss, trials), RateEstimate(wrong, trials), RateEstimate(miss + wrong, trials),
        terms.miss if terms else 1.0, terms.collision if terms else 0.0,
        hits if scheme.name in ("rfe", "srrfe") else None,
        mism if scheme.name in ("rfe", "srrfe") else None, root)
