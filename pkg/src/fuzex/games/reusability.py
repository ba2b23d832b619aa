"""The reusability game and a suite of distinguishers.

Each trial fixes ``eta`` correlations (known to the adversary), draws one
source sample, enrolls every correlated reading, and hands the adversary
all helper strings, every key except the challenged one, and a challenge
that is either the real key (``b = 0``) or uniform (``b = 1``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..bits import random_bits
from ..errors import ParameterError
from ..extractor import ToeplitzSeed
from ..params import Params
from ..sources import (SourceModel, correlated_family, random_shifts,
                       random_window_permutations)
from .gf2 import Gf2System
from .schemes import make_scheme
from .stats import AdvantageEstimate, RateEstimate, trial_streams

FAMILIES = ("shift", "permutation")


@dataclass(frozen=True)
class ReusabilityView:
    """Everything the adversary sees in one trial.

    ``maps[i] = (src, offset)`` describes reading ``i`` as the affine
    image ``w_i[a] = w[src[a]] ^ offset[a]`` of the base sample; the
    adversary chose these correlations, so it knows them.
    """

    params: Params
    scheme: str
    seed: ToeplitzSeed
    blocks: tuple
    index_sets: tuple
    keys: tuple
    challenge: np.ndarray
    j: int
    maps: tuple


class Distinguisher:
    name = "distinguisher"

    def guess(self, view: ReusabilityView) -> int:
        raise NotImplementedError


class ConstantDistinguisher(Distinguisher):
    def __init__(self, value: int = 0):
        self.value = int(value)
        self.name = f"constant-{self.value}"

    def guess(self, view):
        return self.value


class CanaryDistinguisher(Distinguisher):
    """Says "real" when the challenge equals the first ``xi`` bits of ``p_1``."""

    name = "canary"

    def guess(self, view):
        p = view.blocks[view.j]
        return 0 if np.array_equal(view.challenge, p[0, : view.params.xi]) else 1


class KeyReuseDistinguisher(Distinguisher):
    """Says "real" when the challenge repeats another revealed key."""

    name = "key-reuse"

    def guess(self, view):
        for i, k in enumerate(view.keys):
            if i != view.j and np.array_equal(k, view.challenge):
                return 0
        return 1


def _pad_offset(view, i, lock):
    """``E(offset_i[A], Z)``: the known part of reading ``i``'s pad."""
    src, off = view.maps[i]
    idx = view.index_sets[i][lock]
    return (view.seed.matrix @ off[idx]) & 1


class XorOfPadsDistinguisher(Distinguisher):
    """Known-shift attack on locks that reuse an index set.

    Two readings differing by a known offset ``d`` give pads differing by
    ``E(d[A], Z)``, so XORing their ciphertext blocks exposes the XOR of
    their keys. Fresh index sets per enrollment make this inapplicable.
    """

    name = "xor-of-p"

    def guess(self, view):
        t, xi = view.params.t, view.params.xi
        j = view.j
        src_j, _ = view.maps[j]
        for i in range(len(view.keys)):
            if i == j or not np.array_equal(view.maps[i][0], src_j):
                continue
            for lock in range(view.params.ell):
                if not np.array_equal(view.index_sets[i][lock], view.index_sets[j][lock]):
                    continue
                diff = view.blocks[i][lock] ^ view.blocks[j][lock]
                diff ^= _pad_offset(view, i, lock) ^ _pad_offset(view, j, lock)
                predicted = diff[t : t + xi] ^ view.keys[i]
                return 0 if np.array_equal(predicted, view.challenge) else 1
        return 0


class LinearAlgebraDistinguisher(Distinguisher):
    """Prefix-correlation attack by elimination over GF(2).

    Every revealed plaintext bit of a lock (the ``t`` zero bits always,
    the key bits of unchallenged readings) is a linear equation in the
    base sample. If the challenged key is determined by those equations
    the prediction is compared against the challenge.
    """

    name = "prefix-correlation"

    def guess(self, view):
        p = view.params
        t, xi, m = p.t, p.xi, p.m
        T = view.seed.matrix
        used = np.unique(np.concatenate(
            [view.maps[i][0][view.index_sets[i].ravel()] for i in range(len(view.keys))]))
        col = {int(c): k for k, c in enumerate(used)}
        ncols = used.size

        def forms(i, lock, rows):
            src = view.maps[i][0][view.index_sets[i][lock]]
            out = np.zeros((len(rows), ncols), dtype=np.uint8)
            out[:, [col[int(s)] for s in src]] = T[rows]
            return out

        eqs, rhs = [], []
        for i in range(len(view.keys)):
            known = t if i == view.j else t + xi
            plain = np.zeros(known, dtype=np.uint8)
            if i != view.j:
                plain[t:] = view.keys[i]
            rows = np.arange(known)
            for lock in range(p.ell):
                pad = view.blocks[i][lock][:known] ^ plain ^ _pad_offset(view, i, lock)[:known]
                eqs.append(forms(i, lock, rows))
                rhs.append(pad)
        system = Gf2System(np.concatenate(eqs), np.concatenate(rhs))
        key_rows = np.arange(t, t + xi)
        for lock in range(p.ell):
            vals = system.evaluate(forms(view.j, lock, key_rows))
            if (vals >= 0).all():
                pad = vals.astype(np.uint8) ^ _pad_offset(view, view.j, lock)[t : t + xi]
                predicted = view.blocks[view.j][lock][t : t + xi] ^ pad
                return 0 if np.array_equal(predicted, view.challenge) else 1
        return 0


def default_distinguishers() -> list[Distinguisher]:
    return [ConstantDistinguisher(0), CanaryDistinguisher(), KeyReuseDistinguisher(),
            XorOfPadsDistinguisher(), LinearAlgebraDistinguisher()]


def _family(model, params, family, eta, rng):
    n = model.n
    identity = np.arange(n)
    zero = np.zeros(n, dtype=np.uint8)
    if family == "shift":
        shifts = random_shifts(n, params.t_err, eta, rng)
        readings = correlated_family(model, eta, "shift", rng, shifts=shifts, t_err=params.t_err)
        maps = [(identity, d) for d in shifts]
    elif family == "permutation":
        transforms = random_window_permutations(n, params.t_err, eta, rng)
        readings = correlated_family(model, eta, "arbitrary", rng, transforms=transforms,
                                     t_err=params.t_err)
        maps = [(f(identity), zero) for f in transforms]
    else:
        raise ParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return readings, maps


def _trial(scheme, model, params, family, eta, b, rng):
    public = scheme.setup(rng)
    readings, maps = _family(model, params, family, eta, rng)
    keys, helpers = [], []
    for w in readings:
        k, h = scheme.gen(public, w, rng)
        keys.append(k)
        helpers.append(h)
    reproduced = sum(
        1 for w, k, h in zip(readings, keys, helpers)
        if (r := scheme.rep(public, w, h)) is not None and np.array_equal(r, k)
    )
    j = int(rng.integers(0, eta))
    challenge = keys[j] if b == 0 else random_bits(params.xi, rng)
    blocks, sets = zip(*(scheme.blocks(public, h) for h in helpers))
    view = ReusabilityView(params, scheme.name, scheme.seed(public), blocks, sets,
                           tuple(None if i == j else k for i, k in enumerate(keys)),
                           challenge, j, tuple(maps))
    return view, reproduced


def run_reusability_suite(scheme, adversaries, model: SourceModel, params: Params, trials: int,
                          rng, *, family: str = "shift", eta: int | None = None
                          ) -> dict[str, AdvantageEstimate]:
    """Run the game for both bits, sharing each trial across ``adversaries``."""
    scheme = make_scheme(scheme, params)
    eta = eta or params.eta
    if trials < 1:
        raise ParameterError("trials must be positive")
    if model.n != params.n:
        raise ParameterError("source length differs from n")
    ones = {a.name: [0, 0] for a in adversaries}
    reproduced = 0
    roots = []
    for b in (0, 1):
        root, streams = trial_streams(rng, trials)
        roots.append(root)
        for s in streams:
            view, ok = _trial(scheme, model, params, family, eta, b, s)
            reproduced += ok
            for a in adversaries:
                guess = a.guess(view)
                if guess not in (0, 1):
                    raise ParameterError(f"{a.name} returned {guess!r}, not a bit")
                ones[a.name][b] += guess
    out = {}
    for a in adversaries:
        r0 = RateEstimate(ones[a.name][0], trials)
        r1 = RateEstimate(ones[a.name][1], trials)
        out[a.name] = AdvantageEstimate.from_difference(
            r0, r1, adversary=a.name, scheme=scheme.name, family=family, eta=eta,
            reproduced=reproduced, enrollments=2 * trials * eta,
            rng_seed_b0=roots[0], rng_seed_b1=roots[1])
    return out


def run_reusability_game(scheme, adversary: Distinguisher, model: SourceModel, params: Params,
                         trials: int, rng, **kwargs) -> AdvantageEstimate:
    return run_reusability_suite(scheme, [adversary], model, params, trials, rng,
                                 **kwargs)[adversary.name]
