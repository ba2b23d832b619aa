"""The robustness game against Construction 2 and a suite of forgers.

Per trial a fresh sample ``w`` is drawn; ``q_e`` enrollments are made from
noisy readings of it and handed over with their keys. The adversary may
query a Rep oracle bound to ``w`` at most ``q_d`` times and then submits
helper data; it wins if the submission is fresh (byte-wise) and Rep on
``w`` accepts it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..bits import bits_from_int
from ..errors import ParameterError, ProtocolError
from ..field import FieldElement, encode_message, get_field
from ..fileformat import serialize_helper
from ..mac import tag_from_poly
from ..params import Params
from ..sampler import Crs
from ..sources import NoiseModel, SourceModel, perturb
from ..srrfe import SrrfeHelperData, compute_pads, srrfe_gen, srrfe_rep_pads
from .stats import AdvantageEstimate, RateEstimate, trial_streams
from .transcript import GameTranscript


class RepOracle:
    """Rep bound to the target reading; returns the full Rep output."""

    def __init__(self, pads, params: Params, transcript: GameTranscript):
        self._pads = pads
        self._params = params
        self.transcript = transcript

    @property
    def remaining(self) -> int:
        return self.transcript.budget - len(self.transcript.queries)

    def __call__(self, helper: SrrfeHelperData):
        data = serialize_helper(helper, self._params)
        if self.remaining <= 0:
            raise ProtocolError(f"query budget of {self.transcript.budget} exhausted")
        out = _rep(self._pads, helper, self._params)
        self.transcript.log(data, out)
        return out


def _rep(pads, helper, params):
    try:
        return srrfe_rep_pads(pads, helper, params)
    except ParameterError:
        return None


@dataclass(frozen=True)
class RobustnessView:
    params: Params
    crs: Crs
    helpers: tuple
    keys: tuple
    rng: np.random.Generator


class Forger:
    name = "forger"

    def forge(self, view: RobustnessView, oracle: RepOracle) -> SrrfeHelperData:
        raise NotImplementedError


def _with(helper, p=None, tag=None):
    return SrrfeHelperData(helper.p if p is None else p,
                           helper.tag if tag is None else tag, helper.digest)


class ReplayForger(Forger):
    name = "replay"

    def forge(self, view, oracle):
        return view.helpers[0]


class _Searching(Forger):
    """Tries candidates through the oracle and resubmits the first accepted one."""

    def candidate(self, view, k):
        raise NotImplementedError

    def forge(self, view, oracle):
        last = None
        for k in range(oracle.remaining):
            last = self.candidate(view, k)
            if oracle(last) is not None:
                return last
        return last if last is not None else self.candidate(view, 0)


class RandomTagForger(_Searching):
    name = "random-tag"

    def candidate(self, view, k):
        h = view.helpers[0]
        lam = view.params.lam
        tag = int(view.rng.integers(1, 1 << lam)) ^ h.tag.value
        return _with(h, tag=FieldElement(tag, lam))


class BitFlipForger(_Searching):
    """Flips one ciphertext bit and keeps the tag."""

    name = "bit-flip"

    def candidate(self, view, k):
        h = view.helpers[0]
        p = h.p.copy()
        p[int(view.rng.integers(0, p.shape[0])), int(view.rng.integers(0, p.shape[1]))] ^= 1
        return _with(h, p=p)


class OtpShiftForger(_Searching):
    """Shifts the encrypted MAC key and recomputes the tag under a guessed ``x``.

    Flipping bits of the ``x|y`` region in every block shifts the key Rep
    decrypts by a known ``(d1, d2)``. Given a guess for ``x`` the original
    tag determines ``y``, so the forged tag is exact when the guess is.
    """

    name = "otp-shift"

    def candidate(self, view, k):
        p = view.params
        f = get_field(p.lam)
        h = view.helpers[0]
        rng = view.rng
        d1 = int(rng.integers(0, 1 << p.lam))
        d2 = int(rng.integers(1, 1 << p.lam)) if d1 == 0 else int(rng.integers(0, 1 << p.lam))
        shift = np.concatenate([bits_from_int(d1, p.lam), bits_from_int(d2, p.lam)])
        new_p = h.p.copy()
        new_p[:, p.t + p.xi :] ^= shift
        x = int(rng.integers(1, 1 << p.lam))
        old = encode_message(h.p.ravel(), p.lam, p.L)
        y = f.mul(h.tag.value ^ f.pow(x, p.L) ^ f.mul(f.mul(x, x), old.evaluate(x)), f.inverse(x))
        poly = encode_message(new_p.ravel(), p.lam, p.L)
        tag = tag_from_poly(poly, x ^ d1, y ^ d2, p.L)
        return _with(h, p=new_p, tag=FieldElement(tag, p.lam))


class RootPlantingForger(_Searching):
    """Adds ``D(x) = x^k * prod(x - r_j)`` to the message and keeps the tag.

    ``D`` leaves the first block untouched, so the key decrypted there is
    unchanged and the tag verifies exactly when ``x`` is a root of ``D``.
    Each query plants a fresh batch of roots.
    """

    name = "root-planting"

    def candidate(self, view, k):
        p = view.params
        h = view.helpers[0]
        bits = _planted_offset(p.lam, p.nu, p.ell, k)
        if bits is None:
            return _with(h, tag=FieldElement(h.tag.value ^ 1, p.lam))
        flat = h.p.ravel().copy()
        flat[: bits.size] ^= bits
        return _with(h, p=flat.reshape(h.p.shape))


@lru_cache(maxsize=256)
def _planted_offset(lam, nu, ell, k):
    """Bits of ``x^low * prod(x - r_j)`` for the ``k``-th batch of roots."""
    f = get_field(lam)
    low = -(-nu // lam)
    high = (ell * nu) // lam - 1
    count = high - low
    if count < 1:
        return None
    roots = [1 + (k * count + j) % ((1 << lam) - 1) for j in range(count)]
    poly = [1]  # lowest degree first
    for r in roots:
        nxt = [0] * (len(poly) + 1)
        for d, c in enumerate(poly):
            nxt[d + 1] ^= c
            nxt[d] ^= f.mul(c, r)
        poly = nxt
    bits = np.concatenate([bits_from_int(c, lam) for c in [0] * low + poly])
    bits.flags.writeable = False
    return bits


def default_forgers() -> list[Forger]:
    return [ReplayForger(), RandomTagForger(), BitFlipForger(), OtpShiftForger(),
            RootPlantingForger()]


def robustness_trial(adversary: Forger, model: SourceModel, params: Params, crs: Crs,
                     q_e: int, q_d: int, rng: np.random.Generator, noise: NoiseModel,
                     seed_tag=(0, 0)) -> GameTranscript:
    w = model.draw(rng)
    keys, helpers = [], []
    for _ in range(q_e):
        k, h = srrfe_gen(perturb(w, noise, rng), crs, params, rng)
        keys.append(k)
        helpers.append(h)
    transcript = GameTranscript(seed_tag, budget=q_d)
    pads = compute_pads(w, crs)
    oracle = RepOracle(pads, params, transcript)
    adv_rng = np.random.Generator(np.random.PCG64(rng.integers(0, 2**63)))
    forgery = adversary.forge(RobustnessView(params, crs, tuple(helpers), tuple(keys), adv_rng),
                              oracle)
    seen = {serialize_helper(h, params) for h in helpers}
    fresh = serialize_helper(forgery, params) not in seen
    transcript.outcome = bool(fresh and _rep(pads, forgery, params) is not None)
    return transcript


def run_robustness_game(adversary: Forger, model: SourceModel, params: Params, crs: Crs,
                        q_e: int, q_d: int, trials: int, rng, *,
                        noise: NoiseModel | None = None) -> AdvantageEstimate:
    """Estimate the win rate; the enrollments use random noise of weight ``t_err``."""
    if params.construction != 2:
        raise ParameterError("the robustness game is defined for construction 2")
    crs.check(params)
    if trials < 1 or q_e < 0 or q_d < 0:
        raise ParameterError("trials must be positive and budgets non-negative")
    noise = noise or NoiseModel.random(params.t_err)
    root, streams = trial_streams(rng, trials)
    wins = queries = 0
    for i, s in enumerate(streams):
        tr = robustness_trial(adversary, model, params, crs, q_e, q_d, s, noise, (root, i))
        wins += tr.outcome
        queries += len(tr.queries)
    return AdvantageEstimate.from_rate(RateEstimate(wins, trials), adversary=adversary.name,
                                       q_e=q_e, q_d=q_d, queries=queries, rng_seed=root)
