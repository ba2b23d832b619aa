"""Binomial rate estimates with Wilson 95% intervals and per-trial streams."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

Z95 = 1.959963984540054


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("trials must be positive")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in [0, trials]")
    p = successes / trials
    z2 = z * z
    denom = 1 + z2 / trials
    centre = (p + z2 / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi


@dataclass(frozen=True)
class RateEstimate:
    successes: int
    trials: int

    @property
    def point(self) -> float:
        return self.successes / self.trials

    @property
    def interval(self) -> tuple[float, float]:
        return wilson_interval(self.successes, self.trials)

    @property
    def lower(self) -> float:
        return self.interval[0]

    @property
    def upper(self) -> float:
        return self.interval[1]

    @property
    def halfwidth(self) -> float:
        lo, hi = self.interval
        return (hi - lo) / 2

    def consistent_with_bound(self, bound: float) -> bool:
        """True when the bound is not below the whole interval."""
        return self.point <= bound or self.lower <= bound

    def to_dict(self) -> dict:
        lo, hi = self.interval
        return {"successes": self.successes, "trials": self.trials,
                "point": self.point, "lower": lo, "upper": hi}


@dataclass(frozen=True)
class AdvantageEstimate:
    """Point estimate, trial count and a 95% interval.

    For distinguishing games the estimate is ``|P[b'=1|b=0] - P[b'=1|b=1]|``
    and the interval combines the two Wilson intervals conservatively.
    """

    point: float
    trials: int
    lower: float
    upper: float
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def halfwidth(self) -> float:
        return (self.upper - self.lower) / 2

    @classmethod
    def from_rate(cls, rate: RateEstimate, **notes) -> AdvantageEstimate:
        lo, hi = rate.interval
        return cls(rate.point, rate.trials, lo, hi, dict(notes))

    @classmethod
    def from_difference(cls, r0: RateEstimate, r1: RateEstimate, **notes) -> AdvantageEstimate:
        point = abs(r0.point - r1.point)
        lo0, hi0 = r0.interval
        lo1, hi1 = r1.interval
        upper = min(1.0, max(hi0 - lo1, hi1 - lo0))
        # the gap between the intervals, or zero when they overlap
        lower = max(0.0, lo0 - hi1, lo1 - hi0)
        notes = {"p1_given_b0": r0.point, "p1_given_b1": r1.point, **notes}
        return cls(point, r0.trials + r1.trials, lower, upper, notes)

    def consistent_with_bound(self, bound: float) -> bool:
        return self.point <= bound or self.lower <= bound

    def to_dict(self) -> dict:
        return {"point": self.point, "trials": self.trials, "lower": self.lower,
                "upper": self.upper, **{k: v for k, v in self.notes.items()
                                        if isinstance(v, (int, float, str, bool))}}


def trial_streams(rng, count: int) -> tuple[int, list[np.random.Generator]]:
    """Independent generators for ``count`` trials and the root seed that replays them.

    ``rng`` may be a Generator (one draw is consumed) or an integer seed.
    """
    if isinstance(rng, np.random.Generator):
        root = int(rng.integers(0, 2**63))
    else:
        root = int(rng)
    children = np.random.SeedSequence(root).spawn(count)
    return root, [np.random.Generator(np.random.PCG64(c)) for c in children]
