"""Synthetic structured sources and noise models for the experiments.

Each source model certifies a conservative conditional min-entropy ``alpha``
for random ``m``-bit subsamples, given ``N`` revealed positions disjoint
from the subsample.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .bits import hamming_distance, hamming_weight
from .errors import ParameterError

SOURCE_KINDS = ("uniform", "block", "biased")


@dataclass(frozen=True)
class SourceModel:
    """A distribution over ``n``-bit readings.

    ``uniform``  every bit fresh and unbiased.
    ``block``    ``blocks`` equal blocks; each is a fixed public linear map
                 (systematic, every row nonzero) of ``block_entropy`` fresh bits.
    ``biased``   i.i.d. bits equal to 1 with probability ``bias``.
    """

    kind: str
    n: int
    blocks: int = 0
    block_entropy: int = 0
    bias: float = 0.5

    def __post_init__(self):
        if self.kind not in SOURCE_KINDS:
            raise ParameterError(f"unknown source kind {self.kind!r}")
        if self.n < 1:
            raise ParameterError("n must be positive")
        if self.kind == "block":
            if self.blocks < 1 or self.n % self.blocks:
                raise ParameterError("block count must divide n")
            size = self.n // self.blocks
            if not 1 <= self.block_entropy <= size:
                raise ParameterError("block entropy must lie in [1, block size]")
        if self.kind == "biased" and not 0 <= self.bias <= 1:
            raise ParameterError("bias must lie in [0, 1]")

    @classmethod
    def uniform(cls, n: int) -> SourceModel:
        return cls("uniform", n)

    @classmethod
    def block_structured(cls, n: int, blocks: int, block_entropy: int) -> SourceModel:
        return cls("block", n, blocks=blocks, block_entropy=block_entropy)

    @classmethod
    def biased_bit(cls, n: int, bias: float) -> SourceModel:
        return cls("biased", n, bias=bias)

    @property
    def block_size(self) -> int:
        return self.n // self.blocks

    def expansion_map(self) -> np.ndarray:
        """Public ``(block_size, block_entropy)`` generator of each block.

        The top rows are the identity; the remaining rows cycle through the
        nonzero vectors of weight at least two, so no row is zero.
        """
        if self.kind != "block":
            raise ParameterError("only block sources have an expansion map")
        s, k = self.block_size, self.block_entropy
        rows = [[int(i == j) for j in range(k)] for i in range(k)]
        extra = [v for v in range(1, 1 << k) if bin(v).count("1") >= 2] or [1]
        for r in range(s - k):
            v = extra[r % len(extra)]
            rows.append([(v >> j) & 1 for j in range(k)])
        return np.array(rows, dtype=np.uint8).reshape(s, k)

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        if self.kind == "uniform":
            return rng.integers(0, 2, size=self.n, dtype=np.uint8)
        if self.kind == "biased":
            return (rng.random(self.n) < self.bias).astype(np.uint8)
        g = self.expansion_map()
        seeds = rng.integers(0, 2, size=(self.blocks, self.block_entropy), dtype=np.uint8)
        return ((seeds @ g.T) & 1).reshape(self.n).astype(np.uint8)

    def certified_alpha(self, m: int, N: int | None = None) -> float:
        """Conservative min-entropy of an ``m``-subsample given ``N`` disjoint positions."""
        if not 0 < m <= self.n:
            raise ParameterError("m must lie in [1, n]")
        if self.kind == "uniform":
            return float(m)
        if self.kind == "biased":
            top = max(self.bias, 1 - self.bias)
            return 0.0 if top >= 1 else m * -math.log2(top)
        # block sources: revealed positions may pin down whole blocks, so
        # only the unconditioned case is certified (one nonzero row = 1 bit)
        return 1.0 if not N else 0.0

    def certified_N(self, m: int) -> int:
        """Largest revealed-position budget the certification covers."""
        if self.kind == "block":
            return 0
        return self.n - m

    def pmf(self, max_bits: int = 20) -> tuple[np.ndarray, np.ndarray]:
        """Exact support and probabilities (small ``n`` only)."""
        if self.kind == "block":
            k_total = self.blocks * self.block_entropy
            if k_total > max_bits:
                raise ParameterError("source too large to enumerate")
            g = self.expansion_map()
            seeds = np.array(list(product((0, 1), repeat=k_total)), dtype=np.uint8)
            seeds = seeds.reshape(-1, self.blocks, self.block_entropy)
            samples = ((seeds @ g.T) & 1).reshape(-1, self.n).astype(np.uint8)
            uniq, inverse = np.unique(samples, axis=0, return_inverse=True)
            probs = np.bincount(inverse.ravel(), minlength=len(uniq)) / len(samples)
            return uniq, probs
        if self.n > max_bits:
            raise ParameterError("source too large to enumerate")
        samples = np.array(list(product((0, 1), repeat=self.n)), dtype=np.uint8)
        if self.kind == "uniform":
            probs = np.full(len(samples), 2.0 ** -self.n)
        else:
            ones = samples.sum(axis=1)
            probs = self.bias**ones * (1 - self.bias) ** (self.n - ones)
        keep = probs > 0
        return samples[keep], probs[keep]

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> SourceModel:
        return cls(**data)


def draw(model: SourceModel, rng: np.random.Generator) -> np.ndarray:
    return model.draw(rng)


def average_min_entropy(samples: np.ndarray, probs: np.ndarray, a, b=()) -> float:
    """Exact ``H~_inf(W[a] | W[b])`` for an enumerated distribution."""
    a = list(a)
    b = list(b)
    joint: dict[tuple[bytes, bytes], float] = {}
    for s, pr in zip(samples, probs):
        key = (s[b].tobytes(), s[a].tobytes())
        joint[key] = joint.get(key, 0.0) + float(pr)
    best: dict[bytes, float] = {}
    for (kb, _), pr in joint.items():
        best[kb] = max(best.get(kb, 0.0), pr)
    return -math.log2(sum(best.values()))


# -- noise ----------------------------------------------------------------------

NOISE_KINDS = ("random", "shift")


@dataclass(frozen=True, eq=False)
class NoiseModel:
    """Error process bounded by Hamming weight ``t_err``.

    ``random`` flips a uniformly chosen subset of positions; its size is
    exactly ``t_err`` when ``weight == "exact"`` and uniform on
    ``0..t_err`` when ``weight == "uniform"``. ``shift`` XORs a fixed
    offset chosen in advance.
    """

    kind: str
    t_err: int
    weight: str = "exact"
    offset: np.ndarray | None = field(default=None)

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ParameterError(f"unknown noise kind {self.kind!r}")
        if self.t_err < 0:
            raise ParameterError("t_err must be non-negative")
        if self.weight not in ("exact", "uniform"):
            raise ParameterError("weight must be 'exact' or 'uniform'")
        if self.kind == "shift":
            if self.offset is None:
                raise ParameterError("shift noise needs an offset vector")
            off = np.asarray(self.offset, dtype=np.uint8)
            if hamming_weight(off) > self.t_err:
                raise ParameterError("shift offset heavier than t_err")
            object.__setattr__(self, "offset", off)

    @classmethod
    def random(cls, t_err: int, weight: str = "exact") -> NoiseModel:
        return cls("random", t_err, weight)

    @classmethod
    def shift(cls, offset) -> NoiseModel:
        off = np.asarray(offset, dtype=np.uint8)
        return cls("shift", hamming_weight(off), offset=off)

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "t_err": self.t_err, "weight": self.weight}
        if self.offset is not None:
            out["offset"] = np.flatnonzero(self.offset).tolist()
            out["n"] = int(self.offset.size)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> NoiseModel:
        if data["kind"] == "shift":
            off = np.zeros(data["n"], dtype=np.uint8)
            off[data["offset"]] = 1
            return cls.shift(off)
        return cls(data["kind"], data["t_err"], data.get("weight", "exact"))


def random_error(n: int, weight: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform error vector of the given Hamming weight."""
    if not 0 <= weight <= n:
        raise ParameterError("weight must lie in [0, n]")
    e = np.zeros(n, dtype=np.uint8)
    if weight:
        e[rng.choice(n, size=weight, replace=False)] = 1
    return e


def perturb(w, noise: NoiseModel, rng: np.random.Generator) -> np.ndarray:
    """A reading within Hamming distance ``noise.t_err`` of ``w``."""
    w = np.asarray(w, dtype=np.uint8)
    if noise.kind == "shift":
        if noise.offset.shape != w.shape:
            raise ParameterError("offset length differs from the sample")
        out = w ^ noise.offset
    else:
        t_err = min(noise.t_err, w.size)
        weight = t_err if noise.weight == "exact" else int(rng.integers(0, t_err + 1))
        out = w ^ random_error(w.size, weight, rng)
    assert hamming_distance(w, out) <= noise.t_err
    return out


# -- correlated families ----------------------------------------------------------

Transform = Callable[[np.ndarray], np.ndarray]


def random_shifts(n: int, t_err: int, count: int, rng: np.random.Generator) -> list[np.ndarray]:
    """``count`` offsets of weight ``t_err``, fixed before any sampling."""
    return [random_error(n, t_err, rng) for _ in range(count)]


def window_permutation(start: int, permutation: Sequence[int]) -> Transform:
    """Permute the bits inside ``[start, start + len(permutation))``."""
    perm = np.asarray(permutation, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(perm.size)):
        raise ParameterError("not a permutation")

    def transform(w: np.ndarray) -> np.ndarray:
        out = w.copy()
        out[start : start + perm.size] = w[start + perm]
        return out

    transform.window = perm.size  # type: ignore[attr-defined]
    return transform


def random_window_permutations(n: int, t_err: int, count: int,
                               rng: np.random.Generator) -> list[Transform]:
    out = []
    for _ in range(count):
        start = int(rng.integers(0, n - t_err + 1))
        out.append(window_permutation(start, rng.permutation(t_err)))
    return out


def correlated_family(model: SourceModel, eta: int, correlation: str,
                      rng: np.random.Generator, *, shifts=None, transforms=None,
                      t_err: int | None = None, base=None) -> list[np.ndarray]:
    """``eta`` correlated readings derived from one draw ``w`` of ``model``.

    ``shift``: ``w ^ shifts[i]``. ``arbitrary``: ``transforms[i](w)``, each
    of which must stay within ``t_err`` of ``w``.
    """
    if eta < 1:
        raise ParameterError("eta must be at least 1")
    w = model.draw(rng) if base is None else np.asarray(base, dtype=np.uint8)
    if correlation == "shift":
        if shifts is None:
            shifts = [np.zeros(model.n, dtype=np.uint8)] * eta
        if len(shifts) != eta:
            raise ParameterError("need one shift per reading")
        out = [w ^ np.asarray(d, dtype=np.uint8) for d in shifts]
        if t_err is not None and any(hamming_weight(d) > t_err for d in shifts):
            raise ParameterError("shift heavier than t_err")
        return out
    if correlation == "arbitrary":
        if transforms is None or len(transforms) != eta:
            raise ParameterError("need one transform per reading")
        out = []
        for f in transforms:
            wi = np.asarray(f(w), dtype=np.uint8)
            if wi.shape != w.shape:
                raise ParameterError("transform changed the sample length")
            if t_err is not None and hamming_distance(w, wi) > t_err:
                raise ParameterError(
                    f"transform moved the sample by {hamming_distance(w, wi)} > t_err={t_err}"
                )
            out.append(wi)
        return out
    raise ParameterError(f"unknown correlation {correlation!r}")
