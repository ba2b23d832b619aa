"""Toeplitz hashing over GF(2) as a seeded randomness extractor."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np

from .bits import random_bits
from .errors import ParameterError
from .precision import floor_exact, log2_exact, to_mpf


@dataclass(frozen=True, eq=False)
class ToeplitzSeed:
    """Seed of ``m + nu - 1`` bits defining a ``nu x m`` Toeplitz matrix.

    Entry ``(i, j)`` of the matrix is seed bit ``i - j + m - 1``, so seed
    bit 0 sits in the top-right corner and the last bit in the bottom-left.
    """

    bits: np.ndarray
    m: int
    nu: int

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.uint8)
        if self.m < 1 or self.nu < 1:
            raise ParameterError("Toeplitz dimensions must be positive")
        if bits.shape != (self.m + self.nu - 1,):
            raise ParameterError(
                f"seed must have m+nu-1 = {self.m + self.nu - 1} bits, got {bits.size}"
            )
        object.__setattr__(self, "bits", bits)

    @classmethod
    def random(cls, m: int, nu: int, rng: np.random.Generator) -> ToeplitzSeed:
        return cls(random_bits(m + nu - 1, rng), m, nu)

    @cached_property
    def matrix(self) -> np.ndarray:
        idx = np.arange(self.nu)[:, None] - np.arange(self.m)[None, :] + (self.m - 1)
        return self.bits[idx]

    def __eq__(self, other):
        if not isinstance(other, ToeplitzSeed):
            return NotImplemented
        return self.m == other.m and self.nu == other.nu and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.m, self.nu, self.bits.tobytes()))


def extract(w, seed: ToeplitzSeed) -> np.ndarray:
    """Hash an ``m``-bit string to ``nu`` bits: ``T @ w`` over GF(2)."""
    w = np.asarray(w, dtype=np.uint8)
    if w.shape != (seed.m,):
        raise ParameterError(f"extractor input must have {seed.m} bits, got {w.shape}")
    return (seed.matrix @ w) & 1


def extract_many(ws, seed: ToeplitzSeed) -> np.ndarray:
    """Row-wise :func:`extract` on a ``(k, m)`` array."""
    ws = np.asarray(ws, dtype=np.uint8)
    if ws.ndim != 2 or ws.shape[1] != seed.m:
        raise ParameterError(f"expected a (k, {seed.m}) array, got {ws.shape}")
    return (ws @ seed.matrix.T) & 1


def lhl_max_output(alpha, epsilon) -> int:
    """Largest output length the leftover hash lemma allows.

    ``floor(alpha + 2 - 2 log2(1/epsilon))``, clamped at zero.
    """
    if not 0 < epsilon < 1:
        raise ParameterError("epsilon must lie in (0, 1)")
    value = to_mpf(alpha) + 2 - 2 * log2_exact(1 / Fraction(epsilon))
    return max(0, floor_exact(value))


def lhl_epsilon(alpha, nu) -> float:
    """Statistical distance bound ``0.5 * sqrt(2^(nu - alpha))``."""
    return 0.5 * math.sqrt(2.0 ** (nu - alpha))


@dataclass(frozen=True)
class ExtractorProfile:
    """An ``(m, alpha, nu, epsilon)`` extractor claim checked against the lemma."""

    m: int
    alpha: float
    nu: int
    epsilon: float

    def __post_init__(self):
        needed = lhl_epsilon(self.alpha, self.nu)
        if self.epsilon < needed * (1 - 1e-12):
            raise ParameterError(
                f"epsilon={self.epsilon} below the lemma's {needed} for alpha={self.alpha}, nu={self.nu}"
            )


def universality_check(m: int, nu: int, trials: int, rng: np.random.Generator) -> float:
    """Monte Carlo collision rate for random distinct inputs and random seeds."""
    if trials < 1:
        raise ParameterError("trials must be positive")
    if m < 1:
        raise ParameterError("m must be positive")
    collisions = 0
    batch = 4096
    done = 0
    while done < trials:
        k = min(batch, trials - done)
        w1 = rng.integers(0, 2, size=(k, m), dtype=np.uint8)
        diff = rng.integers(0, 2, size=(k, m), dtype=np.uint8)
        zero = ~diff.any(axis=1)
        while zero.any():
            diff[zero] = rng.integers(0, 2, size=(int(zero.sum()), m), dtype=np.uint8)
            zero = ~diff.any(axis=1)
        seeds = rng.integers(0, 2, size=(k, m + nu - 1), dtype=np.uint8)
        idx = np.arange(nu)[:, None] - np.arange(m)[None, :] + (m - 1)
        mats = seeds[:, idx]  # (k, nu, m)
        w2 = w1 ^ diff
        out1 = np.einsum("kij,kj->ki", mats, w1) & 1
        out2 = np.einsum("kij,kj->ki", mats, w2) & 1
        collisions += int((out1 == out2).all(axis=1).sum())
        done += k
    return collisions / trials


def universality_exhaustive(m: int, nu: int) -> dict[tuple[int, int], Fraction]:
    """Exact collision probability over all seeds for every distinct input pair.

    Keys are the integer encodings of the pair (first bit least significant).
    """
    inputs = np.array(list(product((0, 1), repeat=m)), dtype=np.uint8)[:, ::-1]
    seeds = np.array(list(product((0, 1), repeat=m + nu - 1)), dtype=np.uint8)
    idx = np.arange(nu)[:, None] - np.arange(m)[None, :] + (m - 1)
    mats = seeds[:, idx]
    outputs = np.einsum("sij,xj->sxi", mats, inputs) & 1
    codes = (outputs * (1 << np.arange(nu))).sum(axis=2)  # (seeds, inputs)
    n_seeds = seeds.shape[0]
    result = {}
    for a in range(len(inputs)):
        for b in range(a + 1, len(inputs)):
            hits = int((codes[:, a] == codes[:, b]).sum())
            result[(a, b)] = Fraction(hits, n_seeds)
    return result
