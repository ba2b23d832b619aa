"""Index-set sampling and common-random-string generation."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DigestMismatch, ParameterError
from .extractor import ToeplitzSeed
from .params import Params, params_digest


def sample_index_set(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``m`` distinct indices from ``[0, n)`` by a partial Fisher-Yates shuffle.

    The result is an ordered sequence; ``subsample`` concatenates bits in
    this order. Only the touched positions of the virtual permutation are
    stored, so ``n`` may be large.
    """
    if m > n:
        raise ParameterError(f"cannot draw {m} distinct indices from {n}")
    if m < 0:
        raise ParameterError("m must be non-negative")
    picks = rng.integers(np.arange(m), n) if m else np.empty(0, dtype=np.int64)
    swapped: dict[int, int] = {}
    out = np.empty(m, dtype=np.int64)
    for j, k in enumerate(picks.tolist()):
        vj = swapped.get(j, j)
        out[j] = swapped.get(k, k)
        swapped[k] = vj
    return out


def sample_index_sets(n: int, m: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` independent index sets stacked as a ``(count, m)`` array."""
    if count == 0:
        return np.empty((0, m), dtype=np.int64)
    return np.stack([sample_index_set(n, m, rng) for _ in range(count)])


def subsample(w, indices) -> np.ndarray:
    """``w[A]``: bit ``j`` of the result is bit ``indices[j]`` of ``w``.

    ``indices`` may be 2-D, giving one subsample per row.
    """
    w = np.asarray(w, dtype=np.uint8)
    indices = np.asarray(indices)
    if indices.size and (indices.min() < 0 or indices.max() >= w.shape[-1]):
        raise ParameterError("index out of range for the sample")
    return w[indices]


@dataclass(frozen=True, eq=False)
class Crs:
    """Public index sets and extractor seed, independent of any sample."""

    n: int
    index_sets: np.ndarray
    seed: ToeplitzSeed
    digest: bytes

    def __post_init__(self):
        sets = np.asarray(self.index_sets, dtype=np.int64)
        if sets.ndim != 2:
            raise ParameterError("index sets must form an (ell, m) array")
        ell, m = sets.shape
        if m != self.seed.m:
            raise ParameterError("index-set size does not match the seed")
        if sets.size and (sets.min() < 0 or sets.max() >= self.n):
            raise ParameterError("CRS index out of range")
        for row in sets:
            if np.unique(row).size != m:
                raise ParameterError("CRS index sets must hold distinct indices")
        if self.digest != params_digest(self.n, m, ell, self.seed.nu):
            raise DigestMismatch("CRS digest does not bind its own dimensions")
        object.__setattr__(self, "index_sets", sets)

    @property
    def ell(self) -> int:
        return self.index_sets.shape[0]

    @property
    def m(self) -> int:
        return self.index_sets.shape[1]

    @property
    def nu(self) -> int:
        return self.seed.nu

    def check(self, params: Params) -> None:
        """Reject use of this CRS with parameters it was not generated for."""
        if self.digest != params.digest:
            raise DigestMismatch(
                f"CRS for (n={self.n}, m={self.m}, ell={self.ell}, nu={self.nu}) "
                f"used with (n={params.n}, m={params.m}, ell={params.ell}, nu={params.nu})"
            )

    def __eq__(self, other):
        if not isinstance(other, Crs):
            return NotImplemented
        return (
            self.n == other.n
            and self.digest == other.digest
            and self.seed == other.seed
            and np.array_equal(self.index_sets, other.index_sets)
        )

    __hash__ = None


def generate_crs(params: Params, rng: np.random.Generator) -> Crs:
    """Fresh index sets and Toeplitz seed for one deployment."""
    if params.N is not None:
        enrollments = max(params.q_e + 1, params.eta)
        if enrollments * params.ell * params.m >= params.N:
            warnings.warn(
                f"{enrollments} enrollments of ell*m={params.ell * params.m} bits "
                f"exceed the source budget N={params.N}",
                stacklevel=2,
            )
    sets = sample_index_sets(params.n, params.m, params.ell, rng)
    seed = ToeplitzSeed.random(params.m, params.nu, rng)
    return Crs(params.n, sets, seed, params.digest)
