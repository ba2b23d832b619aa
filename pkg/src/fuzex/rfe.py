"""Reusable fuzzy extractor (sample-then-lock with a zero-prefix check).

Gen locks a random key under ``ell`` random subsamples of the reading:
each lock is ``p_i = (0^t | R) xor E(w[A_i], Z)``. Rep unlocks the first
subsample whose decryption starts with ``t`` zeros.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import random_bits
from .errors import DigestMismatch, ParameterError
from .extractor import ToeplitzSeed, extract_many
from .params import Params
from .sampler import sample_index_sets, subsample


@dataclass(frozen=True, eq=False)
class RfeHelperData:
    """Public helper string: one ciphertext block and index set per lock."""

    p: np.ndarray
    index_sets: np.ndarray
    digest: bytes

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.uint8)
        sets = np.asarray(self.index_sets, dtype=np.int64)
        if p.ndim != 2 or sets.ndim != 2 or p.shape[0] != sets.shape[0]:
            raise ParameterError("helper data needs one block and one index set per lock")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "index_sets", sets)

    @property
    def ell(self) -> int:
        return self.p.shape[0]

    def __eq__(self, other):
        if not isinstance(other, RfeHelperData):
            return NotImplemented
        return (
            self.digest == other.digest
            and np.array_equal(self.p, other.p)
            and np.array_equal(self.index_sets, other.index_sets)
        )

    __hash__ = None


@dataclass(frozen=True)
class RepTrace:
    """Instrumented view of a Rep scan."""

    key: np.ndarray | None
    matched: int | None
    prefix_hits: np.ndarray
    subsample_equal: np.ndarray | None = None


def _check_dims(params: Params, z: ToeplitzSeed, construction: int = 1):
    if params.construction != construction:
        raise ParameterError(f"parameters are for construction {params.construction}")
    if z.m != params.m or z.nu != params.nu:
        raise ParameterError(
            f"seed is {z.nu}x{z.m}, parameters need {params.nu}x{params.m}"
        )


def rfe_gen(w, z: ToeplitzSeed, params: Params, rng: np.random.Generator):
    """Return ``(R, helper)`` for reading ``w`` under shared seed ``z``."""
    w = np.asarray(w, dtype=np.uint8)
    _check_dims(params, z)
    if w.shape != (params.n,):
        raise ParameterError(f"sample must have n={params.n} bits, got {w.shape}")
    key = random_bits(params.xi, rng)
    sets = sample_index_sets(params.n, params.m, params.ell, rng)
    pads = extract_many(subsample(w, sets), z)
    plain = np.concatenate([np.zeros(params.t, dtype=np.uint8), key])
    return key, RfeHelperData(pads ^ plain, sets, params.digest)


def _check_helper(helper: RfeHelperData, z: ToeplitzSeed, params: Params):
    _check_dims(params, z)
    if helper.digest != params.digest:
        raise DigestMismatch("helper data was produced for different dimensions")
    if helper.p.shape != (params.ell, params.nu) or helper.index_sets.shape != (params.ell, params.m):
        raise ParameterError("helper data shape does not match the parameters")


def rfe_rep_trace(w_prime, helper: RfeHelperData, z: ToeplitzSeed, params: Params,
                  w_reference=None) -> RepTrace:
    """Run Rep and record which locks passed the prefix check."""
    w_prime = np.asarray(w_prime, dtype=np.uint8)
    _check_helper(helper, z, params)
    if w_prime.shape != (params.n,):
        raise ParameterError(f"sample must have n={params.n} bits, got {w_prime.shape}")
    decrypted = extract_many(subsample(w_prime, helper.index_sets), z) ^ helper.p
    hits = ~decrypted[:, : params.t].any(axis=1)
    same = None
    if w_reference is not None:
        same = (subsample(w_reference, helper.index_sets) == subsample(w_prime, helper.index_sets)).all(axis=1)
    if hits.any():
        i = int(np.argmax(hits))
        return RepTrace(decrypted[i, params.t :].copy(), i, hits, same)
    return RepTrace(None, None, hits, same)


def rfe_rep(w_prime, helper: RfeHelperData, z: ToeplitzSeed, params: Params):
    """Recover the key from a nearby reading, or ``None`` (⊥)."""
    return rfe_rep_trace(w_prime, helper, z, params).key
