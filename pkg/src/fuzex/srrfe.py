"""Strongly robust and reusable fuzzy extractor.

Each lock encrypts ``0^t | R | R1`` where ``R1 = x | y`` is a one-time MAC
key. The tag over all ciphertext blocks lets Rep reject modified helper
data even though the one-time pads make the ciphertext malleable. Index
sets and the extractor seed come from a common random string.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import random_bits
from .errors import DigestMismatch, ParameterError
from .extractor import extract_many
from .field import FieldElement, encode_message, get_field
from .mac import MacKey, check_mac_length, mac_eval_many, tag_from_poly
from .params import Params
from .sampler import Crs, subsample


@dataclass(frozen=True, eq=False)
class SrrfeHelperData:
    p: np.ndarray
    tag: FieldElement
    digest: bytes

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.uint8)
        if p.ndim != 2:
            raise ParameterError("ciphertext blocks must form an (ell, nu) array")
        object.__setattr__(self, "p", p)

    @property
    def ell(self) -> int:
        return self.p.shape[0]

    def __eq__(self, other):
        if not isinstance(other, SrrfeHelperData):
            return NotImplemented
        return self.digest == other.digest and self.tag == other.tag and np.array_equal(self.p, other.p)

    __hash__ = None


def _check(params: Params, crs: Crs):
    if params.construction != 2:
        raise ParameterError(f"parameters are for construction {params.construction}")
    crs.check(params)
    check_mac_length(params.L, params.lam, params.ell * params.nu)
    if params.nu != params.xi + params.t + 2 * params.lam:
        raise ParameterError("nu must equal xi + t + 2*lam")


def compute_pads(w, crs: Crs) -> np.ndarray:
    """One-time pads ``E(w[A_i], Z)`` for every CRS index set."""
    return extract_many(subsample(w, crs.index_sets), crs.seed)


def srrfe_gen(w, crs: Crs, params: Params, rng: np.random.Generator):
    """Return ``(R, helper)``; the MAC key never leaves this function."""
    w = np.asarray(w, dtype=np.uint8)
    _check(params, crs)
    if w.shape != (params.n,):
        raise ParameterError(f"sample must have n={params.n} bits, got {w.shape}")
    key = random_bits(params.xi, rng)
    mac_bits = random_bits(2 * params.lam, rng)
    plain = np.concatenate([np.zeros(params.t, dtype=np.uint8), key, mac_bits])
    p = compute_pads(w, crs) ^ plain
    mac_key = MacKey.from_bits(mac_bits, params.lam)
    poly = encode_message(p.ravel(), params.lam, params.L)
    tag = tag_from_poly(poly, mac_key.x.value, mac_key.y.value, params.L)
    return key, SrrfeHelperData(p, FieldElement(tag, params.lam), params.digest)


def srrfe_rep_pads(pads, helper: SrrfeHelperData, params: Params):
    """Rep given precomputed pads of the reading (used by game oracles)."""
    if helper.digest != params.digest:
        raise DigestMismatch("helper data was produced for different dimensions")
    if helper.p.shape != (params.ell, params.nu):
        raise ParameterError("helper data shape does not match the parameters")
    if helper.tag.lam != params.lam:
        raise ParameterError("tag width does not match lam")
    t, xi, lam = params.t, params.xi, params.lam
    decrypted = pads ^ helper.p
    hits = np.flatnonzero(~decrypted[:, :t].any(axis=1))
    if hits.size == 0:
        return None
    poly = encode_message(helper.p.ravel(), lam, params.L)
    field = get_field(lam)
    if field.vectorised:
        keys = decrypted[hits, t + xi :].astype(np.int64)
        weights = np.int64(1) << np.arange(lam, dtype=np.int64)
        xs, ys = keys[:, :lam] @ weights, keys[:, lam:] @ weights
        ok = mac_eval_many(poly.coeffs, xs, ys, params.L, lam) == helper.tag.value
        if not ok.any():
            return None
        return decrypted[hits[int(np.argmax(ok))], t : t + xi].copy()
    for i in hits:
        rho = decrypted[i, t:]
        mac_key = MacKey.from_bits(rho[xi:], lam)
        if tag_from_poly(poly, mac_key.x.value, mac_key.y.value, params.L) == helper.tag.value:
            return rho[:xi].copy()
        # a prefix match with a failing tag does not end the scan
    return None


def srrfe_rep(w_prime, helper: SrrfeHelperData, crs: Crs, params: Params):
    """Recover the key, or ``None`` (⊥) when no lock opens with a valid tag."""
    w_prime = np.asarray(w_prime, dtype=np.uint8)
    _check(params, crs)
    if w_prime.shape != (params.n,):
        raise ParameterError(f"sample must have n={params.n} bits, got {w_prime.shape}")
    return srrfe_rep_pads(compute_pads(w_prime, crs), helper, params)
