"""Exact statistical distance of (key, public data) from (uniform, public data).

The joint law of ``(R, P)`` is enumerated over the source, the extractor
seed, the index sets, the key and (for Construction 2) the MAC key. For
sources with i.i.d. bits the law of the subsample only depends on which
index slots coincide, so index-set choices are grouped by that pattern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from ..errors import ParameterError
from ..extractor import lhl_epsilon
from ..mac import mac_eval_many
from ..params import Params
from ..sources import SourceModel

MAX_STATES = 2**28


def statistical_distance(joint) -> float:
    """``Δ((R, P); (U, P))`` for a table ``joint[r, p]`` summing to one."""
    joint = np.asarray(joint, dtype=np.float64)
    if joint.ndim != 2:
        raise ParameterError("joint must be indexed [key, public]")
    uniform = joint.sum(axis=0, keepdims=True) / joint.shape[0]
    return float(0.5 * np.abs(joint - uniform).sum())


@dataclass(frozen=True)
class ExactResult:
    distance: float
    bound: float
    epsilon: float
    alpha: float
    states: int
    groups: int
    flagged: str | None

    @property
    def within_bound(self) -> bool:
        return self.distance <= self.bound

    def to_dict(self) -> dict:
        return dict(self.__dict__, within_bound=self.within_bound)


def _index_tuples(n, m, ell):
    one = list(permutations(range(n), m))
    return product(one, repeat=ell), len(one) ** ell


def _pattern(flat):
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(v, len(seen)) for v in flat)


def _subsample_law(samples, probs, flat):
    u = samples[:, list(flat)]
    codes = (u.astype(np.int64) << np.arange(u.shape[1])).sum(axis=1)
    uniq, inv = np.unique(codes, return_inverse=True)
    weights = np.bincount(inv.ravel(), weights=probs, minlength=uniq.size)
    bits = ((uniq[:, None] >> np.arange(u.shape[1])) & 1).astype(np.uint8)
    return bits, weights


def _plaintexts(params: Params):
    """Every ``(key, block plaintext)`` pair with its probability weight."""
    t, xi, lam = params.t, params.xi, params.lam
    extra = 2 * lam if params.construction == 2 else 0
    rows = []
    for r in range(1 << xi):
        for k in range(1 << extra):
            bits = np.zeros(t + xi + extra, dtype=np.uint8)
            bits[t : t + xi] = [(r >> b) & 1 for b in range(xi)]
            bits[t + xi :] = [(k >> b) & 1 for b in range(extra)]
            rows.append((r, k, bits))
    return rows


def exact_distance_oracle(scheme: str, params: Params, model: SourceModel,
                          max_states: int = MAX_STATES) -> ExactResult:
    if scheme not in ("rfe", "srrfe"):
        raise ParameterError("scheme must be 'rfe' or 'srrfe'")
    c = 1 if scheme == "rfe" else 2
    if params.construction != c:
        raise ParameterError(f"{scheme} needs construction-{c} parameters")
    if model.n != params.n:
        raise ParameterError("source length differs from n")
    n, m, ell, nu, t, xi, lam = (params.n, params.m, params.ell, params.nu,
                                 params.t, params.xi, params.lam)
    samples, probs = model.pmf()
    seed_len = m + nu - 1
    tuples, n_tuples = _index_tuples(n, m, ell)
    iid = model.kind in ("uniform", "biased")
    groups: dict[tuple, list] = {}
    for tup in tuples:
        flat = tuple(v for a in tup for v in a)
        key = _pattern(flat) if iid else flat
        entry = groups.setdefault(key, [flat, 0])
        entry[1] += 1
    extra = 2 * lam if c == 2 else 0
    states = len(samples) * (1 << seed_len) * len(groups) * (1 << (xi + extra))
    if states > max_states:
        raise ParameterError(f"enumeration needs {states} states, limit {max_states}")

    seeds = np.array(list(product((0, 1), repeat=seed_len)), dtype=np.uint8)
    idx = np.arange(nu)[:, None] - np.arange(m)[None, :] + (m - 1)
    mats = seeds[:, idx]  # (Z, nu, m)
    plains = _plaintexts(params)
    keys_r = np.array([r for r, _, _ in plains], dtype=np.int64)
    keys_k = np.array([k for _, k, _ in plains], dtype=np.int64)
    plain_bits = np.stack([b for _, _, b in plains])  # (P, nu)
    width = ell * nu
    if width > 62:
        raise ParameterError("helper data too wide to index")
    weights_bits = (1 << np.arange(width)).astype(np.int64)
    plain_codes = (np.tile(plain_bits, (1, ell)).astype(np.int64) * weights_bits).sum(axis=1)

    distance = 0.0
    for flat, count in groups.values():
        u_bits, u_prob = _subsample_law(samples, probs, flat)
        u_blocks = u_bits.reshape(-1, ell, m)
        pads = np.einsum("zvm,ulm->zulv", mats, u_blocks) & 1  # (Z, U, ell, nu)
        pad_codes = (pads.reshape(len(seeds), len(u_prob), width).astype(np.int64)
                     * weights_bits).sum(axis=2)
        # entries over (Z, U, plaintext)
        p_codes = pad_codes[:, :, None] ^ plain_codes[None, None, :]
        w = (u_prob[None, :, None] / len(seeds) / (1 << extra)) * np.ones_like(p_codes, dtype=float)
        z_ids = np.broadcast_to(np.arange(len(seeds))[:, None, None], p_codes.shape)
        r_ids = np.broadcast_to(keys_r[None, None, :], p_codes.shape)
        public = (z_ids.astype(np.int64) << width) | p_codes
        if c == 2:
            flat_p = p_codes.ravel()
            blocks = -(-width // lam)
            coeffs = (flat_p[:, None] >> (np.arange(blocks) * lam)) & ((1 << lam) - 1)
            ks = np.broadcast_to(keys_k[None, None, :], p_codes.shape).ravel()
            xs = ks & ((1 << lam) - 1)
            ys = ks >> lam
            tags = mac_eval_many(coeffs, xs, ys, params.L, lam).reshape(p_codes.shape)
            public = (public << lam) | tags
        uniq, inv = np.unique(public.ravel(), return_inverse=True)
        joint = np.zeros((1 << xi, uniq.size))
        np.add.at(joint, (r_ids.ravel(), inv.ravel()), w.ravel())
        # joint already carries the 2^-xi key weight via the plaintext rows
        joint /= 1 << xi
        distance += statistical_distance(joint) * count / n_tuples

    alpha = model.certified_alpha(m)
    eps = lhl_epsilon(alpha, nu) if alpha > 0 else math.inf
    bound = (2 if c == 1 else 4) * ell * eps
    flag = None
    if alpha <= 0:
        flag = "source has no certified min-entropy; the extractor precondition fails"
    return ExactResult(distance, bound, eps, alpha, states, len(groups), flag)
