"""Exhaustive key-shift forgery experiments on the one-time MAC.

A strategy sees one message and its tag, then outputs a message, a tag
that may depend on the observed tag, and a key shift ``(d1, d2)`` applied
to the verifier's key. Acceptance is counted over every key ``(x, y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from ..errors import ParameterError
from ..field import get_field
from ..mac import check_mac_length, mac_eval_many


@dataclass(frozen=True)
class ForgeryStrategy:
    name: str
    message: tuple[int, ...]
    forged: tuple[int, ...]
    delta1: int
    delta2: int
    respond: Callable[[np.ndarray], np.ndarray]

    def is_trivial(self) -> bool:
        """Same message, no shift and the tag echoed back always verifies."""
        probe = np.arange(4, dtype=np.int64)
        return (self.message == self.forged and self.delta1 == 0 and self.delta2 == 0
                and np.array_equal(self.respond(probe), probe))


def all_keys(lam: int) -> tuple[np.ndarray, np.ndarray]:
    grid = np.arange(1 << lam, dtype=np.int64)
    xs, ys = np.meshgrid(grid, grid, indexing="ij")
    return xs.ravel(), ys.ravel()


def acceptance_fraction(strategy: ForgeryStrategy, lam: int, L: int) -> Fraction:
    """Exact fraction of the ``2^(2 lam)`` keys under which the forgery verifies."""
    check_mac_length(L, lam)
    if lam > 12:
        raise ParameterError("exhaustive enumeration is limited to lam <= 12")
    if strategy.is_trivial():
        raise ParameterError(f"strategy {strategy.name!r} is a replay")
    xs, ys = all_keys(lam)
    tags = mac_eval_many(list(strategy.message), xs, ys, L, lam)
    claimed = np.asarray(strategy.respond(tags), dtype=np.int64)
    actual = mac_eval_many(list(strategy.forged), xs ^ strategy.delta1, ys ^ strategy.delta2, L, lam)
    return Fraction(int((claimed == actual).sum()), xs.size)


def _poly_from_roots(f, roots):
    poly = [1]
    for r in roots:
        nxt = [0] * (len(poly) + 1)
        for d, c in enumerate(poly):
            nxt[d + 1] ^= c
            nxt[d] ^= f.mul(c, r)
        poly = nxt
    return poly


def _guess_x(lam, L, message, forged, x_guess, d1, d2):
    """Tag response that is exact whenever the verifier's ``x`` equals ``x_guess``."""
    f = get_field(lam)
    mx = 0
    for c in reversed(message):
        mx = f.mul(mx, x_guess) ^ c
    base = f.pow(x_guess, L) ^ f.mul(f.mul(x_guess, x_guess), mx)
    inv = f.inverse(x_guess)
    x2 = x_guess ^ d1

    def respond(tags):
        ys = f.mul_vec(tags ^ base, np.int64(inv))
        return mac_eval_many(list(forged), np.full_like(tags, x2), ys ^ d2, L, lam)

    return respond


def standard_strategies(lam: int, L: int, rng: np.random.Generator) -> list[ForgeryStrategy]:
    """A fixed suite covering unshifted and shifted forgeries (at least 20)."""
    f = get_field(lam)
    size = 1 << lam
    k = L - 4
    msg = tuple(int(v) for v in rng.integers(0, size, size=k))
    ident = lambda tags: tags  # noqa: E731
    out = []

    def add(name, forged, d1=0, d2=0, respond=ident, message=msg):
        out.append(ForgeryStrategy(name, message, tuple(int(v) for v in forged), d1, d2, respond))

    for j in range(k):
        e = list(msg)
        e[j] ^= 1
        add(f"flip-coef-{j}", e)
    add("random-message", rng.integers(0, size, size=k))
    add("zero-message", [0] * k)
    add("tag-xor-1", msg[:-1] + (msg[-1] ^ 1,), respond=lambda t: t ^ 1)
    add("shift-y-only", msg, 0, 1)
    add("shift-y-compensate", msg, 0, 3, respond=lambda t: t ^ 3)
    add("shift-x-only", msg, 1, 0)
    add("shift-x-and-y", msg, 5 % size, 7 % size)
    add("shift-x-tag-xor", msg, 2, 0, respond=lambda t: t ^ 2)
    add("shift-x-new-message", rng.integers(0, size, size=k), 1, 1)
    add("shift-x-tag-square", msg, 1, 0, respond=lambda t: f.mul_vec(t, t))
    add("tag-constant", msg[:-1] + (msg[-1] ^ 2,), respond=lambda t: np.zeros_like(t))
    # root planting: x^2 * D(x) with D vanishing at chosen points
    for count in range(1, k):
        roots = [1 + int(r) for r in rng.choice(size - 1, size=count, replace=False)]
        d = _poly_from_roots(f, roots) + [0] * (k - count - 1)
        add(f"root-planting-{count}", [a ^ b for a, b in zip(msg, d)])
    for i, (d1, d2) in enumerate([(0, 0), (1, 0), (3, 5)]):
        xg = int(rng.integers(1, size))
        forged = list(msg)
        forged[0] ^= 1
        add(f"guess-x-{i}", forged, d1, d2, _guess_x(lam, L, msg, forged, xg, d1, d2))
    for i in range(3):
        d1 = int(rng.integers(1, size))
        d2 = int(rng.integers(0, size))
        add(f"random-shift-{i}", rng.integers(0, size, size=k), d1, d2,
            respond=lambda t, c=int(rng.integers(0, size)): t ^ c)
    return out
