"""One-time MAC secure against known key shifts.

The tag of a message ``p`` under key ``(x, y)`` is
``T = x^L + x^2 m(x) + x y`` in GF(2^λ), where ``m(x)`` is the polynomial
whose coefficients are the λ-bit blocks of ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import bits_to_int, random_bits
from .errors import ParameterError
from .field import FieldElement, MessagePoly, encode_message, get_field


@dataclass(frozen=True)
class MacKey:
    x: FieldElement
    y: FieldElement

    def __post_init__(self):
        if self.x.lam != self.y.lam:
            raise ParameterError("key halves must live in the same field")

    @property
    def lam(self) -> int:
        return self.x.lam

    @classmethod
    def from_ints(cls, x: int, y: int, lam: int) -> MacKey:
        return cls(FieldElement(x, lam), FieldElement(y, lam))

    @classmethod
    def from_bits(cls, bits, lam: int) -> MacKey:
        """Parse ``2*lam`` bits as ``x | y``; first λ bits give ``x``."""
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.shape != (2 * lam,):
            raise ParameterError(f"MAC key needs {2 * lam} bits, got {bits.size}")
        return cls.from_ints(bits_to_int(bits[:lam]), bits_to_int(bits[lam:]), lam)

    @classmethod
    def random(cls, lam: int, rng: np.random.Generator) -> MacKey:
        return cls.from_bits(random_bits(2 * lam, rng), lam)


def check_mac_length(L: int, lam: int, message_bits: int | None = None) -> None:
    if L < 5 or L % 4 != 3:
        raise ParameterError(f"L={L} must be at least 5 and congruent to 3 mod 4")
    if message_bits is not None and message_bits > (L - 4) * lam:
        raise ParameterError(
            f"{message_bits}-bit message exceeds capacity {(L - 4) * lam} (λ={lam}, L={L})"
        )


def tag_from_poly(poly: MessagePoly, x: int, y: int, L: int) -> int:
    """Integer-level tag computation for an already encoded message."""
    f = get_field(poly.lam)
    mx = poly.evaluate(x)
    return f.pow(x, L) ^ f.mul(f.mul(x, x), mx) ^ f.mul(x, y)


def mac_eval(p, key: MacKey, L: int) -> FieldElement:
    bits = np.asarray(p, dtype=np.uint8)
    check_mac_length(L, key.lam, bits.size)
    poly = encode_message(bits, key.lam, L)
    return FieldElement(tag_from_poly(poly, key.x.value, key.y.value, L), key.lam)


def mac_verify(p, tag: FieldElement, key: MacKey, L: int) -> bool:
    return mac_eval(p, key, L) == tag


def shifted_verify(p, tag: FieldElement, key: MacKey, delta1: FieldElement,
                   delta2: FieldElement, L: int) -> bool:
    """Verify ``(p, tag)`` under the shifted key ``(x + delta1, y + delta2)``."""
    shifted = MacKey(key.x + delta1, key.y + delta2)
    return mac_verify(p, tag, shifted, L)


def mac_eval_many(coeffs, xs, ys, L: int, lam: int) -> np.ndarray:
    """Vectorised tags for arrays of keys (small fields only).

    ``coeffs`` holds message coefficients ``m_0, m_1, ...`` either as one
    vector shared by every key or as one row per key.
    """
    f = get_field(lam)
    check_mac_length(L, lam)
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.int64)
    if coeffs.shape[-1] > L - 4:
        raise ParameterError("too many coefficients for L")
    acc = np.zeros(np.broadcast(xs, ys).shape, dtype=np.int64)
    for j in range(coeffs.shape[-1] - 1, -1, -1):
        acc = f.mul_vec(acc, xs) ^ coeffs[..., j]
    return f.pow_vec(xs, L) ^ f.mul_vec(f.mul_vec(xs, xs), acc) ^ f.mul_vec(xs, ys)
