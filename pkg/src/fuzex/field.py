"""Arithmetic in GF(2^λ) and the bit-string encoding used by the MAC.

Elements are integers in ``[0, 2^λ)``; bit ``k`` is the coefficient of
``x^k`` in the polynomial basis. Small fields (λ ≤ 16) get log/antilog
tables so that exhaustive experiments can be vectorised with numpy.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError, ParameterError

#: Fixed low-weight irreducible reduction polynomial for each supported λ.
REDUCTION_POLYNOMIALS = {
    3: (1 << 3) | 0b11,  # x^3 + x + 1
    8: (1 << 8) | 0x1B,  # x^8 + x^4 + x^3 + x + 1
    16: (1 << 16) | 0x2B,  # x^16 + x^5 + x^3 + x + 1
    128: (1 << 128) | 0x87,  # x^128 + x^7 + x^2 + x + 1
}

_TABLE_MAX_DEGREE = 16


def _prime_factors(n: int) -> list[int]:
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            factors.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        factors.append(n)
    return factors


class GF2m:
    """The field GF(2^λ) for a fixed reduction polynomial."""

    def __init__(self, degree: int, modulus: int | None = None):
        if modulus is None:
            if degree not in REDUCTION_POLYNOMIALS:
                raise ParameterError(
                    f"no reduction polynomial fixed for λ={degree}; "
                    f"supported: {sorted(REDUCTION_POLYNOMIALS)}"
                )
            modulus = REDUCTION_POLYNOMIALS[degree]
        if modulus.bit_length() != degree + 1:
            raise ParameterError("modulus degree does not match λ")
        self.degree = degree
        self.modulus = modulus
        self.order = 1 << degree
        self.mask = self.order - 1
        self._exp = None
        self._log = None
        if degree <= _TABLE_MAX_DEGREE:
            self._build_tables()

    def __repr__(self):
        return f"GF2m({self.degree}, modulus={self.modulus:#x})"

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def _mul_slow(self, a: int, b: int) -> int:
        result = 0
        top = 1 << self.degree
        while b:
            if b & 1:
                result ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= self.modulus
        return result

    def mul(self, a: int, b: int) -> int:
        if self._log is None:
            return self._mul_slow(a, b)
        if a == 0 or b == 0:
            return 0
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ParameterError("negative exponent")
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.order - 2)

    # -- tables and vectorised arithmetic ----------------------------------

    def _build_tables(self):
        group = self.order - 1
        factors = _prime_factors(group) if group > 1 else []
        generator = None
        for g in range(2 if self.order > 2 else 1, self.order):
            if all(self._pow_slow(g, group // p) != 1 for p in factors):
                generator = g
                break
        exp = np.zeros(2 * group + 1, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        v = 1
        for k in range(group):
            exp[k] = v
            log[v] = k
            v = self._mul_slow(v, generator)
        exp[group : 2 * group] = exp[:group]
        self.generator = generator
        self._exp = exp
        self._log = log
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()
        # zero maps to a sentinel log whose sums land in an all-zero tail
        self._vexp = np.concatenate([exp, np.zeros(2 * group + 2, dtype=np.int64)])
        self._vlog = log.copy()
        self._vlog[0] = 2 * group + 1

    def _pow_slow(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    @property
    def vectorised(self) -> bool:
        return self._log is not None

    def mul_vec(self, a, b) -> np.ndarray:
        """Element-wise product of integer arrays (small fields only)."""
        if self._log is None:
            raise ParameterError(f"vectorised arithmetic needs λ ≤ {_TABLE_MAX_DEGREE}")
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return self._vexp[self._vlog[a] + self._vlog[b]]

    def pow_vec(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        group = self.order - 1
        out = self._exp[(self._log[a] * e) % group]
        return np.where(a == 0, 0, out)


@lru_cache(maxsize=None)
def get_field(degree: int) -> GF2m:
    return GF2m(degree)


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(2^λ) that remembers λ."""

    value: int
    lam: int

    def __post_init__(self):
        if not 0 <= self.value < (1 << self.lam):
            raise ParameterError(f"{self.value:#x} does not fit in {self.lam} bits")

    @property
    def field(self) -> GF2m:
        return get_field(self.lam)

    def _check(self, other: FieldElement):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.lam != self.lam:
            raise ParameterError(f"mismatched field widths {self.lam} and {other.lam}")
        return None

    def __add__(self, other):
        if (r := self._check(other)) is not None:
            return r
        return FieldElement(self.value ^ other.value, self.lam)

    __sub__ = __add__

    def __mul__(self, other):
        if (r := self._check(other)) is not None:
            return r
        return FieldElement(self.field.mul(self.value, other.value), self.lam)

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.value, e), self.lam)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field.inverse(self.value), self.lam)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement({self.value:#x}, lam={self.lam})"


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_pow(a: FieldElement, e: int) -> FieldElement:
    return a**e


def fe_inverse(a: FieldElement) -> FieldElement:
    """Inverse via ``a^(2^λ - 2)``."""
    return a ** ((1 << a.lam) - 2)


@dataclass(frozen=True)
class MessagePoly:
    """Coefficients ``m_0 .. m_{L-5}`` of the MAC message polynomial."""

    coeffs: tuple[int, ...]
    lam: int

    def __len__(self):
        return len(self.coeffs)

    def evaluate(self, x: int) -> int:
        """Horner evaluation of ``m(x)``."""
        f = get_field(self.lam)
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.mul(acc, x) ^ c
        return acc


def message_capacity(lam: int, L: int) -> int:
    """Number of message bits that fit in ``L - 4`` coefficients."""
    return max(L - 4, 0) * lam


def encode_message(p, lam: int, L: int) -> MessagePoly:
    """Split ``p`` into λ-bit blocks, one coefficient per block.

    Within a block the first bit is the constant coefficient. The final
    block is zero-padded at the high end and the vector is zero-extended
    to ``L - 4`` coefficients.
    """
    bits = np.asarray(p, dtype=np.uint8)
    length = L - 4
    if length < 0:
        raise ParameterError("L must be at least 4")
    if bits.size > length * lam:
        raise CapacityError(
            f"{bits.size}-bit message exceeds capacity {length * lam} bits (λ={lam}, L={L})"
        )
    padded = np.zeros(length * lam, dtype=np.uint8)
    padded[: bits.size] = bits
    blocks = padded.reshape(length, lam)
    if lam <= 62:
        values = blocks.astype(np.int64) @ (np.int64(1) << np.arange(lam, dtype=np.int64))
        return MessagePoly(tuple(int(v) for v in values), lam)
    coeffs = []
    for block in blocks:
        packed = np.packbits(block, bitorder="little").tobytes()
        coeffs.append(int.from_bytes(packed, "little"))
    return MessagePoly(tuple(coeffs), lam)
