"""Bit-string helpers.

Bit strings are 1-D ``numpy.uint8`` arrays holding 0/1 values. Index 0 is
the first bit of the stream.
"""

from __future__ import annotations

import numpy as np


def as_bits(values) -> np.ndarray:
    """Coerce a sequence (or ``"0101"`` string) to a bit array."""
    if isinstance(values, str):
        values = [int(c) for c in values if c in "01"]
    arr = np.asarray(values, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError("bit strings are one-dimensional")
    if arr.size and arr.max() > 1:
        raise ValueError("bit strings hold only 0/1 values")
    return arr


def random_bits(length: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 2, size=length, dtype=np.uint8)


def bits_from_int(value: int, length: int) -> np.ndarray:
    """Little-endian expansion: bit ``k`` of the result is bit ``k`` of ``value``."""
    if value < 0 or value >> length:
        raise ValueError(f"{value} does not fit in {length} bits")
    return np.array([(value >> k) & 1 for k in range(length)], dtype=np.uint8)


def bits_to_int(bits) -> int:
    """Inverse of :func:`bits_from_int`."""
    arr = np.asarray(bits)
    if arr.size <= 62:
        return int(arr.astype(np.int64) @ (np.int64(1) << np.arange(arr.size, dtype=np.int64)))
    value = 0
    for k, b in enumerate(arr.tolist()):
        if b:
            value |= 1 << k
    return value


def pack_bits(bits) -> bytes:
    """Pack MSB-first within bytes, zero-padding the final byte."""
    return np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes()


def unpack_bits(data: bytes, length: int) -> np.ndarray:
    if len(data) * 8 < length:
        raise ValueError("not enough bytes for the requested bit length")
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8), count=length)


def packed_size(length: int) -> int:
    return (length + 7) // 8


def hamming_weight(bits) -> int:
    return int(np.count_nonzero(bits))


def hamming_distance(a, b) -> int:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError("length mismatch")
    return int(np.count_nonzero(a != b))
