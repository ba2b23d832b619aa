"""Bit-exact serialization of helper data, CRS, keys and samples.

Every object file starts with a 31-byte header::

    magic    4s   b"FEHD" helper data, b"FECR" CRS, b"FEKY" key material
    version  u8   construction number (1 or 2)
    n        u32
    m, ell, t, t_err, xi, lam, nu   u16 each
    L        u32
    length   u32  payload length in bytes

All integers are big-endian. Bit strings are packed most-significant-bit
first and zero-padded to a whole byte; each block is packed separately.
Index lists are u32 per index. Sample files use a 6-byte preamble
(``b"FW"`` and a u32 bit length) followed by the packed bits.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .bits import pack_bits, packed_size, unpack_bits
from .errors import FormatError
from .extractor import ToeplitzSeed
from .field import FieldElement
from .params import Params, validate
from .rfe import RfeHelperData
from .sampler import Crs
from .srrfe import SrrfeHelperData

HELPER_MAGIC = b"FEHD"
CRS_MAGIC = b"FECR"
KEY_MAGIC = b"FEKY"
SAMPLE_MAGIC = b"FW"

_HEADER = struct.Struct(">4sBIHHHHHHHII")
HEADER_SIZE = _HEADER.size
_DIGEST_SIZE = 8


@dataclass(frozen=True)
class FileHeader:
    magic: bytes
    version: int
    params: Params
    payload_length: int


def _pack_header(magic: bytes, params: Params, payload: bytes) -> bytes:
    p = params
    try:
        return _HEADER.pack(magic, p.construction, p.n, p.m, p.ell, p.t, p.t_err,
                            p.xi, p.lam, p.nu, p.L, len(payload)) + payload
    except struct.error as exc:
        raise FormatError(f"parameters do not fit the header fields: {exc}") from exc


def read_header(data: bytes, expect: bytes | None = None) -> FileHeader:
    """Parse and validate the header; the payload is checked for length only."""
    if len(data) < HEADER_SIZE:
        raise FormatError(f"file too short for a header ({len(data)} bytes)")
    magic, version, n, m, ell, t, t_err, xi, lam, nu, L, length = _HEADER.unpack_from(data)
    if magic not in (HELPER_MAGIC, CRS_MAGIC, KEY_MAGIC):
        raise FormatError(f"unknown magic {magic!r}")
    if expect is not None and magic != expect:
        raise FormatError(f"expected a {expect!r} file, found {magic!r}")
    if version not in (1, 2):
        raise FormatError(f"unsupported version {version}")
    if len(data) != HEADER_SIZE + length:
        raise FormatError(f"payload is {len(data) - HEADER_SIZE} bytes, header says {length}")
    params = Params(version, n, m, ell, t, xi, nu, t_err=t_err, lam=lam, L=L)
    problems = validate(params)
    if problems:
        raise FormatError("header parameters invalid: " + "; ".join(map(str, problems)))
    return FileHeader(magic, version, params, length)


class _Reader:
    def __init__(self, data: bytes, offset: int):
        self.data = data
        self.pos = offset

    def take(self, k: int) -> bytes:
        if self.pos + k > len(self.data):
            raise FormatError("payload truncated")
        out = self.data[self.pos : self.pos + k]
        self.pos += k
        return out

    def bits(self, length: int) -> np.ndarray:
        raw = self.take(packed_size(length))
        bits = unpack_bits(raw, length)
        if packed_size(length) * 8 != length and int(np.unpackbits(np.frombuffer(raw, np.uint8))[length:].any()):
            raise FormatError("nonzero padding bits")
        return bits

    def indices(self, count: int) -> np.ndarray:
        return np.frombuffer(self.take(4 * count), dtype=">u4").astype(np.int64)

    def done(self):
        if self.pos != len(self.data):
            raise FormatError("trailing bytes after payload")


def _pack_indices(indices) -> bytes:
    return np.asarray(indices, dtype=">u4").tobytes()


# -- helper data -------------------------------------------------------------------


def serialize_helper(helper, params: Params, seed: ToeplitzSeed | None = None) -> bytes:
    """Encode helper data; construction-1 files may carry the seed ``Z``."""
    parts = [helper.digest]
    if params.construction == 1:
        if not isinstance(helper, RfeHelperData):
            raise FormatError("construction 1 expects RfeHelperData")
        parts.append(b"\x01" if seed is not None else b"\x00")
        for block, idx in zip(helper.p, helper.index_sets):
            parts.append(pack_bits(block))
            parts.append(_pack_indices(idx))
        if seed is not None:
            parts.append(pack_bits(seed.bits))
    else:
        if not isinstance(helper, SrrfeHelperData):
            raise FormatError("construction 2 expects SrrfeHelperData")
        for block in helper.p:
            parts.append(pack_bits(block))
        parts.append(helper.tag.value.to_bytes(packed_size(params.lam), "big"))
    return _pack_header(HELPER_MAGIC, params, b"".join(parts))


def parse_helper(data: bytes):
    """Return ``(params, helper, seed)``; ``seed`` is ``None`` unless embedded."""
    header = read_header(data, HELPER_MAGIC)
    p = header.params
    r = _Reader(data, HEADER_SIZE)
    digest = r.take(_DIGEST_SIZE)
    seed = None
    if p.construction == 1:
        flag = r.take(1)
        if flag not in (b"\x00", b"\x01"):
            raise FormatError("bad seed flag")
        blocks, sets = [], []
        for _ in range(p.ell):
            blocks.append(r.bits(p.nu))
            sets.append(r.indices(p.m))
        if flag == b"\x01":
            seed = ToeplitzSeed(r.bits(p.m + p.nu - 1), p.m, p.nu)
        r.done()
        sets = np.stack(sets)
        if sets.max() >= p.n:
            raise FormatError("index out of range")
        helper = RfeHelperData(np.stack(blocks), sets, digest)
    else:
        blocks = [r.bits(p.nu) for _ in range(p.ell)]
        tag = int.from_bytes(r.take(packed_size(p.lam)), "big")
        r.done()
        if tag >> p.lam:
            raise FormatError("tag wider than lam")
        helper = SrrfeHelperData(np.stack(blocks), FieldElement(tag, p.lam), digest)
    return p, helper, seed


# -- CRS ---------------------------------------------------------------------------


def serialize_crs(crs: Crs, params: Params) -> bytes:
    parts = [crs.digest]
    for idx in crs.index_sets:
        parts.append(_pack_indices(idx))
    parts.append(pack_bits(crs.seed.bits))
    return _pack_header(CRS_MAGIC, params, b"".join(parts))


def parse_crs(data: bytes):
    """Return ``(params, crs)``."""
    header = read_header(data, CRS_MAGIC)
    p = header.params
    r = _Reader(data, HEADER_SIZE)
    digest = r.take(_DIGEST_SIZE)
    sets = np.stack([r.indices(p.m) for _ in range(p.ell)])
    seed = ToeplitzSeed(r.bits(p.m + p.nu - 1), p.m, p.nu)
    r.done()
    try:
        crs = Crs(p.n, sets, seed, digest)
    except ValueError as exc:
        raise FormatError(f"invalid CRS: {exc}") from exc
    return p, crs


# -- keys and samples --------------------------------------------------------------


def serialize_key(key, params: Params) -> bytes:
    key = np.asarray(key, dtype=np.uint8)
    if key.shape != (params.xi,):
        raise FormatError(f"key must have xi={params.xi} bits")
    return _pack_header(KEY_MAGIC, params, pack_bits(key))


def parse_key(data: bytes):
    header = read_header(data, KEY_MAGIC)
    r = _Reader(data, HEADER_SIZE)
    key = r.bits(header.params.xi)
    r.done()
    return header.params, key


def serialize_sample(w) -> bytes:
    w = np.asarray(w, dtype=np.uint8)
    return SAMPLE_MAGIC + struct.pack(">I", w.size) + pack_bits(w)


def parse_sample(data: bytes) -> np.ndarray:
    if len(data) < 6 or data[:2] != SAMPLE_MAGIC:
        raise FormatError("not a sample file")
    (length,) = struct.unpack(">I", data[2:6])
    if len(data) != 6 + packed_size(length):
        raise FormatError("sample length does not match its preamble")
    r = _Reader(data, 6)
    bits = r.bits(length)
    r.done()
    return bits
