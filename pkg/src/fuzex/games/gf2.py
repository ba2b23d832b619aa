"""Gaussian elimination over GF(2) on bit-packed rows."""

from __future__ import annotations

import numpy as np


class Gf2System:
    """Row-reduced linear system ``A w = b`` over GF(2).

    Rows are given as ``(k, ncols)`` 0/1 arrays; the right-hand side is
    stored as one extra packed column.
    """

    def __init__(self, rows, rhs):
        rows = np.asarray(rows, dtype=np.uint8)
        rhs = np.asarray(rhs, dtype=np.uint8)
        self.ncols = rows.shape[1]
        aug = np.concatenate([rows, rhs[:, None]], axis=1)
        m = np.packbits(aug, axis=1)
        self.pivots: list[tuple[int, int]] = []
        r = 0
        for c in range(self.ncols):
            if r == m.shape[0]:
                break
            byte, mask = c >> 3, np.uint8(0x80 >> (c & 7))
            col = (m[r:, byte] & mask) != 0
            if not col.any():
                continue
            p = r + int(np.argmax(col))
            if p != r:
                m[[r, p]] = m[[p, r]]
            hit = (m[:, byte] & mask) != 0
            hit[r] = False
            m[hit] ^= m[r]
            self.pivots.append((c, r))
            r += 1
        self.rank = r
        self.matrix = m[:r]

    def evaluate(self, forms) -> np.ndarray:
        """Values of linear forms implied by the system; -1 where undetermined."""
        forms = np.asarray(forms, dtype=np.uint8)
        aug = np.concatenate([forms, np.zeros((forms.shape[0], 1), dtype=np.uint8)], axis=1)
        t = np.packbits(aug, axis=1)
        for c, r in self.pivots:
            byte, mask = c >> 3, np.uint8(0x80 >> (c & 7))
            hit = (t[:, byte] & mask) != 0
            if hit.any():
                t[hit] ^= self.matrix[r]
        bits = np.unpackbits(t, axis=1)[:, : self.ncols + 1]
        out = bits[:, self.ncols].astype(np.int64)
        out[bits[:, : self.ncols].any(axis=1)] = -1
        return out
