"""Game transcripts: oracle log, outcome and the seed that replays them."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from ..errors import ProtocolError


@dataclass(frozen=True)
class QueryRecord:
    """One oracle call; the input is logged by its SHA-256."""

    input_sha256: str
    output: tuple[int, ...] | None


@dataclass
class GameTranscript:
    rng_seed: tuple[int, int]
    queries: list[QueryRecord] = field(default_factory=list)
    outcome: bool | None = None
    budget: int | None = None

    def log(self, data: bytes, output) -> None:
        if self.budget is not None and len(self.queries) >= self.budget:
            raise ProtocolError(f"query budget of {self.budget} exhausted")
        out = None if output is None else tuple(int(b) for b in np.asarray(output))
        self.queries.append(QueryRecord(hashlib.sha256(data).hexdigest(), out))
