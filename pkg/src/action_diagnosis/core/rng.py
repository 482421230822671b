"""
Seeded random streams.

Every stochastic operation takes an RngHandle. A handle wraps a numpy
``SeedSequence`` and a PCG64 generator: the same seed and the same call
sequence give bit-identical draws, and sub-streams can be split off up front
for independent diagnosis runs or named pipeline stages.
"""

import zlib
from typing import List, Optional, Tuple

import numpy as np

from ..utils.exceptions import DataValidationError

MAX_SEED = 2 ** 64 - 1


class RngHandle:
    """Single-owner random stream with splittable sub-streams."""

    def __init__(self, seed: int, _sequence: Optional[np.random.SeedSequence] = None):
        if not 0 <= int(seed) <= MAX_SEED:
            raise DataValidationError("Seed must be a 64-bit unsigned integer",
                                      field_name="seed", invalid_value=str(seed),
                                      component="RngHandle")
        self.seed = int(seed)
        self._sequence = _sequence if _sequence is not None else np.random.SeedSequence(self.seed)
        self.generator = np.random.Generator(np.random.PCG64(self._sequence))

    @property
    def spawn_key(self) -> Tuple[int, ...]:
        return tuple(self._sequence.spawn_key)

    def split(self, n: int) -> List["RngHandle"]:
        """
        Split ``n`` independent child streams.

        Children depend on how many children were split before, so split
        once per parallel job set.
        """
        if n < 0:
            raise DataValidationError("Cannot split a negative number of streams",
                                      field_name="n", invalid_value=str(n))
        return [RngHandle(self.seed, child) for child in self._sequence.spawn(n)]

    def stream(self, key: str) -> "RngHandle":
        """
        Named child stream, independent of call order.

        ``stream("campaign")`` yields the same draws whether or not other
        streams were taken before it.
        """
        key_id = zlib.crc32(key.encode("utf-8"))
        sequence = np.random.SeedSequence(self.seed, spawn_key=self.spawn_key + (key_id,))
        return RngHandle(self.seed, sequence)

    # Thin delegations keep call sites readable.

    def uniform(self, low, high, size=None):
        return self.generator.uniform(low, high, size)

    def normal(self, loc, scale, size=None):
        return self.generator.normal(loc, scale, size)

    def gamma(self, shape, scale, size=None):
        return self.generator.gamma(shape, scale, size)

    def random(self, size=None):
        return self.generator.random(size)

    def __repr__(self) -> str:
        return f"RngHandle(seed={self.seed}, spawn_key={self.spawn_key})"
