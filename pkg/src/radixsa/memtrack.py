"""Byte-level accounting of builder-internal scratch allocations.

Tracks only memory requested through it, which is exactly the auxiliary
memory of a build: input text and output suffix array are excluded.  Dict
side tables are charged via a size estimate sampled when they are handed
back, since their bucket-granular contents are tiny next to the arrays.
"""
from __future__ import annotations

import sys

import numpy as np


class MemoryTracker:
    def __init__(self):
        self.current = 0
        self.peak = 0

    def _charge(self, nbytes: int) -> None:
        self.current += nbytes
        if self.current > self.peak:
            self.peak = self.current

    def array(self, shape, dtype) -> np.ndarray:
        arr = np.zeros(shape, dtype=dtype)
        self._charge(arr.nbytes)
        return arr

    def release(self, arr: np.ndarray) -> None:
        self.current -= arr.nbytes

    def charge_mapping(self, *mappings) -> None:
        for m in mappings:
            # dict overhead plus boxed int keys/values
            self._charge(sys.getsizeof(m) + 56 * len(m))


class NullTracker(MemoryTracker):
    """Zero-overhead stand-in when the budget is not being measured."""

    def array(self, shape, dtype) -> np.ndarray:  # noqa: D102
        return np.zeros(shape, dtype=dtype)

    def _charge(self, nbytes: int) -> None:
        pass

    def release(self, arr) -> None:
        pass

    def charge_mapping(self, *mappings) -> None:
        pass
