"""The bucket-refinement suffix array builder: configuration and driver.

The algorithm: radix sort all suffixes by their first d symbols, then walk
suffix positions from last to first; whenever the current suffix's bucket
is non-singleton, either expand a detected periodic chain or stably radix
sort the bucket's members by the bucket numbers of their successors at the
bucket's sorting depth.  A per-pass access cap defers buckets whose
members were already touched too often, bounding each pass to linear work;
deferred buckets are picked up by further passes, of which at most a
logarithmic number are ever needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import get_backend
from .engine import SMALL_BUCKET_THRESHOLD
from .memtrack import MemoryTracker, NullTracker
from .text import SuffixArray, Text

DEFAULT_ACCESS_CAP = 8
MAX_KEY_BITS = 64


@dataclass(frozen=True)
class RadixSaConfig:
    initial_depth: int | None = None     # None: as many symbols as fit a word
    access_cap: int | None = DEFAULT_ACCESS_CAP   # None disables the cap
    small_bucket_threshold: int = SMALL_BUCKET_THRESHOLD
    periods: bool = True
    backend: str | None = None           # None/auto, "cython", "pure"

    def __post_init__(self):
        if self.initial_depth is not None and self.initial_depth < 1:
            raise ValueError("initial depth must be >= 1")
        if self.access_cap is not None and self.access_cap < 1:
            raise ValueError("access cap must be >= 1")


@dataclass
class BuildStats:
    n: int
    backend: str
    passes: int
    pass_participations: list[int] = field(default_factory=list)
    total_participations: int = 0
    initial_nonsingleton: int = 0
    histogram_scans: int = 0
    access: np.ndarray | None = None     # per-suffix counts when instrumented
    aux_peak_bytes: int | None = None

    @property
    def mean_access(self) -> float:
        if self.n == 0:
            return 0.0
        if self.access is not None:
            return float(np.mean(self.access))
        return self.total_participations / self.n


def pass_bound(n: int, access_cap: int | None) -> int:
    """Admissible pass count: ceil(log_{C+1} n) + 1 (1 with the cap off)."""
    if n <= 1:
        return 1
    if access_cap is None:
        return 1
    base = access_cap + 1
    k = 0
    v = 1
    while v < n:
        v *= base
        k += 1
    return k + 1


def effective_initial_depth(t: Text, cfg: RadixSaConfig) -> int:
    d = cfg.initial_depth
    if d is None:
        d = max(1, MAX_KEY_BITS // t.bits_per_symbol)
    if d * t.bits_per_symbol > MAX_KEY_BITS:
        raise ValueError(
            f"initial depth {d} at {t.bits_per_symbol} bits/symbol exceeds "
            f"one {MAX_KEY_BITS}-bit sort key")
    return min(d, t.n)


def radixsa(t: Text, cfg: RadixSaConfig | None = None,
            instrument: bool = False, trace: list | None = None,
            tracker: MemoryTracker | None = None,
            check_induction: bool = False,
            enforce_pass_bound: bool = True) -> tuple[SuffixArray, BuildStats]:
    """Build the suffix array of `t`; also returns run statistics."""
    cfg = cfg or RadixSaConfig()
    if t.bits_per_symbol > 16:
        raise ValueError("alphabets beyond 2**16 symbols are unsupported")
    tracker = tracker or NullTracker()
    backend = get_backend(cfg.backend)
    depth = effective_initial_depth(t, cfg)
    max_passes = pass_bound(t.n, cfg.access_cap) if enforce_pass_bound else None
    sa, raw = backend.run(
        t.data, t.bits_per_symbol, depth, cfg.access_cap, cfg.periods,
        cfg.small_bucket_threshold, tracker=tracker, instrument=instrument,
        trace=trace, max_passes=max_passes, check_induction=check_induction)
    stats = BuildStats(
        n=t.n, backend=raw["backend"], passes=raw["passes"],
        pass_participations=raw["pass_participations"],
        total_participations=raw["total_participations"],
        initial_nonsingleton=raw["initial_nonsingleton"],
        histogram_scans=raw["histogram_scans"],
        access=raw["access"],
        aux_peak_bytes=(tracker.peak if not isinstance(tracker, NullTracker)
                        else None))
    return SuffixArray(order=np.asarray(sa, dtype=np.int32).copy()), stats
