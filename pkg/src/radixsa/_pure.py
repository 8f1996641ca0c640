"""Pure-Python backend: the bucket-refinement suffix sorter, readable form.

Same algorithm as the compiled kernels, bucket at a time over explicit
BucketState: an initial stable radix sort to depth d, then descending
position passes that sort each trigger suffix's bucket by successor bucket
numbers, with period handling and an access cap deferring over-touched
buckets to the next pass.
"""
from __future__ import annotations

import numpy as np

from . import engine
from .engine import BucketState, sort_bucket_by_key
from .memtrack import MemoryTracker, NullTracker
from .periods import detect_periods, handle_periods

NAME = "pure"


def _snapshot(state: BucketState, label) -> dict:
    return {
        "label": label,
        "sa": [int(x) for x in state.sa],
        "buckets": state.buckets(),
    }


def initial_state(codes: np.ndarray, bits: int, depth: int,
                  tracker: MemoryTracker, instrument: bool,
                  small_threshold: int) -> BucketState:
    """Stable radix sort of all suffixes by their first `depth` symbols."""
    n = len(codes)
    state = BucketState(n, tracker=tracker, instrument=instrument,
                        small_bucket_threshold=small_threshold)
    padded = np.zeros(n + depth, dtype=np.uint64)
    padded[:n] = codes.astype(np.uint64)
    key_arr = np.zeros(n, dtype=np.uint64)
    for s in range(depth):
        key_arr = (key_arr << np.uint64(bits)) | padded[s:s + n]
    keys = [int(k) for k in key_arr]
    order = engine._lsd_order(keys, state)
    for rank, idx in enumerate(order):
        state.sa[rank] = idx
    rank = 0
    while rank < n:
        end = rank + 1
        while end < n and keys[order[end]] == keys[order[rank]]:
            end += 1
        state.assign_bucket(rank, end - rank, depth=depth)
        if end - rank > 1:
            state.nonsingleton += 1
        rank = end
    return state


def run(codes: np.ndarray, bits: int, initial_depth: int, access_cap,
        periods_enabled: bool, small_threshold: int,
        tracker: MemoryTracker | None = None, instrument: bool = False,
        trace: list | None = None, max_passes: int | None = None,
        check_induction: bool = False):
    """Full construction; returns (sa array, stats dict)."""
    tracker = tracker or NullTracker()
    n = len(codes)
    state = initial_state(codes, bits, initial_depth, tracker,
                          instrument, small_threshold)
    if trace is not None:
        trace.append(_snapshot(state, "initial"))

    initial_nonsingleton = state.nonsingleton
    pass_parts: list[int] = []
    passes = 0
    while state.nonsingleton > 0:
        if max_passes is not None and passes >= max_passes:
            raise RuntimeError(
                f"pass bound {max_passes} exceeded with "
                f"{state.nonsingleton} buckets unresolved: refinement "
                "depth stopped growing, which indicates a bug")
        passes += 1
        state.access[:] = 0
        state.pass_participations = 0
        skipped = False
        for i in range(n - 1, -1, -1):
            s = state.bucket_of(i)
            size = state.bucket_size(s)
            if size == 1:
                continue
            if access_cap is not None and any(
                    int(state.access[j]) > access_cap
                    for j in state.sa[s:s + size]):
                skipped = True
                continue
            _resolve(state, s, periods_enabled, trace, trigger=i)
            if check_induction and state.bucket_size(state.bucket_of(i)) != 1:
                raise AssertionError(
                    f"suffix {i} not singleton after its step")
        pass_parts.append(state.pass_participations)
        if not skipped:
            break
    assert state.nonsingleton == 0

    tracker.charge_mapping(state.depths, state.ovf_len)
    stats = {
        "backend": NAME,
        "n": n,
        "passes": passes,
        "pass_participations": pass_parts,
        "total_participations": state.total_participations,
        "initial_nonsingleton": initial_nonsingleton,
        "histogram_scans": state.histogram_scans,
        "access": (np.asarray(state.cum_access).copy()
                   if instrument else None),
    }
    return state.sa, stats


def _resolve(state: BucketState, start: int, periods_enabled: bool,
             trace, trigger: int) -> None:
    if periods_enabled:
        chains = detect_periods(state, start)
        if chains and handle_periods(state, chains) is not None:
            if trace is not None:
                trace.append(_snapshot(state, ("periods", trigger)))
            return
    sort_bucket_by_key(state, start)
    if trace is not None:
        trace.append(_snapshot(state, ("sort", trigger)))


def lsd_sort_matrix(words: np.ndarray, payload: np.ndarray):
    """Stable LSD sort of (n, W) uint64 rows; returns (order, boundaries,
    scan count).  boundaries[k] marks starts of equal-key groups."""
    n = len(payload)
    if n == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), 0
    width = words.shape[1]
    keys = []
    for i in range(n):
        v = 0
        for w in range(width):
            v = (v << 64) | int(words[i, w])
        keys.append(v)
    order = engine._lsd_order(keys)
    bounds = [0]
    for r in range(1, n):
        if keys[order[r]] != keys[order[r - 1]]:
            bounds.append(r)
    sorted_payload = np.asarray([payload[idx] for idx in order],
                                dtype=np.int64)
    return sorted_payload, np.asarray(bounds, dtype=np.int64), 1
