"""Bucket bookkeeping and cache-style LSD radix sorting, pure-Python side.

Suffix ordering state is a permutation `sa` plus one packed machine word
per suffix: the low ceil(log2 n) bits hold the start position of the
suffix's bucket, the remaining high bits hold the bucket length when it
fits, otherwise an all-ones overflow marker.  True lengths of overflowed
buckets and per-bucket sorting depths live in side mappings keyed by
bucket start.

All sorts here are stable, and every sort invocation performs exactly one
counting scan over its keys: histograms for all digit rounds are computed
in that single scan before any placement pass (`histogram_scans` counts
them, which the stability/scan property tests rely on).
"""
from __future__ import annotations

import numpy as np

from .memtrack import MemoryTracker, NullTracker

DIGIT_BITS = 16
RADIX = 1 << DIGIT_BITS
SMALL_BUCKET_THRESHOLD = 32


class BucketState:
    """Evolving partition of suffixes into lexicographic buckets."""

    __slots__ = ("n", "sa", "entries", "start_bits", "len_field_max",
                 "depths", "ovf_len", "access", "cum_access",
                 "nonsingleton", "histogram_scans", "total_participations",
                 "pass_participations", "small_bucket_threshold")

    def __init__(self, n: int, tracker: MemoryTracker | None = None,
                 instrument: bool = False,
                 small_bucket_threshold: int = SMALL_BUCKET_THRESHOLD):
        if n >= 2 ** 31:
            raise ValueError("texts of 2**31 symbols or more are unsupported")
        tracker = tracker or NullTracker()
        self.n = n
        self.start_bits = max(1, (n - 1).bit_length()) if n > 1 else 1
        self.len_field_max = (1 << (32 - self.start_bits)) - 1
        self.sa = np.zeros(n, dtype=np.int32)          # output, not auxiliary
        self.entries = tracker.array(n, np.uint32)
        self.access = tracker.array(n, np.uint8)
        self.cum_access = tracker.array(n, np.int64) if instrument else None
        self.depths: dict[int, int] = {}
        self.ovf_len: dict[int, int] = {}
        self.nonsingleton = 0
        self.histogram_scans = 0
        self.total_participations = 0
        self.pass_participations = 0
        self.small_bucket_threshold = small_bucket_threshold

    # -- packed entry helpers -------------------------------------------

    def _pack(self, start: int, length: int) -> int:
        field = length if length < self.len_field_max else self.len_field_max
        return start | (field << self.start_bits)

    def bucket_of(self, suffix: int) -> int:
        return int(self.entries[suffix]) & ((1 << self.start_bits) - 1)

    def bucket_size(self, start: int) -> int:
        field = int(self.entries[self.sa[start]]) >> self.start_bits
        if field == self.len_field_max:
            return self.ovf_len[start]
        return field

    def bucket_depth(self, start: int) -> int:
        return self.depths[start]

    def members(self, start: int) -> list[int]:
        size = self.bucket_size(start)
        return [int(x) for x in self.sa[start:start + size]]

    def assign_bucket(self, start: int, length: int,
                      depth: int | None = None) -> None:
        """(Re)label sa[start:start+length] as one bucket."""
        packed = self._pack(start, length)
        for t in range(length):
            self.entries[self.sa[start + t]] = packed
        if length >= self.len_field_max:
            self.ovf_len[start] = length
        else:
            self.ovf_len.pop(start, None)
        if length > 1:
            if depth is not None:
                self.depths[start] = depth
        else:
            self.depths.pop(start, None)

    def count_access(self, members, amount: int = 1) -> None:
        for j in members:
            a = int(self.access[j]) + amount
            self.access[j] = min(a, 255)
            if self.cum_access is not None:
                self.cum_access[j] += amount
        self.total_participations += len(members)
        self.pass_participations += len(members)

    def buckets(self) -> list[tuple[int, int, int | None]]:
        """All (start, size, depth) triples in bucket order."""
        out = []
        s = 0
        while s < self.n:
            size = self.bucket_size(s)
            out.append((s, size, self.depths.get(s)))
            s += size
        return out


def bucket_number(state: BucketState, suffix: int) -> int:
    """Bucket start position; orders consistently with the current sort."""
    return state.bucket_of(suffix)


# -- LSD radix sorting ------------------------------------------------------


def _lsd_order(keys: list[int], state: BucketState | None = None) -> list[int]:
    """Stable LSD order of int keys, 16-bit digits, one counting scan."""
    m = len(keys)
    maxk = max(keys)
    rounds = max(1, -(-maxk.bit_length() // DIGIT_BITS))
    hists = [[0] * RADIX for _ in range(rounds)]
    for k in keys:                        # the single counting scan
        for r in range(rounds):
            hists[r][(k >> (DIGIT_BITS * r)) & (RADIX - 1)] += 1
    if state is not None:
        state.histogram_scans += 1
    order = list(range(m))
    for r in range(rounds):
        hist = hists[r]
        if hist[(keys[order[0]] >> (DIGIT_BITS * r)) & (RADIX - 1)] == m:
            continue                      # all keys share this digit
        offs = [0] * RADIX
        acc = 0
        for d in range(RADIX):
            offs[d] = acc
            acc += hist[d]
        out = [0] * m
        shift = DIGIT_BITS * r
        for idx in order:
            d = (keys[idx] >> shift) & (RADIX - 1)
            out[offs[d]] = idx
            offs[d] += 1
        order = out
    return order


def _merge_order(keys: list[int]) -> list[int]:
    """Stable order of a small key list (merge-family sort)."""
    return sorted(range(len(keys)), key=keys.__getitem__)


def stable_key_order(keys: list[int], state: BucketState | None = None,
                     small_threshold: int = SMALL_BUCKET_THRESHOLD) -> list[int]:
    if len(keys) < small_threshold:
        return _merge_order(keys)
    return _lsd_order(keys, state)


def lsd_sort_fingerprints(words: np.ndarray, payload, depth: int,
                          tracker: MemoryTracker | None = None,
                          instrument: bool = False) -> BucketState:
    """Stable LSD sort of multi-word fingerprints; groups equal keys.

    `words` is an (n, W) uint64 matrix, msb-first rows; `payload` the suffix
    positions.  The returned state has every bucket at sorting depth `depth`.
    """
    n = len(payload)
    state = BucketState(n, tracker=tracker, instrument=instrument)
    if n == 0:
        return state
    width = words.shape[1]
    keys = [0] * n
    for i in range(n):
        v = 0
        for w in range(width):
            v = (v << 64) | int(words[i, w])
        keys[i] = v
    order = _lsd_order(keys, state)
    for rank, idx in enumerate(order):
        state.sa[rank] = payload[idx]
    # split equal keys into buckets
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


def sort_bucket_by_key(state: BucketState, start: int, key_of=None,
                       run_depth=None) -> list[tuple[int, int]]:
    """Stable radix sort of one bucket's members; splits equal-key runs.

    Defaults implement successor-bucket refinement: key(j) is the bucket
    number of suffix j+d (0 when j+d reaches the end of the text, which
    ranks first), and a run of size > 1 gets depth d + depth(key bucket).
    Returns the list of (new_start, length) sub-buckets.
    """
    size = state.bucket_size(start)
    if size < 2:
        raise ValueError("bucket must be non-singleton")
    dd = state.depths[start]
    members = state.members(start)
    n = state.n

    if key_of is None:
        def key_of(j):
            nxt = j + dd
            return 0 if nxt >= n else state.bucket_of(nxt) + 1

        if run_depth is None:
            def run_depth(key):
                return dd + state.depths[key - 1]

    keys = [key_of(j) for j in members]
    state.count_access(members)
    order = stable_key_order(keys, state, state.small_bucket_threshold)

    # resolve new depths before any mutation: run_depth may read depth
    # entries that the split below overwrites
    runs: list[tuple[int, int, int | None]] = []   # (offset, length, depth)
    a = 0
    while a < size:
        b = a + 1
        while b < size and keys[order[b]] == keys[order[a]]:
            b += 1
        new_depth = None
        if b - a > 1 and run_depth is not None:
            new_depth = run_depth(keys[order[a]])
        runs.append((a, b - a, new_depth))
        a = b

    state.sa[start:start + size] = [members[idx] for idx in order]
    state.depths.pop(start, None)
    state.ovf_len.pop(start, None)
    state.nonsingleton -= 1
    out = []
    for off, length, new_depth in runs:
        state.assign_bucket(start + off, length, depth=new_depth)
        if length > 1:
            state.nonsingleton += 1
        out.append((start + off, length))
    return out
