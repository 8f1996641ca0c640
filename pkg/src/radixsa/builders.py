"""Probabilistic builders: sort the length-l prefixes, hope for singletons.

Both start from a stable radix sort of all n packed l-mer fingerprints.
With l at least (alpha+2) log_base n every bucket is singleton with high
probability over random inputs, in which case the fingerprint order *is*
the suffix array.  The first builder finishes stragglers by comparison
sorting inside each non-singleton bucket; the second gives up and hands
the whole text to a full builder instead.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key

import numpy as np

from ._backend import get_backend
from .core import RadixSaConfig, radixsa
from .lmer import LmerConfig, fingerprint_matrix
from .text import SuffixArray, Text, suffix_compare


@dataclass(frozen=True)
class Sa2Outcome:
    sa: SuffixArray
    fell_back: bool
    nonsingleton_buckets: int
    max_bucket_size: int


def _sorted_lmers(t: Text, cfg: LmerConfig, backend=None):
    words = fingerprint_matrix(t, cfg.ell)
    payload = np.arange(t.n, dtype=np.int64)
    backend = get_backend(backend)
    order, bounds, _scans = backend.lsd_sort_matrix(words, payload)
    return np.asarray(order, dtype=np.int64), np.asarray(bounds, dtype=np.int64)


def _bucket_sizes(bounds: np.ndarray, n: int) -> np.ndarray:
    ends = np.append(bounds[1:], n)
    return ends - bounds


def sa1(t: Text, cfg: LmerConfig | None = None,
        backend: str | None = None) -> SuffixArray:
    """Radix sort of l-mers, then comparison sort inside each bucket."""
    cfg = cfg or LmerConfig.derive(t)
    order, bounds = _sorted_lmers(t, cfg, backend)
    sizes = _bucket_sizes(bounds, t.n)
    cmp = cmp_to_key(lambda i, j: suffix_compare(t, int(i), int(j)))
    for b, size in zip(bounds, sizes):
        if size > 1:
            order[b:b + size] = sorted(order[b:b + size], key=cmp)
    return SuffixArray(order=order.astype(np.int32))


def sa2(t: Text, cfg: LmerConfig | None = None,
        fallback=None, backend: str | None = None) -> Sa2Outcome:
    """Singleton test on the l-mer buckets; full rebuild on failure.

    The default fallback is the bucket-refinement builder on the whole
    text.  A custom `fallback(t) -> SuffixArray` may be supplied.
    """
    cfg = cfg or LmerConfig.derive(t)
    order, bounds = _sorted_lmers(t, cfg, backend)
    sizes = _bucket_sizes(bounds, t.n)
    nonsingleton = int((sizes > 1).sum())
    max_size = int(sizes.max()) if len(sizes) else 0
    if nonsingleton == 0:
        return Sa2Outcome(sa=SuffixArray(order=order.astype(np.int32)),
                          fell_back=False, nonsingleton_buckets=0,
                          max_bucket_size=max_size)
    if fallback is None:
        def fallback(text):
            return radixsa(text, RadixSaConfig(backend=backend))[0]
    return Sa2Outcome(sa=fallback(t), fell_back=True,
                      nonsingleton_buckets=nonsingleton,
                      max_bucket_size=max_size)
