"""Independent correctness tools: brute-force oracle and linear checker.

The oracle shares nothing with the builders: it materializes every suffix
and comparison-sorts them.  The checker accepts an arbitrary candidate
array in O(n) via the rank-successor argument, so full-size benchmark
outputs can be validated without re-sorting.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key

import numpy as np

from .text import SuffixArray, Text, suffix_compare

ORACLE_LIMIT = 10 ** 6


class OracleLimitError(ValueError):
    """Input too large for the quadratic-memory brute-force oracle."""


def oracle_sa(t: Text, limit: int = ORACLE_LIMIT) -> SuffixArray:
    """Suffix array by plain comparison sort of materialized suffixes."""
    if t.n > limit:
        raise OracleLimitError(
            f"oracle limit is {limit} symbols, got {t.n}")
    raw = t.raw_bytes
    if raw is not None:
        order = sorted(range(t.n), key=lambda i: raw[i:])
    else:
        order = sorted(range(t.n),
                       key=cmp_to_key(lambda i, j: suffix_compare(t, i, j)))
    return SuffixArray(order=np.asarray(order, dtype=np.int32))


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    kind: str | None = None       # permutation | first_symbol | rank_successor
    index: int | None = None      # earliest violating rank in the candidate

    def __bool__(self) -> bool:
        return self.ok


def check_sa(t: Text, sa: SuffixArray) -> CheckResult:
    """Accepts iff `sa` is the true suffix array of `t`, in linear time.

    Permutation check, non-decreasing first symbols, and for adjacent
    entries sharing a first symbol the successors' ranks must increase
    (an exhausted suffix compares smaller than any continuation).
    """
    order = np.asarray(sa.order, dtype=np.int64)
    n = t.n
    if len(order) != n:
        return CheckResult(False, "permutation", 0)
    seen = np.zeros(n, dtype=bool)
    inside = (order >= 0) & (order < n)
    if not inside.all():
        return CheckResult(False, "permutation", int(np.argmin(inside)))
    seen[order] = True
    if not seen.all():
        dup = np.zeros(n, dtype=np.int64)
        np.add.at(dup, order, 1)
        bad = np.nonzero(dup[order] > 1)[0]
        return CheckResult(False, "permutation", int(bad[0]))
    if n == 1:
        return CheckResult(True)

    first = t.data[order]
    drop = np.nonzero(np.diff(first) < 0)[0]
    if drop.size:
        return CheckResult(False, "first_symbol", int(drop[0]))

    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    k = np.arange(n - 1)
    same = first[:-1] == first[1:]
    a = order[:-1] + 1
    b = order[1:] + 1
    # virtual rank of the empty suffix: below every real one
    ra = np.where(a < n, rank[np.minimum(a, n - 1)] + 1, 0)
    rb = np.where(b < n, rank[np.minimum(b, n - 1)] + 1, 0)
    bad = np.nonzero(same & (ra >= rb))[0]
    if bad.size:
        return CheckResult(False, "rank_successor", int(bad[0]))
    return CheckResult(True)
