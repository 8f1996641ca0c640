"""Detection and induced ordering of periodic runs inside one bucket.

If positions i, i-p, i-2p, ... sit in one bucket sorted by d >= p symbols,
the text repeats with period p there, and one comparison of the chain's
anchor against its successor induces the order of the whole chain: anchor
less than successor propagates down the chain, and symmetrically.
"""
from __future__ import annotations

from dataclasses import dataclass

from .engine import BucketState


@dataclass(frozen=True)
class PeriodChain:
    period_p: int
    members: tuple[int, ...]   # anchor, anchor-p, anchor-2p, ...
    anchor: int


def detect_periods(state: BucketState, start: int) -> list[PeriodChain]:
    """All maximal chains of the bucket under its smallest feasible period.

    Feasible means period <= the bucket's sorting depth.  Returns [] when
    no two members sit at a feasible offset.  When a period is found, the
    chain partition covers every member (isolated members become chains of
    length one).
    """
    size = state.bucket_size(start)
    if size < 2:
        raise ValueError("bucket must be non-singleton")
    dd = state.depths[start]
    pos = sorted(state.members(start))
    gaps = [b - a for a, b in zip(pos, pos[1:])]
    feasible = [g for g in gaps if g <= dd]
    if not feasible:
        return []
    p = min(feasible)
    n = state.n
    chains = []
    for j in pos:
        nxt = j + p
        # members are at least dd >= p symbols long, so nxt <= n
        if nxt < n and state.bucket_of(nxt) == start:
            continue                       # interior link, not an anchor
        members = [j]
        back = j - p
        while back >= 0 and state.bucket_of(back) == start:
            members.append(back)
            back -= p
        chains.append(PeriodChain(period_p=p, members=tuple(members),
                                  anchor=j))
    assert sum(len(c.members) for c in chains) == size
    return chains


def handle_periods(state: BucketState, chains: list[PeriodChain]):
    """Expand detected chains into fully induced singleton order.

    The anchors' successor buckets decide everything: a chain whose anchor
    successor ranks below the bucket is ascending (anchor first), otherwise
    descending.  Ascending chain members sort by (steps-from-anchor, anchor
    key), descending ones by the reverse step order; the two groups
    concatenate, ascending first.  If two anchors share a successor bucket
    the composition is ambiguous this round and None is returned so the
    caller falls back to the generic key sort.

    Returns the list of new singleton starts on success.
    """
    if not chains:
        return None
    p = chains[0].period_p
    start = state.bucket_of(chains[0].anchor)
    size = state.bucket_size(start)
    n = state.n

    keyed = []
    for c in chains:
        nxt = c.anchor + p
        key = 0 if nxt >= n else state.bucket_of(nxt) + 1
        keyed.append((key, c))
    if len({k for k, _ in keyed}) != len(keyed):
        return None                        # tied anchors: defer to sort path

    self_key = start + 1
    asc = sorted((kc for kc in keyed if kc[0] < self_key))
    desc = sorted((kc for kc in keyed if kc[0] > self_key))

    order: list[int] = []
    if asc:
        for level in range(max(len(c.members) for _, c in asc)):
            for _, c in asc:
                if level < len(c.members):
                    order.append(c.members[level])
    if desc:
        for level in range(max(len(c.members) for _, c in desc) - 1, -1, -1):
            for _, c in desc:
                if level < len(c.members):
                    order.append(c.members[level])
    assert len(order) == size

    state.count_access(order)
    state.sa[start:start + size] = order
    state.depths.pop(start, None)
    state.ovf_len.pop(start, None)
    state.nonsingleton -= 1
    for t in range(size):
        state.assign_bucket(start + t, 1)
    return [start + t for t in range(size)]
