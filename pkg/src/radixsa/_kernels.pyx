# cython: boundscheck=False, wraparound=False, nonecheck=False, cdivision=True
# cython: language_level=3
"""Compiled kernels: bucket-refinement suffix sorting and LSD radix sorts.

Semantics are identical to the pure-Python backend in `_pure` (same bucket
partitions, same pass structure, same statistics apart from histogram scan
granularity); only the inner loops differ.
"""
import numpy as np

cimport numpy as cnp
from libc.string cimport memcpy, memset

cnp.import_array()

from .memtrack import NullTracker

NAME = "cython"

cdef enum:
    RADIX = 65536
    MAX_ROUNDS = 4


cdef class _Ctx:
    cdef cnp.int32_t[::1] sa
    cdef cnp.uint32_t[::1] entries
    cdef cnp.uint8_t[::1] access
    cdef cnp.int64_t[::1] cum
    cdef bint has_cum
    cdef const cnp.int32_t[::1] codes
    cdef long n
    cdef int bits
    cdef int start_bits
    cdef unsigned int start_mask
    cdef unsigned int len_field_max
    cdef dict depths
    cdef dict ovf
    cdef long nonsingleton
    cdef long total_parts
    cdef long pass_parts
    cdef long hist_scans
    cdef long small_threshold
    cdef cnp.uint64_t[::1] kA
    cdef cnp.uint64_t[::1] kB
    cdef cnp.int32_t[::1] pA
    cdef cnp.int32_t[::1] pB
    cdef cnp.uint32_t[::1] hist
    cdef cnp.uint32_t[::1] offs


cdef inline long _bstart(_Ctx c, long j):
    return <long>(c.entries[j] & c.start_mask)


cdef long _bsize(_Ctx c, long s):
    cdef unsigned int field = c.entries[c.sa[s]] >> c.start_bits
    if field == c.len_field_max:
        return <long>c.ovf[s]
    return <long>field


cdef void _assign(_Ctx c, long s, long length):
    cdef unsigned int field = (<unsigned int>length
                               if length < c.len_field_max
                               else c.len_field_max)
    cdef unsigned int packed = (<unsigned int>s) | (field << c.start_bits)
    cdef long t
    for t in range(length):
        c.entries[c.sa[s + t]] = packed
    if length >= c.len_field_max:
        c.ovf[s] = length
    else:
        c.ovf.pop(s, None)
    if length == 1:
        c.depths.pop(s, None)


cdef dict _snapshot(_Ctx c, label):
    cdef long t, s, size
    sa_list = [<int>c.sa[t] for t in range(c.n)]
    buckets = []
    s = 0
    while s < c.n:
        size = _bsize(c, s)
        buckets.append((<int>s, <int>size, c.depths.get(s)))
        s += size
    return {"label": label, "sa": sa_list, "buckets": buckets}


cdef void _lsd_run(_Ctx c, long m, int rounds, bint count_scan):
    """Stable LSD sort of (kA, pA)[:m] by kA; single counting scan."""
    cdef long t
    cdef int r, d
    cdef unsigned long long k
    cdef unsigned int acc, cnt, d0
    cdef cnp.uint64_t *ka = &c.kA[0]
    cdef cnp.uint64_t *kb = &c.kB[0]
    cdef cnp.int32_t *pa = &c.pA[0]
    cdef cnp.int32_t *pb = &c.pB[0]
    cdef cnp.uint64_t *tk
    cdef cnp.int32_t *tp
    cdef cnp.uint32_t *hist = &c.hist[0]
    cdef cnp.uint32_t *offs = &c.offs[0]
    cdef bint in_a = True
    cdef long pos

    memset(hist, 0, rounds * RADIX * sizeof(cnp.uint32_t))
    for t in range(m):                       # the single counting scan
        k = ka[t]
        for r in range(rounds):
            hist[r * RADIX + ((k >> (16 * r)) & 0xFFFF)] += 1
    if count_scan:
        c.hist_scans += 1

    for r in range(rounds):
        d0 = <unsigned int>((ka[0] >> (16 * r)) & 0xFFFF)
        if hist[r * RADIX + d0] == <unsigned int>m:
            continue                         # all keys share this digit
        acc = 0
        for d in range(RADIX):
            offs[d] = acc
            acc += hist[r * RADIX + d]
        for t in range(m):
            d0 = <unsigned int>((ka[t] >> (16 * r)) & 0xFFFF)
            pos = offs[d0]
            offs[d0] += 1
            kb[pos] = ka[t]
            pb[pos] = pa[t]
        tk = ka; ka = kb; kb = tk
        tp = pa; pa = pb; pb = tp
        in_a = not in_a
    if not in_a:
        memcpy(&c.kA[0], ka, m * sizeof(cnp.uint64_t))
        memcpy(&c.pA[0], pa, m * sizeof(cnp.int32_t))


cdef void _merge_small(_Ctx c, long m):
    """Stable bottom-up merge sort of (kA, pA)[:m] by kA."""
    cdef cnp.uint64_t *ka = &c.kA[0]
    cdef cnp.uint64_t *kb = &c.kB[0]
    cdef cnp.int32_t *pa = &c.pA[0]
    cdef cnp.int32_t *pb = &c.pB[0]
    cdef cnp.uint64_t *tk
    cdef cnp.int32_t *tp
    cdef long width = 1, lo, mid, hi, i, j, o
    cdef bint in_a = True
    while width < m:
        lo = 0
        while lo < m:
            mid = lo + width
            if mid > m:
                mid = m
            hi = lo + 2 * width
            if hi > m:
                hi = m
            i = lo; j = mid; o = lo
            while i < mid and j < hi:
                if ka[i] <= ka[j]:
                    kb[o] = ka[i]; pb[o] = pa[i]; i += 1
                else:
                    kb[o] = ka[j]; pb[o] = pa[j]; j += 1
                o += 1
            while i < mid:
                kb[o] = ka[i]; pb[o] = pa[i]; i += 1; o += 1
            while j < hi:
                kb[o] = ka[j]; pb[o] = pa[j]; j += 1; o += 1
            lo = hi
        tk = ka; ka = kb; kb = tk
        tp = pa; pa = pb; pb = tp
        in_a = not in_a
        width *= 2
    if not in_a:
        memcpy(&c.kA[0], ka, m * sizeof(cnp.uint64_t))
        memcpy(&c.pA[0], pa, m * sizeof(cnp.int32_t))


cdef void _count_access(_Ctx c, long s, long m):
    cdef long t, j
    cdef int a
    for t in range(m):
        j = c.sa[s + t]
        a = c.access[j] + 1
        c.access[j] = a if a < 255 else 255
        if c.has_cum:
            c.cum[j] += 1
    c.total_parts += m
    c.pass_parts += m


cdef void _split_runs(_Ctx c, long s, long m, long dd) except *:
    """Write sorted payload back and split equal-key runs into sub-buckets."""
    cdef long t, a, b, nd
    cdef unsigned long long key
    for t in range(m):
        c.sa[s + t] = c.pA[t]
    # resolve new depths before mutating the depth table
    runs = []
    a = 0
    while a < m:
        b = a + 1
        while b < m and c.kA[b] == c.kA[a]:
            b += 1
        if b - a > 1:
            key = c.kA[a]            # key 0 is unique, so key >= 1 here
            nd = dd + <long>c.depths[<long>(key - 1)]
            runs.append((a, b - a, nd))
        else:
            runs.append((a, <long>1, <long>0))
        a = b
    c.depths.pop(s, None)
    c.ovf.pop(s, None)
    c.nonsingleton -= 1
    for off, ln, nd in runs:
        _assign(c, s + off, ln)
        if ln > 1:
            c.depths[s + off] = nd
            c.nonsingleton += 1


cdef void _sort_generic(_Ctx c, long s, long m, long dd, int key_rounds) except *:
    cdef long t, j, nxt
    for t in range(m):
        j = c.sa[s + t]
        nxt = j + dd
        if nxt >= c.n:
            c.kA[t] = 0
        else:
            c.kA[t] = <unsigned long long>((c.entries[nxt] & c.start_mask) + 1)
        c.pA[t] = <cnp.int32_t>j
    if m < c.small_threshold:
        _merge_small(c, m)
    else:
        _lsd_run(c, m, key_rounds, True)
    _split_runs(c, s, m, dd)


cdef int _try_periods(_Ctx c, long s, long m, long dd) except -1:
    """Expand periodic chains; 1 on success, 0 to fall through to the sort.

    Chains whose anchor successor ranks below the bucket are ascending
    (anchor first, then anchor-p, ...), the rest descending; the induced
    order is the ascending group by (level, anchor key), then the
    descending group by (level desc, anchor key).  Realized by one radix
    sort on a packed (group, level, anchor key) word per member; tied
    anchor keys show up as equal packed words, and the bucket is deferred
    to the generic sort in that case.
    """
    cdef long t, j, g, p, nxt, lev, key, idx, self_key
    cdef int pos_rounds
    cdef unsigned long long comp
    # members in ascending position order, to find the smallest gap
    for t in range(m):
        c.kA[t] = <unsigned long long>c.sa[s + t]
        c.pA[t] = c.sa[s + t]
    if m < c.small_threshold:
        _merge_small(c, m)
    else:
        pos_rounds = max(1, ((c.n - 1).bit_length() + 15) // 16)
        _lsd_run(c, m, pos_rounds, False)

    p = -1
    for t in range(1, m):
        g = <long>c.kA[t] - <long>c.kA[t - 1]
        if g <= dd and (p < 0 or g < p):
            p = g
    if p < 0:
        return 0

    self_key = s + 1
    idx = 0
    for t in range(m):
        j = c.sa[s + t]
        nxt = j + p
        if nxt < c.n and _bstart(c, nxt) == s:
            continue                     # interior chain link, not an anchor
        key = 0 if nxt >= c.n else _bstart(c, nxt) + 1
        lev = 0
        while True:
            if key < self_key:           # ascending: levels count up
                comp = ((<unsigned long long>lev) << 31) | \
                       (<unsigned long long>key)
            else:                        # descending: levels count down
                comp = ((<unsigned long long>1) << 62) | \
                       ((<unsigned long long>(0x7FFFFFFF - lev)) << 31) | \
                       (<unsigned long long>key)
            c.kA[idx] = comp
            c.pA[idx] = <cnp.int32_t>j
            idx += 1
            j -= p
            if j < 0 or _bstart(c, j) != s:
                break
            lev += 1
    if idx != m:
        raise AssertionError("period chains do not cover the bucket")

    if m < c.small_threshold:
        _merge_small(c, m)
    else:
        _lsd_run(c, m, 4, False)
    for t in range(1, m):
        if c.kA[t] == c.kA[t - 1]:
            return 0                     # tied anchors: defer to generic sort

    _count_access(c, s, m)
    for t in range(m):
        c.sa[s + t] = c.pA[t]
    c.depths.pop(s, None)
    c.ovf.pop(s, None)
    c.nonsingleton -= 1
    for t in range(m):
        _assign(c, s + t, 1)
    return 1


cdef void _initial_sort(_Ctx c, long depth, object tracker) except *:
    cdef long n = c.n
    cdef int bits = c.bits
    cdef long k1 = 16 // bits
    if k1 > depth:
        k1 = depth
    cdef long radix1 = (<long>1) << (k1 * bits)
    cdef unsigned long long mask1 = radix1 - 1
    # pass-1 counts live in their own buffer: c.hist is clobbered by the
    # per-bucket refinement sorts below
    h1_arr = tracker.array(radix1, np.uint32)
    cdef cnp.uint32_t[::1] h1v = h1_arr
    cdef cnp.uint32_t *hist = &h1v[0]
    cdef cnp.uint32_t *offs = &c.offs[0]
    cdef long i, t, q, x, pos, start, cnt, maxbucket, rem, a, b
    cdef unsigned long long key
    cdef int rounds

    key = 0
    for i in range(n - 1, -1, -1):
        key = (key >> bits) | ((<unsigned long long>c.codes[i]) << ((k1 - 1) * bits))
        hist[key] += 1
    c.hist_scans += 1

    maxbucket = 0
    cdef unsigned int acc = 0
    for i in range(radix1):
        offs[i] = acc
        acc += hist[i]
        if hist[i] > <unsigned int>maxbucket:
            maxbucket = hist[i]

    ka = tracker.array(max(1, maxbucket), np.uint64)
    kb = tracker.array(max(1, maxbucket), np.uint64)
    pa = tracker.array(max(1, maxbucket), np.int32)
    pb = tracker.array(max(1, maxbucket), np.int32)
    c.kA = ka; c.kB = kb; c.pA = pa; c.pB = pb

    key = 0
    for t in range(k1):
        key = (key << bits) | (<unsigned long long>c.codes[t] if t < n else 0)
    for i in range(n):
        pos = offs[key]
        offs[key] += 1
        c.sa[pos] = <cnp.int32_t>i
        x = i + k1
        key = ((key << bits) & mask1) | \
              (<unsigned long long>c.codes[x] if x < n else 0)

    rem = depth - k1
    rounds = <int>((rem * bits + 15) // 16) if rem > 0 else 1
    start = 0
    for i in range(radix1):
        cnt = hist[i]
        if cnt == 0:
            continue
        if cnt == 1:
            _assign(c, start, 1)
            start += 1
            continue
        if rem == 0:
            _assign(c, start, cnt)
            c.depths[start] = depth
            c.nonsingleton += 1
            start += cnt
            continue
        for t in range(cnt):
            pos = c.sa[start + t]
            key = 0
            for q in range(rem):
                x = pos + k1 + q
                key = (key << bits) | \
                      (<unsigned long long>c.codes[x] if x < n else 0)
            c.kA[t] = key
            c.pA[t] = <cnp.int32_t>pos
        if cnt < c.small_threshold:
            _merge_small(c, cnt)
        else:
            _lsd_run(c, cnt, rounds, True)
        for t in range(cnt):
            c.sa[start + t] = c.pA[t]
        a = 0
        while a < cnt:
            b = a + 1
            while b < cnt and c.kA[b] == c.kA[a]:
                b += 1
            _assign(c, start + a, b - a)
            if b - a > 1:
                c.depths[start + a] = depth
                c.nonsingleton += 1
            a = b
        start += cnt
    tracker.release(h1_arr)


def run(codes, int bits, long initial_depth, access_cap,
        bint periods_enabled, long small_threshold, tracker=None,
        bint instrument=False, trace=None, max_passes=None,
        bint check_induction=False):
    """Full construction; returns (sa array, stats dict)."""
    tracker = tracker if tracker is not None else NullTracker()
    codes_arr = np.ascontiguousarray(codes, dtype=np.int32)
    cdef long n = codes_arr.shape[0]
    if n >= 2 ** 31:
        raise ValueError("texts of 2**31 symbols or more are unsupported")

    cdef _Ctx c = _Ctx()
    c.codes = codes_arr
    c.n = n
    c.bits = bits
    c.start_bits = max(1, (n - 1).bit_length()) if n > 1 else 1
    c.start_mask = (1 << c.start_bits) - 1
    c.len_field_max = (1 << (32 - c.start_bits)) - 1
    sa_arr = np.zeros(n, dtype=np.int32)            # output, not auxiliary
    c.sa = sa_arr
    c.entries = tracker.array(n, np.uint32)
    c.access = tracker.array(n, np.uint8)
    cum_arr = tracker.array(n if instrument else 1, np.int64)
    c.cum = cum_arr
    c.has_cum = instrument
    c.depths = {}
    c.ovf = {}
    c.hist = tracker.array(MAX_ROUNDS * RADIX, np.uint32)
    c.offs = tracker.array(RADIX, np.uint32)
    c.small_threshold = small_threshold

    _initial_sort(c, initial_depth, tracker)
    if trace is not None:
        trace.append(_snapshot(c, "initial"))

    cdef long initial_nonsingleton = c.nonsingleton
    cdef bint has_cap = access_cap is not None
    cdef int cap = <int>access_cap if has_cap else 0
    if has_cap and cap >= 255:
        raise ValueError("access cap must be < 255")
    cdef long bound = <long>max_passes if max_passes is not None else -1
    cdef int key_rounds = max(1, (n.bit_length() + 15) // 16)

    pass_parts = []
    cdef long passes = 0
    cdef long i, s, m, t, dd
    cdef bint skipped, over
    while c.nonsingleton > 0:
        if bound >= 0 and passes >= bound:
            raise RuntimeError(
                f"pass bound {bound} exceeded with {c.nonsingleton} buckets "
                "unresolved: refinement depth stopped growing, which "
                "indicates a bug")
        passes += 1
        memset(&c.access[0], 0, n)
        c.pass_parts = 0
        skipped = False
        for i in range(n - 1, -1, -1):
            s = _bstart(c, i)
            m = _bsize(c, s)
            if m == 1:
                continue
            if has_cap:
                over = False
                for t in range(m):
                    if c.access[c.sa[s + t]] > cap:
                        over = True
                        break
                if over:
                    skipped = True
                    continue
            dd = <long>c.depths[s]
            if periods_enabled and _try_periods(c, s, m, dd):
                if trace is not None:
                    trace.append(_snapshot(c, ("periods", <int>i)))
            else:
                _count_access(c, s, m)
                _sort_generic(c, s, m, dd, key_rounds)
                if trace is not None:
                    trace.append(_snapshot(c, ("sort", <int>i)))
            if check_induction and _bsize(c, _bstart(c, i)) != 1:
                raise AssertionError(f"suffix {i} not singleton after its step")
        pass_parts.append(<long>c.pass_parts)
        if not skipped:
            break
    assert c.nonsingleton == 0

    tracker.charge_mapping(c.depths, c.ovf)
    stats = {
        "backend": NAME,
        "n": <long>n,
        "passes": passes,
        "pass_participations": pass_parts,
        "total_participations": <long>c.total_parts,
        "initial_nonsingleton": initial_nonsingleton,
        "histogram_scans": <long>c.hist_scans,
        "access": (np.asarray(cum_arr).copy() if instrument else None),
    }
    return sa_arr, stats


def lsd_sort_matrix(words, payload):
    """Stable LSD sort of (n, W) uint64 rows; returns (order, boundaries,
    scan count).  boundaries[k] marks starts of equal-key groups."""
    cdef cnp.uint64_t[:, ::1] w = np.ascontiguousarray(words, dtype=np.uint64)
    pay = np.ascontiguousarray(payload, dtype=np.int64)
    cdef cnp.int64_t[::1] pv = pay
    cdef long n = w.shape[0]
    cdef int width = w.shape[1]
    if n == 0:
        return (np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), 0)
    cdef int rounds = 4 * width
    hist_arr = np.zeros((rounds, RADIX), dtype=np.uint32)
    cdef cnp.uint32_t[:, ::1] hist = hist_arr
    offs_arr = np.zeros(RADIX, dtype=np.uint32)
    cdef cnp.uint32_t[::1] offs = offs_arr
    cdef long i, t, pos
    cdef int r, rr, wi, d
    cdef unsigned long long k
    cdef unsigned int acc, d0

    for i in range(n):                       # the single counting scan
        for wi in range(width):
            k = w[i, wi]
            for rr in range(4):
                r = 4 * (width - 1 - wi) + rr
                hist[r, (k >> (16 * rr)) & 0xFFFF] += 1

    oa_arr = np.arange(n, dtype=np.int64)
    ob_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] oa = oa_arr
    cdef cnp.int64_t[::1] ob = ob_arr
    cdef cnp.int64_t[::1] tmp
    cdef bint in_a = True
    for r in range(rounds):
        wi = width - 1 - (r // 4)
        rr = r % 4
        d0 = <unsigned int>((w[oa[0], wi] >> (16 * rr)) & 0xFFFF)
        if hist[r, d0] == <unsigned int>n:
            continue
        acc = 0
        for d in range(RADIX):
            offs[d] = acc
            acc += hist[r, d]
        for t in range(n):
            i = oa[t]
            d0 = <unsigned int>((w[i, wi] >> (16 * rr)) & 0xFFFF)
            pos = offs[d0]
            offs[d0] += 1
            ob[pos] = i
        tmp = oa; oa = ob; ob = tmp
        in_a = not in_a

    out = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] ov = out
    for t in range(n):
        ov[t] = pv[oa[t]]
    bounds = [0]
    cdef bint eq
    for t in range(1, n):
        eq = True
        for wi in range(width):
            if w[oa[t], wi] != w[oa[t - 1], wi]:
                eq = False
                break
        if not eq:
            bounds.append(<long>t)
    return out, np.asarray(bounds, dtype=np.int64), 1
