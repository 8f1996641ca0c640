import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radixsa import engine
from radixsa._pure import initial_state
from radixsa.engine import (BucketState, bucket_number, lsd_sort_fingerprints,
                            sort_bucket_by_key, stable_key_order)
from radixsa.lmer import fingerprint_matrix
from radixsa.text import ingest


class TestInitialState:
    def test_example_depth1_buckets(self):
        # depth-1 buckets of "cdaxcdayca": a{2,6,9} c{0,4,8} d{1,5} x{3} y{7}
        t = ingest(b"cdaxcdayca")
        st_ = initial_state(t.data, t.bits_per_symbol, 1, None, False, 32)
        got = [(s, sorted(st_.members(s)), d) for s, sz, d in st_.buckets()]
        assert got == [(0, [2, 6, 9], 1), (3, [0, 4, 8], 1),
                       (6, [1, 5], 1), (8, [3], None), (9, [7], None)]
        assert st_.nonsingleton == 3

    def test_single_symbol(self):
        t = ingest(b"q")
        st_ = initial_state(t.data, t.bits_per_symbol, 1, None, False, 32)
        assert st_.buckets() == [(0, 1, None)] and st_.nonsingleton == 0

    def test_stability_within_buckets(self):
        # stable radix sort keeps equal-key suffixes in position order
        t = ingest(b"abababab")
        st_ = initial_state(t.data, t.bits_per_symbol, 2, None, False, 32)
        assert st_.members(0) == [0, 2, 4, 6]    # "ab" block, position order
        assert st_.members(st_.bucket_of(1)) == [1, 3, 5]   # "ba" block


class TestStableKeyOrder:
    def test_random_keys_match_comparison_sort(self):
        rng = np.random.default_rng(5)
        keys = [int(k) for k in rng.integers(0, 2 ** 63, size=256,
                                             dtype=np.int64)]
        got = stable_key_order(keys, small_threshold=0)
        assert [keys[i] for i in got] == sorted(keys)

    @given(st.lists(st.integers(0, 2 ** 64 - 1), min_size=1, max_size=80),
           st.integers(0, 64))
    @settings(max_examples=200, deadline=None)
    def test_stable_for_any_threshold(self, keys, threshold):
        got = stable_key_order(keys, small_threshold=threshold)
        # stable: equal keys keep index order
        expect = sorted(range(len(keys)), key=lambda i: (keys[i], i))
        assert got == expect

    def test_single_histogram_scan_per_sort(self):
        state = BucketState(4)
        before = state.histogram_scans
        engine._lsd_order([2 ** 50, 3, 2 ** 20, 1], state)
        assert state.histogram_scans == before + 1   # all rounds, one scan


class TestSortBucketByKey:
    def test_example_sort_a_bucket(self):
        # a-bucket {2,6,9} keyed by successor buckets: 9 < 2 < 6
        t = ingest(b"cdaxcdayca")
        st_ = initial_state(t.data, t.bits_per_symbol, 1, None, False, 32)
        subs = sort_bucket_by_key(st_, 0)
        assert st_.sa[:3].tolist() == [9, 2, 6]
        assert subs == [(0, 1), (1, 1), (2, 1)]

    def test_equal_keys_single_subbucket_deeper(self):
        t = ingest(b"cdaxcdayca")
        st_ = initial_state(t.data, t.bits_per_symbol, 1, None, False, 32)
        sort_bucket_by_key(st_, 0)                   # resolve a-bucket
        subs = sort_bucket_by_key(st_, 3)            # c-bucket {0,4,8}
        assert st_.sa[3:6].tolist() == [8, 0, 4]     # "ca" first, "cd" tie
        assert subs == [(3, 1), (4, 2)]
        assert st_.bucket_depth(4) == 2              # 1 + depth(d-bucket)

    def test_outcome_equals_comparison_sort(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            raw = bytes(rng.integers(97, 100, 40, dtype=np.uint8))
            t = ingest(raw)
            st_ = initial_state(t.data, t.bits_per_symbol, 1, None, False, 32)
            start = next(s for s, sz, _ in st_.buckets() if sz > 1)
            members = st_.members(start)
            dd = st_.bucket_depth(start)

            def key_of(j, dd=dd, n=t.n, st_=st_):
                return 0 if j + dd >= n else st_.bucket_of(j + dd) + 1
            expect = sorted(members, key=lambda j: (key_of(j),
                                                    members.index(j)))
            sort_bucket_by_key(st_, start)
            assert st_.sa[start:start + len(members)].tolist() == expect

    def test_singleton_rejected(self):
        t = ingest(b"ab")
        st_ = initial_state(t.data, t.bits_per_symbol, 1, None, False, 32)
        with pytest.raises(ValueError):
            sort_bucket_by_key(st_, 0)


class TestBucketNumber:
    def test_shared_then_distinct(self):
        t = ingest(b"cdaxcdayca")
        st_ = initial_state(t.data, t.bits_per_symbol, 1, None, False, 32)
        assert bucket_number(st_, 0) == bucket_number(st_, 4)   # both "c"
        assert bucket_number(st_, 3) != bucket_number(st_, 7)

    def test_all_distinct_after_completion(self):
        from radixsa._pure import run
        t = ingest(b"banana")
        sa, _ = run(t.data, t.bits_per_symbol, 1, None, True, 32)
        assert sa.tolist() == [5, 3, 1, 0, 4, 2]


class TestRefinementMonotonicity:
    def test_boundaries_only_split(self):
        t = ingest(b"abracadabraabracadabra")
        st_ = initial_state(t.data, t.bits_per_symbol, 1, None, False, 32)
        prev = {s for s, _, _ in st_.buckets()}
        while st_.nonsingleton:
            start = next(s for s, sz, _ in st_.buckets() if sz > 1)
            sort_bucket_by_key(st_, start)
            cur = {s for s, _, _ in st_.buckets()}
            assert prev <= cur                    # starts never disappear
            prev = cur


class TestLsdSortFingerprints:
    def test_groups_equal_lmers(self):
        t = ingest(b"cdaxcdayca")
        words = fingerprint_matrix(t, 3)
        state = lsd_sort_fingerprints(words, np.arange(t.n), 3)
        sizes = sorted(sz for _, sz, _ in state.buckets())
        assert sizes == [1] * 8 + [2]            # only "cda" repeats
        start = next(s for s, sz, _ in state.buckets() if sz == 2)
        assert sorted(state.members(start)) == [0, 4]
