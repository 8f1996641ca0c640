import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radixsa.text import (EmptyInputError, SuffixArray, from_codes, ingest,
                          load_suffix_array, save_suffix_array,
                          suffix_compare)


class TestIngest:
    def test_example_string(self):
        t = ingest(b"cdaxcdayca")
        assert t.n == 10
        assert t.sigma == 5
        assert t.code_map == {ord("a"): 1, ord("c"): 2, ord("d"): 3,
                              ord("x"): 4, ord("y"): 5}
        assert t.data.tolist() == [2, 3, 1, 4, 2, 3, 1, 5, 2, 1]

    def test_single_symbol(self):
        t = ingest(b"a")
        assert (t.n, t.sigma, t.data.tolist()) == (1, 1, [1])

    def test_order_preserving_remap(self):
        t = ingest(b"zzyy")
        assert t.code_map == {ord("y"): 1, ord("z"): 2}
        assert t.data.tolist() == [2, 2, 1, 1]

    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            ingest(b"")

    def test_full_byte_alphabet(self):
        t = ingest(bytes(range(256)))
        assert t.sigma == 256
        assert t.bits_per_symbol == 9  # code 0 stays reserved

    def test_bits_per_symbol(self):
        assert ingest(b"ab").bits_per_symbol == 2   # codes {1,2}, pad 0
        assert ingest(b"abcdefg").bits_per_symbol == 3

    def test_from_codes_rejects_zero(self):
        with pytest.raises(ValueError):
            from_codes([1, 0, 2])

    def test_raw_bytes_round_trip(self):
        raw = b"mississippi"
        assert ingest(raw).raw_bytes is not None


class TestSuffixCompare:
    def test_example_x_before_y(self):
        t = ingest(b"cdaxcdayca")
        assert suffix_compare(t, 0, 4) < 0      # 4th symbol x < y
        assert suffix_compare(t, 4, 0) > 0

    def test_identity(self):
        t = ingest(b"cdaxcdayca")
        assert suffix_compare(t, 3, 3) == 0

    def test_proper_prefix_smaller(self):
        t = ingest(b"aaa")
        assert suffix_compare(t, 2, 0) < 0

    @given(st.binary(min_size=1, max_size=40))
    @settings(max_examples=200, deadline=None)
    def test_recoding_invariance(self, raw):
        t = ingest(raw)
        for i in range(t.n):
            for j in range(t.n):
                byte_cmp = (raw[i:] > raw[j:]) - (raw[i:] < raw[j:])
                got = suffix_compare(t, i, j)
                assert (got > 0) == (byte_cmp > 0) and \
                       (got < 0) == (byte_cmp < 0)

    @given(st.binary(min_size=2, max_size=30))
    @settings(max_examples=100, deadline=None)
    def test_strict_total_order(self, raw):
        t = ingest(raw)
        for i in range(t.n):
            for j in range(i + 1, t.n):
                a, b = suffix_compare(t, i, j), suffix_compare(t, j, i)
                assert a != 0 and (a > 0) == (b < 0)   # antisymmetric


class TestSerialization:
    def test_binary_round_trip(self, tmp_path):
        sa = SuffixArray(order=np.asarray([9, 2, 6, 8, 0, 4, 1, 5, 3, 7],
                                          dtype=np.int32))
        p = tmp_path / "x.sa"
        save_suffix_array(sa, p)
        assert load_suffix_array(p) == sa
        with open(p, "rb") as fh:
            head = fh.read(8)
        assert head[6] == 4                      # 32-bit entries for small n

    def test_text_round_trip(self, tmp_path):
        sa = SuffixArray(order=np.asarray([2, 0, 1], dtype=np.int32))
        p = tmp_path / "x.txt"
        save_suffix_array(sa, p, form="text")
        assert p.read_text().split() == ["2", "0", "1"]
        assert load_suffix_array(p) == sa

    def test_corrupt_header_rejected(self, tmp_path):
        p = tmp_path / "bad.sa"
        p.write_bytes(b"SUFARR\x05\x00" + b"\x00" * 8)
        with pytest.raises(ValueError):
            load_suffix_array(p)
