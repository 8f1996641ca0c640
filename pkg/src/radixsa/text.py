"""Input text representation, alphabet remapping and the suffix array type.

A text is stored as a dense code sequence: the distinct bytes of the input
are remapped, order preserved, onto codes 1..sigma.  Code 0 never appears
in the data; it is reserved as a virtual pad so that a short suffix compares
smaller than any extension of it without appending a sentinel to the text.
"""
from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, field

import numpy as np

_MAGIC = b"SUFARR"


class EmptyInputError(ValueError):
    """Raised when an empty byte sequence is ingested."""


@dataclass(frozen=True)
class Text:
    data: np.ndarray           # int32 codes, every value in [1, sigma]
    n: int
    sigma: int
    code_map: dict[int, int]   # original byte value -> dense code
    bits_per_symbol: int

    def __post_init__(self):
        if self.n < 1:
            raise EmptyInputError("text must contain at least one symbol")

    @property
    def raw_bytes(self) -> bytes | None:
        """Code sequence as bytes, when codes fit a byte (sigma < 256)."""
        if self.sigma > 255:
            return None
        return self.data.astype(np.uint8).tobytes()


@dataclass(frozen=True)
class SuffixArray:
    order: np.ndarray          # n suffix start positions, 0-based

    def __len__(self) -> int:
        return len(self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuffixArray):
            return NotImplemented
        return np.array_equal(self.order, other.order)

    def tolist(self) -> list[int]:
        return [int(x) for x in self.order]


def ingest(raw: bytes | bytearray | memoryview) -> Text:
    """Remap a byte sequence onto dense order-preserving codes 1..sigma."""
    buf = np.frombuffer(bytes(raw), dtype=np.uint8)
    if buf.size == 0:
        raise EmptyInputError("cannot build a suffix array of an empty input")
    used = np.unique(buf)                       # sorted -> order preserving
    lut = np.zeros(256, dtype=np.int32)
    lut[used] = np.arange(1, used.size + 1, dtype=np.int32)
    data = lut[buf]
    sigma = int(used.size)
    code_map = {int(b): int(lut[b]) for b in used}
    bits = max(1, math.ceil(math.log2(sigma + 1)))
    t = Text(data=data, n=int(buf.size), sigma=sigma,
             code_map=code_map, bits_per_symbol=bits)
    t.data.setflags(write=False)
    return t


def from_codes(codes, sigma: int | None = None) -> Text:
    """Build a Text directly from a code sequence (values must be >= 1)."""
    data = np.asarray(codes, dtype=np.int32)
    if data.size == 0:
        raise EmptyInputError("cannot build a suffix array of an empty input")
    if data.min() < 1:
        raise ValueError("codes must be >= 1 (0 is the reserved pad)")
    if sigma is None:
        sigma = int(data.max())
    bits = max(1, math.ceil(math.log2(sigma + 1)))
    data = data.copy()
    data.setflags(write=False)
    return Text(data=data, n=int(data.size), sigma=sigma,
                code_map={}, bits_per_symbol=bits)


def suffix_compare(t: Text, i: int, j: int) -> int:
    """Lexicographic order of suffix i vs suffix j: -1, 0 or +1.

    A proper prefix compares smaller than its extension; the result is 0
    only for i == j.
    """
    n = t.n
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError("suffix position out of range")
    if i == j:
        return 0
    m = min(n - i, n - j)
    a = t.data[i:i + m]
    b = t.data[j:j + m]
    neq = np.nonzero(a != b)[0]
    if neq.size:
        k = int(neq[0])
        return -1 if a[k] < b[k] else 1
    # one suffix is a proper prefix of the other; the shorter is smaller
    return -1 if (n - i) < (n - j) else 1


def save_suffix_array(sa: SuffixArray, path: str | os.PathLike,
                      form: str = "binary") -> None:
    """Serialize: 8-byte magic/width header + fixed-width little-endian
    entries (32-bit when n < 2**31, else 64-bit), or one position per line.
    """
    order = sa.order
    if form == "text":
        with open(path, "w") as fh:
            for p in order:
                fh.write(f"{int(p)}\n")
        return
    if form != "binary":
        raise ValueError(f"unknown serialization form: {form!r}")
    width = 4 if len(order) < 2 ** 31 else 8
    dtype = "<u4" if width == 4 else "<u8"
    with open(path, "wb") as fh:
        fh.write(_MAGIC + struct.pack("<BB", width, 0))
        fh.write(np.ascontiguousarray(order, dtype=dtype).tobytes())


def load_suffix_array(path: str | os.PathLike) -> SuffixArray:
    with open(path, "rb") as fh:
        head = fh.read(8)
        if len(head) == 8 and head[:6] == _MAGIC:
            width = head[6]
            if width not in (4, 8):
                raise ValueError(f"bad suffix array width byte: {width}")
            dtype = "<u4" if width == 4 else "<u8"
            body = fh.read()
            order = np.frombuffer(body, dtype=dtype).astype(np.int64)
            return SuffixArray(order=order)
    # fall back to the one-position-per-line text form
    with open(path) as fh:
        order = np.array([int(line) for line in fh if line.strip()],
                         dtype=np.int64)
    return SuffixArray(order=order)
