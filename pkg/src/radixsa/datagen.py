"""Deterministic, seedable generators for the benchmark input families.

Randomness comes from numpy's PCG64 generator seeded with the spec's
64-bit seed, so identical specs always produce byte-identical output
(documented in the README file-format notes).
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from importlib import resources

import numpy as np

FAMILIES = ("random", "periodic", "fibonacci", "unary", "debruijn", "file")
_LETTERS = (string.ascii_lowercase + string.ascii_uppercase +
            string.digits + ".,;:!?-_ ")


@dataclass(frozen=True)
class DatasetSpec:
    family: str
    n: int
    sigma: int | None = None
    weights: tuple[float, ...] | None = None
    period_len: int | None = None
    seed: int = 0
    path: str | None = None          # family "file" only

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family != "file" and self.n < 1:
            raise ValueError("n must be >= 1")
        if self.family == "periodic" and not self.period_len:
            raise ValueError("periodic family needs period_len")
        if self.family == "file" and not self.path:
            raise ValueError("file family needs a path")
        if self.family == "random" and not (self.sigma or self.weights):
            raise ValueError("random family needs sigma or weights")
        if self.sigma is not None and not (1 <= self.sigma <= 256):
            raise ValueError("sigma must be in [1, 256]")

    @property
    def label(self) -> str:
        if self.family == "file":
            return self.path or "file"
        bits = [self.family, f"n={self.n}"]
        if self.sigma:
            bits.append(f"s={self.sigma}")
        if self.period_len:
            bits.append(f"p={self.period_len}")
        return ",".join(bits)


def _alphabet(sigma: int) -> bytes:
    if sigma <= len(_LETTERS):
        return _LETTERS[:sigma].encode()
    return bytes(range(sigma))


def _random_bytes(n: int, sigma: int | None, weights, rng) -> bytes:
    if weights is not None:
        p = np.asarray([float(w) for w in weights], dtype=float)
        p /= p.sum()
        sigma = len(p)
        draws = rng.choice(sigma, size=n, p=p)
    else:
        draws = rng.integers(0, sigma, size=n)
    return bytes(np.frombuffer(_alphabet(sigma), dtype=np.uint8)[draws])


def fibonacci_string(min_len: int) -> bytes:
    """Shortest F_k of at least min_len symbols: F_0=b, F_1=a, F_k is the
    concatenation of F_{k-1} and F_{k-2}."""
    prev, cur = b"b", b"a"
    while len(cur) < min_len:
        prev, cur = cur, cur + prev
    return cur


def debruijn_binary(order: int) -> bytes:
    """Cyclic binary de Bruijn sequence B(2, order), over symbols a/b."""
    # standard Lyndon-word concatenation construction
    seq: list[int] = []
    a = [0] * (order + 1)

    def db(t: int, p: int) -> None:
        if t > order:
            if order % p == 0:
                seq.extend(a[1:p + 1])
        else:
            a[t] = a[t - p]
            db(t + 1, p)
            for j in range(a[t - p] + 1, 2):
                a[t] = j
                db(t + 1, t)

    db(1, 1)
    return bytes(b"ab"[c] for c in seq)


def gen(spec: DatasetSpec) -> bytes:
    """Materialize one dataset; a pure function of (spec, seed)."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    n = spec.n
    if spec.family == "file":
        return load(spec.path)
    if spec.family == "random":
        return _random_bytes(n, spec.sigma, spec.weights, rng)
    if spec.family == "unary":
        return b"a" * n
    if spec.family == "fibonacci":
        return fibonacci_string(n)[:n]
    if spec.family == "periodic":
        sigma = spec.sigma or 26
        block = _random_bytes(spec.period_len, sigma, spec.weights, rng)
        reps = -(-n // spec.period_len)
        return (block * reps)[:n]
    if spec.family == "debruijn":
        order = 1
        while (1 << (order + 1)) + order <= n:
            order += 1
        cyc = debruijn_binary(order)
        lin = cyc + cyc[:order - 1] if order > 1 else cyc
        reps = -(-n // len(lin))
        return (lin * reps)[:n]
    raise AssertionError(spec.family)


def load(path) -> bytes:
    """Raw bytes of a user-supplied corpus file, no transcoding."""
    with open(path, "rb") as fh:
        data = fh.read()
    if not data:
        raise ValueError(f"{path}: empty input file")
    return data


def corpus_manifest() -> dict[str, dict[str, int]]:
    """Known benchmark corpora: expected length and alphabet size, parsed
    from the shipped key-value manifest (name length=<int> sigma=<int>)."""
    text = (resources.files("radixsa") / "data" /
            "corpus_manifest.txt").read_text()
    out: dict[str, dict[str, int]] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, *kvs = line.split()
        out[name] = {k: int(v) for k, v in (kv.split("=") for kv in kvs)}
    return out
