"""Prefix length selection and exact packed l-mer fingerprints.

Fingerprints are exact packed prefixes, not hashes: big-integer comparison
of a fingerprint equals symbol-wise comparison of the pad-extended l-mer,
so equal fingerprints mean equal (padded) l-mers with no false collisions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .text import Text

WORD_BITS = 64
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ProbabilityModel:
    kind: str                      # "uniform" | "explicit"
    weights: tuple[Fraction, ...]  # p_1..p_sigma, sum to 1

    def __post_init__(self):
        if self.kind not in ("uniform", "explicit"):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if not self.weights:
            raise ValueError("model needs at least one symbol weight")
        if any(w <= 0 for w in self.weights):
            raise ValueError("all symbol weights must be positive")
        if sum(self.weights) != 1:
            raise ValueError("symbol weights must sum to 1")

    @classmethod
    def uniform(cls, sigma: int) -> "ProbabilityModel":
        if sigma < 1:
            raise ValueError("sigma must be >= 1")
        return cls("uniform", tuple([Fraction(1, sigma)] * sigma))

    @classmethod
    def explicit(cls, weights) -> "ProbabilityModel":
        ws = tuple(Fraction(w) if not isinstance(w, float) else Fraction(w)
                   for w in weights)
        return cls("explicit", ws)

    @property
    def sigma(self) -> int:
        return len(self.weights)

    @property
    def collision_base(self) -> Fraction:
        """P = sum of squared symbol probabilities."""
        return sum((w * w for w in self.weights), Fraction(0))


def choose_ell(n: int, model: ProbabilityModel, alpha=1) -> int:
    """Smallest prefix length with base**ell >= n**(alpha+2), clamped to n.

    base is sigma for the uniform model and 1/P otherwise.  Evaluated in
    exact rational arithmetic so boundary cases never drift.  A unary
    alphabet (base 1) is degenerate: every prefix collides, so ell = n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    alpha = Fraction(alpha)
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    P = model.collision_base
    if P == 1:
        return n          # degenerate alphabet, see LmerConfig.degenerate
    # P**ell <= n**-(alpha+2), cleared of fractional exponents:
    # P**(ell*q) <= 1 / n**(p+2q) with alpha = p/q.
    p, q = alpha.numerator, alpha.denominator
    target = Fraction(1, n ** (p + 2 * q))
    acc = Fraction(1)
    step = P ** q
    ell = 0
    while acc > target and ell < n:
        acc *= step
        ell += 1
    return max(1, ell)


def collision_probability(model: ProbabilityModel, ell: int) -> Fraction:
    """Exact probability that two independent random l-mers are equal."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    return model.collision_base ** ell


@dataclass(frozen=True)
class LmerConfig:
    ell: int
    alpha: Fraction
    model: ProbabilityModel
    bits_per_symbol: int
    degenerate: bool = False       # unary alphabet: ell forced to n

    @property
    def words_per_fingerprint(self) -> int:
        return max(1, math.ceil(self.ell * self.bits_per_symbol / WORD_BITS))

    @classmethod
    def derive(cls, t: Text, alpha=1, model: ProbabilityModel | None = None,
               ell: int | None = None) -> "LmerConfig":
        model = model or ProbabilityModel.uniform(t.sigma)
        alpha = Fraction(alpha)
        degenerate = model.collision_base == 1
        if ell is None:
            ell = t.n if t.n < 2 else choose_ell(t.n, model, alpha)
        if ell < 1:
            raise ValueError("ell must be >= 1")
        return cls(ell=min(ell, t.n), alpha=alpha, model=model,
                   bits_per_symbol=t.bits_per_symbol, degenerate=degenerate)


@dataclass(frozen=True, order=True)
class Fingerprint:
    words: tuple[int, ...]         # msb-first packing, tail padded with 0


def fingerprint(t: Text, i: int, ell: int) -> Fingerprint:
    """Pack symbols i..i+ell-1 msb-first; positions past the end pad with 0."""
    if not (0 <= i < t.n):
        raise IndexError("suffix position out of range")
    bits = t.bits_per_symbol
    words_n = max(1, math.ceil(ell * bits / WORD_BITS))
    value = 0
    for s in range(ell):
        c = int(t.data[i + s]) if i + s < t.n else 0
        value = (value << bits) | c
    value <<= words_n * WORD_BITS - ell * bits      # left-align
    words = tuple((value >> (WORD_BITS * (words_n - 1 - w))) & _MASK64
                  for w in range(words_n))
    return Fingerprint(words=words)


def fingerprint_matrix(t: Text, ell: int) -> np.ndarray:
    """All n fingerprints as an (n, W) uint64 matrix, row-wise msb-first.

    Row-wise tuple comparison of the matrix equals lexicographic comparison
    of the pad-extended l-mers.
    """
    bits = t.bits_per_symbol
    if bits > 32:
        raise ValueError("symbols wider than 32 bits are not supported here")
    n = t.n
    words_n = max(1, math.ceil(ell * bits / WORD_BITS))
    padded = np.zeros(n + ell, dtype=np.uint64)
    padded[:n] = t.data.astype(np.uint64)
    out = np.zeros((n, words_n), dtype=np.uint64)
    for s in range(ell):
        bitpos = s * bits
        w, off = divmod(bitpos, WORD_BITS)
        sym = padded[s:s + n]
        shift = WORD_BITS - off - bits
        if shift >= 0:
            out[:, w] |= sym << np.uint64(shift)
        else:
            out[:, w] |= sym >> np.uint64(-shift)
            out[:, w + 1] |= (sym << np.uint64(WORD_BITS + shift)) & np.uint64(_MASK64)
    return out
