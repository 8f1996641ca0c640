"""Pairwise-independence validator for the l-mers of a random string.

Exact mode enumerates every string of length n over the alphabet and counts
collisions in rational arithmetic, so the pairwise equalities are checked
with zero tolerance; the 3-way counterexample (positions 1, 3, 4 at l = 3,
1-based) is computed the same way.  Monte Carlo mode covers sizes where
enumeration is infeasible, with 99% normal-approximation intervals.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .lmer import ProbabilityModel, collision_probability

EXACT_GUARD = 2 ** 24
MC_MIN_TRIALS = 10 ** 4
_Z99 = 2.5758293035489004


@dataclass(frozen=True)
class OffsetEstimate:
    offset: int
    estimate: Fraction | float
    radius: float            # 0 in exact mode
    theoretical: Fraction
    ok: bool


@dataclass(frozen=True)
class LemmaReport:
    mode: str                # "exact" | "montecarlo"
    sigma: int
    n: int
    ell: int
    pair_estimates: tuple[OffsetEstimate, ...]
    triple_probability: Fraction | None = None
    triple_independent_value: Fraction | None = None

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.pair_estimates)


def _triple_exact(sigma: int, n: int, ell: int = 3) -> Fraction:
    """Exact Prob[P_1 = P_3 = P_4] (1-based positions) at the given ell."""
    span = 3 + ell          # window covering positions 0..2+ell, 0-based
    if span > n:
        raise ValueError(f"n={n} too short for the 3-way case at ell={ell}")
    hits = 0
    for s in itertools.product(range(sigma), repeat=span):
        a = s[0:ell]
        b = s[2:2 + ell]
        c = s[3:3 + ell]
        if a == b == c:
            hits += 1
    # remaining n - span symbols are free
    return Fraction(hits, sigma ** span)


def lemma_exact(sigma: int, n: int, ell: int,
                offsets=(1, 2)) -> LemmaReport:
    """Exhaustively verify Prob[P_i = P_{i+k}] = sigma**-ell for each k.

    Enumerates all sigma**n strings (guarded); counting is exact.
    """
    if sigma < 1 or n < 1 or ell < 1:
        raise ValueError("sigma, n and ell must be positive")
    if sigma ** n > EXACT_GUARD:
        raise ValueError(f"sigma**n exceeds the enumeration guard {EXACT_GUARD}")
    total = sigma ** n
    theory = Fraction(1, sigma ** ell) if sigma > 1 else Fraction(1)
    counts = {k: 0 for k in offsets}
    for k in offsets:
        if k + ell > n:
            raise ValueError(f"offset {k} with ell={ell} overruns n={n}")
    for s in itertools.product(range(sigma), repeat=n):
        for k in offsets:
            if s[0:ell] == s[k:k + ell]:
                counts[k] += 1
    estimates = tuple(
        OffsetEstimate(offset=k, estimate=Fraction(counts[k], total),
                       radius=0.0, theoretical=theory,
                       ok=Fraction(counts[k], total) == theory)
        for k in offsets)
    triple = None
    triple_indep = None
    if n >= 3 + ell:
        triple = _triple_exact(sigma, n, ell)
        triple_indep = theory * theory
    return LemmaReport(mode="exact", sigma=sigma, n=n, ell=ell,
                       pair_estimates=estimates, triple_probability=triple,
                       triple_independent_value=triple_indep)


def lemma_montecarlo(model: ProbabilityModel, n: int, ell: int, trials: int,
                     offsets=(1, 2), seed: int = 0) -> LemmaReport:
    """Estimate collision frequencies on model-random strings.

    Covers both overlapping offsets (k < ell) and non-overlapping ones;
    verdict is ok iff the exact value P**ell lies inside each 99% interval.
    """
    if trials < MC_MIN_TRIALS:
        raise ValueError(f"at least {MC_MIN_TRIALS} trials required")
    if ell < 1:
        raise ValueError("ell must be >= 1")
    for k in offsets:
        if k + ell > n:
            raise ValueError(f"offset {k} with ell={ell} overruns n={n}")
    theory = collision_probability(model, ell)
    rng = np.random.Generator(np.random.PCG64(seed))
    probs = np.array([float(w) for w in model.weights])
    probs /= probs.sum()
    span = max(offsets) + ell
    sample = rng.choice(len(probs), size=(trials, span), p=probs)
    estimates = []
    for k in offsets:
        eq = (sample[:, 0:ell] == sample[:, k:k + ell]).all(axis=1)
        phat = float(eq.mean())
        radius = _Z99 * math.sqrt(max(phat * (1 - phat), 1e-300) / trials)
        ok = abs(phat - float(theory)) <= max(radius, 1e-12)
        estimates.append(OffsetEstimate(offset=k, estimate=phat,
                                        radius=radius, theoretical=theory,
                                        ok=ok))
    return LemmaReport(mode="montecarlo", sigma=model.sigma, n=n, ell=ell,
                       pair_estimates=tuple(estimates))
