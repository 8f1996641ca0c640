"""Suffix array construction toolkit.

Builders: `radixsa` (bucket-refinement, O(n log n) worst case), `sa1` and
`sa2` (probabilistic l-mer sorters).  Verification: `oracle_sa`,
`check_sa`, and the l-mer independence validator.  Hot kernels run from a
compiled extension when built, with a pure-Python fallback selected at
import (see `backend_name`).
"""
from ._backend import active_backend_name as backend_name
from .bench import RunStats, access_profile, bench
from .builders import Sa2Outcome, sa1, sa2
from .core import BuildStats, RadixSaConfig, radixsa
from .datagen import DatasetSpec, gen, load
from .lemma import LemmaReport, lemma_exact, lemma_montecarlo
from .lmer import (Fingerprint, LmerConfig, ProbabilityModel, choose_ell,
                   collision_probability, fingerprint, fingerprint_matrix)
from .text import (SuffixArray, Text, from_codes, ingest, load_suffix_array,
                   save_suffix_array, suffix_compare)
from .verify import CheckResult, check_sa, oracle_sa

__all__ = [
    "BuildStats", "CheckResult", "DatasetSpec", "Fingerprint", "LemmaReport",
    "LmerConfig", "ProbabilityModel", "RadixSaConfig", "RunStats",
    "Sa2Outcome", "SuffixArray", "Text", "access_profile", "backend_name",
    "bench", "check_sa", "choose_ell", "collision_probability", "fingerprint",
    "fingerprint_matrix", "from_codes", "gen", "ingest", "lemma_exact",
    "lemma_montecarlo", "load", "load_suffix_array", "oracle_sa", "radixsa",
    "sa1", "sa2", "save_suffix_array", "suffix_compare",
]

__version__ = "0.1.0"
