"""Timing, access-count, pass-count, and memory measurement harness.

Timing covers construction only (ingest and file I/O excluded), on a
monotonic clock at millisecond resolution.  Every benchmarked output is
verified with the rank-successor checker and a failure aborts the run: a
benchmark of a wrong suffix array is meaningless.  Auxiliary memory is
whatever the builder requests through the tracking allocator, i.e. memory
besides input and output.
"""
from __future__ import annotations

import csv
import statistics
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from ._backend import active_backend_name
from .builders import sa1, sa2
from .core import RadixSaConfig, radixsa
from .datagen import DatasetSpec, gen
from .memtrack import MemoryTracker
from .text import SuffixArray, Text, ingest
from .verify import check_sa

ALGOS = ("radixsa", "sa1", "sa2")
CSV_COLUMNS = ("dataset", "n", "sigma", "algo", "backend", "rep", "ms",
               "mean_access", "passes", "aux_bytes")

# Published reference times for well-known corpora, milliseconds on
# 2012-era commodity hardware (Intel Core i3, 4 GB).  Context only, shown
# in reports but never asserted against.
REFERENCE_MS = {
    "random,n=20000000,s=26": 2250.0,
}


@dataclass
class RunStats:
    dataset: str
    n: int
    sigma: int
    algo: str
    backend: str
    wall_times_ms: list[float] = field(default_factory=list)
    mean_access: float | None = None
    pass_count: int | None = None
    aux_bytes: int | None = None
    reference_ms: float | None = None

    @property
    def repetitions(self) -> int:
        return len(self.wall_times_ms)

    @property
    def mean_ms(self) -> float:
        return statistics.fmean(self.wall_times_ms)

    @property
    def stddev_ms(self) -> float:
        if len(self.wall_times_ms) < 2:
            return 0.0
        return statistics.stdev(self.wall_times_ms)


def access_profile(t: Text, cfg: RadixSaConfig | None = None) -> np.ndarray:
    """Per-suffix access counts from one instrumented build."""
    _, stats = radixsa(t, cfg, instrument=True)
    return stats.access


def _build_once(t: Text, algo: str, backend: str | None) -> SuffixArray:
    if algo == "radixsa":
        return radixsa(t, RadixSaConfig(backend=backend))[0]
    if algo == "sa1":
        return sa1(t, backend=backend)
    if algo == "sa2":
        return sa2(t, backend=backend).sa
    raise ValueError(f"unknown algo {algo!r}; choose from {ALGOS}")


def bench(specs: list[DatasetSpec], algos=("radixsa",), repetitions: int = 10,
          backend: str | None = None, csv_path=None,
          report=None) -> list[RunStats]:
    """Build each (dataset, algo) `repetitions` times and collect stats.

    Every repetition's output is verified; a bad suffix array raises
    RuntimeError immediately.  Returns one RunStats per (dataset, algo),
    and optionally writes the per-repetition CSV.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    out: list[RunStats] = []
    backend_label = active_backend_name(backend)
    for spec in specs:
        t = ingest(gen(spec))
        for algo in algos:
            rs = RunStats(dataset=spec.label, n=t.n, sigma=t.sigma, algo=algo,
                          backend=backend_label,
                          reference_ms=(REFERENCE_MS.get(spec.label)
                                        if algo == "radixsa" else None))
            for rep in range(repetitions):
                t0 = time.perf_counter()
                sa = _build_once(t, algo, backend)
                t1 = time.perf_counter()
                res = check_sa(t, sa)
                if not res.ok:
                    raise RuntimeError(
                        f"benchmark aborted: {algo} on {spec.label} produced "
                        f"an invalid suffix array ({res.kind} at rank "
                        f"{res.index})")
                rs.wall_times_ms.append((t1 - t0) * 1000.0)
            if algo == "radixsa":
                # stats runs, untimed: one instrumented, one tracked
                _, st = radixsa(t, RadixSaConfig(backend=backend),
                                instrument=True)
                rs.mean_access = st.mean_access
                rs.pass_count = st.passes
                tracker = MemoryTracker()
                radixsa(t, RadixSaConfig(backend=backend), tracker=tracker)
                rs.aux_bytes = tracker.peak
            out.append(rs)
            if report is not None:
                _report_line(rs, report)
    if csv_path is not None:
        write_csv(out, csv_path)
    return out


def _report_line(rs: RunStats, stream) -> None:
    line = (f"{rs.dataset} algo={rs.algo} backend={rs.backend} "
            f"mean={rs.mean_ms:.1f}ms stddev={rs.stddev_ms:.1f}ms")
    if rs.pass_count is not None:
        line += (f" passes={rs.pass_count} mean_access={rs.mean_access:.3f} "
                 f"aux_bytes={rs.aux_bytes}")
    if rs.reference_ms is not None:
        line += (f" [context: published reference {rs.reference_ms:.0f}ms "
                 "on 2012-era hardware, not asserted]")
    print(line, file=stream or sys.stdout)


def write_csv(stats: list[RunStats], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for rs in stats:
            for rep, ms in enumerate(rs.wall_times_ms):
                w.writerow([
                    rs.dataset, rs.n, rs.sigma, rs.algo, rs.backend, rep,
                    f"{ms:.3f}",
                    "" if rs.mean_access is None else repr(rs.mean_access),
                    "" if rs.pass_count is None else rs.pass_count,
                    "" if rs.aux_bytes is None else rs.aux_bytes,
                ])


def read_csv(path) -> list[RunStats]:
    """Re-parse an emitted CSV into RunStats, grouped per (dataset, algo)."""
    groups: dict[tuple, RunStats] = {}
    with open(path, newline="") as fh:
        r = csv.DictReader(fh)
        if tuple(r.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"{path}: unexpected CSV columns {r.fieldnames}")
        for row in r:
            key = (row["dataset"], row["algo"], row["backend"])
            rs = groups.get(key)
            if rs is None:
                rs = RunStats(
                    dataset=row["dataset"], n=int(row["n"]),
                    sigma=int(row["sigma"]), algo=row["algo"],
                    backend=row["backend"],
                    mean_access=(float(row["mean_access"])
                                 if row["mean_access"] else None),
                    pass_count=(int(row["passes"]) if row["passes"] else None),
                    aux_bytes=(int(row["aux_bytes"])
                               if row["aux_bytes"] else None),
                    reference_ms=REFERENCE_MS.get(row["dataset"]))
                groups[key] = rs
            rs.wall_times_ms.append(float(row["ms"]))
    return list(groups.values())


def load_bench_spec(path) -> tuple[list[DatasetSpec], tuple, int]:
    """Parse a TOML bench specification.

    Top-level keys: `repetitions` (int, default 10), `algos` (list of
    algorithm names, default ["radixsa"]), and one `[[dataset]]` table per
    input, whose keys mirror the DatasetSpec fields.
    """
    try:
        import tomllib
    except ImportError:                      # Python < 3.11
        import tomli as tomllib
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    reps = int(doc.get("repetitions", 10))
    algos = tuple(doc.get("algos", ["radixsa"]))
    for a in algos:
        if a not in ALGOS:
            raise ValueError(f"unknown algo {a!r} in {path}")
    specs = []
    for tbl in doc.get("dataset", []):
        if "weights" in tbl:
            tbl["weights"] = tuple(tbl["weights"])
        specs.append(DatasetSpec(**tbl))
    if not specs:
        raise ValueError(f"{path}: no [[dataset]] tables")
    return specs, algos, reps
