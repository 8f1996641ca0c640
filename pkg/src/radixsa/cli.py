"""Command-line interface: build, verify, lemma, gen, bench."""
from __future__ import annotations

import sys
from fractions import Fraction

import click
import numpy as np

from ._backend import active_backend_name
from .bench import bench as run_bench
from .bench import load_bench_spec
from .builders import sa1, sa2
from .core import RadixSaConfig, radixsa
from .datagen import FAMILIES, DatasetSpec, gen as gen_data
from .lemma import lemma_exact, lemma_montecarlo
from .lmer import LmerConfig, ProbabilityModel
from .text import (ingest, load_suffix_array, save_suffix_array)
from .verify import check_sa

_BACKEND_OPT = click.option(
    "--backend", type=click.Choice(["auto", "cython", "pure"]), default=None,
    help="Kernel backend (default: compiled if available).")


@click.group()
def main():
    """Suffix array construction toolkit."""


@main.command()
@click.argument("text_file", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Suffix array output file (default: TEXT_FILE.sa).")
@click.option("--algo", type=click.Choice(["radixsa", "sa1", "sa2"]),
              default="radixsa", show_default=True)
@click.option("--alpha", default=None,
              help="Failure-rate exponent for sa1/sa2 l-mer length, as a "
                   "fraction like 1 or 3/2.")
@click.option("--ell", type=int, default=None,
              help="Explicit l-mer length for sa1/sa2 (overrides --alpha).")
@click.option("--cap", type=int, default=None,
              help="Per-pass access cap for radixsa (0 disables).")
@click.option("--depth", type=int, default=None,
              help="Initial sorting depth for radixsa.")
@click.option("--no-periods", is_flag=True,
              help="Disable period handling in radixsa.")
@click.option("--form", type=click.Choice(["binary", "text"]),
              default="binary", show_default=True,
              help="Suffix array file format.")
@click.option("--stats", is_flag=True, help="Print build statistics.")
@_BACKEND_OPT
def build(text_file, output, algo, alpha, ell, cap, depth, no_periods, form,
          stats, backend):
    """Build the suffix array of TEXT_FILE."""
    with open(text_file, "rb") as fh:
        t = ingest(fh.read())
    output = output or text_file + ".sa"
    if algo == "radixsa":
        cfg = RadixSaConfig(
            initial_depth=depth,
            access_cap=(None if cap == 0 else cap) if cap is not None
            else RadixSaConfig.access_cap,
            periods=not no_periods, backend=backend)
        sa, st = radixsa(t, cfg, instrument=stats)
        if stats:
            click.echo(f"n={st.n} sigma={t.sigma} backend={st.backend} "
                       f"passes={st.passes} "
                       f"mean_access={st.mean_access:.3f} "
                       f"participations={st.total_participations}")
    else:
        cfg = None
        if ell is not None or alpha is not None:
            cfg = LmerConfig.derive(t, alpha=Fraction(alpha or 1), ell=ell)
        if algo == "sa1":
            sa = sa1(t, cfg, backend=backend)
        else:
            outcome = sa2(t, cfg, backend=backend)
            sa = outcome.sa
            if stats:
                click.echo(f"fell_back={outcome.fell_back} "
                           f"nonsingleton={outcome.nonsingleton_buckets} "
                           f"max_bucket={outcome.max_bucket_size}")
    save_suffix_array(sa, output, form=form)
    click.echo(f"wrote {output} ({t.n} entries)")


@main.command()
@click.argument("text_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("sa_file", type=click.Path(exists=True, dir_okay=False))
def verify(text_file, sa_file):
    """Check that SA_FILE is the suffix array of TEXT_FILE."""
    with open(text_file, "rb") as fh:
        t = ingest(fh.read())
    sa = load_suffix_array(sa_file)
    res = check_sa(t, sa)
    if res.ok:
        click.echo("OK")
    else:
        click.echo(f"INVALID: {res.kind} violation at rank {res.index}")
        sys.exit(1)


@main.command()
@click.option("--exact/--mc", "exact", default=True, show_default=True,
              help="Exhaustive rational enumeration vs Monte Carlo.")
@click.option("--sigma", type=int, default=2, show_default=True)
@click.option("--n", type=int, default=8, show_default=True)
@click.option("--ell", type=int, default=3, show_default=True)
@click.option("--offsets", default="1,2", show_default=True,
              help="Comma-separated overlap offsets to test.")
@click.option("--trials", type=int, default=100000, show_default=True,
              help="Monte Carlo trials.")
@click.option("--seed", type=int, default=0, show_default=True)
def lemma(exact, sigma, n, ell, offsets, trials, seed):
    """Validate pairwise independence of overlapping l-mers."""
    offs = tuple(int(x) for x in offsets.split(","))
    if exact:
        rep = lemma_exact(sigma=sigma, n=n, ell=ell, offsets=offs)
    else:
        rep = lemma_montecarlo(ProbabilityModel.uniform(sigma), n=n, ell=ell,
                               trials=trials, offsets=offs, seed=seed)
    for est in rep.pair_estimates:
        line = (f"offset={est.offset} collision={float(est.estimate):.6g} "
                f"expected={float(est.theoretical):.6g}")
        if est.radius:
            line += f" ci99_radius={est.radius:.3g}"
        click.echo(line)
    if rep.triple_probability is not None:
        click.echo(f"triple collision={float(rep.triple_probability):.6g} "
                   f"(pairwise-independent product would be "
                   f"{float(rep.triple_independent_value):.6g})")
    click.echo("OK" if rep.ok else "FAILED")
    if not rep.ok:
        sys.exit(1)


@main.command(name="gen")
@click.option("--family", type=click.Choice([f for f in FAMILIES
                                             if f != "file"]), required=True)
@click.option("--n", type=int, required=True)
@click.option("--sigma", type=int, default=None)
@click.option("--period", type=int, default=None, help="Period length.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False),
              required=True)
def gen(family, n, sigma, period, seed, output):
    """Generate a dataset file."""
    spec = DatasetSpec(family=family, n=n, sigma=sigma, period_len=period,
                       seed=seed)
    data = gen_data(spec)
    with open(output, "wb") as fh:
        fh.write(data)
    click.echo(f"wrote {output} ({len(data)} bytes)")


@main.command(name="bench")
@click.option("--spec", "spec_path", type=click.Path(exists=True,
                                                     dir_okay=False),
              required=True, help="TOML bench specification.")
@click.option("--reps", type=int, default=None,
              help="Override repetitions from the spec file.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False),
              default=None, help="Per-repetition CSV output.")
@_BACKEND_OPT
def bench(spec_path, reps, csv_path, backend):
    """Run the benchmark harness from a TOML spec."""
    specs, algos, file_reps = load_bench_spec(spec_path)
    run_bench(specs, algos=algos, repetitions=reps or file_reps,
              backend=backend, csv_path=csv_path, report=sys.stdout)
    if csv_path:
        click.echo(f"wrote {csv_path}")


@main.command()
def backend():
    """Print the active kernel backend."""
    click.echo(active_backend_name())


if __name__ == "__main__":
    main()
