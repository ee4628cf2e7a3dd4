"""Command-line entry point: ``lcartan {algebra,module,hom,cohomology,natalg,all}``."""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

import click

from .config import ConfigError, RunConfig, jobs_from_env
from .report import VerificationReport, write_report
from . import suites


def _range(text: Optional[str]) -> Optional[Tuple[int, int]]:
    if text is None:
        return None
    a, b = text.split(":")
    return int(a), int(b)


def _weights(values: Sequence[str]) -> List[Tuple[int, ...]]:
    return [tuple(int(x) for x in v.split(",") if x.strip()) for v in values]


def _config(ctx: click.Context, **overrides) -> RunConfig:
    base = ctx.obj or {}
    merged = dict(base.get("overrides", {}))
    merged.update({k: v for k, v in overrides.items() if v is not None})
    if "jobs" not in merged:
        merged["jobs"] = jobs_from_env()
    try:
        return RunConfig.load(base.get("config_path"), merged)
    except (ConfigError, ValueError) as exc:
        raise click.UsageError(f"config error: {exc}") from exc


def _emit(cfg: RunConfig, rep: VerificationReport, extra: str = "", timing: bool = False) -> None:
    text = rep.to_csv() if cfg.fmt == "csv" else rep.to_json(with_timing=timing)
    path = write_report(text, cfg.out_dir, f"{rep.suite}-{cfg.digest(rep.suite, extra)}", cfg.fmt)
    for line in rep.summary_lines():
        click.echo(line)
    click.echo(f"report: {path}")
    if cfg.fmt == "json" and "ce" in rep.artifacts:
        write_report(rep.artifacts["ce"]["csv"], cfg.out_dir, f"betti-{cfg.digest(rep.suite, extra)}", "csv")


def _finish(reps: Sequence[VerificationReport]) -> None:
    sys.exit(1 if any(r.failed for r in reps) else 0)


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="TOML run configuration; command-line flags override it.")
@click.option("--out", "out_dir", default=None, help="Report directory (default: reports).")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None)
@click.option("--seed", type=int, default=None, help="Seed for sampled checks.")
@click.option("--timing/--no-timing", default=False, help="Include timings in JSON reports (breaks byte-identity).")
@click.pass_context
def cli(ctx, config_path, out_dir, fmt, seed, timing):
    """Exact verification runs for W(n), S(n), H(n) and their Lie-Cartan modules."""
    ctx.obj = {"config_path": config_path, "timing": timing,
               "overrides": {k: v for k, v in dict(out_dir=out_dir, fmt=fmt, seed=seed).items() if v is not None}}


def _kind_opts(f):
    f = click.option("--window", default=None, help="Degree window a:b.")(f)
    f = click.option("--n", type=int, default=None)(f)
    f = click.option("--kind", type=click.Choice(["W", "S", "H", "w", "s", "h"]), default=None)(f)
    return f


@cli.command()
@_kind_opts
@click.pass_context
def algebra(ctx, kind, n, window):
    """Grading, closure, Jacobi and the g0 isomorphism in a window."""
    cfg = _config(ctx, kind=kind, n=n, window=window or "-1:3")
    rep = suites.algebra_report(cfg)
    _emit(cfg, rep, timing=ctx.obj["timing"])
    _finish([rep])


@cli.command()
@_kind_opts
@click.option("--v-lambda", "v_lambda", multiple=True, help="Weight of a prolongation module V(lambda), e.g. 1,0.")
@click.option("--delta-r", "delta_r", multiple=True, help="Weight of a standard module tensored with R.")
@click.pass_context
def module(ctx, kind, n, window, v_lambda, delta_r):
    """Build modules and run the LC-axiom, freeness, irreducibility and radical checks."""
    try:
        cfg = _config(ctx, kind=kind, n=n, window=window, weights=list(v_lambda) + list(delta_r))
    except click.UsageError:
        raise
    rep = suites.module_report(cfg, _weights(v_lambda), _weights(delta_r))
    _emit(cfg, rep, extra=repr((v_lambda, delta_r)), timing=ctx.obj["timing"])
    _finish([rep])


@cli.command()
@_kind_opts
@click.option("--source", multiple=True, required=True, help="Module spec TAG:w[@depth], TAG in V, D, DR.")
@click.option("--target", multiple=True, required=True)
@click.option("--mode", type=click.Choice(["lc", "g"]), default="lc")
@click.pass_context
def hom(ctx, kind, n, window, source, target, mode):
    """Hom-dimension table between windowed modules, with stabilization flags."""
    cfg = _config(ctx, kind=kind, n=n, window=window)
    try:
        rep = suites.hom_report(cfg, source, target, mode)
    except ConfigError as exc:
        raise click.UsageError(str(exc)) from exc
    _emit(cfg, rep, extra=repr((source, target, mode)), timing=ctx.obj["timing"])
    for row in rep.artifacts["table"]:
        click.echo(f"dim Hom({row['source']}, {row['target']}) = {row['dim']}  stable={row['stable']}")
    _finish([rep])


@cli.command()
@click.option("--ce", default=None, help="Finite-dimensional CE cohomology: gl<n>, sl<n>, sp<n>.")
@click.option("--koszul", default=None, help="Koszul complex of W<n> or S<n>.")
@click.option("--strands", default="0:6", help="Koszul strand range a:b.")
@click.option("--ulc", default=None, help="Windowed weight-0 ULC cohomology of R for W<n>.")
@click.option("--q", "q_range", default="0:1", help="Cohomological degrees a:b for --ulc.")
@click.option("--caps", default=None, help="Comma-separated load caps for --ulc.")
@click.option("--resolution", default=None, help="Resolution differential certificates for a kind.")
@click.option("--accounting", default=None, help="Composition accounting for a kind.")
@click.option("--q-max", "q_max", type=int, default=None)
@click.pass_context
def cohomology(ctx, ce, koszul, strands, ulc, q_range, caps, resolution, accounting, q_max):
    """Koszul strands, CE Betti numbers, windowed ULC cohomology and resolution certificates."""
    cfg = _config(ctx, caps=caps, q_max=q_max)
    try:
        rep = suites.cohomology_report(cfg, ce=ce, koszul=koszul, strands=_range(strands), ulc=ulc, q=_range(q_range),
                                       resolution=resolution, accounting=accounting)
    except (ConfigError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    _emit(cfg, rep, extra=repr((ce, koszul, strands, ulc, q_range, resolution, accounting)),
          timing=ctx.obj["timing"])
    if "ce" in rep.artifacts:
        click.echo(f"Betti {rep.artifacts['ce']['algebra']}: {tuple(rep.artifacts['ce']['betti'])}")
    if "ulc" in rep.artifacts:
        click.echo(f"ULC Betti: {tuple(rep.artifacts['ulc']['betti'])}")
    _finish([rep])


@cli.command()
@_kind_opts
@click.option("--samples", type=int, default=200, help="Seeded composite triples checked for associativity.")
@click.pass_context
def natalg(ctx, kind, n, window, samples):
    """Associativity, (N2)-(N5) and the (N5) sign audit of the naturalized algebra."""
    cfg = _config(ctx, kind=kind, n=n, window=window or "-1:3")
    rep = suites.natalg_report(cfg, samples)
    _emit(cfg, rep, extra=repr(samples), timing=ctx.obj["timing"])
    _finish([rep])


def _run_named(args):
    name, cfg = args
    if name == "algebra":
        return suites.algebra_report(RunConfig.from_mapping(dict(cfg.echo(), window=(-1, 3))))
    if name == "module":
        k = cfg.algebra_kind
        lams = [tuple(w) for w in cfg.weights] or [(0,) * k.weight_length]
        return suites.module_report(cfg, lams, [lams[0]] if k.family == "W" else [])
    if name == "hom":
        k = cfg.algebra_kind
        z = ",".join("0" for _ in range(k.weight_length))
        return suites.hom_report(cfg, [f"V:{z}@0"], [f"V:{z}@0", f"V:{z}@1"])
    if name == "cohomology":
        k = cfg.algebra_kind
        kw = dict(ce=f"{k.g0_name.replace('(', '').replace(')', '')}" if k.family != "H" or k.n <= 2 else None,
                  koszul=k.label.replace("(", "").replace(")", "") if k.family in ("W", "S") else None,
                  accounting=f"{k.family}{k.n}", resolution=f"{k.family}{k.n}" if k.n <= 2 else None,
                  ulc=f"W{k.n}" if k.family == "W" and k.n <= 2 else None)
        return suites.cohomology_report(cfg, **kw)
    if name == "natalg":
        return suites.natalg_report(RunConfig.from_mapping(dict(cfg.echo(), window=(-1, 3))), 50)
    raise ValueError(name)


@cli.command(name="all")
@_kind_opts
@click.option("--jobs", type=int, default=None, help="Worker processes (default: $LCARTAN_JOBS or 1).")
@click.pass_context
def all_(ctx, kind, n, window, jobs):
    """Every suite for one configuration; reports are assembled in a fixed order."""
    cfg = _config(ctx, kind=kind, n=n, window=window, jobs=jobs)
    work = [(s, cfg) for s in suites.SUITES]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            reps = list(ex.map(_run_named, work))
    else:
        reps = [_run_named(w) for w in work]
    for rep in reps:
        _emit(cfg, rep, extra="all", timing=ctx.obj["timing"])
    _finish(reps)


def main(argv: Optional[Sequence[str]] = None) -> None:
    cli.main(args=list(argv) if argv is not None else None, prog_name="lcartan")


if __name__ == "__main__":
    main()
