import logging
import sys
from pathlib import Path
from typing import List, Optional

import attrs
import click
import numpy as np
import pandas as pd

from gfclt import __version__, config
from gfclt.analysis import (
    compute_limits,
    decay_rate_check,
    phi_by_quadrature,
    phi_by_series,
    principal_part_phi,
)
from gfclt.enums import OutFormat
from gfclt.exceptions import NumericalError, SeriesOrderError, SeriesUnavailableError, UsageError
from gfclt.kernels import DefantKernel, SeriesKernel, build_kernel, kernel_self_check, make_defant_kernel
from gfclt.permlab import exact_distribution, ks_to_normal, ks_trend, mc_distribution, verify_descent_identity
from gfclt.utils.constants import DEFANT_MU, DEFANT_SIGMA2, EXIT_FAILURE, EXIT_OK, EXIT_USAGE
from gfclt.utils.io import render, write_output

logger = logging.getLogger(__name__)


@attrs.define
class RunConfig:
    """Resolved flags of one invocation; embedded in every report"""

    command: str
    kernel_spec: Optional[str] = None
    n_max: Optional[int] = None
    x_probe: List[float] = attrs.Factory(list)
    samples: Optional[int] = None
    seed: Optional[int] = None
    trunc: Optional[int] = None
    n: Optional[int] = None
    n_grid: List[int] = attrs.Factory(list)
    radius: Optional[float] = None
    exact: bool = False
    out_format: OutFormat = OutFormat.json
    out_path: Optional[Path] = None

    def to_dict(self) -> dict:
        def serialize(inst, field, value):
            if isinstance(value, OutFormat):
                return value.value
            if isinstance(value, Path):
                return str(value)
            return value

        return attrs.asdict(self, value_serializer=serialize)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        data = dict(data)
        data["out_format"] = OutFormat.from_str(data.get("out_format", "json"))
        if data.get("out_path") is not None:
            data["out_path"] = Path(data["out_path"])
        return cls(**data)


def _report(cfg: RunConfig, **sections) -> dict:
    return {"command": cfg.command, "version": __version__, "config": cfg.to_dict(), **sections}


def _emit(cfg: RunConfig, report: dict, frame: Optional[pd.DataFrame]):
    write_output(render(report, frame, cfg.out_format), cfg.out_path)


def _pair(value: complex) -> list:
    return [float(np.real(value)), float(np.imag(value))]


def callback_out_format(ctx, param, value) -> OutFormat:
    try:
        return OutFormat.from_str(value)
    except ValueError as e:
        raise click.BadParameter(str(e))


def callback_kernel(ctx, param, value) -> Optional[str]:
    if value is not None and not value.strip():
        raise click.BadParameter("Kernel spec is empty")
    return value


def output_options(func):
    func = click.option(
        "--out",
        "out_path",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help="Write the report here instead of stdout",
    )(func)
    func = click.option(
        "--format",
        "out_format",
        type=click.Choice(OutFormat.namelist()),
        default="json",
        show_default=True,
        callback=callback_out_format,
        help="Report format",
    )(func)
    return func


def kernel_options(func):
    func = click.option(
        "--trunc",
        type=click.IntRange(min=1),
        default=None,
        help="z-truncation of series kernels (overrides the spec file)",
    )(func)
    func = click.option(
        "--kernel",
        "kernel_spec",
        required=True,
        callback=callback_kernel,
        help="Kernel spec: path to a JSON file or inline JSON",
    )(func)
    return func


@click.group()
@click.version_option(__version__)
@click.option("--verbose", is_flag=True, default=False, help="Debug logging on stderr")
@click.pass_context
def main(ctx, verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose


@main.command(help="Self-check a kernel and compute its limit parameters mu and Sigma")
@kernel_options
@click.option(
    "--dump-series",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write the kernel's coefficient table (m, n, re, im) as CSV",
)
@output_options
def analyze(kernel_spec: str, trunc: Optional[int], dump_series: Optional[Path], out_format: OutFormat, out_path):
    cfg = RunConfig(command="analyze", kernel_spec=kernel_spec, trunc=trunc, out_format=out_format, out_path=out_path)
    kernel = build_kernel(kernel_spec, trunc=trunc)

    if dump_series is not None:
        if isinstance(kernel, DefantKernel):
            table = kernel.series.f_hat
        elif isinstance(kernel, SeriesKernel):
            table = kernel.g
        else:
            raise UsageError(f"Kernel '{kernel.name}' is not series backed, nothing to dump")
        table.to_frame().to_csv(dump_series, index=False)

    check = kernel_self_check(kernel)
    limits = compute_limits(kernel) if check.passed else None
    passed = check.passed and limits.passed()

    report = _report(
        cfg, kernel=kernel.name, self_check=check.to_dict(), limits=limits and limits.to_dict(), passed=passed
    )
    frame = None
    if limits is not None:
        rows = [(f"mu_{j}", v) for j, v in enumerate(limits.mu)]
        rows += [(f"sigma_{j}_{k}", v) for (j, k), v in np.ndenumerate(limits.sigma)]
        rows += [("imag_residue", limits.imag_residue), ("psd_slack", limits.psd_slack)]
        frame = pd.DataFrame(rows, columns=["name", "value"])
    _emit(cfg, report, frame)

    if limits is not None:
        click.echo(f"{kernel.name}: mu = {limits.mu.tolist()}, sigma = {limits.sigma.tolist()}", err=True)
    else:
        click.echo(f"{kernel.name}: self check failed, max deviation {check.max_deviation:.3g}", err=True)
    return EXIT_OK if passed else EXIT_FAILURE


@main.command(help="Characteristic-function coefficients by series and by Cauchy quadrature, with pole asymptotics")
@kernel_options
@click.option("--x", "x_probe", type=float, multiple=True, help="Frequency x; repeat for each coordinate")
@click.option("--n-max", type=click.IntRange(min=1), default=None, help="Largest coefficient index")
@click.option("--radius", type=float, default=None, help="Quadrature radius (default 0.9 |b(x)|)")
@output_options
def coeffs(kernel_spec, trunc, x_probe, n_max, radius, out_format, out_path):
    n_max = config["coeffs"]["default_n_max"] if n_max is None else n_max
    cfg = RunConfig(
        command="coeffs",
        kernel_spec=kernel_spec,
        trunc=trunc,
        x_probe=list(x_probe),
        n_max=n_max,
        radius=radius,
        out_format=out_format,
        out_path=out_path,
    )
    kernel = build_kernel(kernel_spec, trunc=trunc)
    if x_probe and len(x_probe) != kernel.dim:
        raise click.BadParameter(f"Kernel '{kernel.name}' needs {kernel.dim} coordinates, got {len(x_probe)}")
    x = np.asarray(x_probe, dtype=float) if x_probe else np.zeros(kernel.dim)

    quadrature = phi_by_quadrature(kernel, x, n_max, r=radius)
    try:
        series = phi_by_series(kernel, x, n_max)
    except (SeriesUnavailableError, SeriesOrderError) as e:
        logger.warning(f"No series path: {e}")
        series = None
    decay = decay_rate_check(kernel, x, n_max)
    principal = np.array([principal_part_phi(decay.singularity, n) for n in range(n_max + 1)])

    gap = None if series is None else float(np.max(np.abs(series.values - quadrature.values)))
    agree = gap is None or gap < config["coeffs"]["agreement_tolerance"]
    passed = bool(agree and decay.passed and quadrature.bounded())

    rows = []
    for n in range(n_max + 1):
        row = {"n": n, "quadrature": _pair(quadrature.values[n]), "principal": _pair(principal[n])}
        row["error"] = float(decay.errors[n])
        if series is not None:
            row["series"] = _pair(series.values[n])
        rows.append(row)
    report = _report(
        cfg,
        kernel=kernel.name,
        phi=rows,
        radius=quadrature.radius,
        nodes=quadrature.nodes,
        path_gap=gap,
        singularity=decay.to_dict(),
        passed=passed,
    )

    principal_frame = pd.DataFrame(
        {"n": np.arange(n_max + 1), "re": principal.real, "im": principal.imag, "method": "principal"}
    )
    frames = [quadrature.to_frame(), principal_frame] + ([] if series is None else [series.to_frame()])
    _emit(cfg, report, pd.concat(frames, ignore_index=True))

    click.echo(f"path gap = {gap}, decay slope = {decay.slope:.4g}, r_fit = {decay.r_fit:.4g}", err=True)
    return EXIT_OK if passed else EXIT_FAILURE


def _truncation_stability(trunc: int, seed: int) -> float:
    settings = config["verify_defant"]
    rng = np.random.default_rng(seed)
    count = settings["stability_points"]
    xs = rng.uniform(-settings["stability_x"], settings["stability_x"], size=count)
    zs = rng.uniform(0, settings["stability_z"], size=count) * np.exp(2j * np.pi * rng.uniform(size=count))

    low, high = make_defant_kernel(trunc), make_defant_kernel(trunc + 8)
    try:
        return float(max(abs(low.evaluate(x, z) - high.evaluate(x, z)) for x, z in zip(xs, zs)))
    except NumericalError as e:
        logger.warning(f"Truncation stability check failed: {e}")
        return float("inf")


@main.command("verify-defant", help="Check the descent-statistic limit law end to end")
@click.option("--n-max", type=click.IntRange(min=1), default=None, help="Largest n for the descent identity")
@click.option("--trunc", type=click.IntRange(min=1), default=None, help="z-truncation of the Defant kernel")
@click.option("--n-grid", type=click.IntRange(min=2), multiple=True, help="Monte Carlo sizes; repeat for each")
@click.option("--samples", type=click.IntRange(min=1), default=None, help="Monte Carlo samples per size")
@click.option("--seed", type=int, default=None, help="Monte Carlo seed")
@click.option("--progress", is_flag=True, default=False, help="Show progress bars on stderr")
@output_options
def verify_defant(n_max, trunc, n_grid, samples, seed, progress, out_format, out_path):
    settings = config["verify_defant"]
    cfg = RunConfig(
        command="verify-defant",
        n_max=settings["n_max"] if n_max is None else n_max,
        trunc=config["series"]["default_trunc"] if trunc is None else trunc,
        n_grid=list(n_grid) or list(settings["n_grid"]),
        samples=settings["samples"] if samples is None else samples,
        seed=settings["seed"] if seed is None else seed,
        out_format=out_format,
        out_path=out_path,
    )

    identity = verify_descent_identity(cfg.n_max, progress=progress)

    kernel = make_defant_kernel(cfg.trunc)
    limits = compute_limits(kernel)
    limits_ok = bool(
        abs(limits.mu[0] - DEFANT_MU) < settings["mu_tolerance"]
        and abs(limits.sigma[0, 0] - DEFANT_SIGMA2) < settings["sigma_tolerance"]
        and limits.passed()
    )

    stability = _truncation_stability(cfg.trunc, cfg.seed)
    stable = stability < settings["stability_tolerance"]
    if not stable:
        logger.warning(f"Defant kernel at trunc {cfg.trunc} differs from trunc {cfg.trunc + 8} by {stability:.3g}")

    convergence = []
    for n in cfg.n_grid:
        table = mc_distribution(n, cfg.samples, cfg.seed, progress=progress)
        summary = table.summary()
        summary.update(n=n, ks=ks_to_normal(table, DEFANT_MU, DEFANT_SIGMA2))
        convergence.append(summary)

    ks = [row["ks"] for row in convergence]
    ks_ok = ks[-1] < settings["ks_threshold"]
    trend_ok, nonincreasing = ks_trend(ks)
    if not nonincreasing:
        logger.warning(f"KS statistics are not monotone in n: {[round(v, 4) for v in ks]}")
    passed = bool(identity.passed and limits_ok and ks_ok and trend_ok)

    report = _report(
        cfg,
        identity=identity.to_dict(),
        limits=limits.to_dict() | {"expected_mu": DEFANT_MU, "expected_sigma": DEFANT_SIGMA2, "passed": limits_ok},
        truncation_stability={"max_deviation": stability, "stable": stable},
        convergence={
            "rows": convergence,
            "ks_below_threshold": ks_ok,
            "ks_trend_ok": trend_ok,
            "ks_nonincreasing": nonincreasing,
        },
        passed=passed,
    )
    _emit(cfg, report, pd.DataFrame(convergence))

    click.echo(
        f"identity {'ok' if identity.passed else 'FAILED'}, limits {'ok' if limits_ok else 'FAILED'}, "
        f"KS {ks[0]:.4f} -> {ks[-1]:.4f}",
        err=True,
    )
    return EXIT_OK if passed else EXIT_FAILURE


@main.command(help="Distribution of des(s(pi_n)) + 1, exhaustive or Monte Carlo")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Permutation size")
@click.option("--exact", is_flag=True, default=False, help="Enumerate all of S_n when n is small enough")
@click.option("--samples", type=click.IntRange(min=1), default=None, help="Monte Carlo samples")
@click.option("--seed", type=int, default=None, help="Monte Carlo seed")
@click.option("--progress", is_flag=True, default=False, help="Show progress bars on stderr")
@output_options
def simulate(n, exact, samples, seed, progress, out_format, out_path):
    cfg = RunConfig(
        command="simulate",
        n=n,
        exact=exact,
        samples=config["simulate"]["samples"] if samples is None else samples,
        seed=config["simulate"]["seed"] if seed is None else seed,
        out_format=out_format,
        out_path=out_path,
    )

    if exact and n <= config["permlab"]["exact_max_n"]:
        table = exact_distribution(n, progress=progress)
    else:
        if exact:
            click.echo(f"n = {n} is too large to enumerate, sampling instead", err=True)
        table = mc_distribution(n, cfg.samples, cfg.seed, progress=progress)

    summary = table.summary()
    summary["ks"] = ks_to_normal(table, DEFANT_MU, DEFANT_SIGMA2)
    _emit(cfg, _report(cfg, table=table.to_dict(), summary=summary), table.to_frame())

    click.echo(f"mean/n = {summary['mean_over_n']:.6f}, var/n = {summary['var_over_n']:.6f}", err=True)
    return EXIT_OK


def run(args: Optional[List[str]] = None) -> int:
    """Invoke the CLI and map the outcome onto the exit code contract"""
    try:
        result = main.main(args=args, prog_name="gfclt", standalone_mode=False, obj={})
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except UsageError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_USAGE
    except NumericalError as e:
        click.echo(f"Numerical failure: {e}", err=True)
        return EXIT_FAILURE
    return result if isinstance(result, int) else EXIT_OK


def entry():
    sys.exit(run())
