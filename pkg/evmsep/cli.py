"""
Command-line front-end.

Analyzes state files, exports expectation value matrices, writes family
states, scans family parameter grids and writes the reproduction bundles.

Exit codes: 0 success (for ``analyze``: separable or inconclusive), 2 entanglement
detected by ``analyze``, 1 input or domain error.
"""

import functools
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

import click

from evmsep.criteria import analyze as analyze_state
from evmsep.criteria import isotropic_witness, werner_witness
from evmsep.evm import build_evm
from evmsep.families import build, exact_matrix
from evmsep.models.criteria import DEFAULT_TOLERANCES, Tolerances, WitnessValue
from evmsep.models.errors import EvmsepError
from evmsep.models.family import FamilyKind, FamilySpec
from evmsep.models.scan import ReproduceTarget, ScanAxis
from evmsep.reporting import DEFAULT_PRECISION, ReportPrinter
from evmsep.scanning.boundary import DEFAULT_BISECTION_TOL
from evmsep.scanning.export import boundaries_path, write_boundaries, write_scan
from evmsep.scanning.grid import DEFAULT_STEP_1D, DEFAULT_STEP_2D, parse_int_range, parse_range, unit_axis
from evmsep.scanning.registry import DEFAULT_MATRIX_PATH_MAX_D, family_registry, get_scan_family
from evmsep.scanning.reproduce import DEFAULT_MASK_MAX_D, DEFAULT_THRESHOLD_MAX_D, Reproducer
from evmsep.scanning.runner import GridScanner
from evmsep.storage import read_state, write_evm, write_state
from evmsep.storage.common import json_safe

__all__ = ["cli", "EXIT_ENTANGLED", "EXIT_ERROR"]

_LOGGER = logging.getLogger(__name__)

EXIT_ERROR = 1
EXIT_ENTANGLED = 2
DEFAULT_D_RANGE = "2..8"

_workers_opt = click.option("--workers", "-w", default=1, show_default=True, help="Parallel worker count.")
_tol_opt = click.option(
    "--tol", type=float, default=None, help="Set every tolerance to this value (default 1e-9 each)."
)
_precision_opt = click.option(
    "--precision", default=DEFAULT_PRECISION, show_default=True, help="Significant digits of printed numbers."
)


def _tolerances(tol: float | None) -> Tolerances:
    return DEFAULT_TOLERANCES if tol is None else Tolerances.uniform(tol)


def _reports_errors(func):
    """Turns library errors into a one-line ``[CODE] message`` and exit code 1."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except EvmsepError as exc:
            click.echo(f"[{exc.code}] {exc}", err=True)
            sys.exit(EXIT_ERROR)

    return wrapper


@click.group()
@click.option("-v", "--verbose", count=True, help="Increase log verbosity. -v → INFO, -vv → DEBUG.")
@click.option("-q", "--quiet", count=True, help="Decrease log verbosity. -q → ERROR, -qq → CRITICAL.")
def cli(verbose: int, quiet: int):
    """Entanglement detection from expectation value matrices."""
    level = max(logging.DEBUG, min(logging.CRITICAL, logging.WARNING - 10 * verbose + 10 * quiet))
    # basicConfig is a no-op if handlers are already installed (e.g. in tests).
    logging.root.handlers.clear()
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s")


def _provenance_witness(provenance: dict | None, tolerances: Tolerances) -> WitnessValue | None:
    """Closed-form witness for states written by ``family`` with a Werner or isotropic header."""
    if not provenance:
        return None
    kind = provenance.get("kind")
    params = provenance.get("parameters") or {}
    try:
        d = int(provenance["d"])
        if kind == FamilyKind.WERNER.value:
            return werner_witness(d, float(Fraction(str(params["eta"]))), tolerances.violation)
        if kind == FamilyKind.ISOTROPIC.value:
            return isotropic_witness(d, float(Fraction(str(params["alpha"]))), tolerances.violation)
    except (KeyError, ValueError, TypeError) as exc:
        _LOGGER.warning("Ignoring unreadable provenance header: %s", exc)
    return None


@cli.command("analyze")
@click.option("--state", "state_file", required=True, type=click.Path(path_type=Path), help="State or EVM file.")
@_tol_opt
@click.option("--json", "as_json", is_flag=True, default=False, help="Print the report as JSON.")
@click.option("--out", "-o", default=None, type=click.Path(path_type=Path), help="Write the state with its report.")
@_precision_opt
@_reports_errors
def analyze(state_file: Path, tol: float | None, as_json: bool, out: Path | None, precision: int):
    """Run every applicable criterion on a state file."""
    tolerances = _tolerances(tol)
    rho, document = read_state(state_file, tolerances.trace)
    report = analyze_state(rho, tolerances, _provenance_witness(document.provenance, tolerances))
    if as_json:
        click.echo(json.dumps(json_safe(report.as_dict()), indent=2))
    else:
        ReportPrinter(sys.stdout, precision=precision).print(report)
    if out is not None:
        write_state(out, rho, document.provenance, report.as_dict())
    if report.entangled:
        sys.exit(EXIT_ENTANGLED)


@cli.command("evm")
@click.option("--state", "state_file", required=True, type=click.Path(path_type=Path), help="State file.")
@click.option("--out", "-o", default=None, type=click.Path(path_type=Path), help="Write an EVM file.")
@_tol_opt
@_precision_opt
@_reports_errors
def evm(state_file: Path, out: Path | None, tol: float | None, precision: int):
    """Build the expectation value matrix of a state file."""
    rho, document = read_state(state_file, _tolerances(tol).trace)
    matrix = build_evm(rho)
    if out is None:
        ReportPrinter(sys.stdout, precision=precision).print(matrix)
        return
    write_evm(out, matrix, document.provenance)
    click.echo(f"Wrote {out}")


def _parse_parameter(kind: FamilyKind, text: str) -> tuple[str, Fraction | complex | int]:
    name, sep, raw = text.partition("=")
    name, raw = name.strip(), raw.strip()
    if not sep or not name or not raw:
        raise click.BadParameter(f"expected NAME=VALUE, got {text!r}", param_hint="--param")
    try:
        if kind is FamilyKind.BELL:
            return name, complex(raw)
        if kind is FamilyKind.PRODUCT:
            return name, int(raw)
        return name, Fraction(raw)
    except ValueError as exc:
        raise click.BadParameter(f"cannot read value of {name!r}: {raw!r}", param_hint="--param") from exc


@cli.command("family")
@click.argument("kind", type=click.Choice([k.value for k in FamilyKind]))
@click.option("--d", "d", default=None, type=int, help="Local dimension (fixed to 3 for horodecki/upb, 2 for bell).")
@click.option("--param", "-p", "params", multiple=True, help="Family parameter as NAME=VALUE; repeatable.")
@click.option("--out", "-o", required=True, type=click.Path(path_type=Path), help="State file to write.")
@click.option("--exact", is_flag=True, default=False, help="Also build the exact rational matrix and check its trace.")
@_reports_errors
def family(kind: str, d: int | None, params: tuple[str, ...], out: Path, exact: bool):
    """Write a family member as a state file with a provenance header.

    Rational values such as 1/3 or 0.25 are kept exact until the matrix is built.
    """
    family_kind = FamilyKind(kind)
    if d is None:
        d = {FamilyKind.HORODECKI: 3, FamilyKind.UPB: 3}.get(family_kind, 2)
    spec = FamilySpec(family_kind, d, dict(_parse_parameter(family_kind, p) for p in params))
    if exact:
        entries = exact_matrix(spec)
        click.echo(f"Exact trace: {sum(entries[i, i] for i in range(entries.shape[0]))}")
    write_state(out, build(spec), spec.provenance())
    click.echo(f"Wrote {out}")


def _scan_axes(family_kind: FamilyKind, d_range: str | None, ranges: dict[str, str | None]) -> tuple[ScanAxis, ...]:
    names = get_scan_family(family_kind).axis_names
    if extra := [name for name, text in ranges.items() if text is not None and name not in names]:
        raise click.UsageError(f"{family_kind.value} does not scan over {', '.join(extra)}")
    if d_range is not None and "d" not in names:
        raise click.UsageError(f"{family_kind.value} has a fixed dimension; drop --d")
    unit_names = [name for name in names if name != "d"]
    step = DEFAULT_STEP_1D if len(unit_names) == 1 else DEFAULT_STEP_2D
    axes = []
    for name in names:
        if name == "d":
            axes.append(parse_int_range("d", d_range or DEFAULT_D_RANGE))
        elif ranges.get(name) is not None:
            axes.append(parse_range(name, ranges[name]))
        else:
            axes.append(unit_axis(name, step))
    return tuple(axes)


@cli.command("scan")
@click.argument("family_name", metavar="FAMILY", type=click.Choice([k.value for k in family_registry()]))
@click.option("--d", "d_range", default=None, help=f"Dimension range A..B [default: {DEFAULT_D_RANGE}].")
@click.option("--eta", default=None, help="Werner axis LO:HI:STEP.")
@click.option("--alpha", default=None, help="Isotropic axis LO:HI:STEP.")
@click.option("--a", "a_range", default=None, help="Horodecki a axis LO:HI:STEP.")
@click.option("--p", "p_range", default=None, help="Mixing weight axis LO:HI:STEP.")
@click.option("--out", "-o", required=True, type=click.Path(path_type=Path), help="Record CSV to write.")
@click.option(
    "--matrix-max-d",
    default=DEFAULT_MATRIX_PATH_MAX_D,
    show_default=True,
    help="Largest d evaluated on the matrix path; closed forms are used above.",
)
@click.option("--no-ppt", is_flag=True, default=False, help="Skip the PPT test on matrix-path points.")
@click.option("--no-refine", is_flag=True, default=False, help="Report boundary brackets without bisection.")
@click.option(
    "--bisection-tol", default=DEFAULT_BISECTION_TOL, show_default=True, help="Matrix-path bisection resolution."
)
@_tol_opt
@_workers_opt
@_reports_errors
def scan(  # pylint: disable=too-many-arguments,too-many-positional-arguments
    family_name: str,
    d_range: str | None,
    eta: str | None,
    alpha: str | None,
    a_range: str | None,
    p_range: str | None,
    out: Path,
    matrix_max_d: int,
    no_ppt: bool,
    no_refine: bool,
    bisection_tol: float,
    tol: float | None,
    workers: int,
):
    """Scan FAMILY over a parameter grid and write the verdicts as CSV.

    The boundary table goes to <out stem>.boundaries.csv next to OUT.
    """
    family_kind = FamilyKind(family_name)
    axes = _scan_axes(family_kind, d_range, {"eta": eta, "alpha": alpha, "a": a_range, "p": p_range})
    scanner = GridScanner(family_kind, axes, _tolerances(tol), matrix_max_d, with_ppt=not no_ppt)
    result = scanner.run(workers, refine=not no_refine, bisection_tol=bisection_tol)
    write_scan(result, out)
    write_boundaries(result, boundaries_path(out))
    ReportPrinter(sys.stdout).print(result)


@cli.command("reproduce")
@click.argument("target", type=click.Choice([t.value for t in ReproduceTarget] + ["all"]))
@click.option("--out", "-o", required=True, type=click.Path(file_okay=False, path_type=Path), help="Output directory.")
@click.option("--mask-max-d", default=DEFAULT_MASK_MAX_D, show_default=True, help="Largest d of the masks.")
@click.option(
    "--threshold-max-d", default=DEFAULT_THRESHOLD_MAX_D, show_default=True, help="Largest d of the threshold tables."
)
@click.option("--no-ppt", is_flag=True, default=False, help="Skip the PPT test in the masks.")
@_tol_opt
@_workers_opt
@_reports_errors
def reproduce(  # pylint: disable=too-many-arguments,too-many-positional-arguments
    target: str, out: Path, mask_max_d: int, threshold_max_d: int, no_ppt: bool, tol: float | None, workers: int
):
    """Write the CSV bundle of TARGET (fig1a, fig1b, ex3, ex4 or all) into OUT."""
    reproducer = Reproducer(
        out,
        num_workers=workers,
        tolerances=_tolerances(tol),
        mask_max_d=mask_max_d,
        threshold_max_d=threshold_max_d,
        with_ppt=not no_ppt,
    )
    targets = list(ReproduceTarget) if target == "all" else [ReproduceTarget(target)]
    for item in targets:
        for path in reproducer.run(item):
            click.echo(f"Wrote {path}")
