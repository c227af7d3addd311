"""
Command line front end.

This module contains the commands exposed by the `torus-entropy`
executable. Each command reads its inputs, runs the computation and
writes a CSV or JSON table to --output (stdout by default).

Exit codes: 0 success, 2 configuration or input error, 3 numerical failure.
"""

import argparse
import asyncio
import csv
import io
import json
import logging
import math
import re
import sys
from functools import partial
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from .analogs import classical_purity_at, report
from .anharmonic import (
    classical_covariance_series,
    orbit_average,
    residual_slope,
    time_average_oracle,
    variance_product_series,
)
from .classes import (
    AnalogConfig,
    ModelConfig,
    NormalModeSystem,
    OracleConfig,
    OracleRow,
    QuadratureConfig,
    QuadratureMethod,
    QuarticOscillator,
    ResultRecord,
    Side,
    SubsystemSelector,
    SweepConfig,
    TorusSpec,
)
from .covariance import (
    coordinate_labels,
    covariance_by_quadrature,
    covariance_normal_form,
    subsystem_covariance,
)
from .errors import (
    CliError,
    ConfigParseError,
    InvalidRange,
    IoError,
    NumericalFailure,
    TorusEntropyError,
    ValidationFailure,
)
from .models import build_system, three_oscillator_from_frequencies
from .quantum import (
    quantum_entropy,
    quantum_gaussian_covariance,
    quantum_linear_entropy,
    quantum_purity,
)
from .session import run_sweep, sweep_session

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

CLOSED_FORM = "closed-form"


# ---------------------------------------------------------------------------
# Input
# ---------------------------------------------------------------------------

def load_config(path: str) -> ModelConfig:
    """Read and validate a JSON model configuration."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigParseError(f"{path} is not valid JSON: {e}") from e
    try:
        return ModelConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigParseError(f"{path}: {e}") from e


def torus_from_config(config: ModelConfig, n_dof: int, beta: Optional[float] = None) -> TorusSpec:
    """Explicit --beta wins, then the configured actions, then beta = 1."""
    if beta is not None:
        return TorusSpec.uniform(beta, n_dof)
    if config.actions is None:
        return TorusSpec.uniform(1.0, n_dof)
    if isinstance(config.actions, (int, float)):
        return TorusSpec.uniform(float(config.actions), n_dof)
    return TorusSpec(actions=config.actions)


def parse_subsystems(tokens: Sequence[str], n_dof: int) -> list[SubsystemSelector]:
    """`all` or labels such as 1,3 / (1,3)."""
    if list(tokens) == ["all"]:
        return SubsystemSelector.all_subsets(n_dof)
    selectors = []
    for token in tokens:
        try:
            indices = tuple(int(i) for i in token.strip("()").split(","))
        except ValueError as e:
            raise ConfigParseError(f"bad subsystem {token!r}") from e
        selector = SubsystemSelector(indices=indices)
        selector.check_within(n_dof)
        selectors.append(selector)
    return selectors


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

FLOAT_FORMAT = ".17g"

# floats travel through json.dumps as tagged strings and are unquoted afterwards
_FLOAT_TAG = "\x00float:"
_TAGGED_FLOAT = re.compile(r'"\\u0000float:([^"]*)"')


def format_float(value: Optional[float]) -> str:
    """17 significant digits, shared by the CSV and JSON writers."""
    if value is None:
        return ""
    if not math.isfinite(value):
        raise NumericalFailure(f"refusing to write non-finite value {value!r}")
    return format(value, FLOAT_FORMAT)


def render_csv(
    header: Sequence[str],
    rows: Sequence[Sequence[Any]],
    summary: Optional[dict[str, Optional[float]]] = None,
) -> str:
    """Header, rows, then optional `# name,value` summary lines."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) or v is None else v for v in row])
    for name, value in (summary or {}).items():
        writer.writerow([f"# {name}", format_float(value)])
    return buffer.getvalue()


def _tag_floats(payload: Any) -> Any:
    if isinstance(payload, float):
        return _FLOAT_TAG + format_float(payload)
    if isinstance(payload, dict):
        return {key: _tag_floats(value) for key, value in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [_tag_floats(value) for value in payload]
    return payload


def render_json(payload: Any) -> str:
    text = json.dumps(_tag_floats(payload), indent=2, allow_nan=False)
    return _TAGGED_FLOAT.sub(r"\1", text) + "\n"


def emit(text: str, output: Optional[str]) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as e:
        raise IoError(f"cannot write {output}: {e}") from e
    logger.info("wrote %s", output)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_covariance(args: argparse.Namespace) -> int:
    """Covariance matrix of the configured system on its torus.

    With --quantum the ground-state covariance is written instead: the
    torus sits at I_a = hbar/2, hbar from --hbar or the configuration.
    """
    config = load_config(args.config)
    system = build_system(config)
    if args.hbar is not None and not args.quantum:
        raise CliError("--hbar only applies together with --quantum")
    hbar = config.hbar if args.hbar is None else args.hbar
    if args.quantum:
        torus = TorusSpec.uniform(hbar / 2.0, system.n_dof)
    else:
        torus = torus_from_config(config, system.n_dof, args.beta)

    if args.method == CLOSED_FORM and args.quantum:
        cov = quantum_gaussian_covariance(system, hbar)
    elif args.method == CLOSED_FORM:
        cov = covariance_normal_form(system, torus)
    else:
        cfg = QuadratureConfig(
            nodes_per_angle=args.nodes,
            method=QuadratureMethod(args.method),
            mc_samples=args.samples,
            rng_seed=args.seed,
        )
        cov = covariance_by_quadrature(system, torus, cfg)

    labels = coordinate_labels(system.n_dof)
    matrix = cov.matrix
    if args.format == "json":
        text = render_json({"labels": labels, "actions": list(torus.actions), "matrix": matrix.tolist()})
    else:
        text = render_csv(labels, [[float(x) for x in row] for row in matrix])
    emit(text, args.output)
    return EXIT_OK


def result_record(
    system: NormalModeSystem,
    selector: SubsystemSelector,
    beta: float,
    hbar: float,
    analog_cfg: AnalogConfig,
    torus: Optional[TorusSpec] = None,
) -> ResultRecord:
    """Classical analogs and quantum counterparts of one subsystem."""
    classical = report(system, selector, beta, analog_cfg)
    quantum_sub = subsystem_covariance(quantum_gaussian_covariance(system, hbar), selector)
    return ResultRecord(
        subsystem=selector.label,
        purity=classical.purity,
        linear_entropy=classical.linear_entropy,
        von_neumann=classical.von_neumann,
        spectrum=classical.spectrum.values,
        quantum_purity=quantum_purity(quantum_sub, hbar),
        quantum_linear_entropy=quantum_linear_entropy(quantum_sub, hbar),
        quantum_entropy=quantum_entropy(quantum_sub, hbar),
        classical_purity_at_actions=(
            None if torus is None else classical_purity_at(system, selector, torus)
        ),
    )


REPORT_HEADER = [
    "subsystem", "purity", "linear_entropy", "von_neumann", "spectrum",
    "quantum_purity", "quantum_linear_entropy", "quantum_entropy",
    "classical_purity_at_actions", "purity_difference", "entropy_difference",
]


def cmd_report(args: argparse.Namespace) -> int:
    """One record per subsystem: classical analogs next to quantum values."""
    config = load_config(args.config)
    system = build_system(config)
    selectors = parse_subsystems(args.subsystems, system.n_dof)
    hbar = config.hbar if args.hbar is None else args.hbar
    analog_cfg = AnalogConfig(beta=args.beta, verify=args.verify)
    torus = None if config.actions is None else torus_from_config(config, system.n_dof)

    worker = partial(
        result_record, system, beta=args.beta, hbar=hbar, analog_cfg=analog_cfg, torus=torus
    )
    records = asyncio.run(run_sweep(worker, selectors))

    if args.format == "json":
        text = render_json([r.model_dump(mode="json") for r in records])
    else:
        rows = [
            [
                r.subsystem, r.purity, r.linear_entropy, r.von_neumann,
                ";".join(format_float(s) for s in r.spectrum),
                r.quantum_purity, r.quantum_linear_entropy, r.quantum_entropy,
                r.classical_purity_at_actions, r.purity_difference, r.entropy_difference,
            ]
            for r in records
        ]
        text = render_csv(REPORT_HEADER, rows)
    emit(text, args.output)
    return EXIT_OK


def cmd_fig_variance(args: argparse.Namespace) -> int:
    """(dq)^2 (dp)^2 against lambda, classical and quantum series."""
    if not (math.isfinite(args.lambda_max) and args.lambda_max >= 0.0):
        raise InvalidRange(f"--lambda-max must be a nonnegative number, got {args.lambda_max}")
    if args.steps < 2:
        raise InvalidRange(f"--steps must be at least 2, got {args.steps}")

    osc = QuarticOscillator(mass=args.mass, omega0=args.omega0)
    classical = variance_product_series(Side.CLASSICAL, osc, args.action)
    quantum = variance_product_series(Side.QUANTUM, osc, args.hbar)
    grid = np.linspace(0.0, args.lambda_max, args.steps)
    rows = [[float(lam), classical.evaluate(float(lam)), quantum.evaluate(float(lam))] for lam in grid]

    header = ["lambda", "classical", "quantum"]
    if args.format == "json":
        text = render_json([dict(zip(header, row)) for row in rows])
    else:
        text = render_csv(header, rows)
    emit(text, args.output)
    return EXIT_OK


def _ratio_grid(args: argparse.Namespace) -> np.ndarray:
    if args.omega1_range is not None:
        low, high = args.omega1_range
        if not (0.0 < low < high) or not (args.omega2 > 0.0):
            raise InvalidRange(f"need 0 < omega1 low < high and omega2 > 0, got {low}, {high}, {args.omega2}")
        return np.linspace(low, high, args.steps) / args.omega2
    low, high = args.ratio_range
    if not (0.0 < low < high):
        raise InvalidRange(f"need 0 < low < high, got {low}, {high}")
    return np.geomspace(low, high, args.steps)


def _entropy_row(ratio: float) -> list[float]:
    result = report(three_oscillator_from_frequencies((ratio, 1.0, 1.0)), SubsystemSelector.of(2))
    return [ratio, result.von_neumann, result.linear_entropy]


def cmd_fig_entropy(args: argparse.Namespace) -> int:
    """Entropy and linear entropy of particle 2 against w1/w2."""
    if args.steps < 2:
        raise InvalidRange(f"--steps must be at least 2, got {args.steps}")
    ratios = [float(r) for r in _ratio_grid(args)]
    rows = asyncio.run(run_sweep(_entropy_row, ratios))

    header = ["ratio", "entropy", "linear_entropy"]
    if args.format == "json":
        text = render_json([dict(zip(header, row)) for row in rows])
    else:
        text = render_csv(header, rows)
    emit(text, args.output)
    return EXIT_OK


def oracle_row(
    coupling: float,
    mass: float,
    omega0: float,
    action: float,
    method: str,
    cfg: OracleConfig,
) -> tuple[OracleRow, Optional[Exception]]:
    """Series against oracle <q^2> at one coupling; failures become rows."""
    try:
        osc = QuarticOscillator(mass=mass, omega0=omega0, coupling=coupling)
        series_q2 = classical_covariance_series(osc, action).qq.evaluate(coupling)
        oracle = time_average_oracle if method == "trajectory" else orbit_average
        averages = oracle(osc, action, cfg)
        return OracleRow(
            coupling=coupling,
            success=True,
            series_q2=series_q2,
            oracle_q2=averages.q2,
            residual=averages.q2 - series_q2,
        ), None
    except TorusEntropyError as e:
        logger.warning("lambda=%g failed: %s", coupling, e)
        return OracleRow(coupling=coupling, success=False, details=f"{type(e).__name__}: {e}"), e


def cmd_anharmonic_verify(args: argparse.Namespace) -> int:
    """Compare the classical <q^2> series with a numerical oracle."""
    worker = partial(
        oracle_row,
        mass=args.mass,
        omega0=args.omega0,
        action=args.action,
        method=args.method,
        cfg=OracleConfig(),
    )
    results = asyncio.run(run_sweep(worker, args.lambdas))
    for _, error in results:
        if error is not None and not args.keep_going:
            raise error
    rows = [row for row, _ in results]

    good = [r for r in rows if r.success]
    slope = None
    try:
        slope = residual_slope([r.coupling for r in good], [r.residual for r in good])
        logger.info("log-log residual slope %.4f over %d couplings", slope, len(good))
    except NumericalFailure as e:
        logger.info("no slope: %s", e)

    header = ["lambda", "success", "series_q2", "oracle_q2", "residual", "details"]
    if args.format == "json":
        text = render_json({"rows": [r.model_dump(mode="json") for r in rows], "slope": slope})
    else:
        text = render_csv(header, [
            [r.coupling, str(r.success).lower(), r.series_q2, r.oracle_q2, r.residual, r.details or ""]
            for r in rows
        ], summary={"slope": slope})
    emit(text, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-o", "--output", default=None, help="Output file (default: stdout)")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torus-entropy",
        description="Classical analogs of purity and entropy for integrable systems.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    parser.add_argument("--threads", type=int, default=None, help="Sweep workers (overrides TORUS_ENTROPY_THREADS)")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("covariance", help="Covariance matrix of a configured system")
    p.add_argument("config", help="JSON model configuration")
    torus = p.add_mutually_exclusive_group()
    torus.add_argument("--beta", type=float, default=None, help="Uniform action (default: configured actions, else 1)")
    torus.add_argument("--quantum", action="store_true", help="Ground-state covariance at I = hbar/2")
    p.add_argument("--hbar", type=float, default=None, help="Reduced Planck constant for --quantum (default: config, else 1)")
    p.add_argument("--method", choices=[CLOSED_FORM] + [m.value for m in QuadratureMethod], default=CLOSED_FORM)
    p.add_argument("--nodes", type=int, default=16, help="Trapezoid nodes per angle")
    p.add_argument("--samples", type=int, default=100_000, help="Monte Carlo samples")
    p.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    _add_output(p)
    p.set_defaults(handler=cmd_covariance)

    p = commands.add_parser("report", help="Purity and entropies of subsystems")
    p.add_argument("config", help="JSON model configuration")
    p.add_argument("--subsystems", nargs="+", default=["all"], help="'all' or labels like 1,3")
    p.add_argument("--beta", type=float, default=1.0, help="Uniform action of the tilde quantities")
    p.add_argument("--hbar", type=float, default=None, help="Reduced Planck constant (default: config, else 1)")
    p.add_argument("--verify", action="store_true", help="Re-evaluate at a second beta and compare")
    _add_output(p)
    p.set_defaults(handler=cmd_report)

    p = commands.add_parser("fig-variance", help="Variance product against the quartic coupling")
    p.add_argument("--lambda-max", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=51)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--omega0", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--action", type=float, default=0.5)
    _add_output(p)
    p.set_defaults(handler=cmd_fig_variance)

    p = commands.add_parser("fig-entropy", help="Entropy of particle 2 against w1/w2")
    grid = p.add_mutually_exclusive_group()
    grid.add_argument("--ratio-range", type=float, nargs=2, default=(0.1, 10.0), metavar=("LOW", "HIGH"))
    grid.add_argument("--omega1-range", type=float, nargs=2, default=None, metavar=("LOW", "HIGH"))
    p.add_argument("--omega2", type=float, default=1.0, help="Fixed w2 for --omega1-range")
    p.add_argument("--steps", type=int, default=41)
    _add_output(p)
    p.set_defaults(handler=cmd_fig_entropy)

    p = commands.add_parser("anharmonic-verify", help="Quartic series against a numerical oracle")
    p.add_argument("--lambdas", type=float, nargs="+", default=[0.0, 0.005, 0.05, 0.5])
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--omega0", type=float, default=1.0)
    p.add_argument("--action", type=float, default=0.5)
    p.add_argument("--method", choices=["trajectory", "quadrature"], default="trajectory")
    p.add_argument("--keep-going", action="store_true", help="Record failed couplings and continue")
    _add_output(p)
    p.set_defaults(handler=cmd_anharmonic_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.threads is not None:
        sweep_session.configure(SweepConfig(max_workers=max(1, args.threads)))

    try:
        return args.handler(args)
    except (CliError, ValidationFailure, ValidationError) as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_CONFIG
    except NumericalFailure as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_NUMERIC
    finally:
        sweep_session.close()


if __name__ == "__main__":
    sys.exit(main())
