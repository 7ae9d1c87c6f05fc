"""
Command-line front end.

    stabscan simulate {langevin,cosine} --out signal.txt [...]
    stabscan analyze signal.txt --out results/ [...]
    stabscan scan signal.txt --out results/ [...]
    stabscan report signal.txt --out results/ [...]

Exit codes: 0 success, 1 usage error, 2 data error, 3 non-convergence.
Logs go to standard error; simulate prints its derived quantities to
standard output.
"""

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from pydantic import ValidationError

from stabscan import __version__
from stabscan.core import settings, setup_logging
from stabscan.core.exceptions import ConvergenceError, ParameterError, SignalDataError
from stabscan.core.logging import RunContextFilter
from stabscan.models import AnalysisConfig, LangevinParams, SyntheticSpectrum
from stabscan.services.jump_detector import theta_to_hz
from stabscan.services.runners.analysis_runner import run_analyze, run_report, run_scan
from stabscan.services.runners.signal_io import write_signal
from stabscan.services.runners.utils import load_config_file, merge_config, parse_int_list
from stabscan.services.simulator import (
    damping_for_dr,
    decay_ratio,
    natural_frequency_hz,
    simulate_cosine_noise,
    simulate_langevin,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NONCONVERGENCE = 3

ANALYSIS_FIELDS = (
    "max_lag",
    "sizes",
    "grid_count",
    "scan_sizes",
    "min_mass",
    "plateau_threshold",
    "dt",
    "min_separation",
    "plot",
    "seed",
)
LIST_FIELDS = ("sizes", "scan_sizes")


class UsageError(Exception):
    """Bad command-line arguments."""


class StabScanArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose errors exit with the usage code instead of 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_atom(value: str) -> tuple[float, float]:
    try:
        theta, mass = value.split(":")
        return float(theta), float(mass)
    except ValueError:
        raise argparse.ArgumentTypeError(f"atom must be THETA:MASS, got {value!r}")


def _add_analysis_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("signal", type=Path, help="Signal file (one value per line)")
    parser.add_argument("--out", type=Path, default=None, help="Output directory")
    parser.add_argument("--config", type=Path, default=None, help="key=value config file")
    parser.add_argument("--dt", type=float, default=None, help="Sampling interval in seconds")
    parser.add_argument("--max-lag", dest="max_lag", type=int, default=None)
    parser.add_argument("--sizes", default=None, help="Curve sizes, e.g. 16,32,64")
    parser.add_argument("--grid", dest="grid_count", type=int, default=None, help="Scan grid count")
    parser.add_argument("--scan-sizes", dest="scan_sizes", default=None, help="Scan sizes, e.g. 100,300,500")
    parser.add_argument("--min-mass", dest="min_mass", type=float, default=None)
    parser.add_argument("--plateau-threshold", dest="plateau_threshold", type=float, default=None)
    parser.add_argument("--min-separation", dest="min_separation", type=float, default=None)
    parser.add_argument("--plot", action="store_true", default=None, help="Write SVG scan plots")
    parser.add_argument("--seed", type=int, default=None, help="Start-vector seed of the eigen iteration")


def build_parser() -> argparse.ArgumentParser:
    parser = StabScanArgumentParser(prog="stabscan", description="Toeplitz-norm stability diagnostics")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", dest="log_level", default=None)
    parser.add_argument("--log-format", dest="log_format", choices=["plain", "json"], default=None)
    commands = parser.add_subparsers(dest="command", required=True, parser_class=StabScanArgumentParser)

    simulate = commands.add_parser("simulate", help="Write a synthetic signal file")
    simulate.add_argument("kind", choices=["langevin", "cosine"])
    simulate.add_argument("--out", type=Path, required=True, help="Signal file to write")
    simulate.add_argument("--n", type=int, default=4209, help="Number of samples")
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--dt", type=float, default=None, help="Output sampling interval in seconds")
    damping = simulate.add_mutually_exclusive_group()
    damping.add_argument("--c", type=float, default=None, help="Damping")
    damping.add_argument("--dr", type=float, default=None, help="Target decay ratio (sets c)")
    simulate.add_argument("--a1", type=float, default=9.87)
    simulate.add_argument("--a2", type=float, default=0.0)
    simulate.add_argument("--a3", type=float, default=0.0)
    simulate.add_argument("--D", dest="D", type=float, default=500.0, help="Force noise intensity")
    simulate.add_argument("--tau", type=float, default=0.6, help="Force correlation time (s)")
    simulate.add_argument("--step", type=float, default=None, help="Integration step (default dt/8)")
    simulate.add_argument("--noise-level", dest="noise_level", type=float, default=None)
    simulate.add_argument(
        "--atom", dest="atoms", type=_parse_atom, action="append", default=[], help="THETA:PAIR_MASS"
    )

    for name, help_text in (
        ("analyze", "Compute the stability curves and verdict"),
        ("scan", "Compute Θ_N scans and the jump table"),
        ("report", "Run analyze and scan and write report.txt"),
    ):
        _add_analysis_flags(commands.add_parser(name, help=help_text))

    return parser


def analysis_config(args: argparse.Namespace) -> AnalysisConfig:
    """Flags override config-file keys, which override defaults."""
    file_layer: dict[str, Any] = {}
    if args.config is not None:
        try:
            raw = load_config_file(args.config)
        except FileNotFoundError as e:
            raise UsageError(str(e)) from e
        if "grid" in raw and "grid_count" not in raw:
            raw["grid_count"] = raw.pop("grid")
        file_layer = {key: value for key, value in raw.items() if key in ANALYSIS_FIELDS}
        ignored = sorted(set(raw) - set(file_layer))
        if ignored:
            logger.warning(f"Ignoring unknown config keys: {', '.join(ignored)}")

    flag_layer = {field: getattr(args, field, None) for field in ANALYSIS_FIELDS}
    merged = merge_config(file_layer, flag_layer)
    for field in LIST_FIELDS:
        if field in merged:
            try:
                merged[field] = parse_int_list(merged[field])
            except ValueError as e:
                raise UsageError(f"{field}: expected integers, got {merged[field]!r}") from e
    return AnalysisConfig(**merged)


def _simulate(args: argparse.Namespace) -> int:
    dt = args.dt if args.dt is not None else settings.default_dt
    if args.kind == "cosine":
        noise_level = args.noise_level
        if noise_level is None:
            noise_level = 1.0 - sum(mass for _, mass in args.atoms)
        spec = SyntheticSpectrum(noise_level=noise_level, atoms=sorted(args.atoms), normalized=True)
        ts = simulate_cosine_noise(spec, args.n, seed=args.seed, dt=dt)
        write_signal(ts, args.out)
        print(f"seed={args.seed}")
        print(f"samples={len(ts)}")
        for atom in spec.atoms:
            print(f"atom theta_rad={atom.theta:.15g} frequency_hz={theta_to_hz(atom.theta, dt):.15g}")
        return EXIT_OK

    c = damping_for_dr(args.dr, args.a1) if args.dr is not None else args.c
    if c is None:
        raise UsageError("langevin needs --c or --dr")
    step = args.step if args.step is not None else dt / 8
    stride = max(int(round(dt / step)), 1)
    if not math.isclose(stride * step, dt, rel_tol=1e-9):
        raise UsageError(f"--dt {dt} must be a whole multiple of --step {step}")

    params = LangevinParams(
        c=c, a1=args.a1, a2=args.a2, a3=args.a3, D=args.D, tau=args.tau,
        dt=step, n_samples=args.n, seed=args.seed, output_stride=stride,
    )
    ts = simulate_langevin(params)
    write_signal(ts, args.out)

    print(f"seed={args.seed}")
    print(f"samples={len(ts)}")
    print(f"c={c:.15g}")
    if args.a1 > 0 and c < 2 * math.sqrt(args.a1):
        f = natural_frequency_hz(args.a1)
        print(f"decay_ratio={decay_ratio(c, args.a1):.15g}")
        print(f"frequency_hz={f:.15g}")
        print(f"theta_rad={2 * math.pi * f * ts.dt:.15g}")
    return EXIT_OK


def _analysis(args: argparse.Namespace) -> int:
    config = analysis_config(args)
    context = RunContextFilter(run_id=args.command, signal=Path(args.signal).name)
    for handler in logging.getLogger("stabscan").handlers:
        handler.addFilter(context)
    runner = {"analyze": run_analyze, "scan": run_scan, "report": run_report}[args.command]
    result = runner(args.signal, config, args.out)
    print(f"seed={config.seed}")
    if args.command != "scan":
        print(f"verdict={result.verdict.value}")
        print(f"plateau_estimate={result.plateau_estimate:.15g}")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level, args.log_format)

    try:
        if args.command == "simulate":
            return _simulate(args)
        return _analysis(args)
    except (UsageError, ValidationError, ParameterError) as e:
        logger.error(f"Invalid arguments: {e}")
        return EXIT_USAGE
    except (SignalDataError, OSError) as e:
        logger.error(f"Data error: {e}")
        return EXIT_DATA
    except ConvergenceError as e:
        logger.error(f"Eigenvalue iteration did not converge after {e.iterations} iterations: {e}")
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
