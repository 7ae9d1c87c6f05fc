"""Analysis pipeline shared by the CLI and the HTTP API: analyze, scan and report."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from stabscan.core import settings
from stabscan.core.exceptions import SignalDataError
from stabscan.models import (
    AnalysisConfig,
    CorrelationSequence,
    DiagnosticCurve,
    EigenSolveOptions,
    JumpEstimate,
    StabilityReport,
    ThetaScan,
    TimeSeries,
    decide_verdict,
)
from stabscan.services.correlation import estimate_correlation, normalize
from stabscan.services.jump_detector import detect_jumps, theta_scan
from stabscan.services.runners.signal_io import (
    read_signal,
    write_curve,
    write_jumps,
    write_scan,
)
from stabscan.services.runners.utils import log_step, save_result
from stabscan.services.toeplitz_norms import abs_sum_curve, eigen_ratio_curve, hs_ratio_curve

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScanResult:
    """One Θ_N scan and the jumps found on it."""

    scan: ThetaScan
    jumps: list[JumpEstimate]


def load_series(signal_path: Path, config: AnalysisConfig) -> TimeSeries:
    """Read a signal; config.dt beats file metadata, which beats the default."""
    return read_signal(signal_path, dt=config.dt, default_dt=settings.default_dt)


def correlation_for(ts: TimeSeries, config: AnalysisConfig) -> CorrelationSequence:
    """Estimate and normalize lags 0..max_lag; short or constant signals are data errors."""
    if config.max_lag >= len(ts):
        raise SignalDataError(
            f"signal has {len(ts)} samples; max_lag={config.max_lag} needs at least {config.max_lag + 1}"
        )
    corr = estimate_correlation(ts, config.max_lag)
    # Mean rounding leaves at most n·eps·max|ξ| per sample
    floor = (len(ts) * np.finfo(float).eps * float(np.max(np.abs(ts.as_array())))) ** 2
    if corr.values[0] <= floor:
        raise SignalDataError(f"signal is constant to rounding: b(0)={corr.values[0]!r} <= {floor!r}")
    return normalize(corr)


def fit_plateau(curve: DiagnosticCurve) -> float:
    """
    Intercept a of the least-squares fit value ≈ a + b/N over the upper half of the sizes.

    Negative intercepts are reported as 0.
    """
    sizes = np.asarray(curve.sizes, dtype=float)
    values = np.asarray(curve.values, dtype=float)
    upper = slice(len(sizes) // 2, None)
    sizes, values = sizes[upper], values[upper]
    if sizes.size < 2:
        return max(float(values[-1]), 0.0)
    design = np.column_stack([np.ones_like(sizes), 1.0 / sizes])
    (intercept, _), *_ = np.linalg.lstsq(design, values, rcond=None)
    return max(float(intercept), 0.0)


def scan_correlation(corr: CorrelationSequence, config: AnalysisConfig) -> dict[int, ScanResult]:
    """Θ_N/N scans and jumps for every configured scan size."""
    results = {}
    for n in config.scan_sizes:
        scan = theta_scan(corr, n, config.grid_count)
        jumps = detect_jumps(scan, config.min_mass, config.min_separation)
        results[n] = ScanResult(scan=scan, jumps=jumps)
    return results


def build_report(
    corr: CorrelationSequence,
    config: AnalysisConfig,
    scans: dict[int, ScanResult],
) -> StabilityReport:
    """Curves, plateau fit and verdict for a normalized correlation."""
    hs_curve = hs_ratio_curve(corr, config.sizes)
    opts = EigenSolveOptions(rel_tolerance=settings.eigen_rel_tolerance, seed=config.seed)
    eigen_curve = eigen_ratio_curve(corr, config.sizes, opts)
    abs_curve = abs_sum_curve(corr, config.sizes)
    plateau = fit_plateau(hs_curve)
    jumps = {n: result.jumps for n, result in scans.items()}

    return StabilityReport(
        hs_curve=hs_curve,
        eigen_curve=eigen_curve,
        abs_curve=abs_curve,
        jumps=jumps,
        plateau_estimate=plateau,
        plateau_threshold=config.plateau_threshold,
        min_mass=config.min_mass,
        verdict=decide_verdict(plateau, jumps, config.plateau_threshold, config.min_mass),
    )


def analyze_series(
    ts: TimeSeries,
    config: AnalysisConfig,
) -> tuple[StabilityReport, dict[int, ScanResult]]:
    """In-memory analysis of one series."""
    corr = correlation_for(ts, config)
    scans = scan_correlation(corr, config)
    return build_report(corr, config, scans), scans


def _output_dir(output_dir: Optional[Path]) -> Path:
    output_dir = Path(output_dir) if output_dir is not None else settings.ensure_results_dir()
    output_dir.mkdir(parents=True, exist_ok=True)
    return output_dir


def _write_report_files(report: StabilityReport, output_dir: Path) -> None:
    write_curve(report.hs_curve, output_dir / "hs_curve.csv")
    write_curve(report.eigen_curve, output_dir / "eigen_curve.csv")
    write_curve(report.abs_curve, output_dir / "abs_curve.csv")
    save_result(output_dir, report.model_dump(mode="json"), "report.json")


def _write_scan_files(scans: dict[int, ScanResult], output_dir: Path, plot: bool) -> None:
    for n, result in scans.items():
        write_scan(result.scan, output_dir / f"theta_scan_N{n}.csv")
        write_jumps(result.jumps, output_dir / f"jumps_N{n}.csv")
        if plot:
            from stabscan.services.runners.plotting import plot_scan

            plot_scan(result.scan, result.jumps, output_dir / f"theta_scan_N{n}.svg")
    largest = max(scans)
    write_jumps(scans[largest].jumps, output_dir / "jumps.csv")


def run_analyze(
    signal_path: Path,
    config: AnalysisConfig,
    output_dir: Optional[Path] = None,
) -> StabilityReport:
    """
    Analyze a signal file and write hs/eigen/abs curves plus report.json.

    Args:
        signal_path: Signal file
        config: Analysis configuration
        output_dir: Output directory (default: settings.results_dir)

    Returns:
        StabilityReport
    """
    output_dir = _output_dir(output_dir)
    log_step(logger, "Loading signal", str(signal_path))
    ts = load_series(signal_path, config)
    log_step(logger, "Signal loaded", f"{len(ts)} samples, dt={ts.dt}")

    report, _ = analyze_series(ts, config)
    log_step(logger, "Analysis completed", f"verdict={report.verdict.value} plateau={report.plateau_estimate:.6g}")

    _write_report_files(report, output_dir)
    return report


def run_scan(
    signal_path: Path,
    config: AnalysisConfig,
    output_dir: Optional[Path] = None,
) -> dict[int, ScanResult]:
    """Scan a signal file and write theta_scan_N<k>.csv, jumps_N<k>.csv and jumps.csv."""
    output_dir = _output_dir(output_dir)
    log_step(logger, "Loading signal", str(signal_path))
    ts = load_series(signal_path, config)

    scans = scan_correlation(correlation_for(ts, config), config)
    for n, result in scans.items():
        log_step(logger, f"Scan N={n}", f"{len(result.jumps)} jumps")

    _write_scan_files(scans, output_dir, config.plot)
    return scans


def run_report(
    signal_path: Path,
    config: AnalysisConfig,
    output_dir: Optional[Path] = None,
) -> StabilityReport:
    """Run analyze and scan together and write a human-readable report.txt."""
    output_dir = _output_dir(output_dir)
    log_step(logger, "Loading signal", str(signal_path))
    ts = load_series(signal_path, config)

    report, scans = analyze_series(ts, config)
    _write_report_files(report, output_dir)
    _write_scan_files(scans, output_dir, config.plot)

    text = format_report(report, ts, config, Path(signal_path).name)
    report_path = output_dir / "report.txt"
    with open(report_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    log_step(logger, "Report written", str(report_path))
    return report


def _g(value: float) -> str:
    return f"{value:.15g}"


def format_report(
    report: StabilityReport,
    ts: TimeSeries,
    config: AnalysisConfig,
    signal_name: str,
    top: int = 5,
) -> str:
    """Plain-text summary: verdict, plateau, last curve values and the strongest jumps."""
    lines = [
        "StabScan stability report",
        f"signal: {signal_name}",
        f"samples: {len(ts)}",
        f"dt_s: {_g(ts.dt)}",
        f"max_lag: {config.max_lag}",
        f"eigen_seed: {config.seed}",
        "",
        f"verdict: {report.verdict.value}",
        f"plateau_estimate: {_g(report.plateau_estimate)}",
        f"plateau_threshold: {_g(report.plateau_threshold)}",
        f"min_mass: {_g(report.min_mass)}",
        "",
    ]
    for label, curve in (
        ("hs_ratio", report.hs_curve),
        ("eigen_ratio", report.eigen_curve),
        ("abs_sum", report.abs_curve),
    ):
        lines.append(f"{label} at N={int(curve.sizes[-1])}: {_g(curve.values[-1])}")

    lines.append("")
    lines.append("top jumps:")
    ranked = report.top_jumps(top)
    if not ranked:
        lines.append("  none")
    for n, jump in ranked:
        lines.append(
            f"  N={n} theta_rad={_g(jump.theta)} frequency_hz={_g(jump.frequency_hz)} mass={_g(jump.mass)}"
        )
    return "\n".join(lines) + "\n"
