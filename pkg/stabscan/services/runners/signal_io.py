"""
Signal files and CSV outputs.

Signal file: plain text, one real per line. Leading lines starting with '#'
carry `key=value` metadata (dt=..., seed=...). A CSV with a single named
column is accepted as well. NaN and infinite tokens are rejected.

CSV outputs use 15 significant digits, '.' decimals and '\\n' line endings
so identical inputs give byte-identical files.
"""

import io
import logging
import math
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from stabscan.core.exceptions import SignalDataError
from stabscan.models import DiagnosticCurve, JumpEstimate, ThetaScan, TimeSeries

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.15g"
SIGNAL_FLOAT_FORMAT = "%.17g"


def _parse_metadata(lines: list[str]) -> dict[str, str]:
    metadata = {}
    for line in lines:
        body = line.lstrip("#").strip()
        if "=" in body:
            key, value = body.split("=", 1)
            metadata[key.strip().lower()] = value.strip()
    return metadata


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def read_signal(
    path: Path,
    dt: Optional[float] = None,
    default_dt: Optional[float] = None,
) -> TimeSeries:
    """
    Load a signal file.

    Args:
        path: Signal file
        dt: Sampling interval; overrides the file's `dt` metadata
        default_dt: Used when neither `dt` nor metadata give one

    Raises:
        SignalDataError: If the file is unreadable, empty, multi-column or non-finite
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise SignalDataError(f"Cannot read signal file {path}: {e}") from e

    lines = text.splitlines()
    comments = [line for line in lines if line.lstrip().startswith("#")]
    body = [line for line in lines if line.strip() and not line.lstrip().startswith("#")]
    if not body:
        raise SignalDataError(f"Signal file {path} contains no samples")
    metadata = _parse_metadata(comments)

    header = 0 if not _is_number(body[0].split(",")[0].strip()) else None
    try:
        frame = pd.read_csv(
            io.StringIO("\n".join(body)), header=header, dtype=str, keep_default_na=False, na_filter=False
        )
    except (pd.errors.ParserError, ValueError) as e:
        raise SignalDataError(f"Cannot parse signal file {path}: {e}") from e
    if frame.shape[1] != 1:
        raise SignalDataError(f"Signal file {path} must have exactly one column, found {frame.shape[1]}")

    tokens = frame.iloc[:, 0].str.strip()
    nonfinite = tokens.str.lower().str.contains("nan|inf", regex=True)
    if nonfinite.any():
        raise SignalDataError(f"Signal file {path}: non-finite sample {tokens[nonfinite].iloc[0]!r}")
    samples = pd.to_numeric(tokens, errors="coerce").to_numpy(dtype=float)
    if not np.all(np.isfinite(samples)):
        bad = int(np.flatnonzero(~np.isfinite(samples))[0])
        raise SignalDataError(f"Signal file {path}: unparsable sample {tokens.iloc[bad]!r}")

    if dt is None and "dt" in metadata:
        try:
            dt = float(metadata["dt"])
        except ValueError as e:
            raise SignalDataError(f"Signal file {path}: bad dt metadata {metadata['dt']!r}") from e
    if dt is None:
        dt = default_dt
    if dt is None or not math.isfinite(dt) or dt <= 0:
        raise SignalDataError(f"Signal file {path}: sampling interval must be a positive number")

    logger.debug(f"Read {samples.size} samples from {path} (dt={dt})")
    return TimeSeries(samples=samples.tolist(), dt=dt, metadata=metadata)


def write_signal(ts: TimeSeries, path: Path, extra: Optional[dict[str, str]] = None) -> Path:
    """Write a signal file with '#' metadata lines followed by one sample per line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    metadata = {**ts.metadata, **(extra or {}), "dt": repr(ts.dt)}
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for key in sorted(metadata):
            f.write(f"# {key}={metadata[key]}\n")
        pd.DataFrame({"value": ts.samples}).to_csv(
            f, header=False, index=False, float_format=SIGNAL_FLOAT_FORMAT, lineterminator="\n"
        )
    return path


def _write_frame(frame: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    return path


def write_curve(curve: DiagnosticCurve, path: Path) -> Path:
    sizes = curve.sizes
    if all(float(s).is_integer() for s in sizes):
        column = pd.Series([int(s) for s in sizes], name="N")
    else:
        column = pd.Series(sizes, name="T")
    frame = pd.DataFrame({column.name: column, "value": curve.values})
    return _write_frame(frame, Path(path))


def write_scan(scan: ThetaScan, path: Path) -> Path:
    frame = pd.DataFrame({"theta": scan.thetas, "value": scan.values})
    return _write_frame(frame, Path(path))


def write_jumps(jumps: list[JumpEstimate], path: Path) -> Path:
    frame = pd.DataFrame(
        {
            "theta_rad": [j.theta for j in jumps],
            "frequency_hz": [j.frequency_hz for j in jumps],
            "mass": [j.mass for j in jumps],
        },
        columns=["theta_rad", "frequency_hz", "mass"],
    )
    return _write_frame(frame, Path(path))
