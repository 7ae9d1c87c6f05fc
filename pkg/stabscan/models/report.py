"""Pydantic models for analysis configuration and stability reports."""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from stabscan.core.config import settings
from stabscan.models.diagnostics import DiagnosticCurve
from stabscan.models.scan import JumpEstimate


class Verdict(str, Enum):
    """Outcome of a stability analysis."""

    STABLE_CONSISTENT = "stable-consistent"
    UNSTABLE_EVIDENCE = "unstable-evidence"
    INCONCLUSIVE = "inconclusive"


def default_sizes(max_lag: int, points: int = 24) -> list[int]:
    """Geometric grid of curve sizes from 16 to min(max_lag, 4096)."""
    upper = min(max_lag, 4096)
    if upper <= 16:
        return list(range(1, upper + 1))
    grid = np.unique(np.round(np.geomspace(16, upper, points)).astype(int))
    return [int(n) for n in grid]


class AnalysisConfig(BaseModel):
    """Per-run analysis configuration."""

    max_lag: int = Field(default_factory=lambda: settings.default_max_lag, gt=0)
    sizes: Optional[list[int]] = Field(None, description="Curve sizes N; default geometric")
    grid_count: int = Field(default_factory=lambda: settings.default_grid_count, ge=16)
    scan_sizes: list[int] = Field(default_factory=lambda: list(settings.default_scan_sizes))
    min_mass: float = Field(default_factory=lambda: settings.default_min_mass, gt=0)
    plateau_threshold: float = Field(
        default_factory=lambda: settings.default_plateau_threshold, gt=0
    )
    dt: Optional[float] = Field(
        None, gt=0, description="Sampling interval; None defers to signal metadata, then the default"
    )
    min_separation: Optional[float] = Field(None, gt=0, description="Peak spacing in radians")
    seed: int = Field(default_factory=lambda: settings.eigen_seed, ge=0, description="Eigen start-vector seed")
    plot: bool = Field(False, description="Write SVG plots of the scans")

    @field_validator("sizes", "scan_sizes")
    @classmethod
    def _positive_increasing(cls, v):
        if v is None:
            return v
        if not v or any(n <= 0 for n in v):
            raise ValueError("sizes must be a nonempty list of positive integers")
        return sorted(set(v))

    @model_validator(mode="after")
    def _fill_and_check(self) -> "AnalysisConfig":
        if self.sizes is None:
            self.sizes = default_sizes(self.max_lag, settings.default_curve_points)
        limit = self.max_lag + 1
        for n in [*self.sizes, *self.scan_sizes]:
            if n > limit:
                raise ValueError(f"size {n} exceeds max_lag + 1 = {limit}")
        return self


class StabilityReport(BaseModel):
    """Curves, jumps and verdict for one analysed signal."""

    hs_curve: DiagnosticCurve
    eigen_curve: DiagnosticCurve
    abs_curve: DiagnosticCurve
    jumps: dict[int, list[JumpEstimate]] = Field(
        default_factory=dict, description="Detected jumps per scan size"
    )
    plateau_estimate: float = Field(..., ge=0)
    plateau_threshold: float = Field(..., gt=0)
    min_mass: float = Field(..., gt=0)
    verdict: Verdict

    @model_validator(mode="after")
    def _verdict_consistent(self) -> "StabilityReport":
        expected = decide_verdict(self.plateau_estimate, self.jumps, self.plateau_threshold, self.min_mass)
        if self.verdict != expected:
            raise ValueError(f"verdict {self.verdict.value} contradicts rule ({expected.value})")
        return self

    def top_jumps(self, limit: int = 5) -> list[tuple[int, JumpEstimate]]:
        ranked = [(n, j) for n, found in self.jumps.items() for j in found]
        ranked.sort(key=lambda item: (-item[1].mass, item[0], item[1].theta))
        return ranked[:limit]


def decide_verdict(
    plateau_estimate: float,
    jumps: dict[int, list[JumpEstimate]],
    plateau_threshold: float,
    min_mass: float,
) -> Verdict:
    """unstable-evidence needs both a plateau and a jump; neither means stable-consistent."""
    has_plateau = plateau_estimate > plateau_threshold
    has_jump = any(j.mass > min_mass for found in jumps.values() for j in found)
    if has_plateau and has_jump:
        return Verdict.UNSTABLE_EVIDENCE
    if not has_plateau and not has_jump:
        return Verdict.STABLE_CONSISTENT
    return Verdict.INCONCLUSIVE
