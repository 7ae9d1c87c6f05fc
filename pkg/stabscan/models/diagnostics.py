"""Pydantic models for diagnostic curves and eigen-solver options."""

import logging
import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

logger = logging.getLogger(__name__)

CLAMP_TOLERANCE = 1e-12


class StatisticKind(str, Enum):
    """Statistic evaluated along a DiagnosticCurve."""

    HS_RATIO = "hs_ratio"
    EIGEN_RATIO = "eigen_ratio"
    ABS_SUM = "abs_sum"
    CONT_HS = "cont_hs"
    CONT_ABS = "cont_abs"


class DiagnosticCurve(BaseModel):
    """A statistic evaluated along increasing truncation sizes N (or horizons T)."""

    model_config = ConfigDict(frozen=True)

    sizes: list[float] = Field(..., description="Strictly increasing N values or T horizons")
    values: list[float] = Field(..., description="Statistic value per size")
    statistic_kind: StatisticKind

    @field_validator("values")
    @classmethod
    def _clamp_round_off(cls, v: list[float]) -> list[float]:
        clamped = []
        for value in v:
            if not math.isfinite(value):
                raise ValueError("curve values must be finite")
            if value < -CLAMP_TOLERANCE:
                raise ValueError(f"curve value {value!r} is negative beyond round-off")
            if value < 0:
                logger.warning(f"Clamping round-off negative curve value {value!r} to 0")
                value = 0.0
            clamped.append(value)
        return clamped

    @model_validator(mode="after")
    def _check_sizes(self) -> "DiagnosticCurve":
        if len(self.sizes) != len(self.values):
            raise ValueError("sizes and values must have the same length")
        if any(s <= 0 for s in self.sizes):
            raise ValueError("sizes must be positive")
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError("sizes must be strictly increasing")
        return self


class EigenSolveOptions(BaseModel):
    """Controls for the largest-eigenvalue iteration."""

    model_config = ConfigDict(frozen=True)

    rel_tolerance: float = Field(1e-8, gt=0, lt=1, description="Relative residual target")
    max_iterations: Optional[int] = Field(
        None, gt=0, description="Iteration cap; defaults to 10*N + 200"
    )
    seed: int = Field(0, ge=0, description="Start-vector seed")

    def iteration_cap(self, n: int) -> int:
        return self.max_iterations if self.max_iterations is not None else 10 * n + 200
