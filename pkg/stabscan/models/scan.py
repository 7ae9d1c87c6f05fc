"""Pydantic models for Fejér scans and detected jumps."""

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ThetaScan(BaseModel):
    """Θ_N(θ)/N evaluated on a uniform grid over [-π, π]."""

    model_config = ConfigDict(frozen=True)

    thetas: list[float] = Field(..., description="grid_count + 1 points from -π to π")
    values: list[float] = Field(..., description="Θ_N(θ)/N at each grid point")
    N: int = Field(..., ge=1, description="Truncation size")
    dt: float = Field(..., gt=0, description="Sampling interval carried for frequency conversion")
    has_negative: bool = Field(False, description="Some values dipped below zero")

    @model_validator(mode="after")
    def _check_grid(self) -> "ThetaScan":
        if len(self.thetas) != len(self.values):
            raise ValueError("thetas and values must have the same length")
        if len(self.thetas) < 17:
            raise ValueError("scan needs at least 16 grid segments")
        return self

    @property
    def grid_count(self) -> int:
        return len(self.thetas) - 1

    @property
    def spacing(self) -> float:
        return 2 * math.pi / self.grid_count


class JumpEstimate(BaseModel):
    """A located discontinuity of the spectral distribution."""

    model_config = ConfigDict(frozen=True)

    theta: float = Field(..., ge=0, le=math.pi, description="Radians per sample")
    mass: float = Field(..., ge=0, description="Estimated individual jump")
    frequency_hz: float = Field(..., ge=0, description="theta / (2π dt)")
