"""Pydantic models for the signal simulators."""

import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from stabscan.models.signal import SyntheticSpectrum


class LangevinParams(BaseModel):
    """
    Parameters of the colored-noise oscillator

        ξ'' + c ξ' + U(ξ) = F,   F' + F/τ = W/τ,   <W(t) W(t')> = D δ(t - t'),

    with U(ξ) = a1 ξ + a2 ξ² + a3 ξ³, integrated with step `dt` and emitted
    every `output_stride` steps.
    """

    model_config = ConfigDict(frozen=True)

    c: float = Field(..., ge=0, description="Damping (1/s)")
    a1: float = Field(..., description="Linear restoring coefficient (ω²)")
    a2: float = Field(0.0, description="Quadratic coefficient")
    a3: float = Field(0.0, description="Cubic coefficient")
    D: float = Field(..., ge=0, description="White-noise intensity")
    tau: float = Field(..., gt=0, description="Force correlation time (s)")
    dt: float = Field(..., gt=0, description="Integration step (s)")
    n_samples: int = Field(..., gt=0, description="Number of emitted samples")
    seed: int = Field(0, ge=0)
    output_stride: int = Field(1, ge=1, description="Integration steps per emitted sample")
    burn_in_steps: Optional[int] = Field(
        None, ge=0, description="Discarded leading steps; defaults to 10*tau/dt"
    )

    @model_validator(mode="after")
    def _stability_guards(self) -> "LangevinParams":
        if self.dt > self.tau / 10:
            raise ValueError(f"dt={self.dt} exceeds tau/10={self.tau / 10}")
        limit = 0.1 / math.sqrt(max(self.a1, 1.0))
        if self.dt > limit:
            raise ValueError(f"dt={self.dt} exceeds 0.1/sqrt(max(a1, 1))={limit}")
        return self

    @property
    def sample_interval(self) -> float:
        return self.dt * self.output_stride

    @property
    def effective_burn_in(self) -> int:
        if self.burn_in_steps is not None:
            return self.burn_in_steps
        return int(math.ceil(10 * self.tau / self.dt))


class CosineNoiseParams(BaseModel):
    """Random-phase cosine-plus-white-noise realisation of a SyntheticSpectrum."""

    model_config = ConfigDict(frozen=True)

    spectrum: SyntheticSpectrum
    n: int = Field(..., gt=0, description="Number of samples")
    seed: int = Field(0, ge=0)
    dt: float = Field(0.08, gt=0, description="Sampling interval recorded with the series")
