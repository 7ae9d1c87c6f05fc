"""Request and response bodies of the HTTP API."""

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from stabscan.models.report import AnalysisConfig
from stabscan.models.scan import JumpEstimate, ThetaScan
from stabscan.models.simulation import CosineNoiseParams, LangevinParams


class AnalysisRequest(BaseModel):
    """Inline samples plus an optional analysis configuration."""

    samples: list[float] = Field(..., min_length=2)
    dt: Optional[float] = Field(None, gt=0, description="Overrides config.dt")
    config: AnalysisConfig = Field(default_factory=AnalysisConfig)


class ScanEntry(BaseModel):
    """One scan size: the Θ_N/N scan and its jumps."""

    N: int
    scan: ThetaScan
    jumps: list[JumpEstimate]


class ScanResponse(BaseModel):
    scans: list[ScanEntry]


class SimulationRequest(BaseModel):
    """Exactly one of `langevin` or `cosine`, matching `kind`."""

    kind: Literal["langevin", "cosine"]
    langevin: Optional[LangevinParams] = None
    cosine: Optional[CosineNoiseParams] = None

    @model_validator(mode="after")
    def _params_match_kind(self) -> "SimulationRequest":
        if getattr(self, self.kind) is None:
            raise ValueError(f"kind={self.kind} requires the '{self.kind}' parameters")
        return self


class DecayRatioResponse(BaseModel):
    c: float
    a1: float
    decay_ratio: float
    frequency_hz: float
