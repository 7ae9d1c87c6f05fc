"""Pydantic models."""

from stabscan.models.diagnostics import DiagnosticCurve, EigenSolveOptions, StatisticKind
from stabscan.models.report import (
    AnalysisConfig,
    StabilityReport,
    Verdict,
    decide_verdict,
    default_sizes,
)
from stabscan.models.scan import JumpEstimate, ThetaScan
from stabscan.models.signal import Atom, CorrelationSequence, SyntheticSpectrum, TimeSeries
from stabscan.models.requests import (
    AnalysisRequest,
    DecayRatioResponse,
    ScanEntry,
    ScanResponse,
    SimulationRequest,
)
from stabscan.models.simulation import CosineNoiseParams, LangevinParams

__all__ = [
    "TimeSeries",
    "CorrelationSequence",
    "Atom",
    "SyntheticSpectrum",
    "StatisticKind",
    "DiagnosticCurve",
    "EigenSolveOptions",
    "ThetaScan",
    "JumpEstimate",
    "LangevinParams",
    "CosineNoiseParams",
    "AnalysisConfig",
    "StabilityReport",
    "Verdict",
    "decide_verdict",
    "default_sizes",
    "AnalysisRequest",
    "ScanEntry",
    "ScanResponse",
    "SimulationRequest",
    "DecayRatioResponse",
]
