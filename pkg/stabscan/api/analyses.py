"""API endpoints for stability analyses, scans and simulations."""

from fastapi import APIRouter, Query

from stabscan.core import settings
from stabscan.models import (
    AnalysisRequest,
    DecayRatioResponse,
    ScanEntry,
    ScanResponse,
    SimulationRequest,
    StabilityReport,
    TimeSeries,
)
from stabscan.services.runners.analysis_runner import analyze_series, correlation_for, scan_correlation
from stabscan.services.simulator import decay_ratio, natural_frequency_hz, simulate_cosine_noise, simulate_langevin

router = APIRouter(tags=["analyses"])


def _series(request: AnalysisRequest) -> TimeSeries:
    dt = request.dt or request.config.dt or settings.default_dt
    return TimeSeries(samples=request.samples, dt=dt)


@router.post("/analyses", response_model=StabilityReport)
def create_analysis(request: AnalysisRequest) -> StabilityReport:
    """
    Analyze inline samples.

    Request body should contain:
    - samples: the signal values
    - dt: optional sampling interval in seconds
    - config: optional AnalysisConfig fields
    """
    report, _ = analyze_series(_series(request), request.config)
    return report


@router.post("/scans", response_model=ScanResponse)
def create_scan(request: AnalysisRequest) -> ScanResponse:
    """Θ_N/N scans and detected jumps for every configured scan size."""
    ts = _series(request)
    scans = scan_correlation(correlation_for(ts, request.config), request.config)
    return ScanResponse(
        scans=[ScanEntry(N=n, scan=result.scan, jumps=result.jumps) for n, result in scans.items()]
    )


@router.post("/simulations", response_model=TimeSeries)
def create_simulation(request: SimulationRequest) -> TimeSeries:
    """Generate a Langevin or random-phase cosine signal."""
    if request.kind == "langevin":
        return simulate_langevin(request.langevin)
    params = request.cosine
    return simulate_cosine_noise(params.spectrum, params.n, seed=params.seed, dt=params.dt)


@router.get("/decay-ratio", response_model=DecayRatioResponse)
def get_decay_ratio(
    c: float = Query(..., ge=0),
    a1: float = Query(..., gt=0),
) -> DecayRatioResponse:
    """Decay ratio and natural frequency of ξ'' + c ξ' + a1 ξ = 0."""
    return DecayRatioResponse(c=c, a1=a1, decay_ratio=decay_ratio(c, a1), frequency_hz=natural_frequency_hz(a1))
