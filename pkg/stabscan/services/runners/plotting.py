"""Static SVG line plots of Θ_N(θ)/N scans (no display required)."""

import logging
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from stabscan.models import JumpEstimate, ThetaScan  # noqa: E402

logger = logging.getLogger(__name__)

GOLDEN_RATIO = (5**0.5 - 1) / 2

plt.rcParams["svg.hashsalt"] = "stabscan"
plt.rcParams["svg.fonttype"] = "none"
plt.rcParams["font.size"] = 9


def plot_scan(scan: ThetaScan, jumps: Sequence[JumpEstimate], path: Path, width: float = 6.0) -> Path:
    """Write the scan over [0, π] with detected jumps marked."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    half = [(t, v) for t, v in zip(scan.thetas, scan.values) if t >= 0]
    fig, ax = plt.subplots(figsize=(width, width * GOLDEN_RATIO))
    try:
        ax.plot([t for t, _ in half], [v for _, v in half], linewidth=0.8, color="black", label=f"N={scan.N}")
        if jumps:
            ax.plot([j.theta for j in jumps], [j.mass for j in jumps], "o", color="tab:red", markersize=3)
        ax.set_xlabel("θ (rad)")
        ax.set_ylabel("Θ_N(θ)/N")
        ax.set_xlim(0, max(t for t, _ in half))
        ax.spines["right"].set_visible(False)
        ax.spines["top"].set_visible(False)
        ax.legend(frameon=False)
        fig.savefig(path, format="svg", bbox_inches="tight", metadata={"Date": None})
    finally:
        plt.close(fig)

    logger.info(f"Scan plot saved to {path}")
    return path
