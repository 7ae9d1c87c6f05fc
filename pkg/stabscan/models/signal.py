"""Pydantic models for signals, correlation sequences and synthetic spectra."""

import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

NORMALIZATION_TOLERANCE = 1e-12


def _check_finite(values: list[float], label: str) -> list[float]:
    if not values:
        raise ValueError(f"{label} must be nonempty")
    if not all(math.isfinite(v) for v in values):
        raise ValueError(f"{label} must contain only finite values")
    return values


class TimeSeries(BaseModel):
    """Finite real sample sequence taken every `dt` seconds."""

    model_config = ConfigDict(frozen=True)

    samples: list[float] = Field(..., description="Signal samples (dimensionless units)")
    dt: float = Field(..., gt=0, description="Sampling interval in seconds")
    metadata: dict[str, str] = Field(default_factory=dict, description="Header key=value pairs")

    @field_validator("samples")
    @classmethod
    def _finite_samples(cls, v: list[float]) -> list[float]:
        return _check_finite(v, "samples")

    @field_validator("dt")
    @classmethod
    def _finite_dt(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("dt must be finite")
        return v

    def __len__(self) -> int:
        return len(self.samples)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.samples, dtype=float)


class CorrelationSequence(BaseModel):
    """Lags b(0), ..., b(K) of a correlation function sampled every `dt` seconds."""

    model_config = ConfigDict(frozen=True)

    values: list[float] = Field(..., description="Correlation lags b(0..K)")
    dt: float = Field(1.0, gt=0, description="Lag spacing in seconds")
    normalized: bool = Field(False, description="True when b(0) = 1")

    @field_validator("values")
    @classmethod
    def _finite_values(cls, v: list[float]) -> list[float]:
        return _check_finite(v, "values")

    @model_validator(mode="after")
    def _check_normalization(self) -> "CorrelationSequence":
        if self.normalized and self.values[0] != 1.0:
            raise ValueError(f"normalized sequence must have b(0) = 1, got {self.values[0]!r}")
        return self

    @property
    def max_lag(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


class Atom(BaseModel):
    """A symmetric pair of spectral jumps at ±theta carrying `pair_mass` in total."""

    model_config = ConfigDict(frozen=True)

    theta: float = Field(..., gt=0, lt=math.pi, description="Location in radians per sample")
    pair_mass: float = Field(..., gt=0, description="Total mass of the pair {+theta, -theta}")

    @property
    def individual_mass(self) -> float:
        return self.pair_mass / 2


class SyntheticSpectrum(BaseModel):
    """
    Mixed spectral measure: white noise of level p plus symmetric atom pairs.

    The continuous part has density p/2π on [-π, π]; each atom pair puts
    pair_mass/2 at +theta and at -theta.
    """

    model_config = ConfigDict(frozen=True)

    noise_level: float = Field(0.0, ge=0, description="White-noise level p")
    atoms: list[Atom] = Field(default_factory=list)
    normalized: bool = Field(False, description="Require p + sum of pair masses = 1")

    @field_validator("atoms", mode="before")
    @classmethod
    def _coerce_pairs(cls, v):
        # (theta, pair_mass) tuples are accepted as shorthand
        return [
            {"theta": a[0], "pair_mass": a[1]} if isinstance(a, (tuple, list)) else a
            for a in v
        ]

    @model_validator(mode="after")
    def _check_atoms(self) -> "SyntheticSpectrum":
        thetas = [a.theta for a in self.atoms]
        if any(b <= a for a, b in zip(thetas, thetas[1:])):
            raise ValueError("atom thetas must be strictly increasing")
        if self.normalized and abs(self.total_mass - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"normalized spectrum must have total mass 1, got {self.total_mass!r}")
        return self

    @classmethod
    def from_pairs(
        cls,
        noise_level: float,
        pairs: list[tuple[float, float]],
        normalized: bool = False,
    ) -> "SyntheticSpectrum":
        return cls(noise_level=noise_level, atoms=list(pairs), normalized=normalized)

    @property
    def total_mass(self) -> float:
        return self.noise_level + sum(a.pair_mass for a in self.atoms)

    @property
    def is_normalized(self) -> bool:
        return abs(self.total_mass - 1.0) <= NORMALIZATION_TOLERANCE

    def individual_atoms(self) -> tuple[np.ndarray, np.ndarray]:
        """Locations and masses of the 2s individual atoms, (-theta, +theta) per pair."""
        locations = []
        masses = []
        for atom in self.atoms:
            locations.extend([-atom.theta, atom.theta])
            masses.extend([atom.individual_mass, atom.individual_mass])
        return np.asarray(locations, dtype=float), np.asarray(masses, dtype=float)

    def max_individual_mass(self) -> Optional[float]:
        if not self.atoms:
            return None
        return max(a.individual_mass for a in self.atoms)
