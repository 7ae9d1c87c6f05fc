"""
Core configuration using Pydantic BaseSettings.
Supports environment variables and .env files.
"""

from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables and .env files."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # App metadata
    app_name: str = "StabScan"
    app_version: str = "1.0.0"
    environment: str = "development"

    # HTTP server
    host: str = "0.0.0.0"
    port: int = 8000
    reload: bool = False
    cors_origins: list[str] = [
        "http://localhost:3000",
        "http://localhost:8000",
    ]
    cors_allow_credentials: bool = True
    cors_allow_methods: list[str] = ["*"]
    cors_allow_headers: list[str] = ["*"]

    # Paths
    results_dir: Path = Path("data") / "results"

    # Logging
    log_level: str = "INFO"
    log_format: str = "plain"

    # Analysis defaults
    default_dt: float = 0.08  # seconds between samples
    default_max_lag: int = 1024
    default_grid_count: int = 3000
    default_scan_sizes: list[int] = [100, 300, 500]
    default_min_mass: float = 0.02
    default_plateau_threshold: float = 0.005
    default_curve_points: int = 24

    # Largest-eigenvalue iteration
    eigen_rel_tolerance: float = 1e-8
    eigen_seed: int = 0
    dense_oracle_limit: int = 2048

    # Curve evaluation
    max_workers: int = 4

    def ensure_results_dir(self) -> Path:
        """Create the results directory on first use."""
        self.results_dir.mkdir(parents=True, exist_ok=True)
        return self.results_dir


# Global settings instance
settings = Settings()
