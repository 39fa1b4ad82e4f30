"""Core configuration and utilities."""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class QuadratureConfig:
    """Default tolerances for the Opial constant quadratures."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_refinements: int = 30


@dataclass(frozen=True)
class MomentConfig:
    """Runtime budget for exact c(k) enumeration."""

    ordered_budget: int = 10
    long_budget: int = 15
    workers: int = 1


@dataclass(frozen=True)
class ScanDefaults:
    """Default zero scan resolution."""

    grid_density: int = 10
    bisection_tol: float = 1e-9


@dataclass(frozen=True)
class AppConfig:
    """Application configuration loaded from environment."""

    quadrature: QuadratureConfig
    moments: MomentConfig
    scan: ScanDefaults
    cache_dir: Path = Path(".cache")
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> AppConfig:
        """Load configuration from environment variables."""
        return cls(
            quadrature=QuadratureConfig(
                abs_tol=float(os.getenv("ZGB_ABS_TOL", "1e-10")),
                rel_tol=float(os.getenv("ZGB_REL_TOL", "1e-10")),
                max_refinements=int(os.getenv("ZGB_MAX_REFINEMENTS", "30")),
            ),
            moments=MomentConfig(
                ordered_budget=int(os.getenv("ZGB_ORDERED_BUDGET", "10")),
                long_budget=int(os.getenv("ZGB_LONG_BUDGET", "15")),
                workers=max(1, int(os.getenv("ZGB_WORKERS", "1"))),
            ),
            scan=ScanDefaults(
                grid_density=int(os.getenv("ZGB_GRID_DENSITY", "10")),
                bisection_tol=float(os.getenv("ZGB_BISECTION_TOL", "1e-9")),
            ),
            cache_dir=Path(os.getenv("ZGB_CACHE_DIR") or ".cache"),
            log_level=os.getenv("ZGB_LOG_LEVEL", "WARNING").upper(),
        )


config = AppConfig.from_env()
