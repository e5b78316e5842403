import os
from functools import lru_cache
from typing import List

from pydantic import BaseModel, Field, field_validator

THREADS_ENV = "ISOPERIM_THREADS"
LOG_DIR_ENV = "ISOPERIM_LOG_DIR"


class Settings(BaseModel):
    """Parámetros numéricos compartidos por todos los servicios"""

    quadrature_nodes: int = Field(4096, ge=16, description="Uniform θ-grid size for periodic quadrature")
    vertex_scan_nodes: int = Field(4096, ge=16, description="Scan nodes for sign changes of κ'")
    fourier_samples: int = Field(1024, ge=16, description="Samples used to fit support-function coefficients")
    root_tolerance: float = Field(1e-12, gt=0, description="Bisection tolerance for vertex roots")
    symmetry_tolerance: float = Field(1e-12, gt=0, description="Coefficient magnitude treated as zero")
    degenerate_vertex_tolerance: float = Field(1e-8, gt=0, description="|κ''| below which a vertex is degenerate")
    segment_tolerance: float = Field(1e-8, gt=0, description="|N1 + N2| below which an arc is straight")
    perfect_tolerance: float = Field(1e-8, gt=0, description="Largest two-point residual accepted as perfect")
    newton_tolerance: float = Field(1e-12, gt=0, description="Newton stopping tolerance on the two-point function")
    newton_max_iterations: int = Field(50, gt=0)
    bracket_span: float = Field(5.0, gt=0, description="Bracketing scan half-width in units of the step")
    mode_scan_nodes: int = Field(10_000, ge=16)
    mode_root_tolerance: float = Field(1e-13, gt=0)
    mode_margin: float = Field(1e-6, gt=0, description="Distance kept from b = 0 and b = π/2")
    oracle_grid: int = Field(256, ge=16, description="Boundary grid of the brute-force profile oracle")
    oracle_tolerance: float = Field(1e-6, gt=0, description="Accuracy claimed for oracle profile values")
    area_tolerance: float = Field(1e-10, gt=0, description="Largest |A − target| accepted for an arc found at an area, relative to the domain area")
    s_grid: List[float] = Field(default_factory=lambda: [1e-3, 2e-3, 3e-3, 4e-3, 5e-3])
    threads: int = Field(1, ge=1)
    log_dir: str = "logs"

    @field_validator("s_grid")
    @classmethod
    def _positive_steps(cls, values: List[float]) -> List[float]:
        if any(v <= 0 for v in values):
            raise ValueError("s_grid values must be positive")
        return values


def settings_from_env(**overrides) -> Settings:
    """Construir la configuración; las variables de entorno rellenan lo que no se pasa explícitamente"""
    data = {}
    if os.getenv(THREADS_ENV):
        data["threads"] = os.environ[THREADS_ENV]
    if os.getenv(LOG_DIR_ENV):
        data["log_dir"] = os.environ[LOG_DIR_ENV]
    data.update({k: v for k, v in overrides.items() if v is not None})
    return Settings(**data)


@lru_cache
def get_settings() -> Settings:
    return settings_from_env()
