from pydantic import BaseModel, Field, ValidationError, model_validator
from typing import Any, Dict, List, Literal, Optional, Tuple

from app.core.errors import InvalidDomainSpec

PresetName = Literal["disk", "ellipse", "near_disk_ellipse", "quartic"]


class DiskParams(BaseModel):
    radius: float = Field(1.0, gt=0, description="Disk radius")


class EllipseParams(BaseModel):
    a: float = Field(..., gt=0, description="Semi-axis along x")
    b: float = Field(..., gt=0, description="Semi-axis along y")


class NearDiskParams(BaseModel):
    epsilon: float = Field(..., gt=-1, description="Relative stretch of the x semi-axis (axes 1+ε and 1)")


class QuarticParams(BaseModel):
    a0: float = Field(..., gt=0, description="Mean support value")
    a2: float = Field(..., description="cos 2θ coefficient")
    a4: float = Field(..., description="cos 4θ coefficient")


PRESET_PARAMS = {
    "disk": DiskParams,
    "ellipse": EllipseParams,
    "near_disk_ellipse": NearDiskParams,
    "quartic": QuarticParams,
}


class DomainSpec(BaseModel):
    preset: Optional[PresetName] = Field(None, description="Named domain family")
    params: Dict[str, float] = Field(default_factory=dict, description="Preset parameters")
    support_cos: Optional[List[float]] = Field(None, description="Support-function coefficients a0..aM")
    support_sin: List[float] = Field(default_factory=list, description="Support-function coefficients b1..bM")
    normalize: bool = Field(False, description="Scale the domain to area π")

    @model_validator(mode="after")
    def _one_source(self) -> "DomainSpec":
        if (self.preset is None) == (self.support_cos is None):
            raise ValueError("give exactly one of 'preset' or 'support_cos'")
        if self.support_cos is not None and len(self.support_cos) == 0:
            raise ValueError("'support_cos' needs at least the mean coefficient a0")
        if self.preset is not None:
            PRESET_PARAMS[self.preset](**self.params)
        return self

    @classmethod
    def parse(cls, data: Any) -> "DomainSpec":
        """Validar un objeto JSON; cualquier error se convierte en InvalidDomainSpec"""
        try:
            return cls.model_validate(data)
        except ValidationError as exc:
            raise InvalidDomainSpec(str(exc)) from exc

    def preset_params(self) -> BaseModel:
        return PRESET_PARAMS[self.preset](**self.params)


class DomainInfoResponse(BaseModel):
    is_class_A: bool = Field(..., description="Bisymmetric with exactly four non-degenerate vertices")
    is_disk: bool = Field(..., description="Constant curvature")
    vertex_thetas: Tuple[float, ...] = Field(..., description="Normal angles of non-degenerate vertices")
    degenerate_vertices: Tuple[float, ...] = Field(..., description="Normal angles of degenerate vertices")
    kappa_max: float = Field(..., description="Maximum curvature")
    kappa_min: float = Field(..., description="Minimum curvature")
    area: float = Field(..., description="Enclosed area")
    perimeter: float = Field(..., description="Boundary length")
    pestov_ionin_holds: bool = Field(..., description="κ_max ≥ √(π/area)")

    class Config:
        from_attributes = True
