from pydantic import BaseModel, Field, model_validator
from typing import List, Optional

from app.models.perturbation_model import PerturbationField, Verdict


class PerturbationFieldSpec(BaseModel):
    fourier_cos: List[float] = Field(default_factory=list, description="Coefficients of cos nu, n ≥ 1")
    fourier_sin: List[float] = Field(default_factory=list, description="Coefficients of sin nu, n ≥ 1")
    description: str = Field("", description="Free text label")

    @model_validator(mode="after")
    def _non_zero(self) -> "PerturbationFieldSpec":
        if not any(self.fourier_cos) and not any(self.fourier_sin):
            raise ValueError("the perturbation field must have a non-zero coefficient")
        return self

    def to_field(self) -> PerturbationField:
        return PerturbationField(tuple(self.fourier_cos), tuple(self.fourier_sin), self.description)


class FirstVariationRequest(BaseModel):
    field: PerturbationFieldSpec = Field(..., description="Normal variation of the unit circle")
    b: float = Field(..., gt=0, lt=1.5707963267948966, description="Half-angle of the disk arc")
    nodes: int = Field(64, ge=16, le=65536, description="Number of u samples")


class FirstVariationResponse(BaseModel):
    b: float = Field(..., description="Half-angle of the disk arc")
    u: List[float] = Field(..., description="Arc directions")
    l: List[float] = Field(..., description="First variation of length at each direction")
    mean: float = Field(..., description="∫ l du over a period")
    minimum: float = Field(..., description="min_u l(u)")


class ExperimentRequest(BaseModel):
    field: PerturbationFieldSpec = Field(..., description="Normal variation of the unit circle")
    area: float = Field(..., gt=0, lt=3.141592653589793, description="Area where the profile is probed")
    s_grid: Optional[List[float]] = Field(None, description="Perturbation sizes (defaults from settings)")


class ModeRootResponse(BaseModel):
    n: int = Field(..., description="Fourier mode")
    b: float = Field(..., description="Root of the mode condition")
    theta: float = Field(..., description="Disk arc half-angle, equal to b")
    area: float = Field(..., description="Disk area cut off by the arc")

    class Config:
        from_attributes = True


class ExperimentReportResponse(BaseModel):
    area: float = Field(..., description="Area where the profile is probed")
    s_values: List[float] = Field(..., description="Perturbation sizes")
    profile_values: List[float] = Field(..., description="Oracle profile values I_s(area)")
    baseline: float = Field(..., description="Unit-disk profile at the area")
    alpha: float = Field(..., description="Fitted first-order coefficient")
    beta: float = Field(..., description="Fitted second-order coefficient")
    noise_floor: float = Field(..., description="Threshold on |alpha|")
    beta_noise_floor: float = Field(..., description="Threshold on |beta|")
    verdict: Verdict = Field(..., description="first_order_decrease, second_order_decrease or stationary")
    predicted_alpha: Optional[float] = Field(None, description="min_u l(u) at the matching disk arc")
    description: str = Field("", description="Field label")

    class Config:
        from_attributes = True
