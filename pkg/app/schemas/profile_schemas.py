from pydantic import BaseModel, Field
from typing import List, Optional, Tuple

from app.models.arc_model import ArcKind
from app.schemas.domain_schemas import DomainSpec


class ProfileSampleResponse(BaseModel):
    theta: float = Field(..., description="Endpoint normal angle of the symmetric arc")
    area: float = Field(..., description="Enclosed area")
    length: float = Field(..., description="Arc length")
    arc_curvature: float = Field(..., description="Signed arc curvature")
    contained: bool = Field(..., description="Arc lies inside the domain")

    class Config:
        from_attributes = True


class ProfileTableResponse(BaseModel):
    domain_id: str = Field(..., description="Hash of the support coefficients")
    samples: List[ProfileSampleResponse] = Field(..., description="Samples ordered by θ")

    class Config:
        from_attributes = True


class ConjectureReportResponse(BaseModel):
    sup_ratio: float = Field(..., description="Supremum of L/L* over the sampled family")
    argmax_area: float = Field(..., description="Area where the supremum is attained")
    argmax_theta: float = Field(..., description="θ where the supremum is attained")
    passed: bool = Field(..., description="sup_ratio < 1")
    margin: float = Field(..., description="1 − sup_ratio")
    interior_maximum: bool = Field(..., description="Supremum attained away from the grid ends")
    stationarity_gap: Optional[float] = Field(None, description="(π−2θ)/(π−2θ*) − (L/L*)² at an interior maximum")
    kappa_max: float = Field(..., description="Maximum boundary curvature")
    small_area_slope: float = Field(..., description="Extrapolated limit of (I(a) − √(2πa))/a")

    class Config:
        from_attributes = True


class OracleRequest(BaseModel):
    domain: DomainSpec = Field(..., description="Domain to probe")
    area: float = Field(..., gt=0, description="Target enclosed area")
    grid: Optional[int] = Field(None, ge=16, description="Boundary grid size")


class OracleResponse(BaseModel):
    area: float = Field(..., description="Target enclosed area")
    length: float = Field(..., description="Shortest perfect arc enclosing the area")


class PerfectArcResponse(BaseModel):
    kind: ArcKind = Field(..., description="circular or segment")
    center: Optional[Tuple[float, float]] = Field(None, description="Circle centre")
    radius: Optional[float] = Field(None, description="Circle radius")
    curvature: float = Field(..., description="Signed curvature")
    endpoint_thetas: Tuple[float, float] = Field(..., description="Boundary normal angles at the endpoints")
    endpoints: Tuple[Tuple[float, float], Tuple[float, float]] = Field(..., description="Endpoint positions")
    length: float = Field(..., description="Arc length")
    enclosed_area: float = Field(..., description="Area cut off by the arc")
    contained: bool = Field(..., description="Arc lies inside the domain")
    orthogonality_residual: float = Field(..., description="Largest |cos| between arc and boundary tangents")

    class Config:
        from_attributes = True
