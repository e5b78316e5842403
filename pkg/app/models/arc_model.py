# app/models/arc_model.py

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

Point = Tuple[float, float]


class ArcKind(str, Enum):
    circular = "circular"
    segment = "segment"


@dataclass(frozen=True)
class PerfectArc:
    """Arco circular o segmento que corta el borde ortogonalmente.

    ``endpoint_thetas`` are the boundary normal angles (θ₋, θ₊) with θ₋ < θ₊; the
    enclosed region is bounded by the boundary run counter-clockwise from θ₋ to
    θ₊ and the arc back. ``curvature`` is positive when that region lies on the
    centre side of the arc.
    """

    kind: ArcKind
    center: Optional[Point]
    radius: Optional[float]
    curvature: float
    endpoint_thetas: Tuple[float, float]
    endpoints: Tuple[Point, Point]
    length: float
    enclosed_area: float
    contained: bool
    orthogonality_residual: float


@dataclass(frozen=True)
class TwoPointState:
    s1: float
    s2: float
    f_value: float
    grad: Tuple[float, float]
