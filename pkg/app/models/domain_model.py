# app/models/domain_model.py

from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class DomainClassReport:
    is_class_A: bool
    is_disk: bool
    vertex_thetas: Tuple[float, ...]
    degenerate_vertices: Tuple[float, ...]
    kappa_max: float
    kappa_min: float
    area: float
    perimeter: float
    pestov_ionin_holds: bool
