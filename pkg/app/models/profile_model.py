# app/models/profile_model.py

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class ProfileSample:
    theta: float
    area: float
    length: float
    arc_curvature: float
    contained: bool = True


@dataclass(frozen=True)
class ProfileTable:
    samples: Tuple[ProfileSample, ...]
    domain_id: str

    @property
    def thetas(self) -> np.ndarray:
        return np.array([s.theta for s in self.samples])

    @property
    def areas(self) -> np.ndarray:
        return np.array([s.area for s in self.samples])

    @property
    def lengths(self) -> np.ndarray:
        return np.array([s.length for s in self.samples])

    @property
    def curvatures(self) -> np.ndarray:
        return np.array([s.arc_curvature for s in self.samples])


@dataclass(frozen=True)
class ConjectureReport:
    sup_ratio: float
    argmax_area: float
    argmax_theta: float
    passed: bool
    margin: float
    interior_maximum: bool
    stationarity_gap: Optional[float]
    kappa_max: float
    small_area_slope: float
