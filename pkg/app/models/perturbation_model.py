# app/models/perturbation_model.py

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from app.models.curve_model import SupportCurve


@dataclass(frozen=True)
class PerturbationField:
    """f(u) = Σ_{n≥1} cₙ cos nu + dₙ sin nu; sin término n = 0, así que ∫ f du = 0"""

    fourier_cos: Tuple[float, ...] = ()
    fourier_sin: Tuple[float, ...] = ()
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "fourier_cos", tuple(float(c) for c in self.fourier_cos))
        object.__setattr__(self, "fourier_sin", tuple(float(c) for c in self.fourier_sin))

    @classmethod
    def mode(cls, n: int, cos_weight: float = 1.0, sin_weight: float = 0.0) -> "PerturbationField":
        cos = [0.0] * n
        sin = [0.0] * n
        cos[n - 1] = cos_weight
        sin[n - 1] = sin_weight
        return cls(tuple(cos), tuple(sin), f"{cos_weight:g}·cos {n}u + {sin_weight:g}·sin {n}u")

    @property
    def max_mode(self) -> int:
        return max(len(self.fourier_cos), len(self.fourier_sin))

    @cached_property
    def coefficients(self) -> Tuple[np.ndarray, np.ndarray]:
        """(cₙ, dₙ) para n = 1..max_mode"""
        c = np.zeros(self.max_mode)
        d = np.zeros(self.max_mode)
        c[: len(self.fourier_cos)] = self.fourier_cos
        d[: len(self.fourier_sin)] = self.fourier_sin
        return c, d

    @property
    def modes(self) -> np.ndarray:
        return np.arange(1, self.max_mode + 1, dtype=float)

    def evaluate(self, u, derivative: int = 0):
        u = np.asarray(u, dtype=float)
        if self.max_mode == 0:
            return np.zeros_like(u)
        c, d = self.coefficients
        n = self.modes
        phase = np.multiply.outer(u, n) + derivative * math.pi / 2.0
        weights = n ** derivative
        return np.cos(phase) @ (weights * c) + np.sin(phase) @ (weights * d)

    @property
    def energy(self) -> float:
        """Σ (cₙ² + dₙ²); ∫₀^{2π} f² du = π·energy"""
        c, d = self.coefficients
        return float(np.sum(c ** 2 + d ** 2))

    def is_zero(self) -> bool:
        return self.energy == 0.0


@dataclass(frozen=True)
class ModeRoot:
    n: int
    b: float
    theta: float
    area: float


class Verdict(str, Enum):
    first_order_decrease = "first_order_decrease"
    second_order_decrease = "second_order_decrease"
    stationary = "stationary"


@dataclass(frozen=True)
class ExperimentReport:
    area: float
    s_values: Tuple[float, ...]
    profile_values: Tuple[float, ...]
    baseline: float
    alpha: float
    beta: float
    noise_floor: float
    beta_noise_floor: float
    verdict: Verdict
    predicted_alpha: Optional[float] = None
    description: str = ""


@dataclass(frozen=True)
class RadialCurve:
    """Borde en forma polar X(u) = scale·r(u)·(cos u, sin u), r(u) = Σ pₙ cos nu + qₙ sin nu (n ≥ 0)"""

    radial_cos: Tuple[float, ...]
    radial_sin: Tuple[float, ...] = field(default_factory=tuple)
    scale: float = 1.0

    @cached_property
    def _order(self) -> int:
        return max(len(self.radial_cos) - 1, len(self.radial_sin))

    @cached_property
    def _coeffs(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        n = np.arange(self._order + 1, dtype=float)
        p = np.zeros(self._order + 1)
        q = np.zeros(self._order + 1)
        p[: len(self.radial_cos)] = self.radial_cos
        q[1 : len(self.radial_sin) + 1] = self.radial_sin
        return n, self.scale * p, self.scale * q

    def radius(self, u, derivative: int = 0):
        u = np.asarray(u, dtype=float)
        n, p, q = self._coeffs
        phase = np.multiply.outer(u, n) + derivative * math.pi / 2.0
        weights = n ** derivative if derivative else np.ones_like(n)
        return np.cos(phase) @ (weights * p) + np.sin(phase) @ (weights * q)

    def position(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        r = self.radius(u)
        return np.stack((r * np.cos(u), r * np.sin(u)), axis=-1)

    def tangent(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        r, dr = self.radius(u), self.radius(u, 1)
        vec = np.stack((dr * np.cos(u) - r * np.sin(u), dr * np.sin(u) + r * np.cos(u)), axis=-1)
        return vec / np.linalg.norm(vec, axis=-1, keepdims=True)

    def normal(self, u) -> np.ndarray:
        t = self.tangent(u)
        return np.stack((t[..., 1], -t[..., 0]), axis=-1)

    def convexity_margin(self, u):
        """r² + 2r'² − r r'' (positivo ⇔ curvatura positiva)"""
        r, dr, ddr = self.radius(u), self.radius(u, 1), self.radius(u, 2)
        return r * r + 2.0 * dr * dr - r * ddr

    def curvature(self, u):
        r, dr = self.radius(u), self.radius(u, 1)
        return self.convexity_margin(u) / (r * r + dr * dr) ** 1.5

    @property
    def area(self) -> float:
        """½∫ r² du por Parseval"""
        _, p, q = self._coeffs
        return float(math.pi * p[0] ** 2 + 0.5 * math.pi * np.sum(p[1:] ** 2 + q[1:] ** 2))

    def to_support_curve(self, samples: int = 256, iterations: int = 40) -> Tuple[SupportCurve, float]:
        """Función soporte h(θ) = max_u X(u)·N(θ), maximizada por Newton en cada dirección.

        Returns the fitted curve and the largest residual |d/du X·N| at the maxima.
        """
        theta = 2.0 * math.pi * np.arange(samples) / samples
        u = theta.copy()
        for _ in range(iterations):
            r, dr, ddr = self.radius(u), self.radius(u, 1), self.radius(u, 2)
            c, s = np.cos(u - theta), np.sin(u - theta)
            slope = dr * c - r * s
            bend = (ddr - r) * c - 2.0 * dr * s
            step = slope / bend
            u = u - step
            if np.max(np.abs(step)) < 1e-15:
                break
        r, dr = self.radius(u), self.radius(u, 1)
        residual = float(np.max(np.abs(dr * np.cos(u - theta) - r * np.sin(u - theta))))
        h = r * np.cos(u - theta)
        return SupportCurve.from_samples(h), residual
