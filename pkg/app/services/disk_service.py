import logging
import math
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from app.core.config import Settings, get_settings
from app.core.errors import OutOfRange
from app.core.numerics import x_cot_x_minus_one
from app.models.arc_model import ArcKind, PerfectArc

# Logger específico para servicios
logger = logging.getLogger("services")

HALF_PI = math.pi / 2.0
# −4κ_max/(3π) con κ_max = 1
SMALL_AREA_SLOPE = -4.0 / (3.0 * math.pi)


def _area(theta: float) -> float:
    """a(θ) = θ − tanθ + (π/2 − θ)tan²θ, válida en [0, π/2]"""
    if theta >= HALF_PI:
        return HALF_PI
    eps = HALF_PI - theta
    if eps < 0.25:
        # tanθ = cot ε: a = θ + cot ε·(ε cot ε − 1)
        return theta + float(x_cot_x_minus_one(eps)) / math.tan(eps)
    t = math.tan(theta)
    return theta - t + eps * t * t


def _length(theta: float) -> float:
    """(π − 2θ)·tanθ escrita como 2ε·cot ε con ε = π/2 − θ"""
    eps = HALF_PI - theta
    if eps <= 0.0:
        return 2.0
    return 2.0 * (float(x_cot_x_minus_one(eps)) + 1.0)


class DiskService:
    """Perfil isoperimétrico y arcos perfectos del disco unidad en forma cerrada"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        logger.debug("DiskService inicializado")

    @staticmethod
    def _check_theta(theta: float) -> None:
        if not 0.0 < theta < HALF_PI:
            raise OutOfRange(f"θ must lie in (0, π/2), got {theta}")

    def theta_to_area(self, theta: float) -> float:
        self._check_theta(theta)
        return _area(theta)

    def theta_to_length(self, theta: float) -> float:
        self._check_theta(theta)
        return _length(theta)

    def area_to_theta(self, area: float) -> float:
        """Inversa de a(θ) en (0, π/2] por bisección acotada (a es estrictamente creciente)"""
        if not 0.0 < area <= HALF_PI:
            raise OutOfRange(f"area must lie in (0, π/2], got {area}")
        if area == HALF_PI:
            return HALF_PI
        return brentq(lambda t: _area(t) - area, 0.0, HALF_PI, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)

    def profile_I(self, a: float) -> float:
        """I_{B₁}(a), usando I(a) = I(π − a) para a > π/2"""
        if not 0.0 < a < math.pi:
            raise OutOfRange(f"area must lie in (0, π), got {a}")
        if a > HALF_PI:
            a = math.pi - a
        return _length(self.area_to_theta(a))

    def disk_arc(self, u: float, theta: float) -> PerfectArc:
        """Arco perfecto de semiángulo θ centrado en la dirección u"""
        self._check_theta(theta)
        direction = np.array([math.cos(u), math.sin(u)])
        center = direction / math.cos(theta)
        radius = math.tan(theta)
        lo, hi = u - theta, u + theta
        endpoints = [np.array([math.cos(t), math.sin(t)]) for t in (lo, hi)]
        residual = 0.0
        for t, point in zip((lo, hi), endpoints):
            boundary_tangent = np.array([-math.sin(t), math.cos(t)])
            radial = (point - center) / radius
            arc_tangent = np.array([-radial[1], radial[0]])
            residual = max(residual, abs(float(boundary_tangent @ arc_tangent)))
        return PerfectArc(
            kind=ArcKind.circular,
            center=(float(center[0]), float(center[1])),
            radius=radius,
            curvature=1.0 / radius,
            endpoint_thetas=(lo, hi),
            endpoints=(tuple(map(float, endpoints[0])), tuple(map(float, endpoints[1]))),
            length=_length(theta),
            enclosed_area=_area(theta),
            contained=True,
            orthogonality_residual=residual,
        )
