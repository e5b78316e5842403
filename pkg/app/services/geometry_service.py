import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from app.core.config import Settings, get_settings
from app.core.errors import NonConvex, OutOfRange
from app.core.numerics import TWO_PI, scan_roots, wrap_angle
from app.models.curve_model import CurvePoint, SupportCurve
from app.models.domain_model import DomainClassReport
from app.schemas.domain_schemas import DomainSpec

# Logger específico para servicios
logger = logging.getLogger("services")


class GeometryService:
    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        logger.debug("GeometryService inicializado")

    # ------------------------------------------------------------------ convexity

    def _grid(self, nodes: Optional[int] = None) -> np.ndarray:
        n = nodes or self.settings.quadrature_nodes
        return TWO_PI * np.arange(n) / n

    def min_radius_of_curvature(self, curve: SupportCurve) -> float:
        return float(np.min(curve.radius_of_curvature(self._grid())))

    def ensure_convex(self, curve: SupportCurve) -> None:
        """Comprobar ρ = h + h'' > 0 en la malla densa"""
        rho_min = self.min_radius_of_curvature(curve)
        if rho_min <= 0.0:
            logger.error(f"Curva no convexa: min ρ = {rho_min:.3e}")
            raise NonConvex(f"h + h'' must be positive, minimum is {rho_min:.3e}")

    # ------------------------------------------------------------------ operaciones

    def eval(self, curve: SupportCurve, theta: float) -> CurvePoint:
        """Punto de la curva con normal (cosθ, sinθ)"""
        rho = float(curve.radius_of_curvature(theta))
        if rho <= 0.0:
            raise NonConvex(f"h + h'' = {rho:.3e} at θ = {theta}")
        x, y = curve.position(theta)
        tx, ty = curve.tangent(theta)
        nx, ny = curve.normal(theta)
        return CurvePoint(
            theta=float(theta),
            position=(float(x), float(y)),
            tangent=(float(tx), float(ty)),
            normal=(float(nx), float(ny)),
            curvature=1.0 / rho,
        )

    def area(self, curve: SupportCurve) -> float:
        self.ensure_convex(curve)
        return curve.area

    def normalize_area(self, curve: SupportCurve, target: float = math.pi) -> SupportCurve:
        """Escalar uniformemente todos los coeficientes hasta el área objetivo"""
        if target <= 0.0:
            raise OutOfRange(f"target area must be positive, got {target}")
        current = self.area(curve)
        scaled = curve.scaled(math.sqrt(target / current))
        logger.debug(f"Área normalizada {current:.15g} -> {scaled.area:.15g}")
        return scaled

    def vertices(self, curve: SupportCurve) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
        """Raíces de κ'(θ) (equivalentemente de ρ'), separadas en no degeneradas y degeneradas"""
        n = self.settings.vertex_scan_nodes
        # desplazada media celda para no caer sobre vértices de ejes
        grid = TWO_PI * (np.arange(n + 1) + 0.5) / n
        roots = scan_roots(lambda t: curve.radius_of_curvature(t, 1), grid, xtol=self.settings.root_tolerance)
        regular, degenerate = [], []
        for root in self._distinct_angles(roots, 10.0 * self.settings.root_tolerance):
            # κ'' = −ρ''/ρ² en una raíz de ρ'
            rho = float(curve.radius_of_curvature(root))
            kappa_second = -float(curve.radius_of_curvature(root, 2)) / rho ** 2
            if abs(kappa_second) < self.settings.degenerate_vertex_tolerance:
                degenerate.append(root)
            else:
                regular.append(root)
        return tuple(regular), tuple(degenerate)

    @staticmethod
    def _distinct_angles(angles, tolerance: float) -> List[float]:
        """Ángulos reducidos a [0, 2π), fundiendo los que distan menos de `tolerance` (también a través de 2π)"""
        unique: List[float] = []
        for angle in sorted(wrap_angle(a) for a in angles):
            if unique and angle - unique[-1] <= tolerance:
                continue
            unique.append(angle)
        if len(unique) > 1 and unique[0] + TWO_PI - unique[-1] <= tolerance:
            unique.pop()
        return unique

    def is_bisymmetric(self, curve: SupportCurve) -> bool:
        """Simetría respecto a ambos ejes: sin términos en seno ni cosenos de orden impar"""
        a, b = curve.coefficient_vectors()
        tol = self.settings.symmetry_tolerance
        return bool(np.all(np.abs(b) < tol) and np.all(np.abs(a[1::2]) < tol))

    def classify(self, curve: SupportCurve) -> DomainClassReport:
        self.ensure_convex(curve)
        grid = self._grid(self.settings.vertex_scan_nodes)
        kappa = curve.curvature(grid)
        area = curve.area
        if curve.is_disk(self.settings.symmetry_tolerance):
            logger.info("Dominio clasificado como disco (conjunto de vértices degenerado)")
            kappa_max = kappa_min = 1.0 / float(curve.cos_coeffs[0])
            vertices, degenerate = (), ()
        else:
            vertices, degenerate = self.vertices(curve)
            extremes = curve.curvature(np.array(vertices + degenerate)) if vertices + degenerate else np.array([])
            kappa_max = float(max(np.max(kappa), np.max(extremes, initial=-np.inf)))
            kappa_min = float(min(np.min(kappa), np.min(extremes, initial=np.inf)))
        is_class_a = (
            not curve.is_disk(self.settings.symmetry_tolerance)
            and not degenerate
            and len(vertices) == 4
            and self.is_bisymmetric(curve)
        )
        report = DomainClassReport(
            is_class_A=is_class_a,
            is_disk=curve.is_disk(self.settings.symmetry_tolerance),
            vertex_thetas=vertices,
            degenerate_vertices=degenerate,
            kappa_max=kappa_max,
            kappa_min=kappa_min,
            area=area,
            perimeter=curve.perimeter,
            pestov_ionin_holds=kappa_max >= math.sqrt(math.pi / area) * (1.0 - 1e-12),
        )
        logger.info(
            f"Clasificación: clase A={report.is_class_A}, disco={report.is_disk}, "
            f"{len(vertices)} vértices, κ ∈ [{kappa_min:.6g}, {kappa_max:.6g}]"
        )
        return report

    def resolve(self, spec: DomainSpec) -> SupportCurve:
        """Construir la curva descrita por un DomainSpec (preset o coeficientes) y normalizarla si se pide"""
        logger.debug(f"Resolviendo dominio: {spec.model_dump(exclude_defaults=True)}")
        samples = self.settings.fourier_samples
        if spec.preset is None:
            curve = SupportCurve(tuple(spec.support_cos), tuple(spec.support_sin))
        else:
            params = spec.preset_params()
            if spec.preset == "disk":
                curve = SupportCurve.disk(params.radius)
            elif spec.preset == "ellipse":
                curve = SupportCurve.ellipse(params.a, params.b, samples)
            elif spec.preset == "near_disk_ellipse":
                curve = self.normalize_area(SupportCurve.ellipse(1.0 + params.epsilon, 1.0, samples))
            else:
                curve = SupportCurve.quartic(params.a0, params.a2, params.a4)
        self.ensure_convex(curve)
        if spec.normalize:
            curve = self.normalize_area(curve)
        logger.info(f"Dominio resuelto: orden {curve.order}, área {curve.area:.15g}")
        return curve

    # ------------------------------------------------------------------ supporting geometry

    def closure_residuals(self, curve: SupportCurve) -> Tuple[float, float, float]:
        """(∮ cosθ/κ dθ, ∮ sinθ/κ dθ, ∮ κ ds − 2π) por trapecios periódicos"""
        grid = self._grid()
        rho = curve.radius_of_curvature(grid)
        weight = TWO_PI / len(grid)
        cos_part = float(np.sum(np.cos(grid) * rho) * weight)
        sin_part = float(np.sum(np.sin(grid) * rho) * weight)
        total_turning = float(np.sum(rho / rho) * weight)
        return cos_part, sin_part, total_turning - TWO_PI

    def arclength_derivatives(self, curve: SupportCurve, theta: float) -> Tuple[float, float, float, float]:
        """(k, dk/ds, d²k/ds², d³k/ds³) en θ, con d/ds = κ d/dθ"""
        r0, r1, r2, r3 = (float(curve.radius_of_curvature(theta, k)) for k in range(4))
        k0 = 1.0 / r0
        k_t = -r1 / r0 ** 2
        k_tt = -r2 / r0 ** 2 + 2.0 * r1 ** 2 / r0 ** 3
        k_ttt = -r3 / r0 ** 2 + 6.0 * r1 * r2 / r0 ** 3 - 6.0 * r1 ** 3 / r0 ** 4
        k_s = k0 * k_t
        k_ss = k0 * (k_t ** 2 + k0 * k_tt)
        k_sss = k0 * (k_t ** 3 + 4.0 * k0 * k_t * k_tt + k0 ** 2 * k_ttt)
        return k0, k_s, k_ss, k_sss

    def theta_at_arclength(self, curve: SupportCurve, theta_ref: float, offset: float) -> float:
        """θ tal que s(θ) − s(θ_ref) = offset (s creciente porque ρ > 0)"""
        target = float(curve.arclength(theta_ref)) + offset
        rho_min = self.min_radius_of_curvature(curve)
        span = abs(offset) / rho_min + 1e-9
        lo, hi = theta_ref - span, theta_ref + span
        return brentq(lambda t: float(curve.arclength(t)) - target, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)

    def orient_major_axis(self, curve: SupportCurve) -> SupportCurve:
        """Colocar el vértice de curvatura máxima en θ = 0 (giro de un cuarto si hace falta)"""
        if float(curve.curvature(0.0)) < float(curve.curvature(math.pi / 2.0)):
            logger.debug("Girando el dominio π/2 para situar el eje mayor sobre el eje x")
            return curve.rotate_quarter()
        return curve

    def contains_points(self, curve: SupportCurve, points: np.ndarray, tolerance: float = 1e-9) -> bool:
        """Desigualdad de la función soporte: p·N(θ) ≤ h(θ) para todo θ"""
        grid = self._grid(1024)
        normals = curve.normal(grid)
        excess = np.asarray(points) @ normals.T - curve.support(grid)[None, :]
        scale = max(1.0, float(np.max(np.abs(curve.support(grid)))))
        return bool(np.max(excess) <= tolerance * scale)
