import csv
import hashlib
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq, minimize_scalar

from app.core.config import Settings, get_settings
from app.core.errors import IsDisk, NoArcAtArea, NotClassA, NotNormalized, OutOfRange, QuadratureMismatch
from app.core.numerics import chebyshev_grid, cumulative_gauss_legendre, richardson_sqrt_series, x_cos_minus_sin
from app.models.arc_model import PerfectArc
from app.models.curve_model import SupportCurve
from app.models.profile_model import ConjectureReport, ProfileSample, ProfileTable
from app.services.arc_service import ArcService
from app.services.disk_service import SMALL_AREA_SLOPE, DiskService
from app.services.geometry_service import GeometryService

# Logger específico para servicios
logger = logging.getLogger("services")

HALF_PI = math.pi / 2.0
# por debajo de esta área el cociente L/L* se evalúa con el desarrollo asintótico
ASYMPTOTIC_AREA = 1e-8
SLOPE_AREAS = (1e-3, 1e-4, 1e-5)


def domain_id(domain: SupportCurve) -> str:
    payload = json.dumps([domain.cos_coeffs, domain.sin_coeffs])
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def table_to_csv(table: ProfileTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["theta", "area", "length", "curvature"])
    for sample in table.samples:
        writer.writerow(["%.17g" % value for value in (sample.theta, sample.area, sample.length, sample.arc_curvature)])
    return buffer.getvalue()


def _stretch(eps):
    """ε/sin ε, igual a 1 en ε = 0"""
    eps = np.asarray(eps, dtype=float)
    safe = np.where(np.abs(eps) < 1e-6, 1.0, eps)
    return np.where(np.abs(eps) < 1e-6, 1.0 + eps * eps / 6.0, safe / np.sin(safe))


class ProfileService:
    def __init__(
        self,
        settings: Optional[Settings] = None,
        geometry: Optional[GeometryService] = None,
        arcs: Optional[ArcService] = None,
        disk: Optional[DiskService] = None,
    ):
        self.settings = settings or get_settings()
        self.geometry = geometry or GeometryService(self.settings)
        self.arcs = arcs or ArcService(self.settings, self.geometry)
        self.disk = disk or DiskService(self.settings)
        logger.debug("ProfileService inicializado")

    # ------------------------------------------------------------------ preconditions

    def _check_normalized(self, domain: SupportCurve) -> None:
        area = self.geometry.area(domain)
        if abs(area - math.pi) > 1e-8 * math.pi:
            logger.error(f"Dominio no normalizado: área {area:.15g}")
            raise NotNormalized(f"domain area must be π, got {area:.15g}")

    def _prepare_class_a(self, domain: SupportCurve, allow_disk: bool) -> Tuple[SupportCurve, float]:
        """Validar clase 𝒜 (o disco si se permite) y orientar el vértice de curvatura máxima en θ = 0"""
        report = self.geometry.classify(domain)
        if report.is_disk and not allow_disk:
            raise IsDisk("the unit disk is the equality case of the comparison")
        if not report.is_disk and not report.is_class_A:
            raise NotClassA(
                f"domain is not in class A: {len(report.vertex_thetas)} vertices, "
                f"{len(report.degenerate_vertices)} degenerate"
            )
        self._check_normalized(domain)
        oriented = domain if report.is_disk else self.geometry.orient_major_axis(domain)
        return oriented, report.kappa_max

    # ------------------------------------------------------------------ symmetric family

    @staticmethod
    def family_height(domain: SupportCurve, theta):
        """y(θ) = h sinθ + h' cosθ = ∫₀^θ cosω ρ(ω) dω"""
        theta = np.asarray(theta, dtype=float)
        return domain.support(theta) * np.sin(theta) + domain.support(theta, 1) * np.cos(theta)

    def family_length(self, domain: SupportCurve, theta):
        """L(θ) = (π − 2θ)·y/cosθ, escrita como 2ε·y/sin ε con ε = π/2 − θ"""
        eps = HALF_PI - np.asarray(theta, dtype=float)
        return 2.0 * _stretch(eps) * self.family_height(domain, theta)

    def family_length_derivative(self, domain: SupportCurve, theta):
        """dL/dθ = 2(ε cos ε − sin ε)·y/sin²ε + 2ερ"""
        theta = np.asarray(theta, dtype=float)
        eps = HALF_PI - theta
        y = self.family_height(domain, theta)
        rho = domain.radius_of_curvature(theta)
        safe = np.where(eps < 1e-6, 1.0, eps)
        bend = np.where(eps < 1e-6, -2.0 * eps / 3.0, 2.0 * x_cos_minus_sin(safe) / np.sin(safe) ** 2)
        return bend * y + 2.0 * eps * rho

    def family_area(self, domain: SupportCurve, theta):
        theta = np.asarray(theta, dtype=float)
        return self.arcs.enclosed_area(domain, -theta, theta)

    def _sample(self, domain: SupportCurve, theta: float) -> ProfileSample:
        arc = self.arcs.build_arc(domain, -theta, theta)
        length = float(self.family_length(domain, theta))
        curvature = math.cos(theta) / float(self.family_height(domain, theta))
        return ProfileSample(theta, arc.enclosed_area, length, curvature, arc.contained)

    def symmetric_profile(self, domain: SupportCurve, n_samples: int = 256) -> ProfileTable:
        """Familia simétrica de arcos perfectos alrededor del vértice de curvatura máxima"""
        if n_samples < 2:
            raise OutOfRange(f"n_samples must be at least 2, got {n_samples}")
        logger.debug(f"Perfil simétrico con {n_samples} muestras")
        oriented, _ = self._prepare_class_a(domain, allow_disk=True)
        thetas = chebyshev_grid(n_samples, 0.0, HALF_PI)

        if self.settings.threads > 1:
            with ThreadPoolExecutor(max_workers=self.settings.threads) as pool:
                samples = tuple(pool.map(lambda t: self._sample(oriented, float(t)), thetas))
        else:
            samples = tuple(self._sample(oriented, float(t)) for t in thetas)

        # dA = (1/k) dL con 1/k = y/cosθ = y/sin ε
        def integrand(theta: np.ndarray) -> np.ndarray:
            eps = HALF_PI - theta
            height = self.family_height(oriented, theta)
            return height / np.sin(eps) * self.family_length_derivative(oriented, theta)

        quadrature = cumulative_gauss_legendre(integrand, thetas)
        green = np.array([s.area for s in samples])
        mismatch = float(np.max(np.abs(quadrature - green)))
        if mismatch > 1e-7:
            logger.error(f"Área por Green y por cuadratura difieren en {mismatch:.3e}")
            raise QuadratureMismatch(f"Green and dL/k areas differ by {mismatch:.3e}")

        if np.any(np.diff(green) <= 0.0) or np.any(np.diff([s.length for s in samples]) <= 0.0):
            logger.warning("La familia simétrica no es estrictamente creciente en L y A")
        if not all(s.contained for s in samples):
            logger.warning("Algún arco de la familia simétrica sale del dominio")
        table = ProfileTable(samples, domain_id(domain))
        logger.info(f"Perfil simétrico: {len(samples)} muestras, discrepancia de cuadratura {mismatch:.2e}")
        return table

    def symmetric_length_at_area(self, domain: SupportCurve, area: float) -> float:
        """Longitud del arco de la familia simétrica que encierra `area` (o su complemento)"""
        oriented, _ = self._prepare_class_a(domain, allow_disk=True)
        if not 0.0 < area < math.pi:
            raise OutOfRange(f"area must lie in (0, π), got {area}")
        if domain.is_disk(self.settings.symmetry_tolerance):
            return self.disk.profile_I(area)
        area = min(area, math.pi - area)
        if float(self.family_area(oriented, HALF_PI)) <= area:
            # la familia termina en el segmento de área π/2
            return float(self.family_length(oriented, HALF_PI))
        theta = brentq(
            lambda t: float(self.family_area(oriented, t)) - area,
            1e-9,
            HALF_PI,
            xtol=1e-15,
            rtol=4 * np.finfo(float).eps,
            maxiter=200,
        )
        return float(self.family_length(oriented, theta))

    def small_area_slope(self, domain: SupportCurve) -> float:
        """Límite de (I(a) − √(2πa))/a cuando a → 0 por extrapolación de Richardson en √a"""
        values = [
            (self.symmetric_length_at_area(domain, a) - math.sqrt(2.0 * math.pi * a)) / a for a in SLOPE_AREAS
        ]
        slope = richardson_sqrt_series(values, SLOPE_AREAS[0] / SLOPE_AREAS[1])
        logger.debug(f"Pendiente a área pequeña: {slope:.10g} (muestras {values})")
        return slope

    @staticmethod
    def dl_da_residuals(table: ProfileTable) -> np.ndarray:
        """|dL/dA − k|/k derivando en θ con splines cúbicos de las columnas de la tabla"""
        theta = table.thetas
        slope = CubicSpline(theta, table.lengths)(theta, 1) / CubicSpline(theta, table.areas)(theta, 1)
        return np.abs(slope - table.curvatures) / np.abs(table.curvatures)

    def comparison_gap(self, domain: SupportCurve, thetas) -> Tuple[np.ndarray, np.ndarray]:
        """(y − y*, d(y − y*)/dθ) frente al disco unidad; la derivada es cosθ·(ρ − 1)"""
        oriented, _ = self._prepare_class_a(domain, allow_disk=True)
        thetas = np.asarray(thetas, dtype=float)
        gap = self.family_height(oriented, thetas) - np.sin(thetas)
        slope = np.cos(thetas) * (oriented.radius_of_curvature(thetas) - 1.0)
        return gap, slope

    # ------------------------------------------------------------------ conjecture

    def _ratio_at(self, area: float, length: float, slope: float) -> float:
        if area < ASYMPTOTIC_AREA:
            # L ≈ √(2πA) + S·A, L* ≈ √(2πA) − 4A/(3π)
            return 1.0 + (slope - SMALL_AREA_SLOPE) * math.sqrt(area / (2.0 * math.pi))
        return length / self.disk.profile_I(area)

    def stationarity_gaps(self, domain: SupportCurve, table: ProfileTable) -> np.ndarray:
        """(π − 2θ)/(π − 2θ*) − (L/L*)²: mismo signo que d(L/L*)/dA"""
        gaps = []
        for sample in table.samples:
            theta_star = self.disk.area_to_theta(sample.area)
            ratio = sample.length / self.disk.profile_I(sample.area)
            gaps.append((math.pi - 2.0 * sample.theta) / (math.pi - 2.0 * theta_star) - ratio ** 2)
        return np.array(gaps)

    def conjecture_check(self, domain: SupportCurve, n_samples: int = 256) -> ConjectureReport:
        """Supremo de L/L* sobre la familia simétrica de un dominio de clase 𝒜 que no es el disco"""
        oriented, kappa_max = self._prepare_class_a(domain, allow_disk=False)
        table = self.symmetric_profile(oriented, n_samples)
        slope = self.small_area_slope(oriented)
        asymptotic_slope = -4.0 * kappa_max / (3.0 * math.pi)
        if abs(slope - asymptotic_slope) > 0.02 * abs(asymptotic_slope):
            logger.warning(f"Pendiente extrapolada {slope:.6g} lejos de −4κ_max/(3π) = {asymptotic_slope:.6g}")

        ratios = np.array(
            [self._ratio_at(s.area, s.length, asymptotic_slope) for s in table.samples]
        )
        index = int(np.argmax(ratios))
        sup_ratio = float(ratios[index])
        theta_arg = float(table.samples[index].theta)
        interior = 0 < index < len(ratios) - 1 and table.samples[index].area >= ASYMPTOTIC_AREA
        gap = None
        if interior:
            def negative_ratio(theta: float) -> float:
                area = float(self.family_area(oriented, theta))
                return -float(self.family_length(oriented, theta)) / self.disk.profile_I(area)

            bracket = (float(table.samples[index - 1].theta), theta_arg, float(table.samples[index + 1].theta))
            polished = minimize_scalar(negative_ratio, bracket=bracket, method="golden", tol=1e-10)
            if -polished.fun > sup_ratio:
                sup_ratio, theta_arg = float(-polished.fun), float(polished.x)
            area = float(self.family_area(oriented, theta_arg))
            theta_star = self.disk.area_to_theta(area)
            gap = (math.pi - 2.0 * theta_arg) / (math.pi - 2.0 * theta_star) - sup_ratio ** 2
        else:
            logger.info("El máximo de L/L* está en el borde de la malla; no se pule")

        if kappa_max <= 1.0:
            logger.warning(f"κ_max = {kappa_max:.12g} ≤ 1: el cociente no se acerca a 1 por debajo cerca de A = 0")
        argmax_area = float(self.family_area(oriented, theta_arg))
        report = ConjectureReport(
            sup_ratio=sup_ratio,
            argmax_area=argmax_area,
            argmax_theta=theta_arg,
            passed=sup_ratio < 1.0,
            margin=1.0 - sup_ratio,
            interior_maximum=interior,
            stationarity_gap=gap,
            kappa_max=kappa_max,
            small_area_slope=slope,
        )
        logger.info(f"Comprobación de la conjetura: sup L/L* = {sup_ratio:.12g} en A = {argmax_area:.6g}, pasa={report.passed}")
        return report

    # ------------------------------------------------------------------ oracle

    def oracle_minimizers(self, domain: SupportCurve, target_area: float, grid: Optional[int] = None) -> List[PerfectArc]:
        """Arcos perfectos de longitud mínima que encierran `target_area` (más de uno si hay empate)"""
        self._check_normalized(domain)
        if not 0.0 < target_area < math.pi:
            raise OutOfRange(f"target area must lie in (0, π), got {target_area}")
        arcs = self.arcs.arcs_at_area(domain, target_area, grid)
        if not arcs:
            logger.error(f"Ningún arco perfecto encierra el área {target_area:.12g}")
            raise NoArcAtArea(f"no perfect arc encloses area {target_area}; refine the grid")
        best = arcs[0].length
        ties = [arc for arc in arcs if arc.length - best <= 1e-9 * max(1.0, best)]
        distinct = {(round(arc.length, 12), round(arc.enclosed_area, 12), arc.endpoint_thetas) for arc in ties}
        if len(distinct) > 1 and not domain.is_disk(self.settings.symmetry_tolerance):
            logger.warning(f"{len(ties)} arcos minimizan la longitud en A = {target_area:.6g}; el perfil puede tener un pico")
        return ties

    def general_profile_oracle(self, domain: SupportCurve, target_area: float, grid: Optional[int] = None) -> float:
        """I_Ω(A) como mínimo de longitudes sobre todos los arcos perfectos con área A"""
        length = self.oracle_minimizers(domain, target_area, grid)[0].length
        logger.info(f"Oráculo: I({target_area:.12g}) = {length:.15g}")
        return length
