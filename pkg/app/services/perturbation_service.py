import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from skimage.measure import find_contours

from app.core.config import Settings, get_settings
from app.core.errors import (
    AreaNormalizationFailure,
    FitIllConditioned,
    IsoperimError,
    NonConvexPerturbation,
    OracleFailure,
    OutOfRange,
)
from app.core.numerics import TWO_PI, scan_roots
from app.models.curve_model import SupportCurve
from app.models.perturbation_model import ExperimentReport, ModeRoot, PerturbationField, RadialCurve, Verdict
from app.services.disk_service import HALF_PI, DiskService
from app.services.profile_service import ProfileService

# Logger específico para servicios
logger = logging.getLogger("services")

TRANSLATION_MODES = (-1.0, 0.0, 1.0)


def implicit_function(x, y):
    """F(x, y) = cos y·sin(xy) − x·sin y·cos(xy); F(n, b) es la condición del modo n en b"""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.cos(y) * np.sin(x * y) - x * np.sin(y) * np.cos(x * y)


class PerturbationService:
    def __init__(
        self,
        settings: Optional[Settings] = None,
        profile: Optional[ProfileService] = None,
        disk: Optional[DiskService] = None,
    ):
        self.settings = settings or get_settings()
        self.profile = profile or ProfileService(self.settings)
        self.disk = disk or DiskService(self.settings)
        logger.debug("PerturbationService inicializado")

    # ------------------------------------------------------------------ first variation

    @staticmethod
    def mode_condition(n: int, b: float) -> float:
        if n == 0:
            raise OutOfRange("mode index must be non-zero")
        return float(math.cos(b) * math.sin(n * b) - n * math.sin(b) * math.cos(n * b))

    @staticmethod
    def _multipliers(f: PerturbationField, b: float) -> np.ndarray:
        """mₙ(b) con l = Re Σ (cₙ − i dₙ)·mₙ·e^{inu}"""
        n = f.modes
        condition = np.cos(b) * np.sin(n * b) - n * np.sin(b) * np.cos(n * b)
        return -2.0 * np.exp(1j * n * b) * condition / (n * np.sin(b))

    def l_coefficients(self, f: PerturbationField, b: float) -> Tuple[np.ndarray, np.ndarray]:
        """Coeficientes (cos, sin) de l(u) para n = 1..max_mode"""
        if not 0.0 < b <= HALF_PI:
            raise OutOfRange(f"b must lie in (0, π/2], got {b}")
        if f.max_mode == 0:
            return np.zeros(0), np.zeros(0)
        c, d = f.coefficients
        weighted = (c - 1j * d) * self._multipliers(f, b)
        return weighted.real, -weighted.imag

    def _l_field(self, f: PerturbationField, b: float) -> PerturbationField:
        cos, sin = self.l_coefficients(f, b)
        return PerturbationField(tuple(cos), tuple(sin), f"l[{f.description}]")

    def first_variation_l(self, f: PerturbationField, b: float, u):
        """l(u) = −cot b ∫_u^{u+2b} f + f(u) + f(u + 2b), integral cerrada en Fourier"""
        if not 0.0 < b < HALF_PI:
            raise OutOfRange(f"b must lie in (0, π/2), got {b}")
        values = self._l_field(f, b).evaluate(u)
        return float(values) if np.ndim(values) == 0 else values

    def mean_l(self, f: PerturbationField, b: float) -> float:
        """∫₀^{2π} l du por trapecios periódicos"""
        nodes = max(64, 4 * f.max_mode + 4)
        u = TWO_PI * np.arange(nodes) / nodes
        return float(np.sum(self._l_field(f, b).evaluate(u)) * TWO_PI / nodes)

    def min_l(self, f: PerturbationField, b: float, nodes: int = 4096) -> float:
        u = TWO_PI * np.arange(nodes) / nodes
        return float(np.min(self._l_field(f, b).evaluate(u)))

    # ------------------------------------------------------------------ mode roots

    def find_mode_roots(self, n: int) -> List[ModeRoot]:
        if n < 2:
            raise OutOfRange(f"mode index must be at least 2, got {n}")
        margin = self.settings.mode_margin
        grid = np.linspace(margin, HALF_PI - margin, self.settings.mode_scan_nodes)
        roots = scan_roots(lambda b: implicit_function(n, b), grid, xtol=self.settings.mode_root_tolerance)
        found = [ModeRoot(n=n, b=float(b), theta=float(b), area=self.disk.theta_to_area(float(b))) for b in roots]
        logger.info(f"Modo {n}: {len(found)} raíces {[round(r.b, 9) for r in found]}")
        return found

    def implicit_curve_sample(
        self,
        x_range: Tuple[float, float],
        y_range: Tuple[float, float],
        resolution: int = 400,
    ) -> List[Tuple[float, float, int]]:
        """Puntos (x, y, rama) del conjunto cero de F; las rectas x ∈ {−1, 0, 1} se añaden exactas"""
        (x_lo, x_hi), (y_lo, y_hi) = x_range, y_range
        if not (math.isfinite(x_lo) and math.isfinite(x_hi) and math.isfinite(y_lo) and math.isfinite(y_hi)):
            raise OutOfRange("implicit curve ranges must be finite")
        if x_lo >= x_hi or y_lo >= y_hi or resolution < 2:
            raise OutOfRange("implicit curve ranges must be non-empty with resolution ≥ 2")
        dx = (x_hi - x_lo) / resolution
        dy = (y_hi - y_lo) / resolution
        # malla desplazada media celda: las rectas de traslación no caen sobre nodos
        xs = x_lo + dx * (np.arange(resolution) + 0.5)
        ys = y_lo + dy * (np.arange(resolution) + 0.5)
        field = implicit_function(xs[:, None], ys[None, :])

        points: List[Tuple[float, float, int]] = []
        branch = 0
        line_ys = np.linspace(y_lo, y_hi, resolution + 1)
        for x in TRANSLATION_MODES:
            if x_lo <= x <= x_hi:
                points.extend((x, float(y), branch) for y in line_ys)
                branch += 1
        for contour in find_contours(field, 0.0):
            cx = x_lo + dx * (contour[:, 0] + 0.5)
            cy = y_lo + dy * (contour[:, 1] + 0.5)
            points.extend((float(x), float(y), branch) for x, y in zip(cx, cy))
            branch += 1
        logger.debug(f"Curva implícita: {branch} ramas, {len(points)} puntos")
        return points

    def mode_slice(self, value: float, axis: str, span: Tuple[float, float], nodes: int = 10_000) -> List[float]:
        """Raíces de F a lo largo de la recta x = value (axis "x") o y = value (axis "y") dentro de `span`"""
        lo, hi = span
        grid = np.linspace(lo, hi, nodes)
        if axis not in ("x", "y"):
            raise OutOfRange(f"axis must be 'x' or 'y', got {axis!r}")

        def along(t):
            return implicit_function(value, t) if axis == "x" else implicit_function(t, value)

        return scan_roots(along, grid, xtol=self.settings.mode_root_tolerance)

    # ------------------------------------------------------------------ perturbed domains

    def build_perturbed_domain(self, f: PerturbationField, s: float) -> RadialCurve:
        """λ(s)·(1 + s·f(u))·(cos u, sin u) con λ(s) = √(π/área)"""
        c, d = f.coefficients
        raw = RadialCurve((1.0,) + tuple(s * c), tuple(s * d))
        u = TWO_PI * np.arange(self.settings.quadrature_nodes) / self.settings.quadrature_nodes
        margin = float(np.min(raw.convexity_margin(u)))
        if margin <= 0.0 or float(np.min(raw.radius(u))) <= 0.0:
            logger.error(f"Perturbación no convexa con s = {s:g}: min(r² + 2r'² − r r'') = {margin:.3e}")
            raise NonConvexPerturbation(f"s = {s} leaves the convex regime")
        scale = math.sqrt(math.pi / raw.area)
        curve = RadialCurve(raw.radial_cos, raw.radial_sin, scale)
        if abs(curve.area - math.pi) > 1e-12 * math.pi:
            raise AreaNormalizationFailure(f"area after scaling is {curve.area!r}")
        logger.debug(f"Dominio perturbado s = {s:g}: λ = {scale:.15g}")
        return curve

    @staticmethod
    def aggregate_second_variation(f: PerturbationField) -> float:
        """−2∫ f² du = −2π·Σ(cₙ² + dₙ²)"""
        return -2.0 * math.pi * f.energy

    # ------------------------------------------------------------------ experiments

    def _oracle(self, domain: SupportCurve, area: float) -> float:
        try:
            return self.profile.general_profile_oracle(domain, area)
        except IsoperimError as exc:
            logger.error(f"El oráculo falla en el área {area:.6g}: {exc}")
            raise OracleFailure(str(exc)) from exc

    def _perturbed_support(self, f: PerturbationField, s: float) -> SupportCurve:
        curve, residual = self.build_perturbed_domain(f, s).to_support_curve(self.settings.fourier_samples)
        if residual > 1e-10:
            logger.warning(f"Función soporte de s = {s:g} con residuo {residual:.2e}")
        return curve

    def _run(
        self,
        build: Callable[[float], SupportCurve],
        area: float,
        s_grid: Sequence[float],
        description: str,
        predicted_alpha: Optional[float],
    ) -> ExperimentReport:
        s_values = np.array(sorted(float(s) for s in s_grid))
        if len(np.unique(s_values)) < 2 or np.any(s_values <= 0.0):
            raise FitIllConditioned("the experiment needs at least two distinct positive step sizes")
        baseline = self.disk.profile_I(area)
        reference = self._oracle(build(0.0), area)
        tolerance = self.settings.oracle_tolerance
        if abs(reference - baseline) > tolerance:
            raise OracleFailure(f"oracle on the unperturbed disk gives {reference!r}, expected {baseline!r}")

        def evaluate(s: float) -> float:
            return self._oracle(build(s), area)

        if self.settings.threads > 1:
            with ThreadPoolExecutor(max_workers=self.settings.threads) as pool:
                values = np.array(list(pool.map(evaluate, s_values)))
        else:
            values = np.array([evaluate(s) for s in s_values])

        design = np.stack((s_values, s_values ** 2), axis=-1)
        (alpha, beta), _, rank, _ = np.linalg.lstsq(design, values - baseline, rcond=None)
        if rank < 2:
            raise FitIllConditioned("step sizes do not determine both fit coefficients")
        noise_floor = 10.0 * tolerance / float(s_values.min())
        beta_noise_floor = tolerance / float(s_values.max()) ** 2
        if alpha < -noise_floor:
            verdict = Verdict.first_order_decrease
        elif abs(alpha) <= noise_floor and beta < -beta_noise_floor:
            verdict = Verdict.second_order_decrease
        else:
            verdict = Verdict.stationary
        report = ExperimentReport(
            area=area,
            s_values=tuple(float(s) for s in s_values),
            profile_values=tuple(float(v) for v in values),
            baseline=baseline,
            alpha=float(alpha),
            beta=float(beta),
            noise_floor=noise_floor,
            beta_noise_floor=beta_noise_floor,
            verdict=verdict,
            predicted_alpha=predicted_alpha,
            description=description,
        )
        logger.info(f"Experimento {description}: α = {alpha:.6g}, β = {beta:.6g}, veredicto {verdict.value}")
        return report

    def profile_decrease_experiment(
        self,
        f: PerturbationField,
        area: float,
        s_grid: Optional[Sequence[float]] = None,
    ) -> ExperimentReport:
        """Ajuste I(s) ≈ I(0) + αs + βs² del perfil de los dominios perturbados en el área dada"""
        if f.is_zero():
            raise OutOfRange("the perturbation field must be non-zero")
        if not 0.0 < area < math.pi:
            raise OutOfRange(f"area must lie in (0, π), got {area}")
        b = self.disk.area_to_theta(min(area, math.pi - area))
        return self._run(
            lambda s: self._perturbed_support(f, s),
            area,
            s_grid or self.settings.s_grid,
            f.description,
            self.min_l(f, b),
        )

    def rigid_motion_control(self, area: float, s_grid: Optional[Sequence[float]] = None) -> ExperimentReport:
        """Control nulo: disco unidad trasladado s en x (h = 1 + s cos θ), el perfil no cambia"""
        if not 0.0 < area < math.pi:
            raise OutOfRange(f"area must lie in (0, π), got {area}")
        return self._run(
            lambda s: SupportCurve.disk(1.0, (s, 0.0)),
            area,
            s_grid or self.settings.s_grid,
            "translation",
            0.0,
        )
