import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq
from skimage.measure import find_contours

from app.core.config import Settings, get_settings
from app.core.errors import (
    CoincidentPoints,
    DegenerateGradient,
    DegenerateVertex,
    NoConvergence,
    NormalsParallelButNotAligned,
    NotAVertex,
    NotPerfect,
    OutOfRange,
)
from app.core.numerics import TWO_PI, segment_excess, wrap_angle
from app.models.arc_model import ArcKind, PerfectArc, TwoPointState
from app.models.curve_model import SupportCurve
from app.services.geometry_service import GeometryService

# Logger específico para servicios
logger = logging.getLogger("services")


def _cross(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def _dot(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1]


@dataclass(frozen=True)
class _ArcGeometry:
    """Medidas vectorizadas de los arcos con extremos θ₋ = lo, θ₊ = hi"""

    lo: np.ndarray
    hi: np.ndarray
    p_lo: np.ndarray
    p_hi: np.ndarray
    is_segment: np.ndarray
    center: np.ndarray
    radius: np.ndarray
    start_angle: np.ndarray
    sweep: np.ndarray
    curvature: np.ndarray
    length: np.ndarray
    area: np.ndarray
    residual: np.ndarray


class ArcService:
    def __init__(self, settings: Optional[Settings] = None, geometry: Optional[GeometryService] = None):
        self.settings = settings or get_settings()
        self.geometry = geometry or GeometryService(self.settings)
        logger.debug("ArcService inicializado")

    # ------------------------------------------------------------------ two-point function

    @staticmethod
    def _scale(domain: SupportCurve) -> float:
        return max(1.0, float(domain.cos_coeffs[0]))

    @staticmethod
    def _check_distinct(s1: float, s2: float) -> None:
        gap = wrap_angle(s2 - s1)
        if gap == 0.0 or min(gap, TWO_PI - gap) < 1e-14:
            raise CoincidentPoints(f"θ₁ = {s1} and θ₂ = {s2} are the same boundary point")

    def two_point_f(self, domain: SupportCurve, s1: float, s2: float) -> float:
        """f(θ₁, θ₂) = (C₁ − C₂)·(N₁ + N₂)"""
        self._check_distinct(s1, s2)
        c1, c2 = domain.position(s1), domain.position(s2)
        n1, n2 = domain.normal(s1), domain.normal(s2)
        return float(_dot(c1 - c2, n1 + n2))

    def two_point_grad(self, domain: SupportCurve, s1: float, s2: float) -> Tuple[float, float]:
        """(∂f/∂s₁, ∂f/∂s₂) respecto a la longitud de arco, con dN/ds = κT"""
        self._check_distinct(s1, s2)
        c1, c2 = domain.position(s1), domain.position(s2)
        n1, n2 = domain.normal(s1), domain.normal(s2)
        t1, t2 = domain.tangent(s1), domain.tangent(s2)
        k1, k2 = float(domain.curvature(s1)), float(domain.curvature(s2))
        d = c1 - c2
        return (
            float(_dot(t1, n2) + k1 * _dot(d, t1)),
            float(-_dot(t2, n1) + k2 * _dot(d, t2)),
        )

    def two_point_state(self, domain: SupportCurve, s1: float, s2: float) -> TwoPointState:
        return TwoPointState(s1, s2, self.two_point_f(domain, s1, s2), self.two_point_grad(domain, s1, s2))

    def is_degenerate_pair(self, domain: SupportCurve, s1: float, s2: float, tolerance: float = 1e-10) -> bool:
        """Cláusula de exclusión: ambas derivadas parciales se anulan"""
        g1, g2 = self.two_point_grad(domain, s1, s2)
        return max(abs(g1), abs(g2)) < tolerance * self._scale(domain)

    @staticmethod
    def reduced_two_point_f(domain: SupportCurve, s1, s2):
        """f̂ = (C₁ − C₂)·M, M = (cos φ, sin φ), φ = (θ₁ + θ₂)/2; f = 2cos((θ₂ − θ₁)/2)·f̂"""
        s1 = np.asarray(s1, dtype=float)
        s2 = np.asarray(s2, dtype=float)
        phi = (s1 + s2) / 2.0
        d = domain.position(s1) - domain.position(s2)
        return d[..., 0] * np.cos(phi) + d[..., 1] * np.sin(phi)

    @staticmethod
    def reduced_partials(domain: SupportCurve, s1, s2):
        """(∂f̂/∂θ₁, ∂f̂/∂θ₂)"""
        s1 = np.asarray(s1, dtype=float)
        s2 = np.asarray(s2, dtype=float)
        phi = (s1 + s2) / 2.0
        d = domain.position(s1) - domain.position(s2)
        shared = 0.5 * (-d[..., 0] * np.sin(phi) + d[..., 1] * np.cos(phi))
        half = np.sin((s2 - s1) / 2.0)
        return (
            domain.radius_of_curvature(s1) * half + shared,
            domain.radius_of_curvature(s2) * half + shared,
        )

    # ------------------------------------------------------------------ arc construction

    def _geometry(self, domain: SupportCurve, lo, hi) -> _ArcGeometry:
        lo = np.atleast_1d(np.asarray(lo, dtype=float))
        hi = np.atleast_1d(np.asarray(hi, dtype=float))
        p_lo, p_hi = domain.position(lo), domain.position(hi)
        n_lo, n_hi = domain.normal(lo), domain.normal(hi)
        t_lo, t_hi = domain.tangent(lo), domain.tangent(hi)
        is_segment = np.abs(2.0 * np.cos((hi - lo) / 2.0)) < self.settings.segment_tolerance

        d = p_hi - p_lo
        chord = np.sqrt(_dot(d, d))
        along = _dot(t_hi, d)
        safe_along = np.where(is_segment | (along == 0.0), 1.0, along)
        # centro sobre la tangente del borde en P₊, equidistante de ambos extremos
        offset = np.where(is_segment, 0.0, -_dot(d, d) / (2.0 * safe_along))
        center = p_hi + offset[:, None] * t_hi
        radius = np.abs(offset)
        v_hi, v_lo = p_hi - center, p_lo - center
        start = np.arctan2(v_hi[:, 1], v_hi[:, 0])
        sweep = np.arctan2(_cross(v_hi, v_lo), _dot(v_hi, v_lo))
        # el arco sale de P₊ hacia −N₊: gira en sentido antihorario alrededor del centro ⇔ offset < 0
        counter_clockwise = offset < 0.0
        sweep = np.where(counter_clockwise & (sweep < 0.0), sweep + TWO_PI, sweep)
        sweep = np.where(~counter_clockwise & (sweep > 0.0), sweep - TWO_PI, sweep)
        sweep = np.where(is_segment, 0.0, sweep)

        safe_radius = np.where(is_segment, 1.0, radius)
        curvature = np.where(is_segment, 0.0, np.sign(sweep) / safe_radius)
        length = np.where(is_segment, chord, radius * np.abs(sweep))
        bulge = np.where(is_segment, 0.0, np.sign(sweep) * 0.5 * radius ** 2 * segment_excess(np.abs(sweep)))
        area = domain.sector_area(lo, hi) + 0.5 * _cross(p_hi, p_lo) + bulge

        safe_chord = np.where(chord == 0.0, 1.0, chord)
        segment_residual = np.maximum(np.abs(_dot(t_lo, d)), np.abs(_dot(t_hi, d))) / safe_chord
        v_lo_norm = np.sqrt(_dot(v_lo, v_lo))
        arc_residual = np.abs(_dot(n_lo, v_lo)) / np.where(v_lo_norm == 0.0, 1.0, v_lo_norm)
        residual = np.where(is_segment, segment_residual, arc_residual)
        return _ArcGeometry(lo, hi, p_lo, p_hi, is_segment, center, radius, start, sweep, curvature, length, area, residual)

    def enclosed_area(self, domain: SupportCurve, s1, s2) -> np.ndarray:
        """Área encerrada por los arcos con normales extremas (s1, s2), sin comprobar que sean perfectos"""
        s1 = np.asarray(s1, dtype=float)
        s2 = np.asarray(s2, dtype=float)
        shape = np.broadcast(s1, s2).shape
        return self._geometry(domain, np.minimum(s1, s2), np.maximum(s1, s2)).area.reshape(shape)

    def _arc_points(self, geo: _ArcGeometry, index: int, count: int = 33) -> np.ndarray:
        lam = np.linspace(0.0, 1.0, count)
        if geo.is_segment[index]:
            return geo.p_hi[index][None, :] + lam[:, None] * (geo.p_lo[index] - geo.p_hi[index])[None, :]
        angles = geo.start_angle[index] + lam * geo.sweep[index]
        return geo.center[index][None, :] + geo.radius[index] * np.stack((np.cos(angles), np.sin(angles)), axis=-1)

    def _to_arc(self, domain: SupportCurve, geo: _ArcGeometry, index: int = 0) -> PerfectArc:
        segment = bool(geo.is_segment[index])
        points = self._arc_points(geo, index)
        return PerfectArc(
            kind=ArcKind.segment if segment else ArcKind.circular,
            center=None if segment else (float(geo.center[index, 0]), float(geo.center[index, 1])),
            radius=None if segment else float(geo.radius[index]),
            curvature=float(geo.curvature[index]),
            endpoint_thetas=(float(geo.lo[index]), float(geo.hi[index])),
            endpoints=(
                (float(geo.p_lo[index, 0]), float(geo.p_lo[index, 1])),
                (float(geo.p_hi[index, 0]), float(geo.p_hi[index, 1])),
            ),
            length=float(geo.length[index]),
            enclosed_area=float(geo.area[index]),
            contained=self.geometry.contains_points(domain, points),
            orthogonality_residual=float(geo.residual[index]),
        )

    @staticmethod
    def _ordered(s1: float, s2: float) -> Tuple[float, float]:
        lo, hi = (s1, s2) if s1 < s2 else (s2, s1)
        if not 0.0 < hi - lo < TWO_PI:
            raise OutOfRange(f"endpoint normal angles must differ by less than 2π, got {s1}, {s2}")
        return lo, hi

    def build_arc(self, domain: SupportCurve, s1: float, s2: float) -> PerfectArc:
        """Arco perfecto con extremos en las normales θ₋ = min(s1, s2), θ₊ = max(s1, s2)"""
        self._check_distinct(s1, s2)
        lo, hi = self._ordered(s1, s2)
        geo = self._geometry(domain, lo, hi)
        if geo.is_segment[0] and geo.residual[0] > 1e-9:
            logger.error(f"Normales opuestas en ({lo:.6g}, {hi:.6g}) con cuerda no alineada")
            raise NormalsParallelButNotAligned(
                f"normals at {lo:.6g} and {hi:.6g} are opposite but the chord is not along them"
            )
        residual = abs(float(self.reduced_two_point_f(domain, lo, hi)))
        if residual > self.settings.perfect_tolerance * self._scale(domain):
            logger.error(f"Par no perfecto ({lo:.6g}, {hi:.6g}): |f̂| = {residual:.3e}")
            raise NotPerfect(f"two-point residual {residual:.3e} exceeds tolerance")
        arc = self._to_arc(domain, geo)
        logger.debug(
            f"Arco {arc.kind.value} ({lo:.6g}, {hi:.6g}): L = {arc.length:.12g}, A = {arc.enclosed_area:.12g}"
        )
        return arc

    # ------------------------------------------------------------------ corrector

    def _newton_second(
        self,
        domain: SupportCurve,
        s1: float,
        guess: float,
        f_tolerance: float,
    ) -> Optional[float]:
        """Resolver f̂(s1, ·) = 0 por Newton desde `guess`; None si no converge"""
        s2 = guess
        for _ in range(self.settings.newton_max_iterations):
            value = float(self.reduced_two_point_f(domain, s1, s2))
            if abs(value) <= f_tolerance:
                return s2
            slope = float(self.reduced_partials(domain, s1, s2)[1])
            if slope == 0.0:
                return None
            step = value / slope
            s2 -= step
            if abs(step) < 1e-15 * max(1.0, abs(s2)):
                return s2
        return None

    def _bracket_second(self, domain: SupportCurve, s1: float, lo: float, hi: float, nodes: int = 21) -> Optional[float]:
        """Barrido de cambio de signo en [lo, hi] y Brent sobre el primer intervalo más cercano al centro"""
        grid = np.linspace(lo, hi, nodes)
        values = self.reduced_two_point_f(domain, np.full_like(grid, s1), grid)
        middle = (lo + hi) / 2.0
        candidates = [i for i in range(nodes - 1) if values[i] == 0.0 or values[i] * values[i + 1] < 0.0]
        if not candidates:
            return None
        i = min(candidates, key=lambda j: abs((grid[j] + grid[j + 1]) / 2.0 - middle))
        if values[i] == 0.0:
            return float(grid[i])
        return brentq(
            lambda x: float(self.reduced_two_point_f(domain, s1, x)),
            grid[i],
            grid[i + 1],
            xtol=1e-15,
            rtol=4 * np.finfo(float).eps,
        )

    # ------------------------------------------------------------------ families

    def continue_family(self, domain: SupportCurve, seed: TwoPointState, steps: int, ds: float) -> List[PerfectArc]:
        """Continuación predictor–corrector de f̂ = 0 a partir de `seed`"""
        logger.debug(f"Continuación desde ({seed.s1:.6g}, {seed.s2:.6g}), {steps} pasos de {ds:.3g}")
        if domain.is_disk(self.settings.symmetry_tolerance):
            # en el disco f ≡ 0: se mantiene fija la dirección media, como en la familia cerrada
            middle = (seed.s1 + seed.s2) / 2.0
            arcs = []
            for k in range(steps + 1):
                s1 = seed.s1 + k * ds
                s2 = 2.0 * middle - s1
                if not 1e-9 < abs(s2 - s1) < TWO_PI - 1e-9:
                    logger.warning(f"Familia del disco detenida en el paso {k}: el arco degenera")
                    break
                arcs.append(self.build_arc(domain, s1, s2))
            return arcs

        scale = self._scale(domain)
        g1, g2 = (float(g) for g in self.reduced_partials(domain, seed.s1, seed.s2))
        if max(abs(g1), abs(g2)) < 1e-10 * scale:
            raise DegenerateGradient(f"gradient vanishes at ({seed.s1}, {seed.s2})")

        s1, s2 = seed.s1, seed.s2
        arcs = [self.build_arc(domain, s1, s2)]
        f_tolerance = self.settings.newton_tolerance * scale
        for k in range(1, steps + 1):
            g1, g2 = (float(g) for g in self.reduced_partials(domain, s1, s2))
            if max(abs(g1), abs(g2)) < 1e-10 * scale:
                logger.warning(f"Gradiente degenerado en el paso {k}; la familia se detiene")
                break
            next_s1 = s1 + ds
            predicted = s2 - (g1 / g2) * ds if g2 != 0.0 else s2
            corrected = self._newton_second(domain, next_s1, predicted, f_tolerance)
            if corrected is None or abs(corrected - predicted) > self.settings.bracket_span * abs(ds):
                span = self.settings.bracket_span * abs(ds)
                corrected = self._bracket_second(domain, next_s1, predicted - span, predicted + span)
            if corrected is None:
                if k == 1:
                    raise NoConvergence(f"corrector failed at the first step from ({s1}, {s2})")
                logger.warning(f"El corrector no converge en el paso {k}; la familia se detiene")
                break
            if not 1e-9 < abs(corrected - next_s1) < TWO_PI - 1e-9:
                logger.info(f"La familia sale del dominio en el paso {k}")
                break
            s1, s2 = next_s1, corrected
            try:
                arcs.append(self.build_arc(domain, s1, s2))
            except (NotPerfect, NormalsParallelButNotAligned) as exc:
                logger.warning(f"Arco inválido en el paso {k} ({exc}); la familia se detiene")
                break
        logger.info(f"Familia continuada con {len(arcs)} arcos")
        return arcs

    def vertex_family(self, domain: SupportCurve, vertex_theta: float, s1_grid: Sequence[float]) -> List[PerfectArc]:
        """Arcos perfectos que se contraen hacia un vértice no degenerado.

        ``s1_grid`` holds arclength offsets from the vertex. The second endpoint is
        sought between the two guesses s₂ = −s₁ − (k''' ± 1)/(5k'')·s₁², which
        bracket the root for small s₁; Newton from s₂ = −s₁ − k'''/(5k'')·s₁²
        takes over when they do not.
        """
        self.geometry.ensure_convex(domain)
        slope = abs(float(domain.radius_of_curvature(vertex_theta, 1)))
        if slope > 1e-8 * self._scale(domain):
            raise NotAVertex(f"κ' does not vanish at θ = {vertex_theta} (|ρ'| = {slope:.3e})")
        _, _, k2, k3 = self.geometry.arclength_derivatives(domain, vertex_theta)
        if abs(k2) < self.settings.degenerate_vertex_tolerance:
            raise DegenerateVertex(f"k'' = {k2:.3e} at θ = {vertex_theta}")
        a2 = -k3 / (5.0 * k2)

        arcs = []
        for offset in s1_grid:
            if offset == 0.0:
                continue
            s1 = self.geometry.theta_at_arclength(domain, vertex_theta, offset)
            guesses = [
                self.geometry.theta_at_arclength(domain, vertex_theta, -offset - (k3 + sign) / (5.0 * k2) * offset ** 2)
                for sign in (1.0, -1.0)
            ]
            s2 = None
            lo, hi = min(guesses), max(guesses)
            f_lo = float(self.reduced_two_point_f(domain, s1, lo))
            f_hi = float(self.reduced_two_point_f(domain, s1, hi))
            if f_lo * f_hi < 0.0:
                s2 = brentq(
                    lambda x: float(self.reduced_two_point_f(domain, s1, x)),
                    lo,
                    hi,
                    xtol=1e-15,
                    rtol=4 * np.finfo(float).eps,
                )
            else:
                guess = self.geometry.theta_at_arclength(domain, vertex_theta, -offset + a2 * offset ** 2)
                s2 = self._newton_second(domain, s1, guess, 0.0)
            if s2 is None:
                raise NoConvergence(f"no perfect arc found at offset {offset} from the vertex {vertex_theta}")
            arcs.append(self.build_arc(domain, s1, s2))

        by_size = sorted(zip((abs(o) for o in s1_grid if o != 0.0), arcs), key=lambda pair: pair[0])
        areas = [arc.enclosed_area for _, arc in by_size]
        if any(b <= a for a, b in zip(areas, areas[1:])):
            logger.warning(f"Las áreas de la familia del vértice {vertex_theta:.6g} no decrecen monótonamente hacia él")
        logger.info(f"Familia del vértice {vertex_theta:.6g}: {len(arcs)} arcos")
        return arcs

    # ------------------------------------------------------------------ all perfect arcs

    def trace_zero_set(self, domain: SupportCurve, grid: Optional[int] = None) -> List[np.ndarray]:
        """Ramas de f̂ = 0 sobre el toro (θ₁, t = θ₂ − θ₁) por marching squares, corregidas por Newton.

        Each branch is an array of (θ₁, θ₂) rows with θ₁ < θ₂ < θ₁ + 2π.
        """
        n = grid or self.settings.oracle_grid
        step = TWO_PI / n
        theta = step * np.arange(n)
        points = domain.position(theta)
        rows = np.arange(n + 3)
        cols = np.arange(1, n)
        i = rows[:, None] % n
        k = (rows[:, None] + cols[None, :]) % n
        phi = step * rows[:, None] + step * cols[None, :] / 2.0
        d = points[i] - points[k]
        field = d[..., 0] * np.cos(phi) + d[..., 1] * np.sin(phi)

        branches = []
        for contour in find_contours(field, 0.0):
            s1 = contour[:, 0] * step
            s2 = s1 + (contour[:, 1] + 1.0) * step
            s1, s2, ok = self._project(domain, s1, s2)
            inside = ok & (s2 - s1 > 1e-9) & (s2 - s1 < TWO_PI - 1e-9)
            if np.count_nonzero(inside) >= 2:
                branches.append(np.stack((s1[inside], s2[inside]), axis=-1))
        logger.debug(f"Conjunto cero trazado: {len(branches)} ramas")
        return branches

    def _project(self, domain: SupportCurve, s1: np.ndarray, s2: np.ndarray, iterations: int = 30):
        """Newton vectorizado sobre f̂ = 0 moviendo θ₂ (o ambos extremos a t fijo si ∂₂f̂ es pequeño)"""
        s1, s2 = s1.copy(), s2.copy()
        tolerance = self.settings.newton_tolerance * self._scale(domain)
        for _ in range(iterations):
            value = self.reduced_two_point_f(domain, s1, s2)
            g1, g2 = self.reduced_partials(domain, s1, s2)
            shift = g1 + g2
            move_second = np.abs(g2) >= np.abs(shift)
            slope = np.where(move_second, g2, shift)
            step = np.where(slope == 0.0, 0.0, value / np.where(slope == 0.0, 1.0, slope))
            step = np.clip(step, -0.1, 0.1)
            s2 = s2 - step
            s1 = np.where(move_second, s1, s1 - step)
            if np.max(np.abs(step)) < 1e-15:
                break
        ok = np.abs(self.reduced_two_point_f(domain, s1, s2)) <= tolerance
        return s1, s2, ok

    def _project_across(self, domain: SupportCurve, base: np.ndarray, direction: np.ndarray, reach: float) -> Tuple[float, float]:
        """Newton sobre f̂(base + μ·direction) = 0 desde μ = 0; la raíz depende de forma continua de `base`"""
        tolerance = self.settings.newton_tolerance * self._scale(domain)
        mu = 0.0
        for _ in range(self.settings.newton_max_iterations):
            s1, s2 = (float(v) for v in base + mu * direction)
            value = float(self.reduced_two_point_f(domain, s1, s2))
            if abs(value) <= tolerance:
                return s1, s2
            g1, g2 = (float(g) for g in self.reduced_partials(domain, s1, s2))
            slope = g1 * direction[0] + g2 * direction[1]
            if slope == 0.0:
                break
            step = value / slope
            mu -= step
            if abs(mu) > reach:
                break
            if abs(step) < 1e-15:
                s1, s2 = (float(v) for v in base + mu * direction)
                if abs(float(self.reduced_two_point_f(domain, s1, s2))) <= 10.0 * tolerance:
                    return s1, s2
                break
        raise NoConvergence(f"could not project {tuple(base)} onto the perfect-arc set")

    def arcs_at_area(self, domain: SupportCurve, target_area: float, grid: Optional[int] = None) -> List[PerfectArc]:
        """Todos los arcos perfectos contenidos que encierran `target_area`"""
        self.geometry.ensure_convex(domain)
        total = domain.area
        if not 0.0 < target_area < total:
            raise OutOfRange(f"target area must lie in (0, {total}), got {target_area}")
        n = grid or self.settings.oracle_grid

        if domain.is_disk(self.settings.symmetry_tolerance):
            return self._disk_arcs_at_area(domain, target_area, min(n, 16))

        found: Dict[Tuple[float, float], PerfectArc] = {}
        for branch in self.trace_zero_set(domain, n):
            areas = self._geometry(domain, branch[:, 0], branch[:, 1]).area - target_area
            for j in range(len(branch) - 1):
                if areas[j] * areas[j + 1] > 0.0 or np.max(np.abs(branch[j + 1] - branch[j])) > 0.5:
                    continue
                arc = self._refine_crossing(domain, branch[j], branch[j + 1], target_area)
                if arc is None or not arc.contained:
                    continue
                key = (round(wrap_angle(arc.endpoint_thetas[0]), 8), round(wrap_angle(arc.endpoint_thetas[1]), 8))
                found.setdefault(key, arc)
        arcs = sorted(found.values(), key=lambda arc: arc.length)
        logger.debug(f"{len(arcs)} arcos perfectos con área {target_area:.12g}")
        return arcs

    def _refine_crossing(self, domain: SupportCurve, start: np.ndarray, end: np.ndarray, target: float) -> Optional[PerfectArc]:
        """Arco de área `target` entre dos puntos consecutivos de una rama de f̂ = 0"""
        chord = end - start
        span = float(np.hypot(*chord))
        if span == 0.0:
            return None
        # proyección a lo largo de la normal fija de la cuerda
        across = np.array([-chord[1], chord[0]]) / span

        def point(lam: float) -> Tuple[float, float]:
            return self._project_across(domain, start + lam * chord, across, span)

        def area_gap(lam: float) -> float:
            return float(self._geometry(domain, *point(lam)).area[0]) - target

        tolerance = self.settings.area_tolerance * max(1.0, domain.area)
        try:
            gap_start, gap_end = area_gap(0.0), area_gap(1.0)
            if abs(gap_start) <= tolerance:
                lam = 0.0
            elif abs(gap_end) <= tolerance:
                lam = 1.0
            else:
                lam = brentq(area_gap, 0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
            arc = self.build_arc(domain, *point(lam))
        except (ValueError, NoConvergence, NotPerfect, NormalsParallelButNotAligned) as exc:
            logger.warning(f"Cruce de área no refinado entre {start} y {end}: {exc}")
            return None
        if abs(arc.enclosed_area - target) > tolerance:
            logger.warning(
                f"Arco descartado entre {start} y {end}: área {arc.enclosed_area:.15g}, objetivo {target:.15g}"
            )
            return None
        return arc

    def _disk_arcs_at_area(self, domain: SupportCurve, target_area: float, directions: int) -> List[PerfectArc]:
        # en un disco cualquier par de puntos es perfecto; el área crece con la separación
        arcs = []
        for s1 in TWO_PI * np.arange(directions) / directions:
            def gap(t: float) -> float:
                return float(self._geometry(domain, s1, s1 + t).area[0]) - target_area

            t = brentq(gap, 1e-9, TWO_PI - 1e-9, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
            arcs.append(self.build_arc(domain, float(s1), float(s1 + t)))
        return sorted(arcs, key=lambda arc: arc.length)
