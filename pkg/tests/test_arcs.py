import math

import numpy as np
import pytest
from hypothesis import assume, given, settings as hypothesis_settings, strategies as st

from app.core.errors import (
    CoincidentPoints,
    DegenerateVertex,
    NormalsParallelButNotAligned,
    NotAVertex,
    NotPerfect,
    OutOfRange,
)
from app.models.arc_model import ArcKind
from app.models.curve_model import SupportCurve
from app.models.perturbation_model import PerturbationField

SQRT2 = math.sqrt(2.0)
HALF_PI = math.pi / 2


def test_disk_quarter_arc(arcs, unit_disk):
    arc = arcs.build_arc(unit_disk, -math.pi / 4, math.pi / 4)
    assert arc.kind is ArcKind.circular
    assert arc.center == pytest.approx((SQRT2, 0.0), abs=1e-12)
    assert arc.radius == pytest.approx(1.0, abs=1e-12)
    assert arc.curvature == pytest.approx(1.0, abs=1e-12)
    assert arc.length == pytest.approx(HALF_PI, abs=1e-12)
    assert arc.enclosed_area == pytest.approx(HALF_PI - 1.0, abs=1e-12)
    assert arc.contained
    assert arc.orthogonality_residual < 1e-12


def test_arc_endpoints_order_does_not_matter(arcs, unit_disk):
    forward = arcs.build_arc(unit_disk, -math.pi / 4, math.pi / 4)
    backward = arcs.build_arc(unit_disk, math.pi / 4, -math.pi / 4)
    assert forward == backward


def test_ellipse_minor_axis_segment(arcs, ellipse):
    arc = arcs.build_arc(ellipse, -HALF_PI, HALF_PI)
    assert arc.kind is ArcKind.segment
    assert arc.center is None and arc.radius is None
    assert arc.curvature == 0.0
    assert arc.length == pytest.approx(SQRT2, abs=1e-12)
    assert arc.enclosed_area == pytest.approx(HALF_PI, abs=1e-12)


def test_misaligned_opposite_normals(arcs):
    skewed = SupportCurve((1.0,), (0.0, 0.05))
    with pytest.raises(NormalsParallelButNotAligned):
        arcs.build_arc(skewed, 0.0, math.pi)


def test_non_perfect_pair(arcs, ellipse):
    with pytest.raises(NotPerfect):
        arcs.build_arc(ellipse, 0.2, 1.0)


@pytest.mark.parametrize("s2", [0.5, 0.5 + 2 * math.pi])
def test_coincident_points(arcs, ellipse, s2):
    with pytest.raises(CoincidentPoints):
        arcs.two_point_f(ellipse, 0.5, s2)


def test_two_point_gradient_matches_finite_differences(arcs, quartic):
    s1, s2, step = 0.4, 2.3, 1e-6
    g1, g2 = arcs.two_point_grad(quartic, s1, s2)
    d1 = (arcs.two_point_f(quartic, s1 + step, s2) - arcs.two_point_f(quartic, s1 - step, s2)) / (2 * step)
    d2 = (arcs.two_point_f(quartic, s1, s2 + step) - arcs.two_point_f(quartic, s1, s2 - step)) / (2 * step)
    # derivadas respecto a la longitud de arco: ds = ρ dθ
    assert g1 == pytest.approx(d1 / float(quartic.radius_of_curvature(s1)), rel=1e-6)
    assert g2 == pytest.approx(d2 / float(quartic.radius_of_curvature(s2)), rel=1e-6)


@hypothesis_settings(max_examples=100, deadline=None)
@given(s1=st.floats(min_value=0.0, max_value=6.2), gap=st.floats(min_value=0.2, max_value=6.0))
def test_gradient_on_random_ellipse_pairs(arcs, ellipse, s1, gap):
    s2 = s1 + gap
    step = 1e-6
    g1, _ = arcs.two_point_grad(ellipse, s1, s2)
    assume(abs(g1) > 1e-2)
    d1 = (arcs.two_point_f(ellipse, s1 + step, s2) - arcs.two_point_f(ellipse, s1 - step, s2)) / (2 * step)
    assert g1 == pytest.approx(d1 / float(ellipse.radius_of_curvature(s1)), rel=1e-6)


def test_reduced_function_factorizes_two_point_function(arcs, quartic):
    for s1, s2 in [(0.1, 1.0), (0.7, 3.9), (-1.0, 2.5)]:
        reduced = float(arcs.reduced_two_point_f(quartic, s1, s2))
        assert arcs.two_point_f(quartic, s1, s2) == pytest.approx(2 * math.cos((s2 - s1) / 2) * reduced, abs=1e-14)


def test_reduced_partials_match_finite_differences(arcs, quartic):
    s1, s2, step = 0.4, 3.5, 1e-6
    p1, p2 = (float(p) for p in arcs.reduced_partials(quartic, s1, s2))
    f = arcs.reduced_two_point_f
    assert p1 == pytest.approx((f(quartic, s1 + step, s2) - f(quartic, s1 - step, s2)) / (2 * step), rel=1e-6)
    assert p2 == pytest.approx((f(quartic, s1, s2 + step) - f(quartic, s1, s2 - step)) / (2 * step), rel=1e-6)


def test_degenerate_pairs(arcs, unit_disk, ellipse):
    # en el disco f ≡ 0; en la elipse f se anula a segundo orden sobre el segmento
    assert arcs.is_degenerate_pair(unit_disk, 0.3, 2.0)
    assert arcs.is_degenerate_pair(ellipse, -HALF_PI, HALF_PI)
    assert not arcs.is_degenerate_pair(ellipse, 0.2, 1.0)


def test_enclosed_area_broadcasts(arcs, ellipse):
    lo = np.array([-HALF_PI, -0.5])
    hi = np.array([HALF_PI, 0.5])
    areas = arcs.enclosed_area(ellipse, lo, hi)
    assert areas.shape == (2,)
    assert areas[0] == pytest.approx(HALF_PI, abs=1e-12)
    assert np.ndim(arcs.enclosed_area(ellipse, -HALF_PI, HALF_PI)) == 0


def test_continue_family_from_segment(arcs, ellipse):
    seed = arcs.two_point_state(ellipse, -HALF_PI, HALF_PI)
    family = arcs.continue_family(ellipse, seed, steps=10, ds=0.05)
    assert len(family) == 11
    for arc in family:
        lo, hi = arc.endpoint_thetas
        # familia simétrica respecto al eje mayor
        assert lo + hi == pytest.approx(0.0, abs=1e-9)
    areas = [arc.enclosed_area for arc in family]
    assert all(b < a for a, b in zip(areas, areas[1:]))


def test_continue_family_on_disk(arcs, disk, unit_disk):
    seed = arcs.two_point_state(unit_disk, -math.pi / 4, math.pi / 4)
    family = arcs.continue_family(unit_disk, seed, steps=3, ds=0.1)
    assert len(family) == 4
    half_angle = math.pi / 4 - 0.3
    assert family[-1].enclosed_area == pytest.approx(disk.theta_to_area(half_angle), abs=1e-12)
    assert family[-1].length == pytest.approx(disk.theta_to_length(half_angle), abs=1e-12)


@pytest.mark.parametrize("vertex", [0.0, HALF_PI, math.pi, 3 * HALF_PI])
def test_vertex_family_shrinks_to_vertex(arcs, ellipse, vertex):
    family = arcs.vertex_family(ellipse, vertex, [0.01, 0.02, 0.04])
    assert len(family) == 3
    areas = [arc.enclosed_area for arc in family]
    assert all(b > a for a, b in zip(areas, areas[1:]))
    for arc in family:
        lo, hi = arc.endpoint_thetas
        # la elipse es simétrica respecto al eje que pasa por cada vértice
        assert math.remainder(lo + hi - 2 * vertex, 2 * math.pi) == pytest.approx(0.0, abs=1e-10)
        assert arc.contained


def test_vertex_family_rejects_non_vertex(arcs, ellipse):
    with pytest.raises(NotAVertex):
        arcs.vertex_family(ellipse, 0.3, [0.01])


def test_vertex_family_rejects_degenerate_vertex(arcs):
    # ρ = 1 − 0.04 cos 2θ + 0.01 cos 4θ: ρ' = ρ'' = 0 en θ = 0
    flat = SupportCurve.quartic(1.0, 0.04 / 3, -0.01 / 15)
    with pytest.raises(DegenerateVertex):
        arcs.vertex_family(flat, 0.0, [0.01])


def test_trace_zero_set_points_are_perfect(arcs, quartic):
    branches = arcs.trace_zero_set(quartic, 96)
    assert branches
    for branch in branches:
        residual = arcs.reduced_two_point_f(quartic, branch[:, 0], branch[:, 1])
        assert np.max(np.abs(residual)) < 1e-10
        assert np.all(branch[:, 1] > branch[:, 0])


def test_arcs_at_half_area_of_ellipse(arcs, ellipse):
    found = arcs.arcs_at_area(ellipse, HALF_PI, grid=128)
    assert found
    assert found[0].length == pytest.approx(SQRT2, abs=1e-8)
    assert all(arc.contained for arc in found)
    assert all(arc.enclosed_area == pytest.approx(HALF_PI, abs=1e-9) for arc in found)


def test_arcs_at_area_on_disk(arcs, disk, unit_disk):
    found = arcs.arcs_at_area(unit_disk, 1.0)
    assert len(found) == 16
    assert all(arc.length == pytest.approx(disk.profile_I(1.0), rel=1e-9) for arc in found)


@pytest.mark.parametrize("area", [0.0, -1.0, 4.0])
def test_arcs_at_area_out_of_range(arcs, ellipse, area):
    with pytest.raises(OutOfRange):
        arcs.arcs_at_area(ellipse, area)


def test_arcs_at_area_hit_the_target_near_the_mode_four_root(arcs, disk, perturbation):
    # dominio casi circular: la rama de f̂ = 0 pasa rozando la diagonal del toro
    root = math.acos(1 / math.sqrt(6))
    domain = perturbation.build_perturbed_domain(PerturbationField.mode(4), 1e-3)
    curve, _ = domain.to_support_curve(1024)
    target = disk.theta_to_area(root)
    found = arcs.arcs_at_area(curve, target)
    assert found
    assert all(arc.enclosed_area == pytest.approx(target, abs=1e-9) for arc in found)


@pytest.mark.parametrize("area", [0.05, 0.4, 1.2, HALF_PI])
def test_arcs_at_area_hit_the_target_on_quartic(arcs, quartic, area):
    found = arcs.arcs_at_area(quartic, area, grid=96)
    assert found
    assert all(arc.enclosed_area == pytest.approx(area, abs=1e-9) for arc in found)
    assert all(arc.orthogonality_residual < 1e-9 for arc in found)
