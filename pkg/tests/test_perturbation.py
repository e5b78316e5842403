import math

import numpy as np
import pytest

from app.core.errors import FitIllConditioned, NonConvexPerturbation, OutOfRange
from app.models.perturbation_model import PerturbationField, Verdict
from app.services.perturbation_service import PerturbationService, implicit_function

MODE4_ROOT = math.acos(1.0 / math.sqrt(6.0))
MODE5_ROOT = math.atan(math.sqrt(5.0 / 3.0))


def test_mode_roots(perturbation, disk):
    (root4,) = perturbation.find_mode_roots(4)
    assert root4.b == pytest.approx(MODE4_ROOT, abs=1e-10)
    assert root4.theta == root4.b
    assert root4.area == pytest.approx(disk.theta_to_area(MODE4_ROOT), abs=1e-10)
    assert [r.b for r in perturbation.find_mode_roots(5)] == pytest.approx([MODE5_ROOT], abs=1e-10)


@pytest.mark.parametrize("n", [2, 3])
def test_low_modes_have_no_roots(perturbation, n):
    assert perturbation.find_mode_roots(n) == []


def test_mode_index_must_be_at_least_two(perturbation):
    with pytest.raises(OutOfRange):
        perturbation.find_mode_roots(1)


def test_implicit_function_is_mode_condition(perturbation):
    for n, b in [(2, 0.3), (4, 1.1), (7, 0.05)]:
        assert float(implicit_function(n, b)) == pytest.approx(perturbation.mode_condition(n, b), abs=1e-15)


def test_first_variation_matches_integral_form(perturbation):
    f = PerturbationField((0.0, 1.0), (0.0, 0.0, 0.5))
    b = 0.6
    u = np.linspace(0.0, 2 * math.pi, 37)

    def primitive(w):
        return np.sin(2 * w) / 2 - 0.5 * np.cos(3 * w) / 3

    direct = -(primitive(u + 2 * b) - primitive(u)) / math.tan(b) + f.evaluate(u) + f.evaluate(u + 2 * b)
    assert perturbation.first_variation_l(f, b, u) == pytest.approx(direct, abs=1e-13)


def test_first_variation_vanishes_at_mode_root(perturbation):
    u = np.linspace(0.0, 2 * math.pi, 50)
    values = perturbation.first_variation_l(PerturbationField.mode(4), MODE4_ROOT, u)
    assert np.max(np.abs(values)) < 1e-10


@pytest.mark.parametrize("b", [0.1, 0.5, MODE4_ROOT, 1.2, 1.5])
@pytest.mark.parametrize("weights", [(1.0, 0.0), (0.0, 1.0), (0.6, -0.8)])
def test_translations_do_not_change_first_variation(perturbation, b, weights):
    u = np.linspace(0.0, 2 * math.pi, 73)
    values = perturbation.first_variation_l(PerturbationField.mode(1, *weights), b, u)
    assert np.max(np.abs(values)) < 1e-13


def test_mode_two_decreases_at_first_order(perturbation):
    # l(u) = −2 sin²b·cos(2u + 2b)
    b = 0.9
    assert perturbation.min_l(PerturbationField.mode(2), b) == pytest.approx(-2 * math.sin(b) ** 2, rel=1e-5)
    assert perturbation.mean_l(PerturbationField.mode(2), b) == pytest.approx(0.0, abs=1e-14)
    assert perturbation.first_variation_l(PerturbationField.mode(2), b, 0.3) == pytest.approx(
        -2 * math.sin(b) ** 2 * math.cos(0.6 + 2 * b), abs=1e-14
    )


def test_first_variation_range(perturbation):
    with pytest.raises(OutOfRange):
        perturbation.first_variation_l(PerturbationField.mode(2), math.pi / 2, 0.0)
    cos, sin = perturbation.l_coefficients(PerturbationField.mode(2), math.pi / 2)
    # en b = π/2 el arco es un diámetro: l = 2 cos 2u
    assert cos == pytest.approx([0.0, 2.0], abs=1e-15)
    assert sin == pytest.approx([0.0, 0.0], abs=1e-15)


def test_aggregate_second_variation():
    assert PerturbationField.mode(3, 1.0, 1.0).energy == 2.0
    assert PerturbationService.aggregate_second_variation(PerturbationField.mode(2)) == pytest.approx(-2 * math.pi)


def test_perturbed_domain_is_normalized(perturbation):
    curve = perturbation.build_perturbed_domain(PerturbationField.mode(2, 1.0, 0.5), 0.01)
    assert curve.area == pytest.approx(math.pi, abs=1e-12)
    support, residual = curve.to_support_curve()
    assert residual < 1e-10
    assert support.area == pytest.approx(math.pi, rel=1e-10)


def test_large_perturbation_is_not_convex(perturbation):
    with pytest.raises(NonConvexPerturbation):
        perturbation.build_perturbed_domain(PerturbationField.mode(4), 0.1)


def test_implicit_curve_contains_translation_lines(perturbation):
    points = perturbation.implicit_curve_sample((-2.0, 6.0), (0.0, 1.5), resolution=120)
    branches = {}
    for x, y, branch in points:
        branches.setdefault(branch, []).append((x, y))
    xs = {x for pts in branches.values() for x, _ in pts if x in (-1.0, 0.0, 1.0)}
    assert xs == {-1.0, 0.0, 1.0}
    assert len(branches) > 3
    for x, y, _ in points:
        assert float(implicit_function(x, y)) == pytest.approx(0.0, abs=0.2)


@pytest.mark.parametrize("x_range, y_range", [((1.0, 1.0), (0.0, 1.0)), ((0.0, 1.0), (2.0, 1.0)), ((0.0, math.inf), (0.0, 1.0))])
def test_implicit_curve_rejects_bad_ranges(perturbation, x_range, y_range):
    with pytest.raises(OutOfRange):
        perturbation.implicit_curve_sample(x_range, y_range)


def test_mode_slice_both_directions(perturbation):
    along_y = perturbation.mode_slice(4.0, "x", (0.01, math.pi / 2 - 0.01))
    assert along_y == pytest.approx([MODE4_ROOT], abs=1e-10)
    along_x = perturbation.mode_slice(MODE4_ROOT, "y", (3.5, 4.5))
    assert along_x == pytest.approx([4.0], abs=1e-9)
    with pytest.raises(OutOfRange):
        perturbation.mode_slice(1.0, "z", (0.0, 1.0))


def test_rigid_motion_is_stationary(perturbation):
    report = perturbation.rigid_motion_control(1.0)
    assert report.verdict is Verdict.stationary
    assert report.alpha == pytest.approx(0.0, abs=report.noise_floor)
    assert report.predicted_alpha == 0.0
    assert all(v == pytest.approx(report.baseline, abs=1e-9) for v in report.profile_values)


def test_experiment_needs_two_step_sizes(perturbation):
    with pytest.raises(FitIllConditioned):
        perturbation.rigid_motion_control(1.0, [1e-3, 1e-3])


def test_experiment_preconditions(perturbation):
    with pytest.raises(OutOfRange):
        perturbation.profile_decrease_experiment(PerturbationField(), 1.0)
    with pytest.raises(OutOfRange):
        perturbation.profile_decrease_experiment(PerturbationField.mode(2), math.pi)


@pytest.mark.slow
def test_mode_two_experiment_decreases_profile(perturbation):
    # b = π/4: l(u) = sin 2u
    report = perturbation.profile_decrease_experiment(PerturbationField.mode(2), math.pi / 2 - 1.0)
    assert report.verdict is Verdict.first_order_decrease
    assert report.predicted_alpha == pytest.approx(-1.0, rel=1e-6)
    assert report.alpha == pytest.approx(-1.0, rel=5e-2)
    assert all(v < report.baseline for v in report.profile_values)


@pytest.mark.slow
def test_mode_four_at_root_has_no_first_order_decrease(perturbation, disk):
    area = disk.theta_to_area(MODE4_ROOT)
    report = perturbation.profile_decrease_experiment(PerturbationField.mode(4), area)
    assert report.verdict is not Verdict.first_order_decrease
    assert abs(report.alpha) <= report.noise_floor
    assert report.beta < 0.0
