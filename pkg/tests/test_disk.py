import math

import pytest
from hypothesis import given, strategies as st

from app.core.errors import OutOfRange
from app.models.arc_model import ArcKind
from app.services.disk_service import SMALL_AREA_SLOPE

SQRT2 = math.sqrt(2.0)


def test_quarter_arc(disk):
    assert disk.theta_to_area(math.pi / 4) == pytest.approx(math.pi / 2 - 1.0, abs=1e-14)
    assert disk.theta_to_length(math.pi / 4) == pytest.approx(math.pi / 2, abs=1e-14)


def test_half_area_is_a_diameter(disk):
    assert disk.area_to_theta(math.pi / 2) == math.pi / 2
    assert disk.profile_I(math.pi / 2) == pytest.approx(2.0, abs=1e-12)


def test_profile_is_symmetric(disk):
    assert disk.profile_I(0.4) == pytest.approx(disk.profile_I(math.pi - 0.4), rel=1e-14)


def test_small_area_expansion(disk):
    # I(a) = √(2πa) − 4a/(3π) + O(a^{3/2})
    a = 1e-8
    gap = disk.profile_I(a) - math.sqrt(2 * math.pi * a)
    assert gap / a == pytest.approx(SMALL_AREA_SLOPE, rel=1e-3)


@given(theta=st.floats(min_value=1e-3, max_value=math.pi / 2 - 1e-3))
def test_area_to_theta_inverts_theta_to_area(disk, theta):
    assert disk.area_to_theta(disk.theta_to_area(theta)) == pytest.approx(theta, abs=1e-10)


def test_area_is_increasing(disk):
    thetas = [0.1 * k for k in range(1, 16)]
    areas = [disk.theta_to_area(t) for t in thetas]
    assert all(b > a for a, b in zip(areas, areas[1:]))


def test_near_diameter_is_stable(disk):
    theta = math.pi / 2 - 1e-9
    assert disk.theta_to_area(theta) == pytest.approx(math.pi / 2, abs=1e-8)
    assert disk.theta_to_length(theta) == pytest.approx(2.0, abs=1e-8)


@pytest.mark.parametrize("theta", [0.0, -0.1, math.pi / 2, 2.0])
def test_theta_out_of_range(disk, theta):
    with pytest.raises(OutOfRange):
        disk.theta_to_area(theta)


@pytest.mark.parametrize("area", [0.0, math.pi, 4.0])
def test_profile_area_out_of_range(disk, area):
    with pytest.raises(OutOfRange):
        disk.profile_I(area)


def test_disk_arc_quarter(disk):
    arc = disk.disk_arc(0.0, math.pi / 4)
    assert arc.kind is ArcKind.circular
    assert arc.center == pytest.approx((SQRT2, 0.0), abs=1e-14)
    assert arc.radius == pytest.approx(1.0, abs=1e-14)
    assert arc.length == pytest.approx(math.pi / 2, abs=1e-14)
    assert arc.enclosed_area == pytest.approx(math.pi / 2 - 1.0, abs=1e-14)
    assert arc.orthogonality_residual < 1e-14
