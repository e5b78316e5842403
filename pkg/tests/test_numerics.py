import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from app.core.numerics import (
    TWO_PI,
    chebyshev_grid,
    cumulative_gauss_legendre,
    richardson_sqrt_series,
    scan_roots,
    segment_excess,
    wrap_angle,
    x_cos_minus_sin,
    x_cot_x_minus_one,
)


def test_wrap_angle_range():
    assert wrap_angle(-0.1) == pytest.approx(TWO_PI - 0.1)
    assert wrap_angle(TWO_PI) == 0.0
    assert wrap_angle(7.0) == pytest.approx(7.0 - TWO_PI)


def test_scan_roots_finds_every_sign_change():
    roots = scan_roots(np.sin, np.linspace(0.5, 10.0, 200), xtol=1e-14)
    assert roots == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi], abs=1e-12)


def test_chebyshev_grid_is_interior_and_increasing():
    grid = chebyshev_grid(32, 0.0, math.pi / 2)
    assert np.all(np.diff(grid) > 0)
    assert grid[0] > 0.0 and grid[-1] < math.pi / 2
    # nodos más densos cerca de los extremos
    assert grid[1] - grid[0] < grid[16] - grid[15]


def test_cumulative_gauss_legendre_integrates_cosine():
    nodes = chebyshev_grid(20, 0.0, 1.5)
    assert cumulative_gauss_legendre(np.cos, nodes) == pytest.approx(np.sin(nodes), abs=1e-14)


@pytest.mark.parametrize("x", [1e-6, 1e-4, 9.99e-4, 1e-3, 0.3, 1.2])
def test_x_cot_x_minus_one_matches_definition(x):
    exact = float(x / math.tan(x) - 1.0) if x > 1e-3 else -x * x / 3 - x ** 4 / 45
    assert float(x_cot_x_minus_one(x)) == pytest.approx(exact, rel=1e-9)


def test_stable_kernels_small_argument():
    # x cos x − sin x = −x³/3 + O(x⁵), φ − sin φ = φ³/6 + O(φ⁵)
    assert float(x_cos_minus_sin(1e-4)) == pytest.approx(-(1e-4) ** 3 / 3, rel=1e-8)
    assert float(segment_excess(1e-4)) == pytest.approx((1e-4) ** 3 / 6, rel=1e-8)
    assert float(segment_excess(1.0)) == pytest.approx(1.0 - math.sin(1.0), rel=1e-15)
    assert float(x_cos_minus_sin(0.5)) == pytest.approx(0.5 * math.cos(0.5) - math.sin(0.5), rel=1e-15)


@given(
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=-3.0, max_value=3.0),
)
def test_richardson_removes_half_integer_powers(limit, c1, c2):
    samples = [limit + c1 * math.sqrt(a) + c2 * a for a in (1e-2, 1e-3, 1e-4)]
    assert richardson_sqrt_series(samples, 10.0) == pytest.approx(limit, abs=1e-9)
