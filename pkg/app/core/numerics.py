"""Herramientas numéricas compartidas: búsqueda de raíces, cuadratura y núcleos estables."""

import math
from typing import Callable, List, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.optimize import brentq

TWO_PI = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """Reducir un ángulo a [0, 2π)"""
    wrapped = math.fmod(theta, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    if wrapped >= TWO_PI - 1e-12:
        wrapped = 0.0
    return wrapped


def scan_roots(
    func: Callable[[np.ndarray], np.ndarray],
    grid: np.ndarray,
    xtol: float = 1e-12,
) -> List[float]:
    """Raíces de una función escalar: barrido de cambios de signo sobre `grid` y refinado con Brent.

    `func` must accept arrays; it is called once on the whole grid and then on
    scalars while refining each bracket.
    """
    values = np.asarray(func(grid), dtype=float)
    roots: List[float] = []
    for i in range(len(grid) - 1):
        lo, hi = values[i], values[i + 1]
        if lo == 0.0:
            roots.append(float(grid[i]))
            continue
        if lo * hi < 0.0:
            roots.append(brentq(lambda x: float(func(np.asarray(x))), grid[i], grid[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps))
    if len(grid) and values[-1] == 0.0:
        roots.append(float(grid[-1]))
    return roots


def chebyshev_grid(n: int, lo: float, hi: float) -> np.ndarray:
    """Nodos de Chebyshev de primera especie en (lo, hi), crecientes y estrictamente interiores"""
    k = np.arange(n)
    x = -np.cos((2.0 * k + 1.0) * math.pi / (2.0 * n))
    return lo + (hi - lo) * (x + 1.0) / 2.0


def cumulative_gauss_legendre(
    func: Callable[[np.ndarray], np.ndarray],
    nodes: np.ndarray,
    start: float = 0.0,
    order: int = 8,
) -> np.ndarray:
    """∫_start^{nodes[i]} func, acumulada con Gauss–Legendre compuesta sobre cada subintervalo"""
    edges = np.concatenate(([start], np.asarray(nodes, dtype=float)))
    x, w = leggauss(order)
    a, b = edges[:-1, None], edges[1:, None]
    half = (b - a) / 2.0
    points = (a + b) / 2.0 + half * x[None, :]
    pieces = (half[:, 0]) * (func(points) @ w)
    return np.cumsum(pieces)


def x_cot_x_minus_one(x):
    """x·cot(x) − 1, sin cancelación para x pequeño"""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-3
    safe = np.where(small, 1.0, x)
    x2 = x * x
    series = -x2 / 3.0 - x2 * x2 / 45.0 - 2.0 * x2 ** 3 / 945.0
    return np.where(small, series, safe / np.tan(safe) - 1.0)


def x_cos_minus_sin(x):
    """x·cos(x) − sin(x), sin cancelación para x pequeño"""
    x = np.asarray(x, dtype=float)
    x2 = x * x
    series = -x * x2 / 3.0 + x * x2 * x2 / 30.0 - x * x2 ** 3 / 840.0
    return np.where(np.abs(x) < 1e-2, series, x * np.cos(x) - np.sin(x))


def segment_excess(phi):
    """φ − sin φ (doble del área de un segmento circular de radio unidad)"""
    phi = np.asarray(phi, dtype=float)
    p2 = phi * phi
    series = phi * p2 / 6.0 - phi * p2 * p2 / 120.0 + phi * p2 ** 3 / 5040.0
    return np.where(np.abs(phi) < 1e-2, series, phi - np.sin(phi))


def richardson_sqrt_series(values: Sequence[float], ratio: float) -> float:
    """Extrapolar g(a) → a=0 para g = S + c₁√a + c₂a + …, con muestras en a, a/ratio, a/ratio², …

    Each level removes the next half-integer power of a.
    """
    table = [float(v) for v in values]
    factor = math.sqrt(ratio)
    power = factor
    while len(table) > 1:
        table = [(power * table[i + 1] - table[i]) / (power - 1.0) for i in range(len(table) - 1)]
        power *= factor
    return table[0]
