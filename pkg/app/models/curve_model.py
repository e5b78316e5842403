# app/models/curve_model.py

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np

Point = Tuple[float, float]

# cos(mπ/2), sin(mπ/2) para m mod 4
_QUARTER_COS = (1, 0, -1, 0)
_QUARTER_SIN = (0, 1, 0, -1)


@dataclass(frozen=True)
class SupportCurve:
    """Curva convexa dada por su función soporte h(θ) = Σ aₘ cos mθ + bₘ sin mθ.

    ``cos_coeffs`` holds a₀..a_M and ``sin_coeffs`` holds b₁..b_M. Positions are
    C(θ) = h N + h' T with N = (cosθ, sinθ) and T = (−sinθ, cosθ), so the curve
    closes by construction and ρ = h + h'' is the radius of curvature.
    """

    cos_coeffs: Tuple[float, ...]
    sin_coeffs: Tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "cos_coeffs", tuple(float(c) for c in self.cos_coeffs) or (0.0,))
        object.__setattr__(self, "sin_coeffs", tuple(float(c) for c in self.sin_coeffs))

    # ------------------------------------------------------------------ factories

    @classmethod
    def disk(cls, radius: float = 1.0, center: Point = (0.0, 0.0)) -> "SupportCurve":
        return cls((radius, center[0]), (center[1],))

    @classmethod
    def from_samples(cls, values: Sequence[float], cutoff: float = 2e-15) -> "SupportCurve":
        """Ajustar coeficientes de Fourier a muestras uniformes h(2πj/N), j = 0..N−1.

        Coefficients below ``cutoff`` times the scale are round-off of the FFT and
        are set to zero, so exact symmetries of the samples survive in the series.
        """
        values = np.asarray(values, dtype=float)
        n = len(values)
        spectrum = np.fft.rfft(values) / n
        top = (n - 1) // 2
        a = np.concatenate(([spectrum[0].real], 2.0 * spectrum[1 : top + 1].real))
        b = -2.0 * spectrum[1 : top + 1].imag
        scale = max(1.0, abs(a[0]))
        floor = cutoff * scale
        a[1:] = np.where(np.abs(a[1:]) > floor, a[1:], 0.0)
        b = np.where(np.abs(b) > floor, b, 0.0)
        significant = np.nonzero(np.maximum(np.abs(a[1:]), np.abs(b)) > 0.0)[0]
        order = int(significant[-1]) + 1 if len(significant) else 0
        return cls(tuple(a[: order + 1]), tuple(b[:order]))

    @classmethod
    def ellipse(cls, a: float, b: float, samples: int = 1024) -> "SupportCurve":
        theta = 2.0 * math.pi * np.arange(samples) / samples
        fitted = cls.from_samples(np.sqrt((a * np.cos(theta)) ** 2 + (b * np.sin(theta)) ** 2))
        # simétrica respecto a ambos ejes: solo cosenos de orden par
        even = [c if m % 2 == 0 else 0.0 for m, c in enumerate(fitted.cos_coeffs)]
        return cls(tuple(even))

    @classmethod
    def quartic(cls, a0: float, a2: float, a4: float) -> "SupportCurve":
        return cls((a0, 0.0, a2, 0.0, a4), (0.0, 0.0, 0.0, 0.0))

    # ------------------------------------------------------------------ coefficients

    @property
    def order(self) -> int:
        return max(len(self.cos_coeffs) - 1, len(self.sin_coeffs))

    @cached_property
    def _modes(self) -> np.ndarray:
        return np.arange(self.order + 1, dtype=float)

    @cached_property
    def _a(self) -> np.ndarray:
        a = np.zeros(self.order + 1)
        a[: len(self.cos_coeffs)] = self.cos_coeffs
        return a

    @cached_property
    def _b(self) -> np.ndarray:
        b = np.zeros(self.order + 1)
        b[1 : len(self.sin_coeffs) + 1] = self.sin_coeffs
        return b

    @cached_property
    def _rho_factor(self) -> np.ndarray:
        return 1.0 - self._modes ** 2

    @cached_property
    def _complex_h(self) -> np.ndarray:
        """Coeficientes cₘ, m = −M..M, con h = Σ cₘ e^{imθ}"""
        half = (self._a - 1j * self._b) / 2.0
        half[0] = self._a[0]
        return np.concatenate((np.conj(half[:0:-1]), half))

    @cached_property
    def _sector_density(self) -> np.ndarray:
        """Coeficientes complejos de ½·h·ρ, índices −2M..2M"""
        m = np.arange(-self.order, self.order + 1, dtype=float)
        return 0.5 * np.convolve(self._complex_h, (1.0 - m ** 2) * self._complex_h)

    def coefficient_vectors(self) -> Tuple[np.ndarray, np.ndarray]:
        return self._a.copy(), self._b.copy()

    # ------------------------------------------------------------------ evaluation

    def _series(self, a: np.ndarray, b: np.ndarray, theta, derivative: int):
        theta = np.asarray(theta, dtype=float)
        phase = np.multiply.outer(theta, self._modes) + derivative * math.pi / 2.0
        weights = self._modes ** derivative if derivative else np.ones_like(self._modes)
        return np.cos(phase) @ (weights * a) + np.sin(phase) @ (weights * b)

    def support(self, theta, derivative: int = 0):
        """h^{(k)}(θ)"""
        return self._series(self._a, self._b, theta, derivative)

    def radius_of_curvature(self, theta, derivative: int = 0):
        """ρ^{(k)}(θ) con ρ = h + h''"""
        return self._series(self._rho_factor * self._a, self._rho_factor * self._b, theta, derivative)

    def curvature(self, theta):
        return 1.0 / self.radius_of_curvature(theta)

    def position(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        h = self.support(theta)
        dh = self.support(theta, 1)
        c, s = np.cos(theta), np.sin(theta)
        return np.stack((h * c - dh * s, h * s + dh * c), axis=-1)

    @staticmethod
    def normal(theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return np.stack((np.cos(theta), np.sin(theta)), axis=-1)

    @staticmethod
    def tangent(theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return np.stack((-np.sin(theta), np.cos(theta)), axis=-1)

    # ------------------------------------------------------------------ integrals

    @property
    def area(self) -> float:
        """½∮ h ρ dθ por Parseval"""
        a, b = self._a, self._b
        return float(math.pi * a[0] ** 2 + 0.5 * math.pi * np.sum(self._rho_factor[1:] * (a[1:] ** 2 + b[1:] ** 2)))

    @property
    def perimeter(self) -> float:
        return float(2.0 * math.pi * self._a[0])

    def sector_area(self, theta_start, theta_end):
        """½∫ h ρ dθ entre dos ángulos normales: área barrida por C desde el origen"""
        theta_start = np.asarray(theta_start, dtype=float)
        theta_end = np.asarray(theta_end, dtype=float)
        k = np.arange(-2 * self.order, 2 * self.order + 1, dtype=float)
        safe_k = np.where(k == 0.0, 1.0, k)
        end = np.exp(1j * np.multiply.outer(theta_end, k))
        start = np.exp(1j * np.multiply.outer(theta_start, k))
        primitive = (end - start) / (1j * safe_k)
        center = 2 * self.order
        primitive[..., center] = theta_end - theta_start
        return (primitive @ self._sector_density).real

    def arclength(self, theta):
        """s(θ) = ∫₀^θ ρ dω"""
        theta = np.asarray(theta, dtype=float)
        m = self._modes[1:]
        phase = np.multiply.outer(theta, m)
        ra = self._rho_factor[1:] * self._a[1:] / m
        rb = self._rho_factor[1:] * self._b[1:] / m
        return self._a[0] * theta + np.sin(phase) @ ra - (np.cos(phase) - 1.0) @ rb

    # ------------------------------------------------------------------ transforms

    def scaled(self, factor: float) -> "SupportCurve":
        return SupportCurve(tuple(factor * c for c in self.cos_coeffs), tuple(factor * c for c in self.sin_coeffs))

    def rotate_quarter(self) -> "SupportCurve":
        """Girar el dominio π/2 en sentido antihorario: h̃(θ) = h(θ − π/2)"""
        a, b = self._a, self._b
        new_a: List[float] = []
        new_b: List[float] = []
        for m in range(self.order + 1):
            c, s = _QUARTER_COS[m % 4], _QUARTER_SIN[m % 4]
            new_a.append(a[m] * c - b[m] * s)
            new_b.append(a[m] * s + b[m] * c)
        return SupportCurve(tuple(new_a), tuple(new_b[1:]))

    def is_disk(self, tolerance: float = 1e-12) -> bool:
        """ρ constante: ningún modo m ≥ 2"""
        scale = max(1.0, abs(self._a[0]))
        tail = np.maximum(np.abs(self._a[2:]), np.abs(self._b[2:]))
        return bool(np.all(tail < tolerance * scale))


@dataclass(frozen=True)
class CurvePoint:
    theta: float
    position: Point
    tangent: Point
    normal: Point
    curvature: float
