"""Chebyshev polynomials at complex and 2x2 real-matrix arguments.

Also holds the complex-angle change of variables ``cos(phi) = (-F + i xi)/2``
that turns the secular equations into trigonometric form.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "OutOfBandError",
    "ComplexAngle",
    "cheb_U",
    "cheb_T",
    "angle_from",
    "point_from",
    "mat_power_rot",
    "cheb_U_matrix",
    "rotation_generator",
]


class OutOfBandError(ValueError):
    """Real F outside [-2, 2] at zero coupling has no real angle."""


@dataclass(frozen=True)
class ComplexAngle:
    alpha: float
    beta: float

    @property
    def phi(self) -> complex:
        return complex(self.alpha, self.beta)


def _check_degree(k):
    if int(k) != k or k < 0:
        raise ValueError(f"degree must be a non-negative integer, got {k!r}")
    return int(k)


def cheb_U(k: int, z):
    """Second-kind Chebyshev polynomial ``U_k(z)`` by forward recurrence.

    Works elementwise on numpy arrays as well as on scalars.
    """
    k = _check_degree(k)
    u0 = 1.0 + 0.0 * z
    if k == 0:
        return u0
    u1 = 2.0 * z
    for _ in range(k - 1):
        u0, u1 = u1, 2.0 * z * u1 - u0
    return u1


def cheb_T(k: int, z):
    """First-kind Chebyshev polynomial ``T_k(z)`` by forward recurrence."""
    k = _check_degree(k)
    t0 = 1.0 + 0.0 * z
    if k == 0:
        return t0
    t1 = z + 0.0 * z
    for _ in range(k - 1):
        t0, t1 = t1, 2.0 * z * t1 - t0
    return t1


def angle_from(F: float, xi: float) -> ComplexAngle:
    """Invert ``cos(alpha + i beta) = (-F + i xi)/2`` for real F, xi.

    The branch keeps ``alpha`` in [0, pi]; hence ``beta <= 0`` for positive
    coupling and ``beta >= 0`` for negative coupling.
    """
    F = float(F)
    xi = float(xi)
    if xi == 0.0 and abs(F) > 2.0:
        raise OutOfBandError(f"|F| = {abs(F)} > 2 at xi = 0 has no real angle")
    s = F * F + xi * xi - 4.0
    r = math.hypot(s, 4.0 * xi)
    # sinh(b)**2 = (s + r)/8; for s < 0 use s + r = 16 xi**2/(r - s)
    # without squaring xi, so tiny couplings neither cancel nor underflow
    if s >= 0.0:
        sinh_b = math.sqrt(s + r) / (2.0 * math.sqrt(2.0))
    else:
        sinh_b = math.sqrt(2.0) * abs(xi) / math.sqrt(r - s)
    beta = -math.copysign(math.asinh(sinh_b), xi) if xi != 0.0 else 0.0
    cosh_b = math.cosh(beta)
    cos_a = -F / (2.0 * cosh_b)
    if s < 0.0:
        sin_a = math.sqrt(r - s) / (2.0 * math.sqrt(2.0))
    elif sinh_b > 0.0:
        sin_a = abs(xi) / (2.0 * sinh_b)
    else:
        sin_a = math.sqrt(max(0.0, 1.0 - cos_a * cos_a))
    return ComplexAngle(alpha=math.atan2(sin_a, cos_a), beta=beta)


def point_from(phi: ComplexAngle) -> tuple:
    """Map an angle back to ``(F, xi)``."""
    F = -2.0 * math.cos(phi.alpha) * math.cosh(phi.beta)
    xi = -2.0 * math.sin(phi.alpha) * math.sinh(phi.beta)
    return F, xi


def rotation_generator(F: float, xi: float) -> np.ndarray:
    """The real 2x2 image of multiplication by ``-F + i xi``."""
    return np.array([[-F, -xi], [xi, -F]], dtype=np.float64)


def mat_power_rot(F: float, xi: float, m: int) -> np.ndarray:
    """``X**m`` for ``X = [[-F, -xi], [xi, -F]]`` in closed rotation form.

    With ``F = -rho cos(a)`` and ``xi = rho sin(a)`` the power is
    ``rho**m`` times the rotation by ``m a``.
    """
    m = _check_degree(m)
    if m == 0:
        return np.eye(2)
    rho = math.hypot(F, xi)
    if rho == 0.0:
        return np.zeros((2, 2))
    a = math.atan2(xi, -F)
    c = math.cos(m * a)
    s = math.sin(m * a)
    return rho**m * np.array([[c, -s], [s, c]])


def cheb_U_matrix(k: int, F: float, xi: float) -> np.ndarray:
    """``U_k(X/2)`` by the matrix three-term recurrence."""
    k = _check_degree(k)
    X = rotation_generator(F, xi)
    u0 = np.eye(2)
    if k == 0:
        return u0
    u1 = X.copy()
    for _ in range(k - 1):
        u0, u1 = u1, X @ u1 - u0
    return u1
