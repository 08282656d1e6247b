"""Real secular functions and isolation of the real energy levels.

With ``z = (-F + i xi)/2`` the determinant ``det(H - F I)`` equals

* ``2 Re[T_{n+2}(z) U_{n+1}(conj z)]`` for ``N = 2n + 4``,
* ``|U_{n+1}(z)|**2 - |U_n(z)|**2`` for ``N = 2n + 3``,

both real polynomials in F. Real roots are bracketed on a uniform grid
and refined by bisection.
"""

import math
from dataclasses import dataclass

import numpy as np

from ptwell import kernels
from ptwell.chebyshev import ComplexAngle
from ptwell.lattice import make_coupling, make_lattice

__all__ = [
    "SingularAngleError",
    "InvalidToleranceError",
    "RealSpectrum",
    "secular_even",
    "secular_odd",
    "secular_value",
    "secular_trig",
    "real_spectrum",
]

EDGE_GUARD = 1e-9
GRID_FACTOR = 32
MERGE_THRESHOLD = 1e-10


class SingularAngleError(ValueError):
    pass


class InvalidToleranceError(ValueError):
    pass


def _scalar_or_array(values, like):
    return float(values[0]) if np.ndim(like) == 0 else values


def secular_even(F, xi: float, n: int):
    """Even-N secular function; a real polynomial of degree ``2n + 3`` in F."""
    x = np.atleast_1d(np.asarray(F, dtype=np.float64))
    g, _ = kernels.secular_even(x, float(xi), int(n))
    return _scalar_or_array(g, F)


def secular_odd(F, xi: float, n: int):
    """Odd-N secular function; a real polynomial of degree ``2n + 2`` in F."""
    x = np.atleast_1d(np.asarray(F, dtype=np.float64))
    g, _ = kernels.secular_odd(x, float(xi), int(n))
    return _scalar_or_array(g, F)


def secular_value(N: int, Z: float, F):
    """The secular function of the N-point lattice at physical coupling Z."""
    spec = make_lattice(N)
    xi = make_coupling(spec, Z).xi
    if spec.even:
        return secular_even(F, xi, spec.n)
    return secular_odd(F, xi, spec.n)


def secular_trig(phi: ComplexAngle, N: int) -> float:
    """``Re[sin(m phi) cos(m conj(phi)) / sin(phi)]`` with ``m = N/2``.

    Equals half the even-N secular function at the image point of ``phi``.
    """
    if N % 2:
        raise ValueError("the trigonometric form is defined for even N")
    w = phi.phi
    s = np.sin(w)
    if abs(s) < 1e-300:
        raise SingularAngleError(f"sin(phi) vanishes at phi = {w}")
    m = N // 2
    return float((np.sin(m * w) * np.cos(m * np.conj(w)) / s).real)


@dataclass(frozen=True)
class RealSpectrum:
    """Real levels of one lattice, each with its detected multiplicity."""

    N: int
    Z: float
    levels: np.ndarray
    multiplicity: np.ndarray

    @property
    def roots(self) -> np.ndarray:
        return np.repeat(self.levels, self.multiplicity)

    @property
    def count(self) -> int:
        return int(np.sum(self.multiplicity))

    def __len__(self):
        return self.count

    def __iter__(self):
        return iter(self.roots)


class _Reduced:
    """Even-in-F function sharing the nonzero real roots of the secular one.

    For odd N that is g itself. For even N it is g(F)/F, whose value at
    the origin is g'(0); the robust level F = 0 is handled separately.
    """

    def __init__(self, N, xi):
        spec = make_lattice(N)
        self.even = spec.even
        self.n = spec.n
        self.xi = xi
        self.kernel = kernels.secular_even if spec.even else kernels.secular_odd

    def sign_value(self, F):
        """A function with the sign of the reduced one for ``F > 0``."""
        g, _ = self.kernel(F, self.xi, self.n)
        return g

    def value_slope(self, F):
        g, dg = self.kernel(F, self.xi, self.n)
        if not self.even:
            return g, dg
        with np.errstate(divide="ignore", invalid="ignore"):
            s = g / F
            ds = (dg * F - g) / (F * F)
        return s, ds

    def at_origin(self):
        g, dg = self.kernel(np.zeros(1), self.xi, self.n)
        return float(dg[0] if self.even else g[0])


def _bisect(fun, lo, hi, tol, flo=None):
    """Vectorised bisection of sign changes of ``fun`` on ``[lo, hi]``."""
    lo = np.array(lo, dtype=np.float64)
    hi = np.array(hi, dtype=np.float64)
    if lo.size == 0:
        return lo
    slo = np.sign(fun(lo) if flo is None else flo)
    width = float(np.max(hi - lo))
    steps = max(1, min(200, math.ceil(math.log2(max(width / tol, 2.0))) + 2))
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        smid = np.sign(fun(mid))
        left = smid == slo
        lo = np.where(left, mid, lo)
        hi = np.where(left, hi, mid)
        exact = smid == 0
        lo = np.where(exact, mid, lo)
        hi = np.where(exact, mid, hi)
        if np.all(hi - lo <= tol):
            break
    return 0.5 * (lo + hi)


def real_spectrum(N: int, Z: float, tol: float = 1e-12) -> RealSpectrum:
    """All real roots of the secular function of the N-point lattice.

    The reduced even function is sampled on ``[0, 2 + 1e-9]`` with the
    same density as ``32 * dim`` points over the full band. Sign changes
    are bisected to ``tol``. Cells where ``|s|`` has an interior minimum
    without a sign change are searched for a hidden pair; a minimum below
    ``1e-10 * max|s|`` is reported as a double root. Positive roots are
    mirrored, and for even N the robust level ``F = 0`` is added.
    """
    if not tol > 0:
        raise InvalidToleranceError(f"tol must be positive, got {tol!r}")
    spec = make_lattice(N)
    xi = make_coupling(spec, Z).xi
    red = _Reduced(N, xi)

    cells = GRID_FACTOR * spec.dim // 2
    grid = np.linspace(0.0, 2.0 + EDGE_GUARD, cells + 1)
    s = np.empty_like(grid)
    ds = np.empty_like(grid)
    s[1:], ds[1:] = red.value_slope(grid[1:])
    s[0] = red.at_origin()
    ds[0] = 0.0
    scale = float(np.max(np.abs(s)))
    thr = MERGE_THRESHOLD * scale

    levels = []
    mult = []

    origin_root = abs(s[0]) <= thr
    if origin_root:
        s[0] = 0.0

    sgn = np.sign(s)
    # grid points that are exact zeros (never the origin, handled above)
    for i in np.nonzero(sgn[1:] == 0)[0] + 1:
        levels.append(grid[i])
        mult.append(1)
    change = sgn[:-1] * sgn[1:] < 0
    idx = np.nonzero(change)[0]
    lo, hi = grid[idx], grid[idx + 1]
    if origin_root:
        # a sign change out of an exact zero at the origin is not a new root
        keep = idx != 0
        lo, hi = lo[keep], hi[keep]
    roots = _bisect(red.sign_value, lo, hi, tol)
    levels.extend(roots.tolist())
    mult.extend([1] * roots.size)

    # |s| decreasing into the cell and increasing out of it, same sign
    # at both ends: an extremum pointing towards zero lies inside
    inner = np.nonzero(
        (sgn[:-1] * sgn[1:] > 0)
        & (s[:-1] * ds[:-1] < 0)
        & (s[1:] * ds[1:] > 0)
    )[0]
    inner = inner[grid[inner] > 0]
    if inner.size:
        slope = lambda F: red.value_slope(F)[1]
        fstar = _bisect(slope, grid[inner], grid[inner + 1], tol, flo=ds[inner])
        sstar, _ = red.value_slope(fstar)
        for j, i in enumerate(inner):
            if sstar[j] != 0 and np.sign(sstar[j]) != sgn[i]:
                a = _bisect(red.sign_value, [grid[i]], [fstar[j]], tol)
                b = _bisect(red.sign_value, [fstar[j]], [grid[i + 1]], tol)
                levels.extend([a[0], b[0]])
                mult.extend([1, 1])
            elif abs(sstar[j]) <= thr:
                levels.append(fstar[j])
                mult.append(2)

    pos = np.array(levels, dtype=np.float64)
    pm = np.array(mult, dtype=np.int64)
    out_levels = np.concatenate([-pos[::-1], pos])
    out_mult = np.concatenate([pm[::-1], pm])

    centre = 0
    if origin_root:
        centre = 3 if spec.even else 2
    elif spec.even:
        centre = 1
    if centre:
        out_levels = np.concatenate([out_levels, [0.0]])
        out_mult = np.concatenate([out_mult, [centre]])

    order = np.argsort(out_levels, kind="stable")
    return RealSpectrum(
        N=spec.N,
        Z=float(Z),
        levels=out_levels[order],
        multiplicity=out_mult[order],
    )
