"""Independent spectral path.

Characteristic polynomial of the tridiagonal matrix, all of its complex
roots by Durand-Kerner (Weierstrass) iteration, closed-form eigenvectors
built from Chebyshev amplitudes, and residual checks. Nothing here uses
the secular functions, so the two routes can check each other.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from ptwell import kernels
from ptwell.chebyshev import cheb_U
from ptwell.lattice import (
    TridiagonalHamiltonian,
    build_hamiltonian,
    make_coupling,
    make_lattice,
)

__all__ = [
    "MalformedPolynomialError",
    "NotAnEigenvalueError",
    "CharPoly",
    "PolyRoots",
    "SpectrumResult",
    "Eigenvector",
    "char_poly",
    "poly_roots",
    "full_spectrum",
    "eigenvector",
    "residual",
    "multiset_distance",
]

DK_TOL = 1e-12
DK_MAX_ITER = 500
DK_OFFSET = 0.4


class MalformedPolynomialError(ValueError):
    pass


class NotAnEigenvalueError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CharPoly:
    """``p(F) = det(H - F I)`` as ascending coefficients.

    When built from a matrix the diagonal is kept, and evaluation goes
    through the determinant recurrence instead of Horner's rule. The
    monomial coefficients of these polynomials grow like a Fibonacci
    sequence with the degree, so Horner loses most digits beyond degree 40.
    """

    coeffs: np.ndarray
    diag: Optional[np.ndarray] = None

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def __call__(self, F):
        return self.value_and_derivative(F)[0]

    def value_and_derivative(self, F):
        x = np.atleast_1d(np.asarray(F, dtype=np.complex128))
        if self.diag is not None:
            p, dp = kernels.tridiag_charval(self.diag, x)
        else:
            c = self.coeffs
            p = np.full_like(x, c[-1])
            dp = np.zeros_like(x)
            for ck in c[-2::-1]:
                dp = dp * x + p
                p = p * x + ck
        if np.ndim(F) == 0:
            return p[0], dp[0]
        return p, dp

    def magnitude(self, F):
        """``sum_k |c_k| |F|**k``, the scale for backward-error residuals."""
        r = np.abs(np.asarray(F, dtype=np.complex128))
        return np.polynomial.polynomial.polyval(r, np.abs(self.coeffs))

    def real_coefficient_defect(self) -> float:
        """Largest imaginary part relative to the largest coefficient."""
        c = self.coeffs
        return float(np.max(np.abs(c.imag)) / np.max(np.abs(c)))


@dataclass(frozen=True)
class PolyRoots:
    roots: np.ndarray
    iterations: int
    converged: bool


@dataclass(frozen=True)
class SpectrumResult:
    N: int
    Z: float
    roots: np.ndarray
    reality_defect: float
    converged: bool
    residuals: np.ndarray
    iterations: int = 0

    def real_roots(self, tol: float = 1e-9) -> np.ndarray:
        r = self.roots
        return np.sort(r.real[np.abs(r.imag) <= tol])

    @property
    def is_real(self) -> bool:
        return self.reality_defect <= 1e-9


@dataclass(frozen=True)
class Eigenvector:
    """PT-symmetric eigenvector for a real eigenvalue.

    ``components`` follows the site order, i.e. the left amplitudes
    ``alpha_0..alpha_n``, the central ``gamma`` for even N, then the
    conjugated amplitudes in reverse order.
    """

    N: int
    Z: float
    F: float
    components: np.ndarray
    residual: float
    defective: bool = False
    amplitudes: np.ndarray = field(default=None, repr=False)


def char_poly(H: TridiagonalHamiltonian) -> CharPoly:
    if H.dim < 1:
        raise MalformedPolynomialError("empty matrix")
    coeffs = kernels.tridiag_charpoly(np.ascontiguousarray(H.diag))
    return CharPoly(coeffs=coeffs, diag=np.ascontiguousarray(H.diag))


def _as_charpoly(p) -> CharPoly:
    if isinstance(p, CharPoly):
        return p
    return CharPoly(coeffs=np.asarray(p, dtype=np.complex128))


def _start_radius(p: CharPoly) -> float:
    if p.diag is not None:
        # Gershgorin disc with a margin; DK converges fastest when started
        # a little outside the root cloud rather than on it
        return 1.5 * (float(np.max(np.abs(p.diag))) + 2.0)
    c = p.coeffs
    d = p.degree
    k = np.arange(1, d + 1)
    ratios = np.abs(c[d - k] / c[d]) ** (1.0 / k)
    return max(2.0 * float(np.max(ratios)), 1e-3)


def poly_roots(
    p: Union[CharPoly, Sequence[complex]],
    tol: float = DK_TOL,
    max_iter: int = DK_MAX_ITER,
) -> PolyRoots:
    """All complex roots by simultaneous Weierstrass corrections."""
    p = _as_charpoly(p)
    if p.degree < 1:
        raise MalformedPolynomialError("degree must be at least one")
    if p.coeffs[-1] == 0:
        raise MalformedPolynomialError("leading coefficient is zero")
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = p.degree
    R = _start_radius(p)
    z0 = R * np.exp(1j * (2.0 * np.pi * np.arange(d) / d + DK_OFFSET))
    if p.diag is not None:
        z, it, ok = kernels.dk_tridiag(p.diag, z0, tol, max_iter)
    else:
        z, it, ok = kernels.dk_coeffs(np.ascontiguousarray(p.coeffs), z0, tol, max_iter)
    return PolyRoots(roots=z, iterations=int(it), converged=bool(ok))


def _recurrence_scale(diag: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Typical rounding scale of the determinant recurrence at ``z``.

    Errors propagate like solutions of the recurrence itself, so the
    largest intermediate minor times the length is a realistic estimate.
    """
    a0 = np.ones_like(z)
    a1 = diag[0] - z
    top = np.maximum(1.0, np.abs(a1))
    for dk in diag[1:]:
        a0, a1 = a1, (dk - z) * a1 - a0
        top = np.maximum(top, np.abs(a1))
    return diag.shape[0] * top


def _mixed_value(p: CharPoly, z: np.ndarray) -> np.ndarray:
    """Evaluate ``p`` at each point by the better-conditioned route."""
    if p.diag is None:
        return p(z)
    horner = CharPoly(coeffs=p.coeffs)
    with np.errstate(over="ignore", invalid="ignore"):
        use_horner = p.magnitude(z) < _recurrence_scale(p.diag, z)
        hv = horner(z)
    return np.where(use_horner, hv, p(z))


def _polish(p: CharPoly, roots: np.ndarray, sweeps: int = 3) -> np.ndarray:
    """A few Weierstrass sweeps with point-wise best evaluation.

    Near a root cluster at small |F| the monomial form is far more
    accurate than the recurrence (its terms vanish with F), while away
    from the origin the recurrence wins. Mixing the two per root only
    changes rounding, not the polynomial being solved.
    """
    z = roots.astype(np.complex128)
    d = z.shape[0]
    lead = p.coeffs[-1]
    for _ in range(sweeps):
        val = _mixed_value(p, z)
        if d > 1:
            diff = z[:, None] - z[None, :]
            diff = diff[~np.eye(d, dtype=bool)].reshape(d, d - 1)
            diff[diff == 0] = 1e-300
            logden = np.sum(np.log(diff), axis=1)
        else:
            logden = np.zeros(1, dtype=np.complex128)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            w = np.where(val == 0, 0.0, np.exp(np.log(val + 0j) - np.log(lead) - logden))
        if not np.all(np.isfinite(w)):
            break
        z = z - w
        if np.max(np.abs(w)) <= 1e-16 * max(1.0, np.max(np.abs(z))):
            break
    return z


def _sort_complex(z: np.ndarray) -> np.ndarray:
    return z[np.lexsort((z.imag, z.real))]


def full_spectrum(
    N: int, Z: float, tol: float = DK_TOL, max_iter: Optional[int] = None
) -> SpectrumResult:
    spec = make_lattice(N)
    H = build_hamiltonian(spec, make_coupling(spec, Z))
    p = char_poly(H)
    if max_iter is None:
        # DK needs roughly dim**2 / 40 sweeps from a circular start
        max_iter = max(DK_MAX_ITER, spec.dim * spec.dim // 8)
    res = poly_roots(p, tol=tol, max_iter=max_iter)
    roots = _sort_complex(_polish(p, res.roots))
    mag = p.magnitude(roots)
    resid = np.abs(p(roots)) / np.where(mag > 0, mag, 1.0)
    return SpectrumResult(
        N=spec.N,
        Z=float(Z),
        roots=roots,
        reality_defect=float(np.max(np.abs(roots.imag))),
        converged=res.converged,
        residuals=resid,
        iterations=res.iterations,
    )


def _unit_phase(c: complex) -> complex:
    """``e^{i t}`` with ``Re(c e^{i t}) = 0``."""
    return 1j * np.conj(c) / abs(c)


def eigenvector(N: int, Z: float, F: float, tol: float = 1e-9) -> Eigenvector:
    """Closed-form eigenvector ``alpha_k = U_k(z) alpha_0`` at a real eigenvalue.

    The phase of ``alpha_0`` is fixed by the matching conditions at the
    centre; for even N the central amplitude comes out real and
    non-negative. Raises :class:`NotAnEigenvalueError` when the assembled
    vector leaves a relative residual above ``tol``.
    """
    spec = make_lattice(N)
    coupling = make_coupling(spec, Z)
    H = build_hamiltonian(spec, coupling)
    F = float(F)
    n = spec.n
    z = complex(-F, coupling.xi) / 2.0
    u = np.array([cheb_U(k, z) for k in range(n + 2)], dtype=np.complex128)

    if spec.even:
        # gamma = U_{n+1} alpha_0 must be real; the central row then reads
        # Re[(2 U_n + F U_{n+1}) alpha_0] = 0. Use the better conditioned.
        v = -1j * u[n + 1]
        w = 2.0 * u[n] + F * u[n + 1]
        phase = _unit_phase(v if abs(v) >= abs(w) else w)
        if (u[n + 1] * phase).real < 0:
            phase = -phase
        alpha = u[: n + 1] * phase
        gamma = (u[n + 1] * phase).real
        psi = np.concatenate([alpha, [gamma], np.conj(alpha[::-1])])
    else:
        # conj(U_n alpha_0) = U_{n+1} alpha_0 fixes alpha_0 up to sign
        theta = -0.5 * (np.angle(u[n]) + np.angle(u[n + 1]))
        phase = np.exp(1j * theta)
        alpha = u[: n + 1] * phase
        psi = np.concatenate([alpha, np.conj(alpha[::-1])])

    scale = np.max(np.abs(psi))
    psi = psi / scale
    r = residual(H, F, psi)
    if not np.isfinite(r) or r > tol:
        raise NotAnEigenvalueError(f"F = {F!r} is not an eigenvalue (residual {r:.3g})")

    p = char_poly(H)
    _, dp = p.value_and_derivative(F)
    k = np.arange(1, p.degree + 1)
    dscale = float(np.sum(k * np.abs(p.coeffs[1:]) * abs(F) ** (k - 1)))
    defective = abs(dp) <= 1e-8 * dscale

    return Eigenvector(
        N=spec.N,
        Z=float(Z),
        F=F,
        components=psi,
        residual=r,
        defective=bool(defective),
        amplitudes=u * phase / scale,
    )


def residual(H: TridiagonalHamiltonian, F: complex, psi) -> float:
    """``||H psi - F psi||_inf / ||psi||_inf``."""
    if isinstance(psi, Eigenvector):
        psi = psi.components
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (H.dim,):
        raise ValueError(f"vector of shape {psi.shape} does not fit dimension {H.dim}")
    norm = np.max(np.abs(psi))
    if norm == 0:
        raise ValueError("zero vector has no residual")
    return float(np.max(np.abs(H.matvec(psi) - F * psi)) / norm)


def multiset_distance(a, b) -> float:
    """Max deviation under the best one-to-one pairing of ``a`` and ``b``."""
    a = np.asarray(a, dtype=np.complex128).ravel()
    b = np.asarray(b, dtype=np.complex128).ravel()
    if a.shape != b.shape:
        return float("inf")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols]))
