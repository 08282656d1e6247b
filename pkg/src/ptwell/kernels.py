"""Hot numerical loops, in two interchangeable flavours.

Each kernel exists as an explicit-loop function (compiled with numba when
available) and as a vectorised numpy function. Both return identical
results up to round-off. The module-level names dispatch to one of them
according to :mod:`ptwell._backend`.
"""

from typing import NamedTuple, Callable

import numpy as np

from ptwell._backend import USE_NUMBA, HAVE_NUMBA, njit

__all__ = [
    "BACKEND",
    "Kernels",
    "get_kernels",
    "secular_even",
    "secular_odd",
    "tridiag_charval",
    "tridiag_charpoly",
    "dk_tridiag",
    "dk_coeffs",
]


# ---------------------------------------------------------------------------
# loop kernels (numba targets)
# ---------------------------------------------------------------------------

def _secular_even_loop(F, xi, n):
    m = F.shape[0]
    g = np.empty(m)
    dg = np.empty(m)
    for j in range(m):
        z = complex(-F[j], xi) * 0.5
        # U_k and dU_k/dz up to k = n+1
        u0 = 1.0 + 0.0j
        u1 = 2.0 * z
        du0 = 0.0j
        du1 = 2.0 + 0.0j
        # T_k and dT_k/dz up to k = n+2
        t0 = 1.0 + 0.0j
        t1 = z
        dt0 = 0.0j
        dt1 = 1.0 + 0.0j
        for _ in range(n):
            u2 = 2.0 * z * u1 - u0
            du2 = 2.0 * u1 + 2.0 * z * du1 - du0
            u0, u1, du0, du1 = u1, u2, du1, du2
        for _ in range(n + 1):
            t2 = 2.0 * z * t1 - t0
            dt2 = 2.0 * t1 + 2.0 * z * dt1 - dt0
            t0, t1, dt0, dt1 = t1, t2, dt1, dt2
        cu = u1.conjugate()
        g[j] = 2.0 * (t1 * cu).real
        dg[j] = -(dt1 * cu + t1 * du1.conjugate()).real
    return g, dg


def _secular_odd_loop(F, xi, n):
    m = F.shape[0]
    g = np.empty(m)
    dg = np.empty(m)
    for j in range(m):
        z = complex(-F[j], xi) * 0.5
        u0 = 1.0 + 0.0j
        u1 = 2.0 * z
        du0 = 0.0j
        du1 = 2.0 + 0.0j
        for _ in range(n):
            u2 = 2.0 * z * u1 - u0
            du2 = 2.0 * u1 + 2.0 * z * du1 - du0
            u0, u1, du0, du1 = u1, u2, du1, du2
        g[j] = (u1 * u1.conjugate()).real - (u0 * u0.conjugate()).real
        dg[j] = -(u1.conjugate() * du1).real + (u0.conjugate() * du0).real
    return g, dg


def _tridiag_charval_loop(diag, F):
    d = diag.shape[0]
    m = F.shape[0]
    p = np.empty(m, dtype=np.complex128)
    dp = np.empty(m, dtype=np.complex128)
    for j in range(m):
        x = F[j]
        a0 = 1.0 + 0.0j
        a1 = diag[0] - x
        b0 = 0.0j
        b1 = -1.0 + 0.0j
        for k in range(1, d):
            c = diag[k] - x
            a2 = c * a1 - a0
            b2 = -a1 + c * b1 - b0
            a0, a1, b0, b1 = a1, a2, b1, b2
        p[j] = a1
        dp[j] = b1
    return p, dp


def _tridiag_charpoly_loop(diag):
    d = diag.shape[0]
    prev = np.zeros(d + 1, dtype=np.complex128)
    cur = np.zeros(d + 1, dtype=np.complex128)
    prev[0] = 1.0
    cur[0] = diag[0]
    cur[1] = -1.0
    for k in range(1, d):
        nxt = np.zeros(d + 1, dtype=np.complex128)
        for i in range(k + 2):
            v = diag[k] * cur[i] - prev[i]
            if i > 0:
                v -= cur[i - 1]
            nxt[i] = v
        prev = cur
        cur = nxt
    return cur


def _dk_tridiag_loop(diag, z0, tol, max_iter):
    d = diag.shape[0]
    z = z0.copy()
    w = np.empty(d, dtype=np.complex128)
    sign = 1.0 if d % 2 == 0 else -1.0
    converged = False
    it = 0
    while it < max_iter:
        it += 1
        for i in range(d):
            x = z[i]
            a0 = 1.0 + 0.0j
            a1 = diag[0] - x
            o = 0
            for k in range(1, d + 1):
                # divide the running pair by one (z_i - z_j) per step to
                # keep the magnitude of the recurrence bounded
                if o == i:
                    o += 1
                if o < d:
                    q = x - z[o]
                    if q == 0:
                        q = 1e-300 + 0.0j
                    a0 /= q
                    a1 /= q
                    o += 1
                if k < d:
                    a2 = (diag[k] - x) * a1 - a0
                    a0 = a1
                    a1 = a2
            w[i] = a1 * sign
        big = 1.0
        wmax = 0.0
        for i in range(d):
            z[i] -= w[i]
            if abs(z[i]) > big:
                big = abs(z[i])
            if abs(w[i]) > wmax:
                wmax = abs(w[i])
        if wmax <= tol * big:
            converged = True
            break
    return z, it, converged


def _dk_coeffs_loop(coeffs, z0, tol, max_iter):
    d = coeffs.shape[0] - 1
    lead = coeffs[d]
    z = z0.copy()
    w = np.empty(d, dtype=np.complex128)
    converged = False
    it = 0
    while it < max_iter:
        it += 1
        for i in range(d):
            x = z[i]
            acc = coeffs[d]
            for k in range(d - 1, -1, -1):
                acc = acc * x + coeffs[k]
            den = lead
            for j in range(d):
                if j != i:
                    q = x - z[j]
                    if q == 0:
                        q = 1e-300 + 0.0j
                    den *= q
            w[i] = acc / den
        big = 1.0
        wmax = 0.0
        for i in range(d):
            z[i] -= w[i]
            if abs(z[i]) > big:
                big = abs(z[i])
            if abs(w[i]) > wmax:
                wmax = abs(w[i])
        if wmax <= tol * big:
            converged = True
            break
    return z, it, converged


# ---------------------------------------------------------------------------
# vectorised numpy kernels
# ---------------------------------------------------------------------------

def _secular_even_np(F, xi, n):
    z = (-np.asarray(F, dtype=np.float64) + 1j * xi) * 0.5
    u0 = np.ones_like(z)
    u1 = 2.0 * z
    du0 = np.zeros_like(z)
    du1 = np.full_like(z, 2.0)
    t0 = np.ones_like(z)
    t1 = z.copy()
    dt0 = np.zeros_like(z)
    dt1 = np.ones_like(z)
    for _ in range(n):
        u0, u1, du0, du1 = u1, 2.0 * z * u1 - u0, du1, 2.0 * u1 + 2.0 * z * du1 - du0
    for _ in range(n + 1):
        t0, t1, dt0, dt1 = t1, 2.0 * z * t1 - t0, dt1, 2.0 * t1 + 2.0 * z * dt1 - dt0
    cu = np.conj(u1)
    g = 2.0 * (t1 * cu).real
    dg = -(dt1 * cu + t1 * np.conj(du1)).real
    return g, dg


def _secular_odd_np(F, xi, n):
    z = (-np.asarray(F, dtype=np.float64) + 1j * xi) * 0.5
    u0 = np.ones_like(z)
    u1 = 2.0 * z
    du0 = np.zeros_like(z)
    du1 = np.full_like(z, 2.0)
    for _ in range(n):
        u0, u1, du0, du1 = u1, 2.0 * z * u1 - u0, du1, 2.0 * u1 + 2.0 * z * du1 - du0
    g = (u1 * np.conj(u1)).real - (u0 * np.conj(u0)).real
    dg = -(np.conj(u1) * du1).real + (np.conj(u0) * du0).real
    return g, dg


def _tridiag_charval_np(diag, F):
    x = np.asarray(F, dtype=np.complex128)
    a0 = np.ones_like(x)
    a1 = diag[0] - x
    b0 = np.zeros_like(x)
    b1 = -np.ones_like(x)
    for k in range(1, diag.shape[0]):
        c = diag[k] - x
        a0, a1, b0, b1 = a1, c * a1 - a0, b1, -a1 + c * b1 - b0
    return a1, b1


def _tridiag_charpoly_np(diag):
    d = diag.shape[0]
    prev = np.zeros(d + 1, dtype=np.complex128)
    cur = np.zeros(d + 1, dtype=np.complex128)
    prev[0] = 1.0
    cur[0] = diag[0]
    cur[1] = -1.0
    for k in range(1, d):
        nxt = diag[k] * cur - prev
        nxt[1:] -= cur[:-1]
        prev, cur = cur, nxt
    return cur


def _others(z):
    d = z.shape[0]
    diff = z[:, None] - z[None, :]
    diff = diff[~np.eye(d, dtype=bool)].reshape(d, d - 1)
    diff[diff == 0] = 1e-300
    return diff


def _dk_tridiag_np(diag, z0, tol, max_iter):
    d = diag.shape[0]
    z = np.array(z0, dtype=np.complex128)
    sign = 1.0 if d % 2 == 0 else -1.0
    converged = False
    it = 0
    while it < max_iter:
        it += 1
        diff = _others(z)
        a0 = np.ones_like(z)
        a1 = diag[0] - z
        for k in range(1, d + 1):
            if k - 1 < d - 1:
                q = diff[:, k - 1]
                a0 = a0 / q
                a1 = a1 / q
            if k < d:
                a0, a1 = a1, (diag[k] - z) * a1 - a0
        w = a1 * sign
        z = z - w
        if np.max(np.abs(w)) <= tol * max(1.0, np.max(np.abs(z))):
            converged = True
            break
    return z, it, converged


def _dk_coeffs_np(coeffs, z0, tol, max_iter):
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    d = coeffs.shape[0] - 1
    z = np.array(z0, dtype=np.complex128)
    converged = False
    it = 0
    while it < max_iter:
        it += 1
        acc = np.full_like(z, coeffs[d])
        for k in range(d - 1, -1, -1):
            acc = acc * z + coeffs[k]
        den = coeffs[d] * np.prod(_others(z), axis=1) if d > 1 else np.full_like(z, coeffs[d])
        w = acc / den
        z = z - w
        if np.max(np.abs(w)) <= tol * max(1.0, np.max(np.abs(z))):
            converged = True
            break
    return z, it, converged


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

class Kernels(NamedTuple):
    name: str
    secular_even: Callable
    secular_odd: Callable
    tridiag_charval: Callable
    tridiag_charpoly: Callable
    dk_tridiag: Callable
    dk_coeffs: Callable


NUMPY_KERNELS = Kernels(
    "numpy",
    _secular_even_np,
    _secular_odd_np,
    _tridiag_charval_np,
    _tridiag_charpoly_np,
    _dk_tridiag_np,
    _dk_coeffs_np,
)

if HAVE_NUMBA:
    NUMBA_KERNELS = Kernels(
        "numba",
        njit(_secular_even_loop),
        njit(_secular_odd_loop),
        njit(_tridiag_charval_loop),
        njit(_tridiag_charpoly_loop),
        njit(_dk_tridiag_loop),
        njit(_dk_coeffs_loop),
    )
else:  # pragma: no cover
    NUMBA_KERNELS = None


def get_kernels(name=None):
    """Return the kernel bundle ``"numba"`` or ``"numpy"`` (default: active)."""
    if name is None:
        name = "numba" if USE_NUMBA else "numpy"
    if name == "numba":
        if NUMBA_KERNELS is None:
            raise RuntimeError("numba is not installed")
        return NUMBA_KERNELS
    if name == "numpy":
        return NUMPY_KERNELS
    raise ValueError(f"unknown backend {name!r}")


_active = get_kernels()
BACKEND = _active.name

secular_even = _active.secular_even
secular_odd = _active.secular_odd
tridiag_charval = _active.tridiag_charval
tridiag_charpoly = _active.tridiag_charpoly
dk_tridiag = _active.dk_tridiag
dk_coeffs = _active.dk_coeffs
