"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import math
import sys
import time

import numpy as np
import pytest

from ptwell.chebyshev import angle_from, cheb_U_matrix, point_from
from ptwell.criticality import z_critical, z_critical_closed
from ptwell.lattice import (
    build_hamiltonian,
    build_real_block,
    make_coupling,
    make_lattice,
    pseudo_hermiticity_defect,
)
from ptwell.oracle import char_poly, eigenvector, full_spectrum, multiset_distance
from ptwell.secular import real_spectrum, secular_even, secular_odd, secular_trig

RESULTS = {}
SEED = 1234


def record(key, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {key:2d}: {title} ({detail})"
    RESULTS[key] = line
    print(line)
    return ok


def _Z(N, xi):
    return xi / make_lattice(N).h2


def closed_spectrum(N, xi):
    if N == 3:
        a = math.sqrt(1 - xi * xi)
        return [-a, a]
    if N == 4:
        a = math.sqrt(2 - xi * xi)
        return [-a, 0.0, a]
    if N == 5:
        r = 2 * math.sqrt(5 - 16 * xi * xi)
        out = []
        for s in (1, -1):
            a = 0.5 * math.sqrt(6 - 4 * xi * xi + s * r)
            out += [a, -a]
        return out
    if N == 6:
        r = math.sqrt(1 - 4 * xi * xi)
        out = [0.0]
        for s in (1, -1):
            a = math.sqrt(2 - xi * xi + s * r)
            out += [a, -a]
        return out
    raise ValueError(N)


def criterion_1():
    worst = 0.0
    for N in (3, 4, 5, 6):
        worst = max(worst, abs(z_critical(N, 1e-8).z_crit - z_critical_closed(N)))
    return record(1, "closed-form critical couplings", worst <= 1e-6, f"max |dZ| = {worst:.2e}, tol 1e-6")


def criterion_2():
    ref = {7: 3.946, 8: 4.463, 9: 4.148, 10: 4.461, 12: 4.463}
    got = {N: z_critical(N, 1e-6).z_crit for N in ref}
    worst = max(abs(got[N] - ref[N]) for N in ref)
    vals = ", ".join(f"{N}:{got[N]:.4f}" for N in ref)
    return record(2, "numerical critical couplings", worst <= 2e-3, f"{vals}; max |dZ| = {worst:.1e}, tol 2e-3")


def criterion_3():
    got = {N: z_critical(N, 1e-6).z_crit for N in (20, 40, 60, 100)}
    ok = all(4.40 < z < 4.50 for z in got.values())
    vals = ", ".join(f"{N}:{z:.5f}" for N, z in got.items())
    return record(3, "large-N trend in (4.40, 4.50)", ok, vals)


CLOSED_XI = (0.0, 0.2, 0.4)


def criterion_4():
    worst = 0.0
    for N in (3, 4, 5, 6):
        for xi in CLOSED_XI:
            r = real_spectrum(N, _Z(N, xi)).roots
            worst = max(worst, multiset_distance(r, closed_spectrum(N, xi)))
    ok = worst <= 1e-10
    return record(4, "closed-form spectra N = 3..6", ok, f"max distance {worst:.1e}, tol 1e-10")


def criterion_5():
    worst = 0.0
    for N in range(3, 41):
        ref = -2 * np.cos(np.arange(1, N) * np.pi / N)
        worst = max(
            worst,
            multiset_distance(real_spectrum(N, 0.0).roots, ref),
            multiset_distance(full_spectrum(N, 0.0).roots, ref),
        )
    return record(5, "Hueckel limit N = 3..40", worst <= 1e-10, f"max distance {worst:.1e}, tol 1e-10")


def criterion_6():
    worst = 0.0
    present = True
    for N in range(4, 41, 2):
        for Z in (1.0, 10.0, 100.0):
            c = char_poly(build_hamiltonian(make_lattice(N), Z)).coeffs
            worst = max(worst, abs(c[0]) / np.max(np.abs(c)))
            present &= 0.0 in real_spectrum(N, Z).levels
    ok = worst <= 1e-10 and present
    return record(6, "robust F = 0 level, even N", ok, f"max |c0|/max|c| = {worst:.1e}, F=0 found: {present}")


def criterion_7():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for N in range(3, 21):
        spec = make_lattice(N)
        F = rng.uniform(-3, 3, 200)
        xi = rng.uniform(-2, 2, 200)
        for f, x in zip(F, xi):
            p = char_poly(build_hamiltonian(spec, x / spec.h2))(complex(f))
            g = secular_even(f, x, spec.n) if spec.even else secular_odd(f, x, spec.n)
            worst = max(worst, abs(g - p) / max(1.0, abs(p)))
    return record(7, "secular function equals determinant", worst <= 1e-9, f"max rel dev {worst:.1e}, tol 1e-9")


def criterion_8():
    worst = 0.0
    for N in (5, 16, 33, 64):
        zc = z_critical(N, 1e-6).z_crit
        for Z in (0.0, 1.0, 2.0, 0.9 * zc):
            sec = real_spectrum(N, Z).roots
            orc = full_spectrum(N, Z).real_roots(1e-9)
            worst = max(worst, multiset_distance(sec, orc))
    return record(8, "oracle and secular real roots agree", worst <= 1e-8, f"max distance {worst:.1e}, tol 1e-8")


def structural_checks(N, Z):
    spec = make_lattice(N)
    coupling = make_coupling(spec, Z)
    H = build_hamiltonian(spec, coupling)
    roots = full_spectrum(N, Z).roots
    out = {
        "pseudo_hermiticity": pseudo_hermiticity_defect(H),
        "negation": multiset_distance(roots, -roots),
        "conjugation": multiset_distance(roots, np.conj(roots)),
        "eigvec_residual": 0.0,
        "matrix_chebyshev": 0.0,
        "real_block": 0.0,
    }
    for F in real_spectrum(N, Z).levels:
        v = eigenvector(N, Z, F)
        out["eigvec_residual"] = max(out["eigvec_residual"], v.residual)
        a = v.amplitudes
        c0 = np.array([a[0].real, a[0].imag])
        for k in range(spec.n + 2):
            ck = cheb_U_matrix(k, F, coupling.xi) @ c0
            dev = np.max(np.abs(ck - [a[k].real, a[k].imag]))
            out["matrix_chebyshev"] = max(out["matrix_chebyshev"], dev)
    if spec.even:
        ev = np.linalg.eigvals(build_real_block(spec, coupling).matrix)
        out["real_block"] = multiset_distance(ev, roots)
    return out


STRUCT_TOL = {
    "pseudo_hermiticity": 0.0,
    "negation": 1e-9,
    "conjugation": 1e-9,
    "eigvec_residual": 1e-9,
    "matrix_chebyshev": 1e-10,
    "real_block": 1e-8,
}


def criterion_9():
    rng = np.random.default_rng(SEED + 9)
    worst = dict.fromkeys(STRUCT_TOL, 0.0)
    for _ in range(50):
        N = int(rng.integers(3, 41))
        Z = float(rng.uniform(-8, 8))
        for k, v in structural_checks(N, Z).items():
            worst[k] = max(worst[k], v)
    ok = all(worst[k] <= STRUCT_TOL[k] for k in STRUCT_TOL)
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    return record(9, "structural invariants at 50 random points", ok, detail)


def _trig_size(phi, N):
    m = N // 2
    w = phi.phi
    return abs(np.sin(m * w)) * abs(np.cos(m * w)) / abs(np.sin(w))


def criterion_10():
    rng = np.random.default_rng(SEED + 10)
    F = rng.uniform(-4, 4, 1000)
    xi = rng.uniform(-4, 4, 1000)
    xi[xi == 0] = 0.5
    worst = 0.0
    for f, x in zip(F, xi):
        f2, x2 = point_from(angle_from(f, x))
        worst = max(worst, abs(f2 - f), abs(x2 - x))

    agree = True
    tested = 0
    # even-N roots of criterion 4
    for N, x in [(N, x) for N in (4, 6) for x in CLOSED_XI]:
        roots = real_spectrum(N, _Z(N, x)).roots
        n = (N - 4) // 2
        # the roots themselves, plus midpoints between them as non-roots
        probes = [(r, True) for r in roots]
        srt = np.unique(roots)
        probes += [(0.5 * (a + b), False) for a, b in zip(srt[:-1], srt[1:])]
        for f, is_root in probes:
            phi = angle_from(f, x)
            t_zero = abs(secular_trig(phi, N)) <= 1e-10 * max(1.0, _trig_size(phi, N))
            g_zero = abs(secular_even(f, x, n)) <= 1e-10
            agree &= t_zero == g_zero == is_root
            tested += 1
    ok = worst <= 1e-12 and agree
    detail = f"round-trip max {worst:.1e} tol 1e-12; trig/even classification agrees at {tested} probes: {agree}"
    return record(10, "angle mapping and trigonometric zero set", ok, detail)


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(crit):
    assert crit()


def main():
    t0 = time.perf_counter()
    ok = [crit() for crit in CRITERIA]
    print(f"{sum(ok)}/{len(ok)} criteria passed in {time.perf_counter() - t0:.1f} s")
    return 0 if all(ok) else 1


if __name__ == "__main__":
    sys.exit(main())
