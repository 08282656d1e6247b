import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ptwell.chebyshev import cheb_U_matrix
from ptwell.lattice import TridiagonalHamiltonian, build_hamiltonian, make_coupling, make_lattice
from ptwell.oracle import (
    CharPoly,
    MalformedPolynomialError,
    NotAnEigenvalueError,
    char_poly,
    eigenvector,
    full_spectrum,
    multiset_distance,
    poly_roots,
    residual,
)
from ptwell.secular import real_spectrum

from tests.conftest import dense


def H(N, Z):
    return build_hamiltonian(make_lattice(N), Z)


def test_char_poly_examples():
    xi = 0.3
    np.testing.assert_allclose(char_poly(H(3, xi * 9 / 4)).coeffs, [xi * xi - 1, 0, 1], atol=1e-15)
    np.testing.assert_allclose(char_poly(H(4, xi * 4)).coeffs, [0, 2 - xi * xi, 0, -1], atol=1e-15)
    p = char_poly(H(4, 0.0))
    np.testing.assert_allclose(p.coeffs, [0, 2, 0, -1])


@pytest.mark.parametrize("N, Z", [(5, 1.0), (12, 3.0), (30, 20.0), (50, -7.0)])
def test_char_poly_matches_dense_eigvals(N, Z):
    h = H(N, Z)
    p = char_poly(h)
    # np.poly builds det(F I - H) from the dense eigenvalues
    ref = (-1) ** h.dim * np.poly(np.linalg.eigvals(h.to_dense()))[::-1]
    assert np.max(np.abs(p.coeffs - ref)) <= 1e-8 * np.max(np.abs(ref))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 200), st.floats(-50, 50))
def test_real_coefficients(N, Z):
    p = char_poly(H(N, Z))
    assert p.real_coefficient_defect() <= 1e-12
    assert p.coeffs[-1] == (-1) ** (N - 1)


def test_poly_roots_examples():
    r = poly_roots(CharPoly(np.array([-1, 0, 1], dtype=complex)))
    np.testing.assert_allclose(np.sort(r.roots.real), [-1, 1], atol=1e-13)
    assert r.converged
    r = poly_roots(CharPoly(np.array([1j, 1])))
    assert r.roots[0] == pytest.approx(-1j, abs=1e-13)
    r = poly_roots(char_poly(H(4, 4.0)))
    np.testing.assert_allclose(np.sort(r.roots.real), [-1, 0, 1], atol=1e-12)


def test_poly_roots_errors():
    with pytest.raises(MalformedPolynomialError):
        poly_roots(CharPoly(np.array([1, 2, 0], dtype=complex)))
    with pytest.raises(MalformedPolynomialError):
        poly_roots(CharPoly(np.array([3.0 + 0j])))
    with pytest.raises(ValueError):
        poly_roots(CharPoly(np.array([-1, 0, 1], dtype=complex)), tol=-1)


def test_full_spectrum_examples():
    s = full_spectrum(4, 0.0)
    np.testing.assert_allclose(s.roots.real, [-math.sqrt(2), 0, math.sqrt(2)], atol=1e-13)
    assert s.reality_defect == pytest.approx(0.0, abs=1e-13)
    s = full_spectrum(3, 2.25)
    np.testing.assert_allclose(s.roots, [0, 0], atol=1e-7)
    assert s.reality_defect <= 1e-7
    s = full_spectrum(4, 8.0)
    assert multiset_distance(s.roots, [0, 1j * math.sqrt(2), -1j * math.sqrt(2)]) <= 1e-12
    assert s.reality_defect == pytest.approx(math.sqrt(2), abs=1e-12)
    assert not s.is_real


@pytest.mark.parametrize("N, Z", [(7, 2.0), (20, 9.0), (41, 3.0), (64, 4.0)])
def test_full_spectrum_vs_dense(N, Z):
    s = full_spectrum(N, Z)
    assert s.converged
    ev = np.linalg.eigvals(H(N, Z).to_dense())
    assert multiset_distance(s.roots, ev) <= 1e-8


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 40), st.floats(-10, 10))
def test_conjugation_and_negation(N, Z):
    r = full_spectrum(N, Z).roots
    assert multiset_distance(r, np.conj(r)) <= 1e-9
    assert multiset_distance(r, -r) <= 1e-9


def test_eigenvector_examples():
    v = eigenvector(3, 0.0, -1.0)
    np.testing.assert_allclose(np.abs(v.components), [1, 1])
    assert v.components[0] == pytest.approx(v.components[1])
    v = eigenvector(4, 4.0, 0.0)
    gamma = v.components[1]
    assert gamma.imag == 0 and gamma.real >= 0
    assert abs(v.components[0].real) <= 1e-15
    assert eigenvector(4, 4.0, 1.0).residual <= 1e-12


def test_eigenvector_rejects_non_eigenvalue():
    with pytest.raises(NotAnEigenvalueError):
        eigenvector(4, 4.0, 0.5)


@pytest.mark.parametrize("N, Z", [(5, 2.0), (8, 3.0), (13, 1.5), (22, 4.0), (31, -2.0)])
def test_eigenvector_structure_and_matching(N, Z):
    spec = make_lattice(N)
    xi = make_coupling(spec, Z).xi
    for F in real_spectrum(N, Z).levels:
        v = eigenvector(N, Z, F)
        psi = v.components
        assert v.residual <= 1e-9
        assert np.max(np.abs(psi)) == pytest.approx(1.0)
        # PT structure: reversed conjugate equals the vector
        np.testing.assert_allclose(np.conj(psi[::-1]), psi, atol=1e-14)
        a = v.amplitudes
        n = spec.n
        if spec.even:
            gamma = psi[n + 1]
            assert gamma.imag == 0 and gamma.real >= 0
            # matching: gamma = U_{n+1} alpha_0 and the central row
            assert abs(a[n + 1] - gamma) <= 1e-10
            assert abs(-2 * a[n].real - F * gamma) <= 1e-10
        else:
            assert abs(a[n + 1] - np.conj(a[n])) <= 1e-10
        # the 2x2 real-matrix recurrence reproduces the complex amplitudes
        c0 = np.array([a[0].real, a[0].imag])
        for k in range(n + 2):
            ck = cheb_U_matrix(k, F, xi) @ c0
            assert np.max(np.abs(ck - [a[k].real, a[k].imag])) <= 1e-10


def test_eigenvector_defective_at_coalescence():
    assert eigenvector(3, 2.25, 0.0, tol=1e-6).defective
    assert not eigenvector(3, 1.0, math.sqrt(1 - (4 / 9) ** 2)).defective


def test_residual_examples():
    h = H(4, 4.0)
    v = eigenvector(4, 4.0, 1.0)
    assert residual(h, 1.0, v) <= 1e-12
    assert residual(h, 1.1, v) > 1e-3
    with pytest.raises(ValueError):
        residual(h, 1.0, np.zeros(3))
    with pytest.raises(ValueError):
        residual(h, 1.0, np.ones(4))


def test_residual_against_dense():
    h = TridiagonalHamiltonian(np.array([0.3j, 0.1, -0.3j]))
    psi = np.array([1.0, 2j, -1.0])
    expect = np.max(np.abs(dense(h.diag) @ psi - 0.2 * psi)) / 2
    assert residual(h, 0.2, psi) == pytest.approx(expect)


def test_multiset_distance():
    assert multiset_distance([1, 2, 3], [3, 1, 2]) == 0
    assert multiset_distance([1, 1], [1, 1 + 1e-3]) == pytest.approx(1e-3)
    assert multiset_distance([1], [1, 2]) == math.inf
    assert multiset_distance([], []) == 0
