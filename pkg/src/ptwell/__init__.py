"""Exact spectra of the discretised PT-symmetric square well."""

from ptwell.kernels import BACKEND
from ptwell.lattice import (
    CouplingSpec,
    LatticeSpec,
    RealBlockHamiltonian,
    TridiagonalHamiltonian,
    build_hamiltonian,
    build_real_block,
    convert_units,
    make_coupling,
    make_lattice,
    pseudo_hermiticity_defect,
)
from ptwell.chebyshev import (
    ComplexAngle,
    angle_from,
    cheb_T,
    cheb_U,
    cheb_U_matrix,
    mat_power_rot,
    point_from,
)
from ptwell.secular import (
    RealSpectrum,
    real_spectrum,
    secular_even,
    secular_odd,
    secular_trig,
    secular_value,
)
from ptwell.oracle import (
    CharPoly,
    Eigenvector,
    SpectrumResult,
    char_poly,
    eigenvector,
    full_spectrum,
    multiset_distance,
    poly_roots,
    residual,
)
from ptwell.criticality import (
    CriticalResult,
    convergence_table,
    reality_defect,
    z_critical,
    z_critical_closed,
)

__version__ = "0.1.0"
