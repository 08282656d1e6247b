"""Lattice geometry, unit conversions and the two matrix forms of the model.

The matrices are stored in the shifted convention where the rescaled
energy ``F = E h**2 - 2`` is the eigenvalue and the coupling enters only
through ``xi = Z h**2``.
"""

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

__all__ = [
    "InvalidLatticeError",
    "UnsupportedParityError",
    "LatticeSpec",
    "CouplingSpec",
    "TridiagonalHamiltonian",
    "RealBlockHamiltonian",
    "make_lattice",
    "make_coupling",
    "convert_units",
    "build_hamiltonian",
    "build_real_block",
    "pseudo_hermiticity_defect",
]

Direction = Literal["Z->xi", "xi->Z", "E->F", "F->E"]


class InvalidLatticeError(ValueError):
    """Raised for point counts below three."""


class UnsupportedParityError(ValueError):
    """Raised when an even-N-only construction is asked for odd N."""


@dataclass(frozen=True)
class LatticeSpec:
    """Geometry of the N-point grid on [-1, 1].

    ``n`` is the half-size: ``N = 2n + 4`` for even and ``N = 2n + 3`` for
    odd point counts. Interior sites ``x_k = -1 + k h`` for ``k = 1..N-1``
    carry the wave function, so the matrix dimension is ``N - 1``.
    """

    N: int
    h: float
    parity: Literal["even", "odd"]
    n: int
    dim: int

    @property
    def even(self) -> bool:
        return self.parity == "even"

    @property
    def h2(self) -> float:
        return 4.0 / (self.N * self.N)

    def sites(self) -> np.ndarray:
        return -1.0 + self.h * np.arange(1, self.N)


@dataclass(frozen=True)
class CouplingSpec:
    Z: float
    xi: float


def make_lattice(N: int) -> LatticeSpec:
    if int(N) != N:
        raise InvalidLatticeError(f"N must be an integer, got {N!r}")
    N = int(N)
    if N < 3:
        raise InvalidLatticeError(f"N must be at least 3, got {N}")
    if N % 2 == 0:
        return LatticeSpec(N=N, h=2.0 / N, parity="even", n=(N - 4) // 2, dim=N - 1)
    return LatticeSpec(N=N, h=2.0 / N, parity="odd", n=(N - 3) // 2, dim=N - 1)


def convert_units(spec: LatticeSpec, value: float, direction: Direction) -> float:
    """Convert between physical (E, Z) and rescaled (F, xi) quantities."""
    h2 = spec.h2
    if direction == "Z->xi":
        return value * h2
    if direction == "xi->Z":
        return value / h2
    if direction == "E->F":
        return value * h2 - 2.0
    if direction == "F->E":
        return (value + 2.0) / h2
    raise ValueError(f"unknown direction {direction!r}")


def make_coupling(spec: LatticeSpec, Z: float) -> CouplingSpec:
    return CouplingSpec(Z=float(Z), xi=convert_units(spec, float(Z), "Z->xi"))


@dataclass(frozen=True, eq=False)
class TridiagonalHamiltonian:
    """Tridiagonal matrix with the given diagonal and constant -1 off-diagonals."""

    diag: np.ndarray

    def __post_init__(self):
        d = np.array(self.diag, dtype=np.complex128)
        d.setflags(write=False)
        object.__setattr__(self, "diag", d)

    @property
    def dim(self) -> int:
        return self.diag.shape[0]

    def to_dense(self) -> np.ndarray:
        m = np.diag(self.diag)
        idx = np.arange(self.dim - 1)
        m[idx, idx + 1] = -1.0
        m[idx + 1, idx] = -1.0
        return m

    def matvec(self, psi) -> np.ndarray:
        psi = np.asarray(psi, dtype=np.complex128)
        out = self.diag * psi
        out[:-1] -= psi[1:]
        out[1:] -= psi[:-1]
        return out


@dataclass(frozen=True, eq=False)
class RealBlockHamiltonian:
    """Real (2n+3)-dimensional matrix ``B`` with ``(B - F I) c = 0``.

    The unknowns are ordered ``(a_0, b_0, ..., a_n, b_n, gamma)`` where
    ``a_k + i b_k`` is the complex amplitude on the k-th site left of the
    centre and ``gamma`` the real central amplitude.
    """

    n: int
    xi: float
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def build_hamiltonian(
    spec: LatticeSpec, coupling: Union[CouplingSpec, float]
) -> TridiagonalHamiltonian:
    if not isinstance(coupling, CouplingSpec):
        coupling = make_coupling(spec, coupling)
    xi = coupling.xi
    half = np.full(spec.n + 1, 1j * xi)
    middle = [0.0] if spec.even else []
    return TridiagonalHamiltonian(np.concatenate([half, middle, -half]))


def build_real_block(
    spec: LatticeSpec, coupling: Union[CouplingSpec, float]
) -> RealBlockHamiltonian:
    if not spec.even:
        raise UnsupportedParityError("the real block form exists for even N only")
    if not isinstance(coupling, CouplingSpec):
        coupling = make_coupling(spec, coupling)
    xi = coupling.xi
    n = spec.n
    B = np.zeros((2 * n + 3, 2 * n + 3))
    for k in range(n + 1):
        r = 2 * k
        B[r, r + 1] = -xi
        B[r + 1, r] = xi
        if k < n:
            B[r, r + 2] = B[r + 1, r + 3] = -1.0
            B[r + 2, r] = B[r + 3, r + 1] = -1.0
    # the central amplitude: a_n -> gamma with weight -1, gamma <- a_n twice
    B[2 * n, 2 * n + 2] = -1.0
    B[2 * n + 2, 2 * n] = -2.0
    return RealBlockHamiltonian(n=n, xi=xi, matrix=B)


def pseudo_hermiticity_defect(H: TridiagonalHamiltonian) -> float:
    """Max-norm of ``P H P - H^dagger`` with P the site-reversal matrix."""
    m = H.to_dense()
    pmp = m[::-1, ::-1]
    return float(np.max(np.abs(pmp - m.conj().T)))
