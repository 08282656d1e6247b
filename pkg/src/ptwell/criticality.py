"""Critical coupling: the smallest Z at which two real levels meet and turn complex.

The predicate is the oracle's reality defect ``max |Im F| > 1e-7``. A
coarse scan over ``Z in [0, 16]`` in steps of 0.25 locates the first
transition, which is then bisected.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ptwell.lattice import make_lattice
from ptwell.oracle import full_spectrum

__all__ = [
    "UnsupportedSizeError",
    "NoTransitionError",
    "ConsistencyError",
    "CriticalResult",
    "reality_defect",
    "z_critical_closed",
    "z_critical",
    "convergence_table",
]

DEFECT_EPS = 1e-7
Z_CEILING = 16.0
SCAN_STEP = 0.25

_CLOSED = {
    3: 9.0 / 4.0,
    4: 4.0 * math.sqrt(2.0),
    5: 25.0 * math.sqrt(5.0) / 16.0,
    6: 9.0 / 2.0,
}


class UnsupportedSizeError(ValueError):
    pass


class NoTransitionError(RuntimeError):
    pass


class ConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class CriticalResult:
    N: int
    z_crit: float
    bracket: tuple
    iterations: int
    method: str
    closed_form: Optional[float] = None
    multi_transition: bool = False


def reality_defect(N: int, Z: float) -> float:
    return full_spectrum(N, Z).reality_defect


def z_critical_closed(N: int) -> float:
    """Exact critical coupling for the four smallest lattices."""
    try:
        return _CLOSED[int(N)]
    except KeyError:
        raise UnsupportedSizeError(f"no closed form for N = {N}") from None


def _complex(N, Z, eps):
    return reality_defect(N, Z) > eps


def z_critical(
    N: int,
    tol: float = 1e-8,
    eps: float = DEFECT_EPS,
    ceiling: float = Z_CEILING,
    step: float = SCAN_STEP,
) -> CriticalResult:
    """Smallest Z > 0 at which a pair of real levels turns complex."""
    spec = make_lattice(N)
    if not tol > 0:
        raise ValueError("tol must be positive")
    if _complex(N, 0.0, eps):
        raise ConsistencyError(f"spectrum of N = {N} is complex at Z = 0")

    zs = np.linspace(0.0, ceiling, int(round(ceiling / step)) + 1)
    flags = [False]
    for Z in zs[1:]:
        flags.append(_complex(N, float(Z), eps))
    flags = np.array(flags)
    if not flags.any():
        raise NoTransitionError(f"spectrum of N = {N} stays real up to Z = {ceiling}")
    first = int(np.argmax(flags))
    multi = bool((~flags[first:]).any())
    if multi:
        warnings.warn(
            f"N = {N}: real window re-enters above the first transition",
            RuntimeWarning,
            stacklevel=2,
        )

    lo, hi = float(zs[first - 1]), float(zs[first])
    it = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _complex(N, mid, eps):
            hi = mid
        else:
            lo = mid
        it += 1

    closed = _CLOSED.get(spec.N)
    return CriticalResult(
        N=spec.N,
        z_crit=0.5 * (lo + hi),
        bracket=(lo, hi),
        iterations=it,
        method="bisect",
        closed_form=closed,
        multi_transition=multi,
    )


def convergence_table(N_list: Sequence[int], tol: float = 1e-8) -> list:
    """``(N, z_crit)`` rows in input order."""
    return [(int(N), z_critical(N, tol).z_crit) for N in N_list]
