"""Time the numba and pure-numpy kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--N 16 64 128] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from ptwell.kernels import NUMBA_KERNELS, NUMPY_KERNELS
from ptwell.lattice import build_hamiltonian, make_lattice
from ptwell.oracle import _start_radius, char_poly, DK_OFFSET


def cases(N):
    spec = make_lattice(N)
    Z = 3.0
    H = build_hamiltonian(spec, Z)
    xi = Z * spec.h2
    diag = np.ascontiguousarray(H.diag)
    d = spec.dim
    radius = _start_radius(char_poly(H))
    z0 = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + DK_OFFSET))
    F = np.linspace(0.0, 2.0, 32 * d)
    sec = "secular_even" if spec.even else "secular_odd"
    max_iter = max(500, d * d // 8)
    return {
        sec: lambda k: getattr(k, sec)(F, xi, spec.n),
        "tridiag_charval": lambda k: k.tridiag_charval(diag, F.astype(np.complex128)),
        "tridiag_charpoly": lambda k: k.tridiag_charpoly(diag),
        "dk_tridiag": lambda k: k.dk_tridiag(diag, z0, 1e-12, max_iter),
    }


def best(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--N", type=int, nargs="+", default=[16, 64, 128])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    kernels = [("numpy", NUMPY_KERNELS)]
    if NUMBA_KERNELS is not None:
        kernels.append(("numba", NUMBA_KERNELS))
    else:
        print("numba not available; timing numpy only")

    for _, k in kernels:
        # compile and warm caches outside the timed region
        for fn in cases(4).values():
            fn(k)
        for fn in cases(5).values():
            fn(k)

    print(f"{'N':>5} {'kernel':18s} " + " ".join(f"{name:>12s}" for name, _ in kernels) + "   speedup")
    for N in args.N:
        for label, fn in cases(N).items():
            times = [best(lambda: fn(k), args.repeat) for _, k in kernels]
            cols = " ".join(f"{t * 1e3:10.3f}ms" for t in times)
            ratio = f"{times[0] / times[1]:8.1f}x" if len(times) == 2 else ""
            print(f"{N:5d} {label:18s} {cols} {ratio}")


if __name__ == "__main__":
    main()
