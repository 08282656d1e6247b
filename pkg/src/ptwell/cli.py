"""Command-line front end.

Subcommands::

    ptwell spectrum --N 4 --Z 4 [--units F|E] [--format csv|json]
    ptwell sweep    --N 6 --z-min 0 --z-max 4.5 --steps 9 [--out path.csv]
    ptwell zcrit    (--N 8 | --N-list 4,6,8) [--tol 1e-8] [--closed] [--format csv|json]
    ptwell verify   --N 12 --Z 3

Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.
"""

import argparse
import csv
import io
import json
import sys

import numpy as np
from scipy.optimize import linear_sum_assignment

from ptwell.criticality import z_critical, z_critical_closed, CriticalResult
from ptwell.lattice import (
    build_hamiltonian,
    convert_units,
    make_coupling,
    make_lattice,
    pseudo_hermiticity_defect,
)
from ptwell.oracle import (
    NotAnEigenvalueError,
    char_poly,
    eigenvector,
    full_spectrum,
    multiset_distance,
)
from ptwell.secular import real_spectrum, secular_value

REAL_TOL = 1e-9
# bisection width for printed levels: below the 15-digit output resolution
LEVEL_TOL = 1e-15
MATCH_TOL = 1e-6

SPECTRUM_FIELDS = ["index", "re", "im", "is_real", "units"]
SWEEP_FIELDS = ["Z", "xi", "index", "re_F", "im_F", "is_real"]
ZCRIT_FIELDS = ["N", "z_crit", "method", "iterations"]


def _num(x: float) -> float:
    # 15 significant digits, and no negative zero
    return float(format(float(x), ".15g")) + 0.0


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".15g")
    return str(v)


def render_csv(records, fields) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in records:
        w.writerow([_cell(r[f]) for f in fields])
    return buf.getvalue()


def render_json(records, fields) -> str:
    return json.dumps([{f: r[f] for f in fields} for r in records], indent=2) + "\n"


def levels(N: int, Z: float):
    """Merged spectrum: oracle roots, with real ones replaced by secular roots.

    Returns a list of ``(re, im, is_real)`` sorted by real part.
    """
    spec = full_spectrum(N, Z)
    roots = spec.roots
    real = real_spectrum(N, Z, tol=LEVEL_TOL).roots
    out = [(r.real, r.imag, abs(r.imag) <= REAL_TOL) for r in roots]
    if real.size:
        cost = np.abs(real[:, None] - roots[None, :])
        rows, cols = linear_sum_assignment(cost)
        for i, j in zip(rows, cols):
            if cost[i, j] <= MATCH_TOL:
                out[j] = (float(real[i]), 0.0, True)
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def _spectrum_records(N, Z, units):
    spec = make_lattice(N)
    recs = []
    for k, (re, im, ok) in enumerate(levels(N, Z)):
        if units == "E":
            re = convert_units(spec, re, "F->E")
            im = im / spec.h2
        recs.append({"index": k, "re": _num(re), "im": _num(im), "is_real": bool(ok), "units": units})
    return recs


def _sweep_records(N, z_min, z_max, steps):
    spec = make_lattice(N)
    recs = []
    for Z in np.linspace(z_min, z_max, steps + 1):
        xi = make_coupling(spec, Z).xi
        for k, (re, im, ok) in enumerate(levels(N, float(Z))):
            recs.append(
                {"Z": _num(Z), "xi": _num(xi), "index": k, "re_F": _num(re), "im_F": _num(im), "is_real": bool(ok)}
            )
    return recs


def _zcrit_record(res: CriticalResult):
    return {"N": res.N, "z_crit": _num(res.z_crit), "method": res.method, "iterations": res.iterations}


def verify_report(N: int, Z: float):
    """Run the invariant checks at one point; returns ``(name, value, tol)`` rows."""
    spec = make_lattice(N)
    coupling = make_coupling(spec, Z)
    H = build_hamiltonian(spec, coupling)
    p = char_poly(H)
    checks = [("pseudo_hermiticity_defect", pseudo_hermiticity_defect(H), 0.0)]
    checks.append(("real_coefficient_defect", p.real_coefficient_defect(), 1e-12))

    F = np.linspace(-2.5, 2.5, 201)
    g = secular_value(N, Z, F)
    det = p(F.astype(np.complex128))
    dev = np.abs(g - det) / np.maximum(1.0, np.abs(det))
    checks.append(("secular_vs_determinant", float(np.max(dev)), 1e-9))

    oracle = full_spectrum(N, Z)
    real = real_spectrum(N, Z)
    checks.append(("oracle_secular_agreement", multiset_distance(real.roots, oracle.real_roots(REAL_TOL)), 1e-8))
    checks.append(("negation_symmetry", multiset_distance(oracle.roots, -oracle.roots), 1e-9))
    checks.append(("conjugation_closure", multiset_distance(oracle.roots, np.conj(oracle.roots)), 1e-9))

    worst = 0.0
    for F0 in real.levels:
        try:
            worst = max(worst, eigenvector(N, Z, F0).residual)
        except NotAnEigenvalueError:
            worst = float("inf")
    checks.append(("eigenvector_residual", worst, 1e-9))
    return checks


def _parse_n_list(text):
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty N list")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptwell", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="eigenvalues at one coupling")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--Z", type=float, required=True)
    sp.add_argument("--units", choices=["F", "E"], default="F")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")

    sw = sub.add_parser("sweep", help="level trajectories over a range of couplings")
    sw.add_argument("--N", type=int, required=True)
    sw.add_argument("--z-min", type=float, required=True)
    sw.add_argument("--z-max", type=float, required=True)
    sw.add_argument("--steps", type=int, required=True)
    sw.add_argument("--out", default="-", help="output CSV path (default: stdout)")

    zc = sub.add_parser("zcrit", help="critical couplings")
    group = zc.add_mutually_exclusive_group(required=True)
    group.add_argument("--N", type=int)
    group.add_argument("--N-list", type=_parse_n_list)
    zc.add_argument("--tol", type=float, default=1e-8)
    zc.add_argument("--closed", action="store_true", help="use exact values where known")
    zc.add_argument("--format", choices=["csv", "json"], default="csv")

    vf = sub.add_parser("verify", help="invariant checks at one point")
    vf.add_argument("--N", type=int, required=True)
    vf.add_argument("--Z", type=float, required=True)
    return parser


def _emit(text, path="-"):
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    Ns = args.N_list if getattr(args, "N_list", None) else [args.N]
    for N in Ns:
        if N < 3:
            parser.error(f"N must be at least 3, got {N}")

    render = render_json if getattr(args, "format", "csv") == "json" else render_csv
    try:
        if args.command == "spectrum":
            _emit(render(_spectrum_records(args.N, args.Z, args.units), SPECTRUM_FIELDS))
        elif args.command == "sweep":
            if args.steps < 2:
                parser.error("--steps must be at least 2")
            if args.z_min > args.z_max:
                parser.error("--z-min must not exceed --z-max")
            recs = _sweep_records(args.N, args.z_min, args.z_max, args.steps)
            _emit(render_csv(recs, SWEEP_FIELDS), args.out)
        elif args.command == "zcrit":
            if not args.tol > 0:
                parser.error("--tol must be positive")
            recs = []
            for N in Ns:
                if args.closed and 3 <= N <= 6:
                    res = CriticalResult(N, z_critical_closed(N), (None, None), 0, "closed")
                else:
                    res = z_critical(N, args.tol)
                recs.append(_zcrit_record(res))
            _emit(render(recs, ZCRIT_FIELDS))
        elif args.command == "verify":
            checks = verify_report(args.N, args.Z)
            failed = []
            for name, value, tol in checks:
                ok = value <= tol
                if not ok:
                    failed.append(name)
                print(f"{name:28s} {value:.3e}  (tol {tol:.0e})  {'PASS' if ok else 'FAIL'}")
            print("levels:")
            for k, (re, im, real) in enumerate(levels(args.N, args.Z)):
                print(f"  {k:3d}  {re:+.15g}  {im:+.15g}  is_real={'true' if real else 'false'}")
            if failed:
                print("verification failed: " + ", ".join(failed), file=sys.stderr)
                return 1
    except OSError as exc:
        print(f"ptwell: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
