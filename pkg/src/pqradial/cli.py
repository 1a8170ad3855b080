"""Command-line front end.

Subcommands: classify, solve, energy-check, operator-residual, region-data.
Exit codes: 0 success/conclusive, 1 invalid input or file error, 2 Unknown
verdict, 3 solver failure (no bracket / no convergence), 4 verification
check failed.  Relative --output paths are resolved against
$PQRADIAL_OUTPUT_DIR when it is set.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import classifier, energy, integral_operator, serialize, shooting
from .params import ProblemParams


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; the contract here is 1.
    def error(self, message):
        raise _UsageError(message)


def _resolve_output(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get("PQRADIAL_OUTPUT_DIR")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _add_param_flags(parser, with_R=False):
    parser.add_argument("--N", type=int, required=True, help="space dimension (integer >= 2)")
    parser.add_argument("--p", type=float, required=True, help="first quasilinear exponent (> 1)")
    parser.add_argument("--q", type=float, required=True, help="second quasilinear exponent (> 1)")
    parser.add_argument("--delta", type=float, required=True, help="power coupling v^delta (> 0)")
    parser.add_argument("--mu", type=float, required=True, help="power coupling u^mu (> 0)")
    if with_R:
        parser.add_argument("--R", type=float, required=True, help="ball radius (> 0)")


def _params_from_args(args, with_R=False) -> ProblemParams:
    return ProblemParams(
        N=args.N,
        p=args.p,
        q=args.q,
        delta=args.delta,
        mu=args.mu,
        R=args.R if with_R else None,
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="pqradial")
    sub = parser.add_subparsers(dest="command", required=True)

    cp = sub.add_parser("classify", help="evaluate every existence/nonexistence condition")
    _add_param_flags(cp)
    cp.add_argument("--output", help="write the classification as JSON")

    sp = sub.add_parser("solve", help="solve the Dirichlet problem by shooting")
    _add_param_flags(sp, with_R=True)
    sp.add_argument("--a0", type=float, default=1.0, help="normalized center value u(0)")
    sp.add_argument("--bracket", type=float, nargs=2, metavar=("B1", "B2"),
                    help="shooting bracket with opposite first-zero polarity")
    sp.add_argument("--b-lo", type=float, default=1e-2, help="scan lower bound for b = v(0)")
    sp.add_argument("--b-hi", type=float, default=1e2, help="scan upper bound for b = v(0)")
    sp.add_argument("--scan-count", type=int, default=25, help="scan grid size")
    sp.add_argument("--r-max", type=float, default=shooting.DEFAULT_R_MAX)
    sp.add_argument("--tol-bisection", type=float, default=1e-8)
    sp.add_argument("--tol-integrator", type=float, default=shooting.DEFAULT_RTOL)
    sp.add_argument("--output", help="write the solution JSON here")

    ep = sub.add_parser("energy-check", help="energy derivative identity on a solution")
    ep.add_argument("--solution", required=True, help="solution JSON file")
    ep.add_argument("--samples", type=int, default=60)
    ep.add_argument("--tol", type=float, default=1e-6,
                    help="relative tolerance for analytic vs finite-difference derivative")
    ep.add_argument("--output", help="write the energy report as JSON")

    op = sub.add_parser("operator-residual", help="fixed-point residual of a solution")
    op.add_argument("--solution", required=True, help="solution JSON file")
    op.add_argument("--threshold", type=float, default=None,
                    help="absolute residual threshold (default 1e-4 * (|u|+|v|))")

    rp = sub.add_parser("region-data", help="figure data: m-windows and region boundaries")
    rp.add_argument("--figure", required=True,
                    choices=["m-window-sub", "m-window-super", "delta-mu"])
    rp.add_argument("--N", type=int, help="dimension for delta-mu")
    rp.add_argument("--m", type=float, help="common exponent p = q = m for delta-mu")
    rp.add_argument("--mu-min", type=float, default=0.5)
    rp.add_argument("--mu-max", type=float, default=8.0)
    rp.add_argument("--mu-count", type=int, default=100)
    rp.add_argument("--N-min", type=int, default=2)
    rp.add_argument("--N-max", type=int, default=10)
    rp.add_argument("--output", required=True, help="CSV output path")
    return parser


def cmd_classify(args) -> int:
    params = _params_from_args(args)
    cls = classifier.classify(params)
    print(f"verdict: {cls.verdict.value}")
    for res in cls.details:
        margin = "n/a" if res.inequality_margin is None else f"{res.inequality_margin:+.6g}"
        print(
            f"  {res.condition_id.value:<30} hypotheses={str(res.hypotheses_hold):<5} "
            f"margin={margin:<13} satisfied={res.satisfied}"
        )
    out = _resolve_output(args.output)
    if out:
        serialize.dump_json(serialize.classification_to_dict(cls), out)
    return 2 if cls.verdict == classifier.Verdict.UNKNOWN else 0


def cmd_solve(args) -> int:
    params = _params_from_args(args, with_R=True)
    if args.bracket is not None:
        bracket = tuple(args.bracket)
    else:
        scan = shooting.shoot_scan(
            params, args.a0, args.b_lo, args.b_hi, args.scan_count,
            r_max=args.r_max, rtol=args.tol_integrator,
        )
        brackets = shooting.find_brackets(scan)
        if not brackets:
            print("no bracket found; scan table:")
            for b, out in scan:
                print(f"  b={b:.6e}  {out.kind.value}  r={out.radius:.6e}")
            out_path = _resolve_output(args.output)
            if out_path:
                serialize.dump_json(
                    {"scan": [[b, o.kind.value, o.radius] for b, o in scan]}, out_path
                )
            return 3
        bracket = brackets[0]
    try:
        sol = shooting.solve_dirichlet(
            params, bracket, a0=args.a0, tol=args.tol_bisection,
            r_max=args.r_max, rtol=args.tol_integrator,
        )
    except (RuntimeError, ValueError) as exc:
        print(f"solver failed: {exc}")
        return 3
    res = shooting.integral_form_residual(sol.trajectory)
    print(
        f"converged: b_star={sol.b_star!r} natural_radius={sol.natural_radius!r} "
        f"boundary_residual={sol.boundary_residual:.3e} integral_residual={res:.3e}"
    )
    out = _resolve_output(args.output)
    if out:
        serialize.save_solution(sol, out, residual=res)
        print(f"wrote {out}")
    return 0


def cmd_energy_check(args) -> int:
    try:
        sol = serialize.load_solution(args.solution)
    except (OSError, KeyError, ValueError) as exc:
        print(f"cannot read solution file: {exc}")
        return 1
    traj = sol.trajectory
    r_lo, r_hi = traj.r[0], traj.r[-1]
    pad = 0.02 * (r_hi - r_lo)
    radii = np.linspace(r_lo + pad, r_hi - pad, args.samples)
    report = energy.e2_evaluate(sol, radii)
    print(
        f"E2 check: k={report.k_value!r} max_derivative_mismatch="
        f"{report.max_derivative_mismatch:.3e} (tol {args.tol:.1e})"
    )
    print(
        f"  sign summary: +{report.sign_summary.positive} "
        f"-{report.sign_summary.negative} ~{report.sign_summary.within_tol}"
    )
    out = _resolve_output(args.output)
    if out:
        serialize.dump_json(serialize.energy_report_to_dict(report), out)
    return 0 if report.max_derivative_mismatch <= args.tol else 4


def cmd_operator_residual(args) -> int:
    try:
        sol = serialize.load_solution(args.solution)
    except (OSError, KeyError, ValueError) as exc:
        print(f"cannot read solution file: {exc}")
        return 1
    pair = integral_operator.pair_from_trajectory(sol.trajectory)
    res = integral_operator.residual(pair, sol.params)
    nu, nv = pair.sup_norm()
    threshold = args.threshold if args.threshold is not None else 1e-4 * (nu + nv)
    print(f"operator residual: {res!r} (threshold {threshold!r})")
    return 0 if res <= threshold else 4


def cmd_region_data(args) -> int:
    out = _resolve_output(args.output)
    if args.figure in ("m-window-sub", "m-window-super"):
        rows = []
        for N in range(args.N_min, args.N_max + 1):
            lower, upper = classifier.m_window(N)
            if args.figure == "m-window-sub":
                rows.append((N, lower, 2.0))
            else:
                rows.append((N, 2.0, upper))
        serialize.write_csv(out, ["N", "m_lower", "m_upper"], rows)
    else:
        if args.N is None or args.m is None:
            raise _UsageError("delta-mu requires --N and --m")
        mu_grid = np.linspace(args.mu_min, args.mu_max, args.mu_count)
        rows = classifier.region_boundaries(args.N, args.m, mu_grid)
        serialize.region_rows_to_csv(out, rows)
    print(f"wrote {out}")
    return 0


_COMMANDS = {
    "classify": cmd_classify,
    "solve": cmd_solve,
    "energy-check": cmd_energy_check,
    "operator-residual": cmd_operator_residual,
    "region-data": cmd_region_data,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
