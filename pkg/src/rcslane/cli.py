"""Command-line front end.

Exit status: 0 success, 1 usage or configuration error, 2 the Newton
iteration did not converge.
"""

import argparse
import contextlib
import csv
import json
import math
import sys

import numpy as np

from . import analysis, reference
from .collocation import DEFAULT_SCHEME, SCHEMES
from .errors import NonFiniteError, RCSError, SingularJacobianError
from .newton import NewtonConfig, solve_problem
from .problems import custom_problem, get_problem, standard_lane_emden
from .trial import SpectralSolution

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_CONVERGENCE = 2

DEFAULT_ZERO_MS = "1.5,2,2.5,3,4"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v):
    return f"{v:.7E}"


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _load_custom(text):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--custom is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("--custom must be a JSON object")
    return custom_problem(cfg)


def _problem(args):
    if getattr(args, "custom", None):
        return _load_custom(args.custom)
    if not args.problem:
        raise UsageError("give --problem or --custom")
    m = None if args.m is None else _single_m(args.m)
    return get_problem(args.problem, m)


def _single_m(text):
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"--m expects a number, got {text!r}") from None


def _config(args):
    return NewtonConfig(tol_residual=args.tol_residual, max_iters=args.max_iters)


def _check_nq(args):
    if args.n is not None and args.n < 4:
        raise UsageError("--n must be at least 4")
    if args.q is not None and not args.q > 0:
        raise UsageError("--q must be positive")


def _solve(problem, args):
    """Solve, moving q onto the first zero of the solution if asked."""
    _check_nq(args)
    if getattr(args, "fit_zero", False):
        fz = analysis.fit_first_zero(problem, N=args.n, q=args.q, scheme=args.nodes,
                                     config=_config(args), continuation=args.continuation)
        return fz.report
    return solve_problem(problem, N=args.n, q=args.q, scheme=args.nodes,
                         config=_config(args), continuation=args.continuation)


def _status(report):
    msg = (f"{report.solution.problem_name}: N={report.solution.N} q={report.solution.q:.10g} "
           f"iterations={report.iterations} residual={report.final_residual_norm:.3e} "
           f"converged={report.converged}")
    print(msg, file=sys.stderr)
    return EXIT_OK if report.converged else EXIT_NO_CONVERGENCE


def cmd_solve(args):
    report = _solve(_problem(args), args)
    sol = report.solution
    with _open_out(args.output) as fh:
        if args.format == "json":
            fh.write(sol.dumps(indent=2))
            fh.write("\n")
        else:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["i", "coeff"])
            for i, a in enumerate(sol.coeffs):
                w.writerow([i, _fmt(a)])
    return _status(report)


def _zero_row(m, args):
    problem = standard_lane_emden(m)
    ref = reference.first_zero_reference(m)
    if args.fit_zero:
        try:
            fz = analysis.fit_first_zero(problem, N=args.n, scheme=args.nodes,
                                         config=_config(args), continuation=args.continuation)
            return fz.report, fz.zero.x_zero, ref
        except RCSError:
            pass
    report = solve_problem(problem, N=args.n, scheme=args.nodes, config=_config(args),
                           continuation=args.continuation)
    try:
        x0 = analysis.first_zero(report.solution).x_zero
    except RCSError:
        x0 = None
    return report, x0, ref


def cmd_zeros(args):
    if args.n is not None and args.n < 4:
        raise UsageError("--n must be at least 4")
    ms = [_single_m(t) for t in args.m.split(",") if t.strip()]
    if not ms:
        raise UsageError("--m needs at least one value")
    status = EXIT_OK
    rows = []
    for m in ms:
        report, x0, ref = _zero_row(m, args)
        if not report.converged:
            status = EXIT_NO_CONVERGENCE
        if x0 is None:
            rows.append([f"{m:g}", "none", "none" if ref is None else _fmt(ref), "none"])
        else:
            rows.append([f"{m:g}", _fmt(x0), "none" if ref is None else _fmt(ref),
                         "none" if ref is None else _fmt(abs(x0 - ref))])
    with _open_out(args.output) as fh:
        if args.format == "json":
            keys = ["m", "x_zero", "reference", "abs_diff"]
            json.dump([dict(zip(keys, r)) for r in rows], fh, indent=2)
            fh.write("\n")
        else:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["m", "x_zero", "reference", "abs_diff"])
            w.writerows(rows)
    return status


def _reference_and_xs(name, sol):
    """Pick the comparison reference and abscissae for a problem name."""
    q_top = sol.q * (1 + 1e-6)
    if name.startswith("lane-emden-m"):
        m = float(name[len("lane-emden-m"):])
        if m in (0.0, 1.0, 5.0):
            ref = reference.exact(f"m{m:g}")
            top = min(sol.q, reference.first_zero_reference(m) or sol.q)
            return ref, list(np.linspace(0.0, top, 11))
        ref = reference.horedt(f"m{m:g}")
        return ref, [x for x, _ in ref.rows() if x <= q_top]
    if name in reference.EXACT_NAMES:
        ref = reference.exact(name)
        xs = [r[0] for r in reference.table_rows(name)]
        return ref, [x for x in xs if x <= q_top]
    if name in reference.SERIES_NAMES:
        ref = reference.series(name)
        flagged = reference.flagged_rows(name)
        xs = [r[0] for r in reference.table_rows(name) if r[0] not in flagged]
        return ref, [x for x in xs if x <= min(q_top, ref.valid_to)]
    raise UsageError(f"no reference data for problem {name!r}")


def _write_rows(table, fh, fmt):
    if fmt == "json":
        json.dump([{"x": r.x, "y_method": r.y_method, "y_reference": r.y_reference,
                    "abs_error": r.abs_error} for r in table.rows], fh, indent=2)
        fh.write("\n")
    else:
        table.write_csv(fh)


def cmd_table(args):
    status = EXIT_OK
    if args.solution:
        sol = SpectralSolution.load(args.solution)
        if sol.info.get("converged") is False:
            status = EXIT_NO_CONVERGENCE
    else:
        report = _solve(_problem(args), args)
        sol = report.solution
        status = _status(report)
    ref, xs = _reference_and_xs(sol.problem_name, sol)
    table = analysis.error_table(sol, ref, xs)
    with _open_out(args.output) as fh:
        _write_rows(table, fh, args.format)
    print(f"max abs error {table.max_error:.3e} over {len(table.rows)} rows", file=sys.stderr)
    return status


def cmd_coeffs(args):
    if args.solution:
        sol = SpectralSolution.load(args.solution)
        status = EXIT_OK
    else:
        report = _solve(_problem(args), args)
        sol = report.solution
        status = _status(report)
    prof = analysis.decay_profile(sol)
    with _open_out(args.output) as fh:
        if args.format == "json":
            json.dump({"ratio": prof.ratio,
                       "abs_coeff": [float(a) for a in prof.magnitudes]}, fh, indent=2)
            fh.write("\n")
        else:
            prof.write_csv(fh)
    print(f"quarter ratio {prof.ratio:.3e}", file=sys.stderr)
    return status


def cmd_ortho_check(args):
    rows = analysis.ortho_grid(args.n_max, args.nodes_count)
    with _open_out(args.output) as fh:
        analysis.write_ortho_csv(rows, fh)
    worst = max(d for _, _, _, d in rows)
    print(f"max deviation from (pi/2) delta_ij: {worst:.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_reference(args):
    name = args.name
    if name in reference.EXACT_NAMES:
        ref = reference.exact(name)
    elif name in reference.SERIES_NAMES:
        ref = reference.series(name)
    elif name == "first_zeros" or name in reference.HOREDT_NAMES:
        ref = reference.horedt(name)
    else:
        ref = reference.comparison_table(name)
    xs = None
    if ref.kind != "tabulated":
        top = ref.valid_to if math.isfinite(ref.valid_to) else 10.0
        xs = np.linspace(0.0, top, 21)
    with _open_out(args.output) as fh:
        reference.write_reference_csv(ref, fh, xs)
    return EXIT_OK


def _add_solver_args(p, fit_default=False):
    p.add_argument("--problem", help="lane-emden (with --m), isothermal, sinh, sin, exp_mix, log6, linear_poly")
    p.add_argument("--m", help="polytropic index")
    p.add_argument("--custom", help="JSON problem description, or @file")
    p.add_argument("--n", type=int, help="truncation N (N + 1 coefficients)")
    p.add_argument("--q", type=float, help="end of the collocation interval")
    p.add_argument("--nodes", choices=SCHEMES, default=DEFAULT_SCHEME, help="collocation node placement")
    p.add_argument("--tol-residual", type=float, default=1e-13)
    p.add_argument("--max-iters", type=int, default=100)
    p.add_argument("--continuation", action="store_true", help="retry a failed solve by growing q")
    p.add_argument("--fit-zero", action=argparse.BooleanOptionalAction, default=fit_default,
                   help="move q onto the first zero of the solution and re-solve")
    p.add_argument("--output", "-o", default="-", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser():
    parser = _Parser(prog="rcslane", description="Rational Chebyshev collocation for Lane-Emden problems")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one problem and write its coefficients")
    _add_solver_args(p)
    p.set_defaults(func=cmd_solve, format="json")

    p = sub.add_parser("zeros", help="first zeros of the polytropes")
    _add_solver_args(p, fit_default=True)
    p.set_defaults(func=cmd_zeros, m=DEFAULT_ZERO_MS)

    p = sub.add_parser("table", help="pointwise comparison with reference values")
    _add_solver_args(p)
    p.add_argument("--solution", help="solution JSON written by solve")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("coeffs", help="coefficient magnitudes and decay ratio")
    _add_solver_args(p)
    p.add_argument("--solution", help="solution JSON written by solve")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("ortho-check", help="inner products of the basis functions")
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--nodes-count", type=int, default=64)
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_ortho_check)

    p = sub.add_parser("reference", help="export reference values as CSV")
    p.add_argument("name")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_reference)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SingularJacobianError, NonFiniteError) as exc:
        print(f"rcslane: solver failed: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (UsageError, RCSError, OSError, ValueError, KeyError) as exc:
        print(f"rcslane: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
