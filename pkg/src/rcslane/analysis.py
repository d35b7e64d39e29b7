"""Post-processing: first zeros, error tables, coefficient decay, orthogonality."""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .basis import gram_matrix
from .collocation import DEFAULT_SCHEME
from .errors import AbscissaMismatchError, DomainError, NoZeroFoundError
from .newton import solve_problem
from .reference import ReferenceSolution
from .trial import SpectralSolution, eval_trial

SCAN_POINTS = 2000
BISECT_WIDTH = 1e-13
# Evaluation is allowed marginally past q so a zero row sitting on the
# fitted endpoint is not rejected over the last printed digit.
_Q_SLACK = 1e-6


def _fmt(v):
    return f"{v:.7E}"


@dataclass(frozen=True)
class ZeroResult:
    x_zero: float
    bracket: tuple
    refined_by: str
    residual_value: float


def first_zero(sol, search_to=None, n_scan=SCAN_POINTS):
    """Smallest x > 0 where the approximant changes sign.

    Scans n_scan uniform intervals of (0, search_to], bisects the first
    bracket to width 1e-13 and finishes with one Newton step that is kept
    only if it stays inside the bracket and lowers |u|.
    """
    search_to = sol.q if search_to is None else float(search_to)
    if not search_to > 0:
        raise DomainError("search_to must be positive")
    xs = np.linspace(0.0, search_to, int(n_scan) + 1)
    u = eval_trial(sol, xs)[0]
    hits = np.nonzero(np.sign(u[1:]) != np.sign(u[:-1]))[0]
    hits = hits[u[hits] != 0.0]
    if hits.size == 0:
        raise NoZeroFoundError(f"no sign change of u on (0, {search_to:g}]")
    i = int(hits[0])
    lo, hi = float(xs[i]), float(xs[i + 1])
    bracket = (lo, hi)
    ulo = float(u[i])
    if u[i + 1] == 0.0:
        return ZeroResult(hi, (lo, hi + BISECT_WIDTH), "bisection", 0.0)

    while hi - lo > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        um = eval_trial(sol, mid)[0]
        if um == 0.0:
            lo = hi = mid
            break
        if (um > 0) == (ulo > 0):
            lo, ulo = mid, um
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    ux, dux = eval_trial(sol, x)[:2]
    how = "bisection"
    if dux != 0.0 and ux != 0.0:
        xn = x - ux / dux
        if bracket[0] < xn < bracket[1]:
            un = eval_trial(sol, xn)[0]
            if abs(un) < abs(ux):
                x, ux, how = xn, un, "newton_polish"
    return ZeroResult(float(x), bracket, how, float(ux))


@dataclass(frozen=True)
class FittedZero:
    zero: ZeroResult
    report: object
    q_history: tuple

    @property
    def solution(self):
        return self.report.solution


def fit_first_zero(problem, N=None, q=None, scheme=DEFAULT_SCHEME, config=None,
                   tol=1e-10, max_rounds=8, continuation=False):
    """Solve, locate the first zero, then re-solve on [0, zero] until stable.

    Near the zero a non-integer power y^m has a weak singularity; placing
    the end of the collocation interval on the zero keeps it out of the
    interior where it would pollute the whole expansion.
    """
    q = problem.default_q if q is None else float(q)
    history = [q]
    report = solve_problem(problem, N=N, q=q, scheme=scheme, config=config,
                           continuation=continuation)
    zero = first_zero(report.solution, search_to=1.05 * q)
    for _ in range(max_rounds):
        q_new = zero.x_zero
        if abs(q_new - history[-1]) < tol:
            break
        history.append(q_new)
        report = solve_problem(problem, N=N, q=q_new, scheme=scheme, config=config,
                               initial=report.solution.coeffs, continuation=continuation)
        zero = first_zero(report.solution, search_to=1.05 * q_new)
    return FittedZero(zero=zero, report=report, q_history=tuple(history))


@dataclass(frozen=True)
class ErrorRow:
    x: float
    y_method: float
    y_reference: float
    abs_error: float


@dataclass(frozen=True)
class ErrorTable:
    rows: tuple
    name: str = ""

    @property
    def max_error(self):
        return max((r.abs_error for r in self.rows), default=0.0)

    def write_csv(self, fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y_method", "y_reference", "abs_error"])
        for r in self.rows:
            w.writerow([_fmt(r.x), _fmt(r.y_method), _fmt(r.y_reference), _fmt(r.abs_error)])


def _evaluator(obj):
    if isinstance(obj, SpectralSolution):
        q = obj.q

        def ev(x):
            if x > q * (1 + _Q_SLACK) + 1e-12:
                raise DomainError(f"x={x} is past the collocation interval [0, {q}]")
            return float(obj(x))

        return ev
    if isinstance(obj, ReferenceSolution):
        return obj.value
    if callable(obj):
        return lambda x: float(obj(x))
    raise DomainError(f"cannot evaluate {type(obj).__name__}")


def error_table(sol, ref, xs=None):
    """Compare two solutions at xs.

    For a tabulated reference xs defaults to its unflagged rows and any
    given x must be one of its abscissae.
    """
    if xs is None:
        if isinstance(ref, ReferenceSolution) and ref.kind == "tabulated":
            xs = [r[0] for r in ref.rows()]
        else:
            raise DomainError("xs is required unless the reference is tabulated")
    if isinstance(ref, ReferenceSolution) and ref.kind == "tabulated":
        known = set(ref.xs)
        missing = [x for x in xs if x not in known]
        if missing:
            raise AbscissaMismatchError(f"abscissae {missing} are not rows of {ref.name!r}")
    f_sol = _evaluator(sol)
    f_ref = _evaluator(ref)
    rows = []
    for x in xs:
        x = float(x)
        if x < 0:
            raise DomainError("x must be non-negative")
        a, b = f_sol(x), f_ref(x)
        rows.append(ErrorRow(x, a, b, abs(a - b)))
    return ErrorTable(rows=tuple(rows), name=getattr(ref, "name", ""))


@dataclass(frozen=True)
class DecayProfile:
    indices: np.ndarray
    magnitudes: np.ndarray
    ratio: float

    def write_csv(self, fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["i", "abs_coeff"])
        for i, a in zip(self.indices, self.magnitudes):
            w.writerow([int(i), _fmt(a)])


def decay_profile(sol):
    """|a_i| and the ratio max over the last quarter / max over the first."""
    coeffs = sol.coeffs if isinstance(sol, SpectralSolution) else np.asarray(sol, dtype=float)
    n = coeffs.size
    if n - 1 < 8:
        raise DomainError("decay profile needs N >= 8")
    mags = np.abs(coeffs)
    k = n // 4
    head = float(mags[:k].max())
    tail = float(mags[-k:].max())
    if tail == 0.0:
        ratio = 0.0
    elif head == 0.0:
        ratio = math.inf
    else:
        ratio = tail / head
    return DecayProfile(indices=np.arange(n), magnitudes=mags, ratio=ratio)


def ortho_grid(n_max=20, n_nodes=64):
    """Rows (i, j, <U*_i, U*_j>, |value - (pi/2) delta_ij|)."""
    G = gram_matrix(n_max, n_nodes)
    target = 0.5 * np.pi * np.eye(n_max + 1)
    dev = np.abs(G - target)
    return [(i, j, float(G[i, j]), float(dev[i, j]))
            for i in range(n_max + 1) for j in range(n_max + 1)]


def write_ortho_csv(rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["i", "j", "inner_product", "deviation"])
    for i, j, v, d in rows:
        w.writerow([i, j, _fmt(v), _fmt(d)])
