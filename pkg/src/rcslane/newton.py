"""Damped Newton iteration for the collocation equations."""

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la

from .collocation import DEFAULT_SCHEME, CollocationSystem
from .errors import DomainError, NonFiniteError, SingularJacobianError
from .trial import SpectralSolution

_PIVOT_FLOOR = 1e-300
CONTINUATION_STEPS = 4


@dataclass(frozen=True)
class NewtonConfig:
    tol_residual: float = 1e-13
    tol_step: float = 1e-14
    max_iters: int = 100
    damping: bool = True
    max_halvings: int = 30

    def __post_init__(self):
        if not (self.tol_residual > 0 and self.tol_step > 0):
            raise DomainError("tolerances must be positive")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise DomainError("max_iters must be a positive integer")
        if self.max_halvings < 0:
            raise DomainError("max_halvings must be non-negative")


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a Newton solve.

    The residual test is relative to residual_scale, the magnitude of the
    largest term entering any residual entry, so that problems with large
    coefficients are not asked to beat their own round-off. `tolerance` is
    the bound actually applied: tol_residual * max(1, residual_scale).
    """

    solution: SpectralSolution
    iterations: int
    final_residual_norm: float
    converged: bool
    damping_events: int
    residual_scale: float = 1.0
    tolerance: float = 0.0
    stop_reason: str = ""
    continuation_used: bool = False
    history: tuple = field(default=(), compare=False)


def _factor(J):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", la.LinAlgWarning)
        lu, piv = la.lu_factor(J, check_finite=False)
    if np.min(np.abs(np.diag(lu))) < _PIVOT_FLOOR:
        raise SingularJacobianError("Jacobian has a zero pivot")
    return lu, piv


def _norm(r):
    return float(np.max(np.abs(r))) if r.size else 0.0


def newton_solve(system, config=None, initial=None):
    """Solve Res(x_j; a) = 0 starting from `initial` (zero vector by default).

    Each step takes the first lambda in 1, 1/2, 1/4, ... that lowers the
    residual infinity norm. Non-convergence is reported, not raised.
    """
    config = config or NewtonConfig()
    n = system.size
    if initial is None:
        a = np.zeros(n)
    else:
        a = np.array(initial, dtype=float)
        if a.shape != (n,):
            raise DomainError(f"initial guess must have length {n}, got shape {a.shape}")

    r, J = system.assemble(a)
    if not np.all(np.isfinite(r)):
        raise NonFiniteError("residual is not finite at the initial guess")
    rnorm = _norm(r)
    history = [rnorm]
    damping_events = 0
    iterations = 0
    reason = "max_iters"

    def tolerance(coeffs):
        return config.tol_residual * max(1.0, system.residual_scale(coeffs))

    if rnorm <= tolerance(a):
        reason = "residual"
    else:
        for iterations in range(1, config.max_iters + 1):
            lu, piv = _factor(J)
            step = la.lu_solve((lu, piv), r, check_finite=False)
            if not np.all(np.isfinite(step)):
                raise NonFiniteError("Newton step is not finite")

            lam = 1.0
            accepted = False
            halvings = config.max_halvings if config.damping else 0
            for _ in range(halvings + 1):
                trial = a - lam * step
                r_new = system.residual_vector(trial)
                if np.all(np.isfinite(r_new)):
                    n_new = _norm(r_new)
                    if n_new < rnorm or not config.damping:
                        accepted = True
                        break
                lam *= 0.5
            if not accepted:
                if not config.damping:
                    raise NonFiniteError("residual became non-finite")
                reason = "line_search"
                iterations -= 1
                break
            if lam < 1.0:
                damping_events += 1

            a = trial
            r, J = system.assemble(a)
            rnorm = _norm(r)
            history.append(rnorm)

            if rnorm <= tolerance(a):
                reason = "residual"
                break
            if _norm(lam * step) <= config.tol_step * max(1.0, _norm(a)):
                reason = "step"
                break

    scale = system.residual_scale(a)
    tol = config.tol_residual * max(1.0, scale)
    converged = bool(rnorm <= tol)
    info = {
        "iterations": iterations,
        "final_residual_norm": rnorm,
        "converged": converged,
        "nodes": system.nodes.scheme,
    }
    sol = SpectralSolution(
        coeffs=a, q=system.q, A=system.problem.A, B=system.problem.B,
        problem_name=system.problem.name, info=info,
    )
    return SolveReport(
        solution=sol,
        iterations=iterations,
        final_residual_norm=rnorm,
        converged=converged,
        damping_events=damping_events,
        residual_scale=scale,
        tolerance=tol,
        stop_reason=reason,
        history=tuple(history),
    )


def solve_problem(problem, N=None, q=None, scheme=DEFAULT_SCHEME, config=None,
                  initial=None, continuation=False):
    """Build the collocation system for `problem` and solve it.

    With continuation, a failed zero start is retried by solving on
    q/4, 2q/4, 3q/4 and q in turn, each warm-started from the last.
    """
    N = problem.default_N if N is None else int(N)
    q = problem.default_q if q is None else float(q)
    config = config or NewtonConfig()
    system = CollocationSystem(problem, N, q=q, scheme=scheme)
    try:
        report = newton_solve(system, config, initial)
    except (SingularJacobianError, NonFiniteError):
        if not continuation:
            raise
        report = None
    if not continuation or (report is not None and report.converged):
        return report

    a = None if initial is None else np.asarray(initial, dtype=float)
    iters = 0
    damped = 0
    for k in range(1, CONTINUATION_STEPS + 1):
        sub = CollocationSystem(problem, N, q=q * k / CONTINUATION_STEPS, scheme=scheme)
        step_report = newton_solve(sub, config, a)
        a = step_report.solution.coeffs
        iters += step_report.iterations
        damped += step_report.damping_events
    info = dict(step_report.solution.info, continuation=True, iterations=iters)
    sol = SpectralSolution(
        coeffs=a, q=q, A=problem.A, B=problem.B, problem_name=problem.name, info=info,
    )
    return SolveReport(
        solution=sol,
        iterations=iters,
        final_residual_norm=step_report.final_residual_norm,
        converged=step_report.converged,
        damping_events=damped,
        residual_scale=step_report.residual_scale,
        tolerance=step_report.tolerance,
        stop_reason=step_report.stop_reason,
        continuation_used=True,
        history=step_report.history,
    )
