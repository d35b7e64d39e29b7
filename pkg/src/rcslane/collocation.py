"""
Collocation nodes, residuals and Jacobians for the boundary-embedded trial
function.

With phi_i(x) = x^2 U*_i(x), the singular term is evaluated as

    (alpha / x) u' = alpha B / x + alpha sum_i a_i (2 U*_i + x U*_i')

which avoids dividing a small derivative by a small x near the origin.
"""

from dataclasses import dataclass

import numpy as np

from .basis import eval_rcs
from .errors import DomainError

SCHEMES = ("chebyshev", "uniform")
DEFAULT_SCHEME = "chebyshev"


@dataclass(frozen=True)
class NodeSet:
    q: float
    N: int
    nodes: np.ndarray
    scheme: str = "uniform"

    def __len__(self):
        return self.nodes.size


def make_nodes(q, N, scheme="uniform"):
    """N + 1 collocation points in (0, q].

    "uniform":   x_j = q (j + 1) / (N + 1), equally spaced, last node at q.
    "chebyshev": Chebyshev-Gauss points of the mapped variable
                 s = (x - 1)/(x + 1) over [-1, s(q)], pulled back to x. All
                 nodes lie strictly inside (0, q).
    """
    if not np.isfinite(q) or q <= 0:
        raise DomainError(f"q must be positive, got {q!r}")
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    N = int(N)
    j = np.arange(N + 1)
    if scheme == "uniform":
        x = q * (j + 1) / (N + 1)
    elif scheme == "chebyshev":
        sq = (q - 1.0) / (q + 1.0)
        t = 0.5 * (1.0 - np.cos((2 * j + 1) * np.pi / (2 * N + 2)))
        s = -1.0 + (sq + 1.0) * t
        x = (1.0 + s) / (1.0 - s)
    else:
        raise DomainError(f"unknown node scheme {scheme!r}; choose from {SCHEMES}")
    x = np.asarray(x, dtype=float)
    x.setflags(write=False)
    return NodeSet(q=float(q), N=N, nodes=x, scheme=scheme)


def _rows(alpha, N, x):
    """phi_i(x) and the linear operator phi_i'' + (alpha/x) phi_i' at each x.

    Returned arrays have shape shape(x) + (N + 1,).
    """
    be = eval_rcs(N, x)
    U = np.moveaxis(be.values, 0, -1)
    dU = np.moveaxis(be.d1, 0, -1)
    ddU = np.moveaxis(be.d2, 0, -1)
    xc = np.asarray(x, dtype=float)[..., None]
    phi = xc**2 * U
    lin = 2.0 * U + 4.0 * xc * dU + xc**2 * ddU + alpha * (2.0 * U + xc * dU)
    return phi, lin


class CollocationSystem:
    """Residual equations Res(x_j) = 0 for a problem at N + 1 nodes."""

    def __init__(self, problem, N, q=None, scheme=DEFAULT_SCHEME, nodes=None):
        if nodes is None:
            nodes = make_nodes(problem.default_q if q is None else q, N, scheme)
        if len(nodes) != N + 1:
            raise DomainError("node count must equal the number of unknowns")
        if problem.alpha * problem.B != 0 and np.any(nodes.nodes <= 0):
            raise DomainError("alpha * B / x is unbounded at a node at x = 0")
        self.problem = problem
        self.N = int(N)
        self.nodes = nodes
        x = nodes.nodes
        self._x = x
        self._phi, self._lin = _rows(problem.alpha, self.N, x)
        self._P = problem.A + problem.B * x
        self._sing_bc = problem.alpha * problem.B / x
        self._f = problem.f(x)
        self._h = problem.h(x)

    @property
    def q(self):
        return self.nodes.q

    @property
    def size(self):
        return self.N + 1

    def _check(self, coeffs):
        a = np.asarray(coeffs, dtype=float)
        if a.shape != (self.size,):
            raise DomainError(f"expected {self.size} coefficients, got shape {a.shape}")
        return a

    def state(self, coeffs):
        """Trial values u(x_j) and residuals Res(x_j)."""
        a = self._check(coeffs)
        u = self._P + self._phi @ a
        r = self._lin @ a + self._sing_bc + self._f * self.problem.g(u) - self._h
        return u, r

    def residual_vector(self, coeffs):
        return self.state(coeffs)[1]

    def residual_scale(self, coeffs):
        """Size of the largest term summed into any residual entry.

        Round-off in a residual evaluation is a small multiple of
        machine epsilon times this number.
        """
        a = self._check(coeffs)
        u = self._P + self._phi @ a
        terms = (
            np.abs(self._lin) @ np.abs(a)
            + np.abs(self._sing_bc)
            + np.abs(self._f * self.problem.g(u))
            + np.abs(self._h)
        )
        return float(np.max(terms))

    def jacobian(self, coeffs, u=None):
        if u is None:
            u = self.state(coeffs)[0]
        return self._lin + (self._f * self.problem.dg(u))[:, None] * self._phi

    def assemble(self, coeffs):
        """(residual vector, dense Jacobian dRes_j / da_i)."""
        u, r = self.state(coeffs)
        return r, self.jacobian(coeffs, u)


def residual_at(system, coeffs, x):
    """Res(x) for x > 0 (scalar or array), not restricted to the nodes."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("residual is evaluated at x > 0 only")
    p = system.problem
    a = system._check(coeffs)
    phi, lin = _rows(p.alpha, system.N, x)
    u = p.A + p.B * x + phi @ a
    r = lin @ a + p.alpha * p.B / x + p.f(x) * p.g(u) - p.h(x)
    return float(r) if r.ndim == 0 else r


def assemble(system, coeffs):
    return system.assemble(coeffs)
