"""
Chebyshev polynomials of the second kind and their rational counterparts on
the half line.

The rational functions are U*_n(x) = U_n(s) with s = (x - 1)/(x + 1), which
are orthogonal on [0, inf) under w*(x) = 4 sqrt(x) / (x + 1)^3.

Derivatives are always taken from the differentiated three-term recurrence.
The closed form ((n+2) U_{n-1} - n U_{n+1}) / (2 (1 - s^2)) is singular at
s = +-1 (x = 0 and x = inf) and is kept only as a cross-check.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InsufficientNodesError

_S_EPS = 1e-12


@dataclass(frozen=True)
class BasisEval:
    """Values and x-derivatives of U*_0..U*_{n_max}.

    Arrays have shape (n_max + 1,) + shape(x); row n belongs to degree n.
    """

    n_max: int
    values: np.ndarray
    d1: np.ndarray
    d2: np.ndarray


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, f):
        """Approximate the integral of f(s) sqrt(1 - s^2) over [-1, 1]."""
        return float(np.dot(self.weights, f(self.nodes)))


def to_mapped(x):
    """Map x in [0, inf) to s in [-1, 1)."""
    x = np.asarray(x, dtype=float)
    return (x - 1.0) / (x + 1.0)


def from_mapped(s):
    """Inverse map, s in [-1, 1) to x in [0, inf)."""
    s = np.asarray(s, dtype=float)
    return (1.0 + s) / (1.0 - s)


def _check_degree(n_max):
    if int(n_max) != n_max or n_max < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n_max!r}")
    return int(n_max)


def _recurrence(n_max, s):
    shape = (n_max + 1,) + s.shape
    u = np.empty(shape)
    du = np.zeros(shape)
    ddu = np.zeros(shape)
    u[0] = 1.0
    if n_max >= 1:
        u[1] = 2.0 * s
        du[1] = 2.0
    for n in range(2, n_max + 1):
        u[n] = 2.0 * s * u[n - 1] - u[n - 2]
        du[n] = 2.0 * u[n - 1] + 2.0 * s * du[n - 1] - du[n - 2]
        ddu[n] = 4.0 * du[n - 1] + 2.0 * s * ddu[n - 1] - ddu[n - 2]
    return u, du, ddu


def eval_classical(n_max, s):
    """Evaluate U_0..U_{n_max} and their first two s-derivatives.

    Valid on the closed interval, including s = +-1 where U_n(1) = n + 1.
    Returns (values, d1_s, d2_s), each of shape (n_max + 1,) + shape(s).
    """
    n_max = _check_degree(n_max)
    s = np.asarray(s, dtype=float)
    if np.any(~np.isfinite(s)) or np.any(np.abs(s) > 1.0 + _S_EPS):
        raise DomainError("s must lie in [-1, 1]")
    return _recurrence(n_max, s)


def eval_rcs(n_max, x):
    """Evaluate U*_0..U*_{n_max} with first and second x-derivatives."""
    n_max = _check_degree(n_max)
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < 0.0):
        raise DomainError("x must be finite and non-negative")
    xp1 = 1.0 + x
    s = (x - 1.0) / xp1
    ds = 2.0 / xp1**2
    dds = -4.0 / xp1**3
    u, du, ddu = _recurrence(n_max, s)
    return BasisEval(n_max=n_max, values=u, d1=du * ds, d2=ddu * ds**2 + du * dds)


def d1_closed_form(n_max, x):
    """First x-derivative of U*_n from the closed form, for cross-checking.

    Singular at x = 0; callers keep x away from the endpoints.
    """
    n_max = _check_degree(n_max)
    x = np.asarray(x, dtype=float)
    s = to_mapped(x)
    u, _, _ = _recurrence(n_max + 1, s)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 0.0
    for n in range(1, n_max + 1):
        out[n] = ((n + 2) * u[n - 1] - n * u[n + 1]) / (2.0 * (1.0 - s**2))
    return out * 2.0 / (1.0 + x) ** 2


def weight_rcs(x):
    """Orthogonality weight 4 sqrt(x) / (x + 1)^3 on [0, inf)."""
    x = np.asarray(x, dtype=float)
    return 4.0 * np.sqrt(x) / (x + 1.0) ** 3


def gauss_chebyshev2(n_nodes):
    """Gauss rule for the weight sqrt(1 - s^2) on [-1, 1].

    Nodes are the zeros of U_n, so the rule is exact for polynomials of
    degree <= 2 n - 1.
    """
    if int(n_nodes) != n_nodes or n_nodes < 1:
        raise DomainError(f"n_nodes must be a positive integer, got {n_nodes!r}")
    n = int(n_nodes)
    theta = np.arange(1, n + 1) * np.pi / (n + 1)
    nodes = np.cos(theta)
    weights = np.pi / (n + 1) * np.sin(theta) ** 2
    return QuadratureRule(nodes=nodes, weights=weights)


def inner_product_rcs(i, j, n_nodes=64):
    """<U*_i, U*_j> under w*(x) on [0, inf), by quadrature in the mapped variable."""
    i = _check_degree(i)
    j = _check_degree(j)
    if n_nodes <= i + j:
        raise InsufficientNodesError(
            f"need more than {i + j} nodes for degrees {i} and {j}, got {n_nodes}"
        )
    rule = gauss_chebyshev2(n_nodes)
    x = from_mapped(rule.nodes)
    vals = eval_rcs(max(i, j), x).values
    return float(np.dot(rule.weights, vals[i] * vals[j]))


def gram_matrix(n_max, n_nodes=64):
    """All inner products <U*_i, U*_j> for 0 <= i, j <= n_max."""
    n_max = _check_degree(n_max)
    if n_nodes <= 2 * n_max:
        raise InsufficientNodesError(f"need more than {2 * n_max} nodes, got {n_nodes}")
    rule = gauss_chebyshev2(n_nodes)
    vals = eval_rcs(n_max, from_mapped(rule.nodes)).values
    return (vals * rule.weights) @ vals.T
