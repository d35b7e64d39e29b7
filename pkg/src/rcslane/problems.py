"""Lane-Emden type initial value problems

    y'' + (alpha / x) y' + f(x) g(y) = h(x),   y(0) = A,  y'(0) = B.

Functions f, g, dg, h act elementwise on numpy arrays.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, UnknownNameError

_LOG_FLOOR = 1e-300

# Collocation interval for the polytropic family; each sits a little past the
# tabulated range of the first zero.
_STANDARD_Q = {0.0: 2.5, 1.0: 3.3, 1.5: 4.0, 2.0: 5.0, 2.5: 6.0, 3.0: 7.5, 4.0: 16.0, 5.0: 10.0}


def _one(x):
    return np.ones_like(np.asarray(x, dtype=float))


def _zero(x):
    return np.zeros_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class LaneEmdenProblem:
    name: str
    alpha: float
    f: Callable
    g: Callable
    dg: Callable
    h: Callable
    A: float
    B: float
    default_q: float
    default_N: int
    m: Optional[float] = None
    description: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.alpha < 0:
            raise DomainError("alpha must be non-negative")
        if not self.default_q > 0:
            raise DomainError("default_q must be positive")
        if self.default_N < 4:
            raise DomainError("default_N must be at least 4")

    @property
    def has_first_zero(self):
        """True for polytropes whose solution is known to cross zero (m < 5)."""
        return self.m is not None and self.m < 5

    def residual(self, x, y, dy, ddy):
        """Pointwise ODE residual for a candidate solution; x > 0."""
        x = np.asarray(x, dtype=float)
        return ddy + self.alpha / x * dy + self.f(x) * self.g(y) - self.h(x)


def power_nonlinearity(m):
    """Return (g, dg) for g(y) = y^m.

    Integer exponents use the plain power, which is analytic through y = 0.
    Other exponents use sign(y) |y|^m so iterates stay real when they dip
    below zero.
    """
    m = float(m)
    if m == 0.0:
        return _one, _zero
    if m.is_integer():
        k = int(m)
        if k == 1:
            return (lambda y: np.asarray(y, dtype=float) * 1.0), _one
        return (lambda y: np.asarray(y, dtype=float) ** k), (lambda y: k * np.asarray(y, dtype=float) ** (k - 1))

    def g(y):
        y = np.asarray(y, dtype=float)
        return np.sign(y) * np.abs(y) ** m

    def dg(y):
        return m * np.abs(np.asarray(y, dtype=float)) ** (m - 1.0)

    return g, dg


def default_q_for(m):
    m = float(m)
    if m in _STANDARD_Q:
        return _STANDARD_Q[m]
    if m > 5.0:
        return 10.0
    if m > 4.0:
        return 16.0
    knots = sorted(k for k in _STANDARD_Q if k <= 4.0)
    return float(np.interp(m, knots, [_STANDARD_Q[k] for k in knots]))


def standard_lane_emden(m, q=None, N=20):
    """Polytrope of index m: y'' + 2 y'/x + y^m = 0, y(0) = 1, y'(0) = 0."""
    m = float(m)
    if not np.isfinite(m) or m < 0:
        raise DomainError(f"polytropic index must be >= 0, got {m}")
    g, dg = power_nonlinearity(m)
    return LaneEmdenProblem(
        name=f"lane-emden-m{m:g}",
        alpha=2.0,
        f=_one,
        g=g,
        dg=dg,
        h=_zero,
        A=1.0,
        B=0.0,
        m=m,
        default_q=float(q) if q is not None else default_q_for(m),
        default_N=int(N),
        description=f"standard Lane-Emden, m={m:g}",
    )


def _exp_mix(y):
    y = np.asarray(y, dtype=float)
    return 4.0 * (2.0 * np.exp(y) + np.exp(0.5 * y))


def _dexp_mix(y):
    y = np.asarray(y, dtype=float)
    return 4.0 * (2.0 * np.exp(y) + 0.5 * np.exp(0.5 * y))


def _log6(y):
    # y ln y -> 0 as y -> 0+; non-positive iterates are clamped.
    y = np.maximum(np.asarray(y, dtype=float), _LOG_FLOOR)
    return -6.0 * y - 4.0 * y * np.log(y)


def _dlog6(y):
    y = np.maximum(np.asarray(y, dtype=float), _LOG_FLOOR)
    return -10.0 - 4.0 * np.log(y)


def _poly_f(x):
    x = np.asarray(x, dtype=float)
    return -2.0 * (2.0 * x**2 + 3.0)


def _identity(y):
    return np.asarray(y, dtype=float) * 1.0


def _builtin_table():
    return {
        "isothermal": dict(g=np.exp, dg=np.exp, A=0.0, default_q=2.5, default_N=40,
                           description="isothermal gas sphere, g(y) = e^y"),
        "sinh": dict(g=np.sinh, dg=np.cosh, A=1.0, default_q=2.0, default_N=20,
                     description="g(y) = sinh(y)"),
        "sin": dict(g=np.sin, dg=np.cos, A=1.0, default_q=2.0, default_N=20,
                    description="g(y) = sin(y)"),
        "exp_mix": dict(g=_exp_mix, dg=_dexp_mix, A=0.0, default_q=10.0, default_N=46,
                        description="g(y) = 4(2e^y + e^(y/2)), exact -2 ln(1 + x^2)"),
        "log6": dict(g=_log6, dg=_dlog6, A=1.0, default_q=1.0, default_N=40,
                     description="g(y) = -6y - 4y ln y, exact e^(x^2)"),
        "linear_poly": dict(g=_identity, dg=_one, f=_poly_f, A=1.0, default_q=1.0, default_N=40,
                            description="f(x) = -2(2x^2 + 3), g(y) = y, exact e^(x^2)"),
    }


BUILTIN_NAMES = tuple(_builtin_table())

_ALIASES = {"exp-mix": "exp_mix", "linear-poly": "linear_poly"}


def builtin(name):
    """One of the non-polytropic examples, by name."""
    key = _ALIASES.get(name, name)
    table = _builtin_table()
    if key not in table:
        raise UnknownNameError(f"unknown problem {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    entry = table[key]
    return LaneEmdenProblem(
        name=key,
        alpha=2.0,
        f=entry.get("f", _one),
        g=entry["g"],
        dg=entry["dg"],
        h=_zero,
        A=entry["A"],
        B=0.0,
        default_q=entry["default_q"],
        default_N=entry["default_N"],
        description=entry["description"],
    )


# Nonlinearities available to configuration-defined problems.
G_MENU = {
    "linear": (_identity, _one),
    "exp": (np.exp, np.exp),
    "sinh": (np.sinh, np.cosh),
    "sin": (np.sin, np.cos),
    "exp_mix": (_exp_mix, _dexp_mix),
    "log6": (_log6, _dlog6),
}


def _poly(coeffs):
    c = np.asarray(coeffs if coeffs else [0.0], dtype=float)

    def p(x):
        return np.polynomial.polynomial.polyval(np.asarray(x, dtype=float), c)

    return p


def custom_problem(cfg):
    """Build a problem from a plain mapping.

    Keys: alpha, A, B, g (name from G_MENU or "power"), m (for "power"),
    f and h (ascending polynomial coefficients), q, N, name.
    """
    try:
        gname = cfg["g"]
    except KeyError:
        raise DomainError("custom problem needs a 'g' entry") from None
    if gname == "power":
        if "m" not in cfg:
            raise DomainError("g='power' needs an exponent 'm'")
        g, dg = power_nonlinearity(float(cfg["m"]))
    elif gname in G_MENU:
        g, dg = G_MENU[gname]
    else:
        raise UnknownNameError(f"unknown nonlinearity {gname!r}; choose from power, {', '.join(G_MENU)}")
    return LaneEmdenProblem(
        name=str(cfg.get("name", "custom")),
        alpha=float(cfg.get("alpha", 2.0)),
        f=_poly(cfg.get("f", [1.0])),
        g=g,
        dg=dg,
        h=_poly(cfg.get("h", [0.0])),
        A=float(cfg.get("A", 1.0)),
        B=float(cfg.get("B", 0.0)),
        m=float(cfg["m"]) if gname == "power" else None,
        default_q=float(cfg.get("q", 1.0)),
        default_N=int(cfg.get("N", 20)),
        description="configuration-defined problem",
        meta={"config": dict(cfg)},
    )


def get_problem(name, m=None):
    """Resolve a CLI-style problem name."""
    if name in ("lane-emden", "lane_emden", "standard"):
        if m is None:
            raise DomainError("the standard Lane-Emden problem needs --m")
        return standard_lane_emden(m)
    if name.startswith("lane-emden-m"):
        return standard_lane_emden(float(name[len("lane-emden-m"):]))
    return builtin(name)
