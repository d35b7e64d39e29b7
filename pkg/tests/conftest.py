"""Shared test-only oracles.

Nothing here is used by the package itself: the integrator and the power
series recursion exist to check the package from the outside.
"""

import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

ACCEPTANCE_LINES = []


def record(criterion, ok, detail):
    ACCEPTANCE_LINES.append((criterion, bool(ok), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    grouped = {}
    for crit, ok, detail in ACCEPTANCE_LINES:
        grouped.setdefault(crit, []).append((ok, detail))
    terminalreporter.section("acceptance criteria")
    for crit in sorted(grouped):
        parts = grouped[crit]
        verdict = "PASS" if all(ok for ok, _ in parts) else "FAIL"
        terminalreporter.write_line(f"criterion {crit:>2}: {verdict}  " + "; ".join(d for _, d in parts))


def polytrope_rhs(m):
    """First-order system for y'' + 2y'/x + y^m = 0 (sign-safe power)."""
    def rhs(x, z):
        y, p = z
        gy = math.copysign(abs(y) ** m, y) if m != int(m) else y ** int(m)
        return [p, -2.0 * p / x - gy]
    return rhs


def rk_polytrope(m, x_end, x_start=1e-6, dense=True):
    """Adaptive RK45 from a series start near the origin.

    y = 1 - x^2/6 + m x^4/120 removes the 2y'/x singularity.
    """
    x0 = x_start
    y0 = 1.0 - x0**2 / 6.0 + m * x0**4 / 120.0
    p0 = -x0 / 3.0 + m * x0**3 / 30.0
    return solve_ivp(polytrope_rhs(m), (x0, x_end), [y0, p0], method="RK45",
                     rtol=1e-12, atol=1e-14, dense_output=dense)


def taylor_coefficients(kind, A, n_terms):
    """Power series of y'' + 2y'/x + g(y) = 0, y(0) = A, y'(0) = 0.

    Returns c_0..c_{n_terms-1} of y = sum c_k x^k. With y = sum c_k x^k the
    operator gives k(k+1) c_k x^(k-2), so c_{k+2} = -G_k / ((k+2)(k+3)),
    where G_k is the x^k coefficient of g(y).
    """
    c = np.zeros(n_terms)
    c[0] = A
    # s, t hold the series of the pair (g, g-companion) used by the recursions
    s = np.zeros(n_terms)
    t = np.zeros(n_terms)
    if kind == "exp":
        s[0] = math.exp(A)
    elif kind == "sin":
        s[0], t[0] = math.sin(A), math.cos(A)
    elif kind == "sinh":
        s[0], t[0] = math.sinh(A), math.cosh(A)
    else:
        raise ValueError(kind)
    for k in range(0, n_terms - 2):
        # s_k depends on c_1..c_k and lower s, t; update it (k >= 1)
        if k >= 1:
            if kind == "exp":
                s[k] = sum(j * c[j] * s[k - j] for j in range(1, k + 1)) / k
            else:
                s[k] = sum(j * c[j] * t[k - j] for j in range(1, k + 1)) / k
                sign = -1.0 if kind == "sin" else 1.0
                t[k] = sign * sum(j * c[j] * s[k - j] for j in range(1, k + 1)) / k
        c[k + 2] = -s[k] / ((k + 2) * (k + 3))
    return c


@pytest.fixture(scope="session")
def rk_m2():
    return rk_polytrope(2.0, 5.0)


@pytest.fixture(scope="session")
def rk_m3():
    return rk_polytrope(3.0, 7.5)
