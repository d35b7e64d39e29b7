"""
Ground truth used for comparisons: closed-form solutions, truncated series
and literature tables (stored with the digits as printed).
"""

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import AbscissaMismatchError, DomainError, UnknownNameError


@dataclass(frozen=True)
class ReferenceSolution:
    name: str
    kind: str  # "closed_form", "series" or "tabulated"
    eval: Optional[Callable] = None
    table: tuple = ()
    valid_to: float = math.inf
    flagged: frozenset = field(default_factory=frozenset)
    source: str = ""

    def __post_init__(self):
        if self.kind not in ("closed_form", "series", "tabulated"):
            raise DomainError(f"unknown reference kind {self.kind!r}")
        if self.kind == "tabulated":
            xs = [r[0] for r in self.table]
            if any(b <= a for a, b in zip(xs, xs[1:])):
                raise DomainError("tabulated abscissae must be strictly increasing")
        elif self.eval is None:
            raise DomainError("closed-form and series references need an eval function")

    @property
    def xs(self):
        return tuple(r[0] for r in self.table)

    def rows(self, include_flagged=False):
        return tuple(r for r in self.table if include_flagged or r[0] not in self.flagged)

    def value(self, x):
        """Reference value at x; tabulated data must be hit exactly."""
        if self.kind == "tabulated":
            for tx, ty in self.table:
                if tx == x:
                    return ty
            raise AbscissaMismatchError(f"{x!r} is not a row of table {self.name!r}")
        x = float(x)
        if x < 0 or x > self.valid_to:
            raise DomainError(f"{self.name}: x={x} outside [0, {self.valid_to}]")
        return float(self.eval(x))

    __call__ = value


# --- closed forms ---------------------------------------------------------

def _m0(x):
    return 1.0 - np.asarray(x, dtype=float) ** 2 / 6.0


def _m1(x):
    # sinc(t) = sin(pi t)/(pi t), equal to 1 at t = 0
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


def _m5(x):
    return (1.0 + np.asarray(x, dtype=float) ** 2 / 3.0) ** -0.5


def _exp_mix(x):
    return -2.0 * np.log1p(np.asarray(x, dtype=float) ** 2)


def _gauss(x):
    return np.exp(np.asarray(x, dtype=float) ** 2)


_EXACT = {
    "m0": (_m0, "1 - x^2/6"),
    "m1": (_m1, "sin(x)/x"),
    "m5": (_m5, "(1 + x^2/3)^(-1/2)"),
    "exp_mix": (_exp_mix, "-2 ln(1 + x^2)"),
    "log6": (_gauss, "exp(x^2)"),
    "linear_poly": (_gauss, "exp(x^2)"),
}

EXACT_NAMES = tuple(_EXACT)


def exact(name):
    if name not in _EXACT:
        raise UnknownNameError(f"no closed form for {name!r}; choose from {', '.join(EXACT_NAMES)}")
    fn, src = _EXACT[name]
    return ReferenceSolution(name=name, kind="closed_form", eval=fn, source=src)


# --- truncated series ------------------------------------------------------

_E = math.e
_K1 = math.sin(1.0)
_K2 = math.cos(1.0)

# Even-power coefficients c_2, c_4, ... (constant term separate).
# Dotted products: 5.4! = 5*4!, 21.6! = 21*6!, 81.8! = 81*8!, 459.10! = 459*10!.
_ISOTHERMAL = (
    -1.0 / 6.0,
    1.0 / (5 * math.factorial(4)),
    -8.0 / (21 * math.factorial(6)),
    122.0 / (81 * math.factorial(8)),
    -(61.0 * 67.0) / (459 * math.factorial(10)),
)

# The x^8 numerator is 61e^8 - 104e^6 + 104e^2 - 61; the sign pattern is
# fixed by the odd symmetry of sinh and checked against a Taylor recursion.
_SINH = (
    -(_E**2 - 1.0) / (12.0 * _E),
    (_E**4 - 1.0) / (480.0 * _E**2),
    -(2 * _E**6 - 3 * _E**4 + 3 * _E**2 - 2) / (30240.0 * _E**3),
    (61 * _E**8 - 104 * _E**6 + 104 * _E**2 - 61) / (26127360.0 * _E**4),
)

# The x^10 denominators are 898128000 and 39916800 (= 11!), as given by
# the Taylor recursion for y'' + 2y'/x + sin y = 0.
_SIN = (
    -_K1 / 6.0,
    _K1 * _K2 / 120.0,
    _K1 * (_K1**2 / 3024.0 - _K2**2 / 5040.0),
    _K1 * _K2 * (-113.0 * _K1**2 / 3265920.0 + _K2**2 / 362880.0),
    _K1 * (1781.0 * _K1**2 * _K2**2 / 898128000.0 - _K2**4 / 39916800.0
           - 19.0 * _K1**4 / 23950080.0),
)

_SERIES = {
    "isothermal": (0.0, _ISOTHERMAL, 2.5),
    "sinh": (1.0, _SINH, 2.0),
    "sin": (1.0, _SIN, 2.0),
}

SERIES_NAMES = tuple(_SERIES)


def series_coefficients(name):
    """(constant, (c_2, c_4, ...)) of the truncated even series."""
    if name not in _SERIES:
        raise UnknownNameError(f"no series for {name!r}; choose from {', '.join(SERIES_NAMES)}")
    c0, cs, _ = _SERIES[name]
    return c0, cs


def _series_fn(c0, cs):
    def fn(x):
        x2 = np.asarray(x, dtype=float) ** 2
        acc = np.zeros_like(x2)
        for c in reversed(cs):
            acc = (acc + c) * x2
        return c0 + acc

    return fn


def series(name):
    c0, cs = series_coefficients(name)
    return ReferenceSolution(
        name=name, kind="series", eval=_series_fn(c0, cs),
        valid_to=_SERIES[name][2], source="ADM series",
    )


def wazwaz_series(name, x):
    """Evaluate the truncated series for isothermal, sinh or sin at x."""
    return series(name).value(x)


# --- literature tables -----------------------------------------------------
# Rows are (x, present method, reference value).

_TABLES = {
    "m1.5": (
        (0.00, 1.00000000e00, 1.00000000e00),
        (0.10, 9.98334583e-01, 9.98334600e-01),
        (0.50, 9.59103857e-01, 9.59103900e-01),
        (1.00, 8.45169755e-01, 8.45169800e-01),
        (3.00, 1.58850614e-01, 1.58857600e-01),
        (3.60, 1.10779151e-02, 1.10909900e-02),
        (3.65, 7.62752205e-04, 7.63924200e-04),
        (3.6537537, 2.44970506e-10, 0.0),
    ),
    "m2": (
        (0.00, 1.00000000e00, 1.00000000e00),
        (0.10, 9.98334988e-01, 9.98335000e-01),
        (0.50, 9.59352705e-01, 9.59352700e-01),
        (1.00, 8.48654103e-01, 8.48654100e-01),
        (3.00, 2.41824078e-01, 2.41824100e-01),
        (4.00, 4.88401323e-02, 4.88401500e-02),
        (4.30, 6.81092861e-03, 6.81094300e-03),
        (4.35, 3.66029676e-04, 3.66030200e-04),
        (4.35287460, 0.0, 0.0),
    ),
    "m2.5": (
        (0.00, 1.00000000e00, 1.00000000e00),
        (0.10, 9.98200161e-01, 9.98335400e-01),
        (0.50, 9.59597754e-01, 9.59597800e-01),
        (1.00, 8.51944199e-01, 8.51944200e-01),
        (4.00, 1.37680751e-01, 1.37680700e-01),
        (5.00, 2.90198639e-02, 2.90191900e-02),
        (5.30, 4.25986419e-03, 4.25954400e-03),
        (5.355, 2.10110537e-05, 2.10089000e-05),
        (5.35527546, 0.0, 0.0),
    ),
    "m3": (
        (0.00, 1.00000000e00, 1.00000000e00),
        (0.10, 9.98335820e-01, 9.98335800e-01),
        (0.50, 9.59839060e-01, 9.59839100e-01),
        (1.00, 8.55057560e-01, 8.55057600e-01),
        (5.00, 1.10819830e-01, 1.10819800e-01),
        (6.00, 4.37379800e-02, 4.37380000e-02),
        (6.80, 4.16778000e-03, 4.16780000e-03),
        (6.90, -1.33650000e-04, 3.60000000e-05),
    ),
    "m4": (
        (0.00, 1.00000000e00, 1.00000000e00),
        (0.10, 1.01585088e00, 9.98336700e-01),
        (0.20, 9.92425032e-01, 9.93386200e-01),
        (0.50, 9.60310891e-01, 9.60310900e-01),
        (1.00, 8.60813812e-01, 8.60813800e-01),
        (5.00, 2.35922731e-01, 2.35922700e-01),
        (10.00, 5.96737717e-02, 5.96727400e-02),
        (14.00, 8.33293035e-03, 8.33052700e-03),
        (14.90, 5.76673836e-04, 5.76418900e-04),
    ),
    "isothermal": (
        (0.00, 0.0, 0.0),
        (0.10, -1.66583386e-03, -1.66583390e-03),
        (0.20, -6.65336710e-03, -6.65336710e-03),
        (0.50, -4.11539573e-02, -4.11539568e-02),
        (1.00, -1.58827678e-01, -1.58827354e-01),
        (1.50, -3.38019425e-01, -3.38013110e-01),
        (2.00, -5.59823004e-01, -5.59962660e-01),
        (2.50, -8.06340871e-01, -8.10019671e-01),
    ),
    "sinh": (
        (0.00, 0.0, 0.0),
        (0.10, 9.98042842e-01, 9.98042841e-01),
        (0.20, 9.92189436e-01, 9.92189435e-01),
        (0.50, 9.51961094e-01, 9.51961102e-01),
        (1.00, 8.18242929e-01, 8.18251667e-01),
        (1.50, 6.25438765e-01, 6.25891608e-01),
        (2.00, 4.06623301e-01, 4.13669104e-01),
    ),
    "sin": (
        (0.00, 1.00000000e00, 1.00000000e00),
        (0.10, 9.98597930e-01, 9.98597936e-01),
        (0.20, 9.94396268e-01, 9.94396273e-01),
        (0.50, 9.65177784e-01, 9.65177789e-01),
        (1.00, 8.63681129e-01, 8.63681103e-01),
        (1.50, 7.05045237e-01, 7.05041925e-01),
        (2.00, 5.06464502e-01, 5.06372033e-01),
    ),
    "exp_mix": (
        (0.00, 0.0, 0.0),
        (0.01, -1.99985444e-04, -1.99990000e-04),
        (0.10, -1.99006434e-02, -1.99006617e-02),
        (0.50, -4.46287089e-01, -4.46287103e-01),
        (1.00, -1.38629436e00, -1.38629436e00),
        (2.00, -3.21887583e00, -3.21887582e00),
        (3.00, -4.60517019e00, -4.60517019e00),
        (4.00, -5.66642669e00, -5.66642669e00),
        (5.00, -6.51619308e00, -6.51619308e00),
        (6.00, -7.22183583e00, -7.22183583e00),
        (7.00, -7.82404602e00, -7.82404601e00),
        (8.00, -8.34877473e00, -8.34877454e00),
        (9.00, -8.81343999e00, -8.81343849e00),
        (10.00, -9.23024811e00, -9.23024103e00),
    ),
    "log6": (
        (0.00, 1.00000000e00, 1.00000000e00),
        (0.01, 1.00010001e00, 1.00010001e00),
        (0.02, 1.00040008e00, 1.00040008e00),
        (0.05, 1.00250313e00, 1.00250313e00),
        (0.10, 1.01005017e00, 1.01005017e00),
        (0.20, 1.04081077e00, 1.04081077e00),
        (0.50, 1.28402542e00, 1.28402542e00),
        (0.70, 1.63231622e00, 1.63231622e00),
        (0.80, 1.89648088e00, 1.89648088e00),
        (0.90, 2.24790799e00, 2.24790799e00),
        (1.00, 2.71828183e00, 2.71828183e00),
    ),
}
_TABLES["linear_poly"] = _TABLES["log6"]

# Rows whose printed reference value is inconsistent with the problem.
_FLAGGED = {
    "m3": frozenset({6.90}),   # positive value past the tabulated first zero 6.8968
    "m4": frozenset({0.10, 0.20}),
    "sinh": frozenset({0.00}),  # y(0) = 1 by the initial condition
}

TABLE_NAMES = tuple(_TABLES)
HOREDT_NAMES = ("m1.5", "m2", "m2.5", "m3", "m4")

FIRST_ZEROS = (
    (1.5, 3.65375374),
    (2.0, 4.35287460),
    (2.5, 5.35527546),
    (3.0, 6.89684862),
    (4.0, 14.9715463),
)


def table_rows(name):
    """Tabulated (x, collocation value, reference value) rows."""
    if name not in _TABLES:
        raise UnknownNameError(f"no table {name!r}; choose from {', '.join(TABLE_NAMES)}")
    return _TABLES[name]


def flagged_rows(name):
    return _FLAGGED.get(name, frozenset())


def comparison_table(name):
    """Reference column of a stored comparison table."""
    rows = table_rows(name)
    return ReferenceSolution(
        name=name, kind="tabulated",
        table=tuple((x, ref) for x, _, ref in rows),
        flagged=flagged_rows(name), source="literature table",
    )


def horedt(name):
    """Horedt's values for m in {1.5, 2, 2.5, 3, 4}, or the first-zero list.

    Accepts "m2", "m2.0", "2" and so on, or "first_zeros".
    """
    if name == "first_zeros":
        return ReferenceSolution(name=name, kind="tabulated", table=FIRST_ZEROS, source="Horedt")
    key = name if str(name).startswith("m") else f"m{name}"
    try:
        key = f"m{float(key[1:]):g}"
    except ValueError:
        pass
    if key not in HOREDT_NAMES:
        raise UnknownNameError(f"no Horedt table {name!r}; choose from {', '.join(HOREDT_NAMES)}, first_zeros")
    ref = comparison_table(key)
    return ReferenceSolution(name=key, kind="tabulated", table=ref.table, flagged=ref.flagged, source="Horedt")


def first_zero_reference(m):
    """Known first zero of the polytrope of index m, or None if it has none.

    m = 0 and m = 1 have closed forms (sqrt 6 and pi).
    """
    m = float(m)
    if m == 0.0:
        return math.sqrt(6.0)
    if m == 1.0:
        return math.pi
    for mm, x0 in FIRST_ZEROS:
        if mm == m:
            return x0
    return None


# Literature expansion coefficients a_0..a_19 at N = 20.
COEFFICIENT_TABLE = {
    1.5: (
        -8.35020235e-02, 4.14892772e-02, 1.06527872e-02, -6.46059281e-03, -9.23628705e-03,
        -5.14378683e-03, -3.99197152e-04, 2.35669147e-03, 3.03971126e-03, 2.53242065e-03,
        1.67607539e-03, 9.36473928e-04, 4.51996582e-04, 1.89757483e-04, 6.90455024e-05,
        2.15040362e-05, 5.58921881e-06, 1.16162729e-06, 1.75835253e-07, 1.59423494e-08,
    ),
    2.0: (
        -7.37260675e-02, 4.61551717e-02, -5.59588313e-04, -2.88264289e-04, -2.03783735e-02,
        2.77045133e-03, -1.30872723e-02, 6.02895464e-03, -8.47557449e-03, 4.00096435e-03,
        -4.94521907e-03, 1.94713984e-03, -2.06474187e-03, 7.66054296e-04, -5.75592272e-04,
        2.13683933e-04, -9.82199992e-05, 3.53103253e-05, -7.82964769e-06, 2.50723737e-06,
    ),
    2.5: (
        -5.84134154e-02, 4.24877591e-02, 9.68579002e-03, -5.69688651e-03, -2.83354601e-03,
        -1.88446376e-03, 2.47503817e-03, 4.20009874e-04, 1.86252286e-03, -1.11760997e-04,
        7.92650268e-04, -1.16018023e-04, 3.37002942e-04, -1.36758208e-05, 1.09800992e-04,
        4.50594242e-06, 2.08231737e-05, 1.59326696e-06, 1.71120723e-06, 1.81759246e-07,
    ),
    3.0: (
        -6.00541969e-01, 1.07145455e00, -1.38004834e00, 1.57447823e00, -1.61608168e00,
        1.49866216e00, -1.28488320e00, 1.01947325e00, -7.46940934e-01, 5.05881970e-01,
        -3.15031208e-01, 1.79413013e-01, -9.27123693e-02, 4.30569575e-02, -1.76863574e-02,
        6.32155250e-03, -1.90188385e-03, 4.63035504e-04, -8.26242326e-05, 9.25997591e-06,
    ),
    4.0: (
        -1.80533469e-02, 1.60801870e-03, 4.91151095e-02, -6.29427069e-02, 5.51425972e-02,
        -5.60724094e-02, 5.00091630e-02, -4.03638627e-02, 3.09682458e-02, -2.19137068e-02,
        1.42286699e-02, -8.51801989e-03, 4.63985922e-03, -2.27214677e-03, 9.90326051e-04,
        -3.76662896e-04, 1.20837515e-04, -3.14970993e-05, 6.09225231e-06, -7.06745003e-07,
    ),
}


def reference_for(name):
    """Default comparison reference for a problem name."""
    if name in _EXACT:
        return exact(name)
    if name in _SERIES:
        return series(name)
    return horedt(name)


def write_reference_csv(ref, fh, xs=None):
    """Write x,y rows. Tabulated references ignore xs and write every row."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["x", "y_reference", "flagged"])
    if ref.kind == "tabulated":
        pairs = ref.table
    else:
        if xs is None:
            top = ref.valid_to if math.isfinite(ref.valid_to) else 10.0
            xs = np.linspace(0.0, top, 21)
        pairs = [(float(x), ref.value(x)) for x in xs]
    for x, y in pairs:
        w.writerow([f"{x:.7E}", f"{y:.7E}", int(x in ref.flagged)])
