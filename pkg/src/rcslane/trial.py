"""Boundary-embedded approximant u(x) = A + B x + x^2 sum_i a_i U*_i(x)."""

import json
from dataclasses import dataclass, field

import numpy as np

from .basis import eval_rcs
from .errors import DomainError


@dataclass(frozen=True, eq=False)
class SpectralSolution:
    coeffs: np.ndarray
    q: float
    A: float
    B: float
    problem_name: str = ""
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).ravel()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if c.size < 1:
            raise DomainError("need at least one coefficient")
        if not self.q > 0:
            raise DomainError("q must be positive")

    def __eq__(self, other):
        if not isinstance(other, SpectralSolution):
            return NotImplemented
        return (np.array_equal(self.coeffs, other.coeffs) and self.q == other.q and self.A == other.A
                and self.B == other.B and self.problem_name == other.problem_name)

    __hash__ = None

    @property
    def N(self):
        return self.coeffs.size - 1

    def __call__(self, x):
        return eval_trial(self, x)[0]

    def derivative(self, x):
        return eval_trial(self, x)[1]

    def to_dict(self):
        doc = {
            "problem": self.problem_name,
            "N": self.N,
            "q": self.q,
            "A": self.A,
            "B": self.B,
            "coeffs": [float(c) for c in self.coeffs],
        }
        doc.update(self.info)
        return doc

    @classmethod
    def from_dict(cls, doc):
        coeffs = doc["coeffs"]
        if "N" in doc and len(coeffs) != int(doc["N"]) + 1:
            raise DomainError(f"expected {int(doc['N']) + 1} coefficients, found {len(coeffs)}")
        extra = {k: v for k, v in doc.items() if k not in ("problem", "N", "q", "A", "B", "coeffs")}
        return cls(
            coeffs=np.asarray(coeffs, dtype=float),
            q=float(doc["q"]),
            A=float(doc["A"]),
            B=float(doc["B"]),
            problem_name=doc.get("problem", ""),
            info=extra,
        )

    def dumps(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def loads(cls, text):
        return cls.from_dict(json.loads(text))

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.dumps(indent=2))
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.loads(fh.read())


def expansion(coeffs, x):
    """S, S', S'' for S(x) = sum_i a_i U*_i(x)."""
    coeffs = np.asarray(coeffs, dtype=float)
    be = eval_rcs(coeffs.size - 1, x)
    return (
        np.tensordot(coeffs, be.values, axes=1),
        np.tensordot(coeffs, be.d1, axes=1),
        np.tensordot(coeffs, be.d2, axes=1),
    )


def eval_trial(sol, x):
    """Return (u, du, ddu) at x >= 0 (scalar or array)."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("trial function is defined for x >= 0 only")
    S, dS, ddS = expansion(sol.coeffs, x)
    u = sol.A + sol.B * x + x**2 * S
    du = sol.B + 2.0 * x * S + x**2 * dS
    ddu = 2.0 * S + 4.0 * x * dS + x**2 * ddS
    if u.ndim == 0:
        return float(u), float(du), float(ddu)
    return u, du, ddu
