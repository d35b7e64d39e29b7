"""Rational Chebyshev (second kind) collocation for Lane-Emden type equations."""

from .analysis import (
    DecayProfile,
    ErrorTable,
    FittedZero,
    ZeroResult,
    decay_profile,
    error_table,
    first_zero,
    fit_first_zero,
)
from .basis import eval_classical, eval_rcs, gauss_chebyshev2, inner_product_rcs
from .collocation import CollocationSystem, NodeSet, assemble, make_nodes, residual_at
from .errors import (
    AbscissaMismatchError,
    DomainError,
    InsufficientNodesError,
    NoZeroFoundError,
    NonFiniteError,
    RCSError,
    SingularJacobianError,
    UnknownNameError,
)
from .newton import NewtonConfig, SolveReport, newton_solve, solve_problem
from .problems import LaneEmdenProblem, builtin, custom_problem, standard_lane_emden
from .reference import ReferenceSolution, exact, horedt, wazwaz_series
from .trial import SpectralSolution, eval_trial

__version__ = "0.1.0"
