"""Exception types raised across the package."""


class RCSError(Exception):
    """Base class for all package errors."""


class DomainError(RCSError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class InsufficientNodesError(RCSError, ValueError):
    """Quadrature rule too small to integrate the requested product exactly."""


class UnknownNameError(RCSError, KeyError):
    """Lookup of a problem or reference by an unrecognised name."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class SingularJacobianError(RCSError, ArithmeticError):
    """LU factorisation produced a pivot too small to divide by."""


class NonFiniteError(RCSError, ArithmeticError):
    """Residual became NaN or infinite."""


class NoZeroFoundError(RCSError, ValueError):
    """The approximant does not change sign on the searched interval."""


class AbscissaMismatchError(RCSError, ValueError):
    """Requested abscissa is not one of the rows of a tabulated reference."""
