"""Exception types raised across the package."""


class RQObjError(Exception):
    """Base class for all package errors."""


class UnsupportedAlgorithmError(RQObjError, ValueError):
    """Unknown pseudo-random generator id."""


class UnsupportedMethodError(RQObjError, ValueError):
    """Unknown generator method option string."""


class DomainError(RQObjError, ValueError):
    """Input outside the domain an operation is defined on."""


class DegenerateInputError(RQObjError, ValueError):
    """Input is valid in type but degenerate (zero norm, rank deficient)."""


class ShapeError(RQObjError, ValueError):
    """Array dimensions do not match the requested factorization."""


class NumericalFailureError(RQObjError, ArithmeticError):
    """An iterative kernel did not converge."""


class InternalError(RQObjError, RuntimeError):
    """A post-condition that should hold by construction was violated."""


class UsageError(RQObjError, ValueError):
    """Invalid harness configuration or command line."""
