"""Exception hierarchy shared by all modules."""


class GZError(Exception):
    """Base class for mathematical precondition failures."""


class DimensionError(GZError, ValueError):
    """Level, size or shape outside the admissible range."""


class SkewnessError(GZError, ValueError):
    """Input expected to be skew-symmetric is not."""


class ConvergenceError(GZError, ArithmeticError):
    """An iterative routine failed to converge."""


class GenericityError(GZError, ValueError):
    """Input violates a genericity (regularity / disjoint spectra) assumption."""


class OffFiberError(GZError, ValueError):
    """Matrix does not lie on the requested moment-map fiber."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
