"""Exception hierarchy shared by every module."""


class KTraceError(Exception):
    """Base class for all errors raised by :mod:`ktrace`."""


class DomainError(KTraceError, ValueError):
    """An input lies outside the domain of the requested operation."""


class ConvergenceError(KTraceError, ArithmeticError):
    """An iterative routine hit its iteration cap."""


class ResourceLimitError(KTraceError):
    """A combinatorial size cap would be exceeded."""


class UnsupportedDistributionError(DomainError):
    """A density was requested at a parameter where it has no pointwise form."""


class QuadratureError(KTraceError, ArithmeticError):
    """An integrand produced a non-finite value at a quadrature node."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node
