"""Exception hierarchy shared by every module."""


class OctagonError(Exception):
    """Base class for all errors raised by riemann_octagon."""


class DomainError(OctagonError, ValueError):
    """An argument lies outside the domain of the operation."""


class RegionError(DomainError):
    """The parameter pair (a, alpha) is outside the admissible region."""


class BelowMinimumError(DomainError):
    """A perimeter (or its T value) lies below the regular-octagon minimum."""


class UnphysicalStateError(DomainError):
    """An su(1,1) state violates J**2 >= C >= 0."""


class ConsistencyError(OctagonError):
    """A computed object failed an internal geometric or algebraic check."""


class NumericError(OctagonError, ArithmeticError):
    """A numerical procedure (quadrature, root bracket, ...) failed.

    ``estimate`` carries the best value reached, when one exists.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class SingularStateError(NumericError):
    """Integration reached J**2 - C ~ 0; ``partial`` holds the states so far."""

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)
