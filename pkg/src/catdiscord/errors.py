"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class PositivityError(DomainError):
    """A matrix that should be a density operator has a negative eigenvalue."""


class DegenerateError(DomainError):
    """A normalization or basis construction collapsed to zero."""


class TruncationWarning(UserWarning):
    """A truncated Fock-space vector lost more norm than the tolerated deficit."""
