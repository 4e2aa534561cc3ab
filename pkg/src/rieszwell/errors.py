"""Exception types shared by every module of the package."""


class RieszWellError(Exception):
    """Base class for all package errors."""


class DomainError(RieszWellError, ValueError):
    """An argument lies outside the validity domain of an operation."""


class PoleError(DomainError):
    """A Gamma-type order sits on (or within 1e-6 of) a non-positive integer."""


class BranchCutError(DomainError):
    """A complex argument lies on the negative real axis, where the
    principal branch is not defined."""


class ConvergenceError(RieszWellError, RuntimeError):
    """An iterative scheme did not reach the requested tolerance.

    Carries the best value obtained and the error actually achieved so
    callers can decide whether the partial result is still usable.
    """

    def __init__(self, message, best=None, achieved_error=None):
        super().__init__(message)
        self.best = best
        self.achieved_error = achieved_error
