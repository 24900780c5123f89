"""Exception hierarchy shared by the library and the CLI."""
from typing import Optional


class EulerFactorError(Exception):
    """Base class for all euler_factor errors."""


class InputError(EulerFactorError, ValueError):
    """Invalid argument: bad index pair, zero generator, malformed matrix."""


class DependentGenerators(EulerFactorError):
    """The two generators are linearly dependent (within tolerance)."""


class NotControllableWithTwoLevels(DependentGenerators):
    """A+BM and A+BN are collinear, so two control levels cannot steer the system."""


class InternalSolverFailure(EulerFactorError):
    """No branch of the factorizer produced a residual within tolerance."""

    def __init__(self, message: str, diagnostics: Optional[dict] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
