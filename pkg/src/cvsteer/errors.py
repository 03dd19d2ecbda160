"""Exception types shared across the package."""


class CvSteerError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(CvSteerError, ValueError):
    """An argument is out of the admissible range (negative rate, r < 0, ...)."""


class UnphysicalStateError(CvSteerError, ValueError):
    """A covariance matrix violates symmetry, positivity or the uncertainty bound."""


class DegenerateInputError(CvSteerError, ValueError):
    """A quantity cannot be formed (zero conditioning variance, singular CM)."""


class GridResolutionError(CvSteerError, ValueError):
    """A numerical grid is too small or too coarse for the requested state."""


class MultiRootError(CvSteerError, RuntimeError):
    """A threshold search found more than one sign change.

    The offending brackets are attached as ``brackets``.
    """

    def __init__(self, message, brackets):
        super().__init__(message)
        self.brackets = list(brackets)


class NumericalPairingError(CvSteerError, RuntimeError):
    """Eigenvalues of the symplectic spectrum failed to pair up within tolerance."""
