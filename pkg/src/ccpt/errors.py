"""Exception types shared across the package."""


class CcptError(Exception):
    """Base class for package-specific failures."""


class SignalIoError(CcptError):
    """Raised when a signal or matrix file cannot be read or written."""


class NumericalError(CcptError):
    """Raised when a linear solve is too ill-conditioned to trust."""


class NoPeriodicContent(NumericalError):
    """Raised when a strength profile has no block above the threshold."""
