"""Exception taxonomy shared across the library."""


class QskewError(Exception):
    """Base class for all library-specific errors."""


class NotHermitian(QskewError):
    """Input matrix is not Hermitian within tolerance."""


class NoConvergence(QskewError):
    """Iterative eigensolver exceeded its sweep cap."""


class DimensionMismatch(QskewError):
    """Operands have incompatible dimensions."""


class DimensionOverflow(QskewError):
    """A tensor product would exceed the configured dimension cap."""


class NotPSD(QskewError):
    """Matrix has an eigenvalue below the negativity tolerance."""


class UnsupportedDimension(QskewError):
    """Requested dimension is outside the supported set."""


class DomainError(QskewError):
    """Scalar argument outside the mathematical domain of a kernel."""


class UnknownMetric(QskewError):
    """No monotone function registered under the requested name."""


class InvalidSpectrum(QskewError):
    """Vector is not a probability spectrum (nonnegative, unit sum)."""


class InvalidSampleCount(QskewError):
    """Monte-Carlo routines need at least two samples."""


class NumericalError(QskewError):
    """A provably-signed quantity came out beyond round-off tolerance."""


class InvalidSpec(QskewError):
    """StateSpec fields are inconsistent or out of range."""


class FileError(QskewError):
    """State file missing or malformed."""


class NotPure(QskewError):
    """Operation requires a pure total state."""
