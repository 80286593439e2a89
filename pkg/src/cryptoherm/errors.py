"""Exception hierarchy shared by all modules."""


class CryptohermError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(CryptohermError, ValueError):
    pass


class DomainError(CryptohermError, ValueError):
    """Input lies outside the region where the requested object exists."""


class NumericError(CryptohermError, ArithmeticError):
    pass


class DegeneracyError(NumericError):
    pass


class StructureError(CryptohermError):
    """The Dieudonne nullspace does not have the expected dimension."""


class NormalizationError(CryptohermError):
    """A nullspace basis cannot be brought to first-row normal form."""


class ConjectureViolation(CryptohermError):
    """A closed-form boundary element failed its exact verification."""


class ReconstructionError(NumericError):
    """Spectral weights do not reproduce the metric they came from."""
