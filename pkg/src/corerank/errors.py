"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input matrix, file, or parameter fails validation."""
