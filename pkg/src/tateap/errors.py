class UsageError(ValueError):
    """Bad arguments: wrong shapes, out-of-range sizes, malformed input."""


class DomainError(ValueError):
    """Mathematically invalid input, e.g. a point that is not on the curve."""
