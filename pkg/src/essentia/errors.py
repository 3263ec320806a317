class EssentiaError(Exception):
    """Base class for errors raised by this package."""


class DomainError(EssentiaError):
    """An input violates a mathematical precondition (wrong ring, not a
    submodule, zero where non-zero is required, ...)."""


class CapacityError(EssentiaError):
    """An input is valid but exceeds a documented desk-scale bound."""
