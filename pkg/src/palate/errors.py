"""Exception types shared across the package."""


class PalateError(Exception):
    """Base class for all errors raised by this package."""


class DataError(PalateError):
    """Malformed, unreadable, or dimensionally inconsistent input data."""


class NumericError(PalateError):
    """A numerical routine failed to produce a usable result."""
