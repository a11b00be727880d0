"""Exception types shared across the package."""


class TripatError(Exception):
    """Base class for all package errors."""


class InvalidSizeError(TripatError, ValueError):
    """A size argument is below the minimum for its pattern kind."""


class WindowError(TripatError, ValueError):
    """A window placement requires cells the parent does not have."""


class InvalidSpecError(TripatError, ValueError):
    """A decorated-pattern spec is internally inconsistent."""


class ResourceCapError(TripatError, RuntimeError):
    """A configured level or memory cap would be exceeded."""


class SaturationError(TripatError, RuntimeError):
    """The enumeration level cap was reached without finding a plateau."""
