"""Exception hierarchy shared across the package."""


class PBlocksError(Exception):
    """Base class for all package errors."""


class InputError(PBlocksError, ValueError):
    """A caller-supplied value violates a documented precondition."""


class ResourceError(PBlocksError, RuntimeError):
    """A configured desk-scale ceiling was exceeded."""


class InternalError(PBlocksError, RuntimeError):
    """An internal consistency check failed; indicates a bug, never bad input."""
