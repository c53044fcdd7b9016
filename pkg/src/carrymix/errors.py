"""Exception types shared across carrymix."""


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagreed.

    This always indicates a bug, never bad input.
    """


class ResourceCapError(ValueError):
    """A request exceeds a documented enumeration or size cap."""
