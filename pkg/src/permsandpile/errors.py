"""Exception types shared across the package."""


class SizeGuardError(ValueError):
    """Raised when an enumeration would exceed its configured size limit."""


class NotConnectedError(ValueError):
    """Raised when a sandpile operation receives a disconnected graph."""


class NotRecurrentError(ValueError):
    """Raised when a configuration is expected to be recurrent but is not."""
