"""Exception types shared across the package."""


class BoundExceededError(ValueError):
    """Raised when a requested size is above the configured enumeration bound."""


class ArityMismatchError(ValueError):
    """Raised when two diagrams or maps cannot be composed."""


class ResourceLimitError(RuntimeError):
    """Raised when an iterative search grows past its configured limit."""

    def __init__(self, message, frontier_size=None):
        super().__init__(message)
        self.frontier_size = frontier_size
