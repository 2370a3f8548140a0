"""Exception taxonomy shared by all modules."""


class AnomalabError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AnomalabError):
    """Invalid mathematical input (bad precondition, mismatched parents)."""


class CapError(AnomalabError):
    """A configurable resource cap was exceeded."""

    def __init__(self, cap_name, value, limit):
        self.cap_name = cap_name
        self.value = value
        self.limit = limit
        super().__init__(
            f"cap {cap_name!r} exceeded: {value} > {limit} "
            f"(override via ANOMALAB_CAPS)"
        )


class ConsistencyError(AnomalabError):
    """An internal exact self-check failed; signals a convention or code bug,
    not a user error."""
