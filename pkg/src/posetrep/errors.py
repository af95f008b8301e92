"""Shared exception types."""


class InvalidParameterError(ValueError):
    """A group family or operation received parameters it cannot accept."""


class InfiniteGroupError(RuntimeError):
    """An operation that needs element enumeration was given an infinite group."""


class CapExceededError(RuntimeError):
    """A configured size or memory cap was exceeded; the payload says where."""


class ParseError(ValueError):
    """Malformed descriptor, word, or presentation text."""
