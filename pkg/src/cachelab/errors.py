"""Exception types shared across the package."""


class CacheLabError(Exception):
    """Base class for all cachelab errors."""


class InvalidCapacity(CacheLabError, ValueError):
    """Cache capacity must be a positive integer."""


class RequestTooLarge(CacheLabError, ValueError):
    """A single request is larger than the cache capacity.

    The eviction loop could never make room for such a file, so the
    request is rejected instead of served-and-bypassed.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class InstanceTooLarge(CacheLabError, ValueError):
    """Instance exceeds the configured limits of the exact offline search."""


class InvalidParams(CacheLabError, ValueError):
    """Parameter outside the domain of a formula or constructor."""


class InvalidSizes(CacheLabError, ValueError):
    """Cache-size pair violates h <= k."""


class NTooSmall(CacheLabError, ValueError):
    """Range n cannot support the adversarial construction.

    Carries the smallest feasible n, when one was found by search.
    """

    def __init__(self, message, minimal_n=None):
        super().__init__(message)
        self.minimal_n = minimal_n


class ParseError(CacheLabError, ValueError):
    """Malformed trace input."""

    def __init__(self, line_no, reason):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class ConsistencyError(CacheLabError, ValueError):
    """Same file id seen with conflicting (size, cost)."""
