"""Exception hierarchy shared by every module."""


class SeaError(Exception):
    """Base class for all errors raised by seacount."""


class InvalidArgumentError(SeaError, ValueError):
    pass


class ResourceLimitError(SeaError):
    """A configured budget (sieve range, naive-count range, ...) was exceeded."""

    def __init__(self, what, value, limit):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what} = {value} exceeds the configured limit {limit}")


class BadReductionError(SeaError):
    def __init__(self, p, reason):
        self.p = p
        super().__init__(f"bad reduction at p = {p}: {reason}")


class DataNotFoundError(SeaError):
    pass


class CorruptDataError(SeaError):
    pass


class DegenerateIsogenyError(SeaError):
    """Elkies' kernel computation hit a degenerate configuration.

    Callers are expected to compute the trace modulo this ell with Schoof's
    method instead.
    """


class InternalDefectError(SeaError, AssertionError):
    """A postcondition that should be impossible was violated."""
