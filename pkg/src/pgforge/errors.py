"""Exception types shared across the package."""


class ForgeError(Exception):
    """Base class for all errors raised by pgforge."""


class PresentationError(ForgeError):
    """Malformed presentation text or structurally invalid relation data."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConsistencyError(ForgeError):
    """An operation required a consistent presentation and got one that
    fails the collection consistency conditions."""


class MixedPresentationError(ForgeError):
    """Two operands belong to different presentations.  Never coerced."""


class DomainError(ForgeError):
    """Arguments violate a documented precondition (subgroup not normal,
    not abelian, parameter out of range, ...)."""


class HypothesesUnmet(ForgeError):
    """A theorem-level construction was asked to run on a group that does
    not satisfy its hypotheses.  The harness maps this to a skip."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class CapExceeded(ForgeError):
    """A desk-scale cap would be exceeded.  Work is refused outright, never
    silently truncated, because partial enumeration would corrupt
    for-all checks."""

    def __init__(self, what, needed, cap):
        super().__init__(f"{what}: needs {needed}, cap is {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap
