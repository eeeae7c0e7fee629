"""Exception types raised across the package."""


class SigmaSopError(Exception):
    """Base class for all errors raised by this package."""


class UnknownElement(SigmaSopError):
    def __init__(self, label):
        super().__init__(f"unknown element: {label!r}")
        self.label = label


class CycleDetected(SigmaSopError):
    """The generating relation has a directed cycle, so it closes to a reflexive pair."""

    def __init__(self, cycle):
        super().__init__("relation contains a cycle: " + " < ".join(cycle))
        self.cycle = list(cycle)


class NotAStrictOrder(SigmaSopError):
    pass


class BoundExceeded(SigmaSopError):
    def __init__(self, what, value, bound):
        super().__init__(f"{what}={value} exceeds the configured bound {bound}")
        self.value = value
        self.bound = bound


class DegenerateParameter(SigmaSopError):
    pass


class PatternError(SigmaSopError):
    """Structural invariant of a consistency pattern violated."""


class SetSystemError(SigmaSopError):
    pass


class InvalidEmbedding(SigmaSopError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)
