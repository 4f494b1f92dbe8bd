"""Exception types raised across the package."""


class ScxError(Exception):
    """Base class for all package errors."""


class ClosureViolation(ScxError, ValueError):
    pass


class DuplicateSimplex(ScxError, ValueError):
    pass


class UnknownNodeId(ScxError, ValueError):
    pass


class NotFilled(ScxError, ValueError):
    pass


class NonIntegerEntry(ScxError, ArithmeticError):
    """An off-diagonal of B12 B12^T was not divisible by 4."""


class EmptyActiveSet(ScxError, ValueError):
    pass


class ZeroVolume(ScxError, ValueError):
    pass


class TooLarge(ScxError, ValueError):
    pass


class NoFeasibleCut(ScxError, ValueError):
    pass


class NoConvergence(ScxError, ArithmeticError):
    pass


class DimensionMismatch(ScxError, ValueError):
    pass


class Disconnected(ScxError, ValueError):
    pass


class DegeneratePoints(ScxError, ValueError):
    pass


class NodeSetMismatch(ScxError, ValueError):
    pass


class ParseError(ScxError, ValueError):
    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason
