"""Exception hierarchy shared by all modules."""


class RZError(Exception):
    """Base class for every error raised by this package."""


class ParseError(RZError, ValueError):
    pass


class NonCoprime(ParseError):
    pass


class Empty(ParseError):
    pass


class Malformed(ParseError):
    pass


class NotSymmetric(RZError, ValueError):
    pass


class EmptyPolygon(RZError, ValueError):
    pass


class IndexOutOfRange(RZError, IndexError):
    pass


class NotIntegral(RZError, ArithmeticError):
    pass


class ClosedFormMismatch(RZError, AssertionError):
    pass


class NotAUnit(RZError, ZeroDivisionError):
    pass


class RingMismatch(RZError, ValueError):
    pass


class PrecisionExhausted(RZError, ArithmeticError):
    pass


class VectorOutsideWindow(RZError, ValueError):
    pass


class WindowTooSmall(RZError, ValueError):
    pass


class NotSelfDualUpToScalar(RZError, ValueError):
    pass


class NotDieudonne(RZError, ValueError):
    pass


class BudgetExceeded(RZError, RuntimeError):
    def __init__(self, estimate, budget, what="search space"):
        self.estimate = estimate
        self.budget = budget
        super().__init__(f"{what} estimate {estimate} exceeds budget {budget}")


class CensusAssertion(RZError, AssertionError):
    """A census record failed one of the structural checks."""

    def __init__(self, check, record=None):
        self.check = check
        self.record = record
        super().__init__(f"census check failed: {check}")


class PreconditionViolated(RZError, ValueError):
    pass


class DegreeCapExceeded(RZError, RuntimeError):
    pass
