"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class MDPError(Exception):
    """Base class for all errors raised by :mod:`mdpconv`."""


class BudgetExceeded(MDPError):
    """A computation would exceed an explicit work budget.

    ``budget`` names the budget, ``required`` and ``limit`` carry the numbers
    so that callers (notably the CLI) can report which limit was hit.
    """

    def __init__(self, budget: str, required: int, limit: int):
        self.budget = budget
        self.required = required
        self.limit = limit
        super().__init__(f"{budget} budget exceeded: need {required}, limit {limit}")


class SizeBudgetExceeded(BudgetExceeded):
    pass


class EnumerationBudgetExceeded(BudgetExceeded):
    pass


class FactorizationBudgetExceeded(BudgetExceeded):
    pass


class MinorBudgetExceeded(BudgetExceeded):
    pass


# field arithmetic
class NotPrime(MDPError, ValueError):
    pass


class DegreeZero(MDPError, ValueError):
    pass


class NotIrreducible(MDPError, ValueError):
    pass


class DivisionByZero(MDPError, ZeroDivisionError):
    pass


class FieldMismatch(MDPError, ValueError):
    pass


class ZeroConjugator(MDPError, ValueError):
    pass


# linear algebra
class NotSquare(MDPError, ValueError):
    pass


class IndexOutOfRange(MDPError, IndexError):
    pass


class NotStrictlyIncreasing(MDPError, ValueError):
    pass


class BothZero(MDPError, ValueError):
    pass


# codes
class RankDeficientG0(MDPError, ValueError):
    pass


class KernelRankDeficient(MDPError):
    pass


class InvalidParams(MDPError, ValueError):
    pass


class ZeroLambda(InvalidParams):
    pass


class NotMDP(MDPError):
    pass


class InvalidConfig(MDPError, ValueError):
    pass


class SchemaError(MDPError, ValueError):
    """Malformed descriptor JSON; ``pointer`` is an RFC 6901 JSON pointer."""

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")
