"""Exception hierarchy shared by all modules.

``InputError`` covers bad user input (CLI exit code 2); ``InternalError``
covers broken invariants that can only come from a bug (CLI exit code 3).
"""


class SpzetaError(Exception):
    pass


class InputError(SpzetaError, ValueError):
    pass


class InternalError(SpzetaError, RuntimeError):
    pass


class VariableMismatch(InputError):
    pass


class UnassignedVariable(InputError):
    pass


class ZeroToNegativePower(InputError, ZeroDivisionError):
    pass


class OrderMismatch(InputError):
    pass


class NonUnitConstantTerm(InputError):
    pass


class NotDivisible(InternalError):
    pass


class NonIntegralResult(InternalError):
    pass


class ResidualExponent(InternalError):
    pass


class UnsupportedRank(InputError):
    pass


class LengthMismatch(InputError):
    pass


class NotDominant(InputError):
    pass


class NegativeDegree(InputError):
    pass


class OracleBudgetExceeded(InputError):
    pass


class UnsupportedPower(InputError):
    pass


class DivergenceGuard(InputError):
    pass


class PoleProximity(InputError):
    pass
