"""Exception types raised by the engine."""


class AlgebraError(Exception):
    """Base class for every engine error."""


class RingMismatch(AlgebraError):
    pass


class ShapeMismatch(AlgebraError):
    pass


class NotGraded(AlgebraError):
    pass


class DeclaredPrimeInvalid(AlgebraError):
    pass


class NotNonZeroDivisor(AlgebraError):
    pass


class SearchExhausted(AlgebraError):
    pass


class SaturationCapExceeded(AlgebraError):
    pass


class TorsionInput(AlgebraError):
    pass


class ZeroDual(AlgebraError):
    pass


class PrimeNotDeclared(AlgebraError):
    pass


class StabilizationCapExceeded(AlgebraError):
    pass


class NotAFactorization(AlgebraError):
    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class SizeMismatch(AlgebraError):
    pass


class NotPeriodic(AlgebraError):
    pass


class LiftFailed(AlgebraError):
    pass


class NotInSpan(AlgebraError):
    pass


class RankCapExceeded(AlgebraError):
    pass


class ThetaUndefined(AlgebraError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
