class PmdsError(Exception):
    """Base class for every error raised by the library."""


class FieldError(PmdsError, ValueError):
    pass


class FieldMismatchError(PmdsError, TypeError):
    pass


class FieldDivisionByZeroError(PmdsError, ZeroDivisionError):
    pass


class ParameterError(PmdsError, ValueError):
    pass


class MatrixShapeError(PmdsError, ValueError):
    pass


class RankDeficientError(PmdsError, ValueError):
    def __init__(self, message: str, rank: int = None, expected: int = None):
        super().__init__(message)
        self.rank = rank
        self.expected = expected


class ConstructionError(PmdsError, ValueError):
    def __init__(self, message: str, bound: int = None):
        super().__init__(message)
        self.bound = bound


class BoundHypothesisError(PmdsError, ValueError):
    pass


class StandardizationError(PmdsError):
    def __init__(self, failure):
        super().__init__(failure.detail)
        self.failure = failure


class DecodeError(PmdsError):
    pass


class UncorrectableError(DecodeError):
    def __init__(self, message: str, deficit: int):
        super().__init__(message)
        self.deficit = deficit


class PatternOutsideFamilyError(DecodeError):
    pass


class BudgetExceededError(PmdsError):
    def __init__(self, message: str, required: int, budget: int):
        super().__init__(message)
        self.required = required
        self.budget = budget


class FormatError(PmdsError, ValueError):
    pass
