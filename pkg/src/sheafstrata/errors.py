"""Domain errors. The CLI maps any SheafStrataError to exit code 1."""


class SheafStrataError(Exception):
    pass


class ParseError(SheafStrataError):
    pass


class DegreeMismatchError(SheafStrataError):
    pass


class TwistMismatchError(SheafStrataError):
    pass


class ShapeError(SheafStrataError):
    pass


class InvalidPresentationError(SheafStrataError):
    pass


class NotInjectiveError(SheafStrataError):
    pass


class NoStratumMatchError(SheafStrataError):
    pass


class RetryBudgetError(SheafStrataError):
    pass


class InternalCheckError(SheafStrataError):
    """Two independent computations of the same quantity disagreed."""
