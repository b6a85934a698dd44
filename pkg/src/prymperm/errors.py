"""Exception types shared across the package."""


class PrymError(Exception):
    """Base class for every error raised by this package."""


class MixedRadicand(PrymError):
    pass


class DivisionByZero(PrymError, ZeroDivisionError):
    pass


class NotADiscriminant(PrymError):
    pass


class EmptyLocus(PrymError):
    pass


class ConnectedLocus(PrymError):
    pass


class InadmissibleSpec(PrymError):
    pass


class InvalidSurface(PrymError):
    pass


class SingularMatrix(PrymError):
    pass


class BudgetExceeded(PrymError):
    pass


class NonPeriodic(PrymError):
    pass


class NotCommensurable(PrymError):
    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class ImageNotMarked(PrymError):
    pass


class EntriesOutsideOrders(PrymError):
    pass


class NotASubgroup(PrymError):
    pass


class NotSquareTiled(PrymError):
    pass


class NotPrimitive(PrymError):
    pass


class OutsideRestrictedCase(PrymError):
    pass
