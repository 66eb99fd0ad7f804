"""Exception hierarchy."""


class FreezeSetError(Exception):
    """Base class for all errors raised by this package."""


class ImageError(FreezeSetError, ValueError):
    """Invalid digital image, point, or point set."""


class DisconnectedImageError(FreezeSetError):
    """An operation that needs a connected image received a disconnected one."""


class NotContinuousError(FreezeSetError):
    """A self-map that must be continuous is not."""


class CapExceededError(FreezeSetError):
    """Input too large for an exhaustive procedure."""


class BudgetExhaustedError(FreezeSetError):
    """A search ran out of its node budget before reaching a verdict."""
