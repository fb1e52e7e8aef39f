"""Exception types shared across the package."""


class HatCycleError(Exception):
    pass


class SizeMismatch(HatCycleError, ValueError):
    pass


class DomainError(HatCycleError, ValueError):
    pass


class PreconditionError(HatCycleError, ValueError):
    pass


class BudgetExceeded(HatCycleError, RuntimeError):
    """Raised when an exhaustive search would exceed its budget.

    ``partial`` carries whatever the search had accumulated (for example a
    method log) so an inconclusive run can still be inspected.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
