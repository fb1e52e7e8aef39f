from .core import (Assignment, CycleStrategy, Edge, LocalRule, PathSegment, correct_count,
                   guess, is_admissible, make_strategy)
from .errors import BudgetExceeded, DomainError, PreconditionError, SizeMismatch

__all__ = [
    "Assignment", "CycleStrategy", "Edge", "LocalRule", "PathSegment", "correct_count",
    "guess", "is_admissible", "make_strategy",
    "BudgetExceeded", "DomainError", "PreconditionError", "SizeMismatch",
]
