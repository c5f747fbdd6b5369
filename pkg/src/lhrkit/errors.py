"""Exception types shared across modules."""


class LhrError(Exception):
    """Base class for every error raised by this package."""


class BudgetExceeded(LhrError):
    """A search or reduction ran past its step or node budget."""

    def __init__(self, what, budget):
        super().__init__(f"{what}: budget of {budget} exhausted")
        self.what = what
        self.budget = budget


class DomainError(LhrError):
    """An argument lies outside the domain of a function."""


class PreconditionFailed(LhrError):
    """An input does not satisfy the precondition of an operation."""
