"""Exception hierarchy shared by all modules."""


class GameError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GameError):
    """Invalid input: bad graph, bad coloring, bad payoff table, bad flag."""


class BudgetError(GameError):
    """An enumeration would exceed the configured budget.

    ``required`` carries the budget that would be needed to run the scan.
    """

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class InvariantError(GameError):
    """A mathematically guaranteed property failed to hold.

    Raised when a self-check that should be impossible to trip (a certified
    splitting failing its condition, a guaranteed index not existing) fails.
    Seeing this exception means a bug, not bad input.
    """
