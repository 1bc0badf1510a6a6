"""Exception types shared across the package."""


class BudgetExceededError(RuntimeError):
    """Raised when a computation would exceed its combinatorial budget."""
