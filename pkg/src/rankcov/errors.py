"""Exceptions shared across the package."""


class BudgetExceeded(RuntimeError):
    """A node, step, or enumeration budget ran out before an answer was proven.

    Callers report this as "unavailable", never as a number.
    """
