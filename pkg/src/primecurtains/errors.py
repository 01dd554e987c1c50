"""Exception types shared across modules.

Invalid arguments raise ``ValueError``; indices or cutoffs outside the data
raise ``IndexError``.
"""


class DomainError(ValueError):
    """Argument outside the mathematical domain of a function."""


class ConvergenceError(RuntimeError):
    """A numerical routine stopped before meeting its tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved
