"""Exception types shared across the package."""


class LiecharError(Exception):
    """Base class for errors raised by this package."""


class RankMismatchError(LiecharError, ValueError):
    """Objects built over different ranks were combined."""


class BudgetError(LiecharError, RuntimeError):
    """A tensor product was refused because its smaller factor is too large.

    Carries the offending pair so callers know which fixture to load instead.
    """

    def __init__(self, message, pair=None, dim=None, budget=None):
        super().__init__(message)
        self.pair = pair
        self.dim = dim
        self.budget = budget


class ParseError(LiecharError, ValueError):
    """Syntax error in polynomial or fixture text, with a byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class OperatorIncompleteError(LiecharError, KeyError):
    """An operator application touched a coefficient that is not populated."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair
