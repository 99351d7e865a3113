"""Exception types shared across the toolkit."""

from __future__ import annotations


class UnsupportedField(ValueError):
    """Requested field size is outside the supported set."""


class IndexOutOfRange(ValueError):
    """A user or column index falls outside the declared range."""


class SelfInclusion(ValueError):
    """A side-information set contains the user's own index."""


class UnknownInstance(KeyError):
    """No catalog instance is registered under the given name."""


class UnknownCode(KeyError):
    """No builtin code is registered under the given name."""


class DimensionMismatch(ValueError):
    """Matrix or code dimensions do not match the instance."""


class AlphabetMismatch(ValueError):
    """A message symbol is not an element of the code's alphabet."""


class LengthMismatch(ValueError):
    """A message vector has the wrong number of symbols."""


class NotAcyclic(ValueError):
    """The operation requires an acyclic vertex set."""


class InvalidBasis(ValueError):
    """A search basis is not an acyclic set of the required size."""


class BudgetExceeded(RuntimeError):
    """An enumeration or search ran past its node budget.

    Carries whatever partial progress is sound to report: ``best`` is the
    best certified lower bound so far (meaning depends on the caller),
    ``nodes`` the count of nodes visited before the cap tripped.
    """

    def __init__(self, message: str, *, best=None, nodes: int | None = None):
        super().__init__(message)
        self.best = best
        self.nodes = nodes
