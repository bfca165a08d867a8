"""Shared exception types."""


class CapExceededError(RuntimeError):
    """A size/degree cap would be exceeded; caps fail loudly, never truncate."""


class FlowerHypothesisError(ValueError):
    """The head of a transversal-pattern instance is too large to solve."""
