"""Exception types shared across the package."""

from __future__ import annotations


class DegenerateModelError(ValueError):
    """Every connection probability is 0 or 1, so the entry variance vanishes
    and the centered, scaled matrix is undefined."""


class BudgetExceededError(RuntimeError):
    """Expected hyperedge count exceeds the sampling budget.

    Attributes
    ----------
    log_expected_edges : float
        Natural log of the expected total edge count that was refused.
    """

    def __init__(self, message: str, log_expected_edges: float) -> None:
        super().__init__(message)
        self.log_expected_edges = float(log_expected_edges)


class SamplerStallError(RuntimeError):
    """Rejection sampling hit its retry cap before producing enough distinct
    hyperedges.  Occurs only when the requested count approaches the number of
    possible edges while the enumerate-and-thin fallback is unavailable."""
