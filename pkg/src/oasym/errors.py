"""Exceptions shared across the package."""

from __future__ import annotations


class BudgetExceededError(RuntimeError):
    """A node or orbit budget ran out before a search finished.

    The attributes carry whatever partial progress exists so a caller can
    still use the work done: ``partial_generators`` and ``order_lower_bound``
    for group searches, ``node_count`` and ``budget`` always.
    """

    def __init__(
        self,
        message: str,
        *,
        node_count: int | None = None,
        budget: int | None = None,
        partial_generators: tuple = (),
        order_lower_bound: int | None = None,
    ):
        super().__init__(message)
        self.node_count = node_count
        self.budget = budget
        self.partial_generators = tuple(partial_generators)
        self.order_lower_bound = order_lower_bound
