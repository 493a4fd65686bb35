"""Enumeration caps for the exhaustive routines."""

from __future__ import annotations

from dataclasses import dataclass

from hypercolor.errors import BudgetExceeded


@dataclass(frozen=True)
class Budget:
    """Caps on exhaustive enumeration.

    Attributes:
        colorings: maximum number of vertex maps (k**n, or the product of
            list sizes) a brute-force coloring count may visit.
        subset_edges: maximum edge count m for routines that sweep all
            2**m edge subsets.
        canonical_nodes: maximum node count of the list-assignment searches.
    """

    colorings: int = 10**8
    subset_edges: int = 24
    canonical_nodes: int = 10**7

    def __post_init__(self):
        if min(self.colorings, self.subset_edges, self.canonical_nodes) <= 0:
            raise ValueError("budgets must be positive")

    def check_colorings(self, size: int) -> None:
        if size > self.colorings:
            raise BudgetExceeded("colorings", size, self.colorings)

    def check_subsets(self, m: int) -> None:
        if m > self.subset_edges:
            raise BudgetExceeded("edge subsets", 2**m, 2**self.subset_edges)


DEFAULT_BUDGET = Budget()
