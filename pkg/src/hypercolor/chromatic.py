"""Chromatic polynomials: brute-force counting and the full inclusion-exclusion sum."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from hypercolor import kernels
from hypercolor.budget import DEFAULT_BUDGET, Budget
from hypercolor.hypergraph import Hypergraph


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in k; ``coeffs[i]`` multiplies ``k**i``."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        c = [int(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (0,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if any(self.coeffs) else -1

    def __call__(self, k: int) -> int:
        return eval_poly(self, k)

    def __str__(self) -> str:
        terms = []
        for power in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                var = "k" if power == 1 else f"k^{power}"
                body = var if mag == 1 else f"{mag}{var}"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> IntPolynomial:
        return cls(int(c) for c in data["coeffs"])


def eval_poly(p: IntPolynomial, k: int) -> int:
    """Horner evaluation in exact integers."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * k + c
    return acc


def count_proper_colorings(h: Hypergraph, k: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """Number of maps V -> [k] that leave no edge monochromatic, by exhaustive enumeration."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    budget.check_colorings(k**h.n)
    palette = list(range(1, k + 1))
    return kernels.active.count_colorings(h.n, h.edges, [palette] * h.n)


def chromatic_polynomial_ie(h: Hypergraph, budget: Budget = DEFAULT_BUDGET) -> IntPolynomial:
    """P(H, k) as the signed sum of k^c(A) over every edge subset A."""
    budget.check_subsets(h.m)
    return IntPolynomial(kernels.active.subset_poly(h.n, h.edge_masks))


def chromatic_number(p: IntPolynomial, n: int) -> int:
    """Smallest q >= 1 with p(q) > 0; a chromatic polynomial on n vertices is positive at q = n."""
    for q in range(1, max(n, 1) + 1):
        if p(q) > 0:
            return q
    raise ValueError("polynomial has no positive value in [1, n]; not a chromatic polynomial")
