"""Delta-cycles, broken delta-cycles and the NB family of edge subsets.

A delta-cycle is an inclusion-minimal non-empty edge set in which every edge
is covered by the vertices of the remaining edges.  Given an edge ordering
``eta`` (``eta[i]`` is the 0-based rank of edge ``i``), deleting the
lowest-ranked edge of a delta-cycle gives a broken delta-cycle, and NB(H)
collects the edge sets that contain no broken delta-cycle.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Sequence

from hypercolor import kernels
from hypercolor.budget import DEFAULT_BUDGET, Budget
from hypercolor.chromatic import IntPolynomial
from hypercolor.errors import NonUniform
from hypercolor.hypergraph import Hypergraph, component_masks, edge_indices, struct_stats
from hypercolor.report import CertificateReport


def parse_eta(eta: str | Sequence[int] | None, m: int) -> tuple[int, ...]:
    """Normalise an edge ordering; ``None`` means input order.

    Accepts a comma-separated string such as ``"2,0,1"`` or a sequence of
    ranks.  Position ``i`` holds the 0-based rank of edge ``i``.
    """
    if eta is None:
        return tuple(range(m))
    if isinstance(eta, str):
        eta = [int(t) for t in eta.split(",") if t.strip()]
    eta = tuple(int(x) for x in eta)
    if sorted(eta) != list(range(m)):
        raise ValueError(f"eta must be a permutation of 0..{m - 1}, got {list(eta)}")
    return eta


def enumerate_delta_cycles(h: Hypergraph, budget: Budget = DEFAULT_BUDGET) -> list[int]:
    """All delta-cycles as edge-set bitmasks, in ascending bitmask order."""
    budget.check_subsets(h.m)
    k = kernels.active
    minimal = k.minimal_flags(k.covering_flags(h.edge_masks), h.m)
    return [a for a in range(1 << h.m) if minimal[a]]


def broken_delta_cycles(h: Hypergraph, eta=None, cycles: Sequence[int] | None = None) -> list[int]:
    """Distinct broken delta-cycles for the ordering ``eta``, ascending."""
    eta = parse_eta(eta, h.m)
    if cycles is None:
        cycles = enumerate_delta_cycles(h)
    out = set()
    for c in cycles:
        first = min(edge_indices(c), key=lambda i: eta[i])
        out.add(c & ~(1 << first))
    return sorted(out)


@dataclass(frozen=True)
class NBFamily:
    """Edge subsets containing no broken delta-cycle, with the per-edge views."""

    h: Hypergraph
    eta: tuple[int, ...]
    cycles: tuple[int, ...]
    broken: tuple[int, ...]
    flags: bytes

    def __contains__(self, a: int) -> bool:
        return bool(self.flags[a])

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(a for a in range(1 << self.h.m) if self.flags[a])

    def containing(self, e: int) -> list[int]:
        """NB(H, e)."""
        bit = 1 << e
        return [a for a in self.members if a & bit]

    def of_size(self, i: int, e: int | None = None) -> list[int]:
        """NB_i(H, e), or all members of size i when ``e`` is None."""
        pool = self.members if e is None else self.containing(e)
        return [a for a in pool if a.bit_count() == i]

    def star2(self, e: int) -> list[int]:
        """Pairs {e, e'} in NB_2(H, e) with |e & e'| = r - 1."""
        stats = struct_stats(self.h)
        if stats.per_edge_ew is None:
            raise NonUniform("NB*_2 needs a uniform hypergraph")
        near = stats.per_edge_ew[e]
        return [a for a in self.of_size(2, e) if (a & ~(1 << e)).bit_length() - 1 in near]


def nb_family(h: Hypergraph, eta=None, budget: Budget = DEFAULT_BUDGET) -> NBFamily:
    eta = parse_eta(eta, h.m)
    cycles = enumerate_delta_cycles(h, budget)
    broken = broken_delta_cycles(h, eta, cycles)
    flags = bytes(kernels.active.avoiding_flags(h.m, broken))
    return NBFamily(h=h, eta=eta, cycles=tuple(cycles), broken=tuple(broken), flags=flags)


def chromatic_polynomial_nbc(h: Hypergraph, eta=None, budget: Budget = DEFAULT_BUDGET) -> IntPolynomial:
    """P(H, k) summed over NB(H) only."""
    nb = nb_family(h, eta, budget)
    return IntPolynomial(kernels.active.subset_poly(h.n, h.edge_masks, nb.flags))


def family_findings(nb: NBFamily) -> list[str]:
    """Structural facts about an NB family that should always hold; returns violations found.

    Checks downward closure, the size of every broken delta-cycle (at least
    two edges), and |NB_i(H, e)| <= C(m-1, i-1).
    """
    h = nb.h
    issues = []
    for a in nb.members:
        b = a
        while b:
            low = b & -b
            if not nb.flags[a ^ low]:
                issues.append(f"NB not downward closed: {edge_indices(a)} in NB but {edge_indices(a ^ low)} is not")
                break
            b ^= low
    for b in nb.broken:
        if b.bit_count() < 2:
            issues.append(f"broken delta-cycle with fewer than two edges: {edge_indices(b)}")
    for e in range(h.m):
        counts = [0] * (h.m + 1)
        for a in nb.containing(e):
            counts[a.bit_count()] += 1
        for i in range(1, h.m + 1):
            if counts[i] > comb(h.m - 1, i - 1):
                issues.append(f"|NB_{i}(H,{e})| = {counts[i]} exceeds C({h.m - 1},{i - 1})")
    return issues


def check_wanghyc(h: Hypergraph, eta=None, budget: Budget = DEFAULT_BUDGET) -> CertificateReport:
    """Check c(A) <= n - r - |A| + 2 for every A in NB(H) with |A| >= 2."""
    r = h.rank
    if r is None:
        raise NonUniform("the component bound needs a uniform hypergraph")
    notes = []
    if r < 3:
        msg = f"r = {r}: the component bound is stated for r >= 3"
        warnings.warn(msg, stacklevel=2)
        notes.append(msg)
    nb = nb_family(h, eta, budget)
    worst_slack = None
    checked = 0
    witness = None
    for a in nb.members:
        size = a.bit_count()
        if size < 2:
            continue
        checked += 1
        c = len(component_masks(h.n, h.edge_masks, a))
        slack = h.n - r - size + 2 - c
        if worst_slack is None or slack < worst_slack:
            worst_slack = slack
        if slack < 0 and witness is None:
            witness = {"A": edge_indices(a), "c": c, "bound": h.n - r - size + 2}
    return CertificateReport(
        name="nb-component-bound",
        passed=witness is None,
        values={"checked_sets": checked, "min_slack": worst_slack, "eta": list(nb.eta)},
        witness=witness,
        warnings=notes,
    )
