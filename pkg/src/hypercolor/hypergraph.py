"""Hypergraph data model, validation, components and structural statistics."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from hypercolor.errors import (
    ContainedEdge,
    DuplicateEdge,
    EdgeTooSmall,
    GammaUndefined,
    InvalidHypergraph,
    RhoUndefined,
    VertexOutOfRange,
)


def validate(n: int, edges: Sequence[Iterable[int]]) -> None:
    """Raise the matching ``InvalidHypergraph`` subclass if the input is not a hypergraph.

    Edges are compared as vertex sets; the message names the offending edge
    index (or pair of indices).
    """
    if not isinstance(n, int) or n < 0:
        raise InvalidHypergraph(f"vertex count must be a non-negative integer, got {n!r}")
    sets = []
    for i, edge in enumerate(edges):
        verts = list(edge)
        if len(set(verts)) != len(verts):
            raise InvalidHypergraph(f"edge {i} repeats a vertex: {verts}")
        if len(verts) < 2:
            raise EdgeTooSmall(f"edge {i} has {len(verts)} vertices; at least 2 required")
        for v in verts:
            if not isinstance(v, int) or not 0 <= v < n:
                raise VertexOutOfRange(f"edge {i} contains vertex {v!r} outside [0, {n})")
        sets.append(frozenset(verts))
    for i, j in combinations(range(len(sets)), 2):
        if sets[i] == sets[j]:
            raise DuplicateEdge(f"edges {i} and {j} are equal: {sorted(sets[i])}")
        if sets[i] < sets[j]:
            raise ContainedEdge(f"edge {i} {sorted(sets[i])} is contained in edge {j} {sorted(sets[j])}")
        if sets[j] < sets[i]:
            raise ContainedEdge(f"edge {j} {sorted(sets[j])} is contained in edge {i} {sorted(sets[i])}")


@dataclass(frozen=True)
class Hypergraph:
    """Vertices ``0..n-1`` and an antichain of edges.

    The position of an edge in ``edges`` is its index; index ``i`` is mapped
    to ``i + 1`` by the default edge ordering used for broken cycles.
    """

    n: int
    edges: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        edges = [list(e) for e in edges]
        validate(n, edges)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        """Vertex bitmask of each edge."""
        return tuple(sum(1 << v for v in e) for e in self.edges)

    @cached_property
    def rank(self) -> int | None:
        """The common edge size, or None when edges differ in size (or m = 0)."""
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def is_uniform(self) -> bool:
        return self.rank is not None

    def edge_set(self, indices: Iterable[int]) -> int:
        """Bitmask over edge positions for the given indices."""
        mask = 0
        for i in indices:
            if not 0 <= i < self.m:
                raise IndexError(f"edge index {i} out of range for m={self.m}")
            mask |= 1 << i
        return mask

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> Hypergraph:
        try:
            n, edges = data["n"], data["edges"]
        except (KeyError, TypeError) as exc:
            raise InvalidHypergraph('expected an object with "n" and "edges"') from exc
        if not isinstance(edges, list) or not all(isinstance(e, list) for e in edges):
            raise InvalidHypergraph('"edges" must be a list of vertex lists')
        return cls(n, edges)

    @classmethod
    def load(cls, path) -> Hypergraph:
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    @classmethod
    def complete(cls, n: int, r: int) -> Hypergraph:
        return cls(n, combinations(range(n), r))


def edge_indices(mask: int) -> list[int]:
    """Positions of the set bits of an edge-set bitmask, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _as_mask(h: Hypergraph, a) -> int:
    if isinstance(a, int):
        if a < 0 or a >> h.m:
            raise IndexError(f"edge set {a:#b} not within m={h.m} edges")
        return a
    return h.edge_set(a)


def component_masks(n: int, edge_masks: Sequence[int], a: int) -> list[int]:
    """Vertex bitmasks of the components of the spanning subhypergraph on edge set ``a``.

    Components that contain an edge come first (in order of their first
    edge), followed by isolated vertices in increasing order.
    """
    comps: list[int] = []
    covered = 0
    i = 0
    while a:
        if a & 1:
            merged = edge_masks[i]
            rest = []
            for c in comps:
                if c & merged:
                    merged |= c
                else:
                    rest.append(c)
            rest.append(merged)
            comps = rest
            covered |= edge_masks[i]
        a >>= 1
        i += 1
    comps.sort(key=lambda c: (c & -c))
    comps.extend(1 << v for v in range(n) if not covered >> v & 1)
    return comps


def components(h: Hypergraph, a=0) -> tuple[list[list[int]], int]:
    """Components of the spanning subhypergraph H<a> and their number c(a).

    ``a`` is an edge-set bitmask or an iterable of edge indices.
    """
    comps = component_masks(h.n, h.edge_masks, _as_mask(h, a))
    parts = sorted(([v for v in range(h.n) if c >> v & 1] for c in comps), key=lambda p: p[0])
    return parts, len(parts)


def num_components(h: Hypergraph, a=0) -> int:
    return len(component_masks(h.n, h.edge_masks, _as_mask(h, a)))


@dataclass(frozen=True)
class StructStats:
    """Uniformity, E_{r-1} neighbourhoods, gamma and rho of a hypergraph.

    ``gamma`` and ``rho`` raise when undefined (non-uniform, or fewer than two
    edges); the raw values are kept in ``gamma_value`` / ``rho_value``.
    """

    m: int
    r: int | None
    per_edge_ew: tuple[frozenset[int], ...] | None
    gamma_value: int | None
    rho_value: int | None

    @property
    def gamma(self) -> int:
        if self.gamma_value is None:
            raise GammaUndefined("gamma is only defined for uniform hypergraphs with at least one edge")
        return self.gamma_value

    @property
    def rho(self) -> int:
        if self.rho_value is None:
            raise RhoUndefined("rho needs at least two edges")
        return self.rho_value

    def ew_size(self, e: int) -> int:
        if self.per_edge_ew is None:
            raise GammaUndefined("E_{r-1}(e) is only defined for uniform hypergraphs")
        return len(self.per_edge_ew[e])

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "r": self.r,
            "gamma": self.gamma_value,
            "rho": self.rho_value,
            "per_edge_ew": None if self.per_edge_ew is None else [sorted(s) for s in self.per_edge_ew],
        }


def struct_stats(h: Hypergraph) -> StructStats:
    masks = h.edge_masks
    r = h.rank
    rho = None
    if h.m >= 2:
        rho = min(
            (masks[i] & ~masks[j]).bit_count()
            for i in range(h.m)
            for j in range(h.m)
            if i != j
        )
    ew = None
    gamma = None
    if r is not None:
        ew = tuple(
            frozenset(j for j in range(h.m) if j != i and (masks[i] & masks[j]).bit_count() == r - 1)
            for i in range(h.m)
        )
        gamma = max(len(s) for s in ew)
    return StructStats(m=h.m, r=r, per_edge_ew=ew, gamma_value=gamma, rho_value=rho)
