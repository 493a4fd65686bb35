"""Pure-Python kernels; reference behaviour for the compiled backend.

Edge sets, vertex sets and colour sets are all plain ``int`` bitmasks.
Flag arrays are ``bytearray`` objects of length ``2**m`` indexed by edge-set
bitmask.
"""

from __future__ import annotations

from typing import Sequence


def count_colorings(n: int, edges: Sequence[Sequence[int]], lists: Sequence[Sequence[int]]) -> int:
    """Number of maps v -> lists[v] under which no edge is monochromatic.

    Vertices are assigned in order 0..n-1 and an edge is tested once its
    largest vertex has a colour; partial maps that already colour an edge
    monochromatically are abandoned since none of their extensions count.
    """
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for e in edges:
        closing[max(e)].append(tuple(u for u in e if u != max(e)))
    colour = [0] * n

    def extend(v: int) -> int:
        if v == n:
            return 1
        total = 0
        for c in lists[v]:
            for rest in closing[v]:
                if all(colour[u] == c for u in rest):
                    break
            else:
                colour[v] = c
                total += extend(v + 1)
        return total

    return extend(0)


def _walk_components(edge_masks, edge_colours, a):
    """(vertex mask, colour mask) of each edge-bearing component of edge set a, plus covered vertices."""
    comps: list[tuple[int, int]] = []
    covered = 0
    i = 0
    while a:
        if a & 1:
            vm = edge_masks[i]
            cm = edge_colours[i]
            rest = []
            for cv, cc in comps:
                if cv & vm:
                    vm |= cv
                    cm &= cc
                else:
                    rest.append((cv, cc))
            rest.append((vm, cm))
            comps = rest
            covered |= edge_masks[i]
        a >>= 1
        i += 1
    return comps, covered


def subset_poly(n: int, edge_masks: Sequence[int], include: bytes | None = None) -> list[int]:
    """Coefficients of sum over included A of (-1)^|A| k^c(A), indexed by power of k."""
    m = len(edge_masks)
    coeffs = [0] * (n + 1)
    dummy = [0] * m
    for a in range(1 << m):
        if include is not None and not include[a]:
            continue
        comps, covered = _walk_components(edge_masks, dummy, a)
        c = len(comps) + n - covered.bit_count()
        coeffs[c] += -1 if a.bit_count() & 1 else 1
    return coeffs


def subset_beta_sum(
    n: int,
    edge_masks: Sequence[int],
    vertex_colours: Sequence[int],
    include: bytes | None = None,
) -> int:
    """Sum over included A of (-1)^|A| times the product over components of the common colour count."""
    m = len(edge_masks)
    edge_colours = []
    for em in edge_masks:
        cm = -1
        for v in range(n):
            if em >> v & 1:
                cm &= vertex_colours[v]
        edge_colours.append(cm)
    sizes = [c.bit_count() for c in vertex_colours]
    total = 0
    for a in range(1 << m):
        if include is not None and not include[a]:
            continue
        comps, covered = _walk_components(edge_masks, edge_colours, a)
        prod = 1
        for _, cm in comps:
            prod *= cm.bit_count()
        if prod:
            for v in range(n):
                if not covered >> v & 1:
                    prod *= sizes[v]
        total += -prod if a.bit_count() & 1 else prod
    return total


def covering_flags(edge_masks: Sequence[int]) -> bytearray:
    """flag[A] = 1 iff A is non-empty and every edge of A lies inside the union of the other edges of A."""
    m = len(edge_masks)
    flags = bytearray(1 << m)
    for a in range(1, 1 << m):
        once = twice = 0
        i = 0
        b = a
        while b:
            if b & 1:
                twice |= once & edge_masks[i]
                once |= edge_masks[i]
            b >>= 1
            i += 1
        ok = 1
        i = 0
        b = a
        while b:
            if b & 1 and edge_masks[i] & ~twice:
                ok = 0
                break
            b >>= 1
            i += 1
        flags[a] = ok
    return flags


def minimal_flags(flags: bytes, m: int) -> bytearray:
    """Flag the inclusion-minimal members of the set family marked by ``flags``."""
    below = bytearray(1 << m)  # some flagged proper subset exists
    out = bytearray(1 << m)
    for a in range(1, 1 << m):
        b = a
        while b:
            low = b & -b
            sub = a ^ low
            if flags[sub] or below[sub]:
                below[a] = 1
                break
            b ^= low
        out[a] = 1 if flags[a] and not below[a] else 0
    return out


def avoiding_flags(m: int, forbidden: Sequence[int]) -> bytearray:
    """flag[A] = 1 iff A contains none of the forbidden edge sets."""
    bad = bytearray(1 << m)
    for f in forbidden:
        bad[f] = 1
    out = bytearray(1 << m)
    for a in range(1 << m):
        if not bad[a]:
            b = a
            while b:
                low = b & -b
                if bad[a ^ low]:
                    bad[a] = 1
                    break
                b ^= low
        out[a] = 0 if bad[a] else 1
    return out


def profile_min(
    n: int,
    k: int,
    type_verts: Sequence[Sequence[int]],
    terms: Sequence[tuple[int, int, Sequence[Sequence[int]]]],
    node_cap: int,
    stop_at: int | None = None,
):
    """Minimise a signed sum of products over multiplicity vectors.

    Each type t gets a multiplicity x_t >= 0 such that every vertex lies in
    types of total multiplicity at most k.  A term (coeff, base, groups)
    contributes coeff * base * prod over groups of sum_{t in group} x_t.
    Returns (best value, best vector, nodes visited, exhausted) where
    ``exhausted`` is False if the node cap stopped the search.  Ties keep the
    first vector in depth-first order (multiplicities ascending).
    """
    ntypes = len(type_verts)
    mult = [0] * ntypes
    cap = [k] * n
    best_value = None
    best_mult = None
    nodes = 0

    class _Done(Exception):
        pass

    def evaluate() -> int:
        total = 0
        for coeff, prod, groups in terms:
            for group in groups:
                prod *= sum(mult[t] for t in group)
                if not prod:
                    break
            total += coeff * prod
        return total

    def search(t: int) -> None:
        nonlocal nodes, best_value, best_mult
        nodes += 1
        if nodes > node_cap:
            raise _Done
        if t == ntypes:
            value = evaluate()
            if best_value is None or value < best_value:
                best_value, best_mult = value, list(mult)
                if stop_at is not None and value <= stop_at:
                    raise _Done
            return
        verts = type_verts[t]
        room = min((cap[v] for v in verts), default=0)
        for x in range(room + 1):
            mult[t] = x
            for v in verts:
                cap[v] -= x
            search(t + 1)
            for v in verts:
                cap[v] += x
        mult[t] = 0

    try:
        search(0)
    except _Done:
        pass
    return best_value, best_mult, nodes, nodes <= node_cap
