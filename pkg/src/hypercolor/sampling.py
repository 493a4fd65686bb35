"""Seeded generators for random hypergraphs and k-assignments.

All randomness comes from ``random.Random`` (Mersenne Twister, MT19937)
seeded with an integer, so a seed reproduces the same instances on any
CPython version.
"""

from __future__ import annotations

import random
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from hypercolor.hypergraph import Hypergraph
from hypercolor.listcolor import Assignment

GENERATOR = "python-random-mt19937"


def random_uniform(rng: random.Random, n: int, m: int, r: int) -> Hypergraph:
    """m distinct r-subsets of {0..n-1}, chosen uniformly without replacement."""
    pool = list(combinations(range(n), r))
    if m > len(pool):
        raise ValueError(f"only {len(pool)} distinct {r}-subsets of {n} vertices")
    return Hypergraph(n, rng.sample(pool, m))


def random_mixed(rng: random.Random, n: int, m: int, sizes: Sequence[int] = (2, 3, 4)) -> Hypergraph | None:
    """Up to m edges with sizes drawn from ``sizes``, rejecting any edge that breaks the antichain.

    Returns None when fewer than m edges could be placed in 50 m draws.
    """
    edges: list[frozenset] = []
    for _ in range(50 * m):
        if len(edges) == m:
            break
        r = rng.choice([s for s in sizes if s <= n])
        e = frozenset(rng.sample(range(n), r))
        if any(e <= f or f <= e for f in edges):
            continue
        edges.append(e)
    if len(edges) < m:
        return None
    return Hypergraph(n, [sorted(e) for e in edges])


def random_hypergraphs(
    seed: int,
    count: int,
    n_range: tuple[int, int] = (3, 8),
    m_range: tuple[int, int] = (1, 6),
    ranks: Sequence[int] = (2, 3, 4),
    mixed_fraction: float = 0.2,
) -> Iterator[Hypergraph]:
    """``count`` hypergraphs; most are uniform with a random rank, some mix edge sizes."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        n = rng.randint(*n_range)
        m = rng.randint(*m_range)
        fitting = [s for s in ranks if s <= n]
        if not fitting:
            continue
        if rng.random() < mixed_fraction:
            h = random_mixed(rng, n, m, fitting)
        else:
            r = rng.choice(fitting)
            h = random_uniform(rng, n, m, r) if m <= comb(n, r) else None
        if h is not None:
            made += 1
            yield h


def random_assignment(rng: random.Random, n: int, k: int, palette: int | None = None) -> Assignment:
    """Each vertex draws k distinct colours from 1..palette (default 2k)."""
    palette = 2 * k if palette is None else palette
    return Assignment(k, [rng.sample(range(1, palette + 1), k) for _ in range(n)])


def near_constant(rng: random.Random, n: int, k: int) -> Assignment:
    """The constant assignment {1..k} with one colour at one vertex swapped for a colour in k+1..2k."""
    lists = [list(range(1, k + 1)) for _ in range(n)]
    if n:
        v = rng.randrange(n)
        lists[v][rng.randrange(k)] = rng.randint(k + 1, 2 * k)
    return Assignment(k, lists)


def sample_assignments(rng: random.Random, n: int, k: int, count: int) -> list[Assignment]:
    """The constant assignment, then about a quarter near-constant ones, then random ones from 2k colours."""
    out = [Assignment.constant(n, k)]
    for _ in range(min(count - 1, max(count // 4, 1))):
        out.append(near_constant(rng, n, k))
    while len(out) < count:
        out.append(random_assignment(rng, n, k))
    return out[:count]
