import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercolor.errors import (
    ContainedEdge,
    DuplicateEdge,
    EdgeTooSmall,
    GammaUndefined,
    InvalidHypergraph,
    RhoUndefined,
    VertexOutOfRange,
)
from hypercolor.hypergraph import Hypergraph, components, num_components, struct_stats, validate
from hypercolor.sampling import random_hypergraphs


def test_validate_accepts_antichain():
    validate(4, [[0, 1, 2], [0, 1, 3]])


@pytest.mark.parametrize(
    "n, edges, exc",
    [
        (3, [[0, 1], [0, 1, 2]], ContainedEdge),
        (2, [[0]], EdgeTooSmall),
        (3, [[0, 3]], VertexOutOfRange),
        (3, [[0, 1], [1, 0]], DuplicateEdge),
        (3, [[0, 0, 1]], InvalidHypergraph),
    ],
)
def test_validate_rejects(n, edges, exc):
    with pytest.raises(exc):
        validate(n, edges)
    with pytest.raises(exc):
        Hypergraph(n, edges)


def test_contained_edge_message_names_both_edges():
    with pytest.raises(ContainedEdge, match="edge 0 .* edge 1"):
        Hypergraph(3, [[0, 1], [0, 1, 2]])


def test_edges_sorted_and_order_kept():
    h = Hypergraph(4, [[3, 1, 0], [2, 1, 0]])
    assert h.edges == ((0, 1, 3), (0, 1, 2))


def test_json_round_trip(two_edge):
    assert Hypergraph.from_json(two_edge.to_json()) == two_edge


def test_components_examples(path_pair, two_edge):
    assert components(path_pair, 0b11)[1] == 1
    assert components(path_pair, 0)[1] == 5
    parts, c = components(two_edge, [0])
    assert c == 2 and parts == [[0, 1, 2], [3]]


def test_struct_stats_examples(two_edge, path_pair):
    s = struct_stats(two_edge)
    assert (s.r, s.gamma, s.rho) == (3, 1, 1)
    assert s.per_edge_ew == (frozenset({1}), frozenset({0}))
    s = struct_stats(path_pair)
    assert (s.gamma, s.rho) == (0, 2)


def test_complete_hypergraph_ratio():
    h = Hypergraph.complete(5, 3)
    s = struct_stats(h)
    assert all(len(ew) == 3 * (5 - 3) for ew in s.per_edge_ew)
    assert 6 / (comb(5, 3) - 1) < 0.8


def test_undefined_stats():
    single = struct_stats(Hypergraph(3, [[0, 1, 2]]))
    with pytest.raises(RhoUndefined):
        single.rho
    mixed = struct_stats(Hypergraph(4, [[0, 1], [1, 2, 3]]))
    with pytest.raises(GammaUndefined):
        mixed.gamma


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_gamma_zero_iff_rho_at_least_two(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    r = rng.randint(2, min(4, n - 1))
    m = rng.randint(2, min(6, comb(n, r)))
    h = Hypergraph(n, rng.sample(list(combinations(range(n), r)), m))
    s = struct_stats(h)
    assert 0 <= s.gamma <= m - 1
    assert 1 <= s.rho <= r
    assert (s.gamma == 0) == (s.rho >= 2)


@pytest.mark.parametrize("h", list(random_hypergraphs(seed=3, count=40)))
def test_component_count_monotone(h):
    assert num_components(h, 0) == h.n
    full = (1 << h.m) - 1
    for a in range(1 << h.m):
        for i in range(h.m):
            assert num_components(h, a) >= num_components(h, a | (1 << i))
        assert num_components(h, a) >= num_components(h, full)
    if h.rank is not None:
        for i in range(h.m):
            assert num_components(h, 1 << i) == h.n - h.rank + 1
