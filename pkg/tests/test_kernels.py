import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercolor import kernels
from hypercolor.sampling import random_assignment, random_hypergraphs

from oracles import colorings, covers, n_components

pytestmark = pytest.mark.skipif(kernels.COMPILED is None, reason="compiled kernels not built")

INSTANCES = list(random_hypergraphs(seed=11, count=60))


@pytest.mark.parametrize("h", INSTANCES)
def test_backends_agree(h):
    py, cy = kernels.PYTHON, kernels.COMPILED
    assert py.subset_poly(h.n, h.edge_masks) == cy.subset_poly(h.n, h.edge_masks)
    cov_py = py.covering_flags(h.edge_masks)
    assert cov_py == cy.covering_flags(h.edge_masks)
    assert py.minimal_flags(cov_py, h.m) == cy.minimal_flags(cov_py, h.m)
    forbidden = [a for a in range(1 << h.m) if cov_py[a]][:3]
    assert py.avoiding_flags(h.m, forbidden) == cy.avoiding_flags(h.m, forbidden)
    rng = random.Random(h.n * 31 + h.m)
    for k in (1, 2, 3):
        L = random_assignment(rng, h.n, k)
        assert py.count_colorings(h.n, h.edges, L.lists) == cy.count_colorings(h.n, h.edges, L.lists)
        masks = L.colour_masks()
        assert py.subset_beta_sum(h.n, h.edge_masks, masks) == cy.subset_beta_sum(h.n, h.edge_masks, masks)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_count_colorings_matches_product_oracle(seed):
    rng = random.Random(seed)
    h = next(random_hypergraphs(seed=seed, count=1, n_range=(2, 6), m_range=(0, 5)))
    k = rng.randint(1, 3)
    L = random_assignment(rng, h.n, k, palette=rng.randint(k, 2 * k + 1))
    expected = colorings(h.n, h.edges, L.lists)
    for b in (kernels.PYTHON, kernels.COMPILED):
        assert b.count_colorings(h.n, h.edges, L.lists) == expected


@pytest.mark.parametrize("h", INSTANCES[:30])
def test_covering_flags_match_definition(h):
    flags = kernels.active.covering_flags(h.edge_masks)
    for a in range(1 << h.m):
        subset = [i for i in range(h.m) if a >> i & 1]
        assert bool(flags[a]) == covers(h.edges, subset)


@pytest.mark.parametrize("h", INSTANCES[:30])
def test_subset_poly_matches_component_oracle(h):
    coeffs = [0] * (h.n + 1)
    for a in range(1 << h.m):
        subset = [i for i in range(h.m) if a >> i & 1]
        coeffs[n_components(h.n, h.edges, subset)] += (-1) ** len(subset)
    assert kernels.active.subset_poly(h.n, h.edge_masks) == coeffs


def test_no_vertices():
    for b in (kernels.PYTHON, kernels.COMPILED):
        assert b.count_colorings(0, [], []) == 1
        assert b.subset_poly(0, []) == [1]


def test_large_colours_fall_back():
    # colour ids beyond 64 distinct values cannot be packed into uint64
    n = 3
    edges = [[0, 1, 2]]
    lists = [list(range(30 * v, 30 * v + 30)) for v in range(n)]
    masks = [0] * n
    index = {c: i for i, c in enumerate(sorted({c for lst in lists for c in lst}))}
    masks = [sum(1 << index[c] for c in lst) for lst in lists]
    expected = kernels.PYTHON.subset_beta_sum(n, [7], masks)
    assert kernels.COMPILED.subset_beta_sum(n, [7], masks) == expected == 30**3


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32))
def test_profile_min_backends_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    k = rng.randint(1, 3)
    ntypes = rng.randint(0, 4)
    type_verts = [sorted(rng.sample(range(n), rng.randint(1, n))) for _ in range(ntypes)]
    terms = []
    for _ in range(rng.randint(1, 5)):
        groups = [rng.sample(range(ntypes), rng.randint(1, ntypes)) for _ in range(rng.randint(0, 2))] if ntypes else []
        terms.append((rng.randint(-3, 3), k ** rng.randint(0, n), groups))
    stop = rng.choice([None, 0, -5])
    py = kernels.PYTHON.profile_min(n, k, type_verts, terms, 10**6, stop)
    cy = kernels.COMPILED.profile_min(n, k, type_verts, terms, 10**6, stop)
    assert py == cy


def test_profile_min_node_cap():
    args = (2, 3, [[0], [1], [0, 1]], [(1, 1, [[0, 2]])], 5)
    for be in (kernels.PYTHON, kernels.COMPILED):
        value, mult, nodes, finished = be.profile_min(*args)
        assert not finished and nodes == 6
