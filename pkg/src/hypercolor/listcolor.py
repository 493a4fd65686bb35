"""List colourings: k-assignments, alpha/beta, P(H, L), and exact P_l(H, k) on tiny inputs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from hypercolor import kernels
from hypercolor.budget import DEFAULT_BUDGET, Budget
from hypercolor.chromatic import IntPolynomial, chromatic_number, chromatic_polynomial_ie
from hypercolor.deltacycles import nb_family
from hypercolor.errors import BudgetExceeded, InvalidAssignment
from hypercolor.hypergraph import Hypergraph, component_masks, edge_indices


@dataclass(frozen=True)
class Assignment:
    """A list of exactly ``k`` distinct non-negative colours per vertex."""

    k: int
    lists: tuple[tuple[int, ...], ...]

    def __init__(self, k: int, lists: Iterable[Iterable[int]]):
        lists = tuple(tuple(sorted(lst)) for lst in lists)
        if not isinstance(k, int) or k < 1:
            raise InvalidAssignment(f"k must be a positive integer, got {k!r}")
        for v, lst in enumerate(lists):
            if len(lst) != k or len(set(lst)) != k:
                raise InvalidAssignment(f"vertex {v} needs {k} distinct colours, got {list(lst)}")
            if any(not isinstance(c, int) or c < 0 for c in lst):
                raise InvalidAssignment(f"vertex {v} has a colour that is not a non-negative integer")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "lists", lists)

    @classmethod
    def constant(cls, n: int, k: int) -> Assignment:
        return cls(k, [range(1, k + 1)] * n)

    @property
    def n(self) -> int:
        return len(self.lists)

    def colour_masks(self) -> list[int]:
        """Per-vertex bitmask over the colours in use, indexed densely in sorted order."""
        index = {c: i for i, c in enumerate(sorted({c for lst in self.lists for c in lst}))}
        return [sum(1 << index[c] for c in lst) for lst in self.lists]

    def relabel(self, mapping: dict[int, int]) -> Assignment:
        return Assignment(self.k, [[mapping[c] for c in lst] for lst in self.lists])

    def to_json(self) -> dict:
        return {"k": self.k, "lists": [list(lst) for lst in self.lists]}

    @classmethod
    def from_json(cls, data: dict) -> Assignment:
        try:
            return cls(data["k"], data["lists"])
        except (KeyError, TypeError) as exc:
            raise InvalidAssignment('expected an object with "k" and "lists"') from exc

    @classmethod
    def load(cls, path) -> Assignment:
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def _check_fits(h: Hypergraph, L: Assignment) -> None:
    if L.n != h.n:
        raise InvalidAssignment(f"assignment has {L.n} lists but the hypergraph has {h.n} vertices")


@dataclass(frozen=True)
class AlphaProfile:
    per_edge: tuple[int, ...]
    total: int

    def to_json(self) -> dict:
        return {"per_edge": list(self.per_edge), "total": self.total}


def alpha_profile(h: Hypergraph, L: Assignment) -> AlphaProfile:
    """alpha(e, L) = k - |common colours on e|, per edge and summed."""
    _check_fits(h, L)
    per = []
    for e in h.edges:
        common = set(L.lists[e[0]])
        for v in e[1:]:
            common &= set(L.lists[v])
        per.append(L.k - len(common))
    return AlphaProfile(tuple(per), sum(per))


@dataclass(frozen=True)
class BetaValue:
    """Common-colour count of each component of H<A>, and their product."""

    components: tuple[tuple[int, ...], ...]
    per_component: tuple[int, ...]
    product: int


def beta(h: Hypergraph, L: Assignment, a: int) -> BetaValue:
    _check_fits(h, L)
    comps = component_masks(h.n, h.edge_masks, a)
    verts, sizes = [], []
    for c in comps:
        vs = tuple(v for v in range(h.n) if c >> v & 1)
        common = set(L.lists[vs[0]])
        for v in vs[1:]:
            common &= set(L.lists[v])
        verts.append(vs)
        sizes.append(len(common))
    prod = 1
    for s in sizes:
        prod *= s
    return BetaValue(tuple(verts), tuple(sizes), prod)


def count_L_colorings(h: Hypergraph, L: Assignment, budget: Budget = DEFAULT_BUDGET) -> int:
    """P(H, L) by enumerating every map v -> L(v)."""
    _check_fits(h, L)
    budget.check_colorings(L.k**h.n)
    return kernels.active.count_colorings(h.n, h.edges, L.lists)


def count_L_colorings_nbc(h: Hypergraph, L: Assignment, eta=None, budget: Budget = DEFAULT_BUDGET) -> int:
    """P(H, L) as the signed sum of beta(A, L) over A in NB(H)."""
    _check_fits(h, L)
    nb = nb_family(h, eta, budget)
    return kernels.active.subset_beta_sum(h.n, h.edge_masks, L.colour_masks(), nb.flags)


# -- exact list-colour function -------------------------------------------------
#
# A colour c matters only through the edges that lie inside the set S_c of
# vertices whose lists contain it: the common-colour count of any component
# of H<A> is the number of colours whose S_c contains all of that
# component's edges.  Shrinking each S_c to the union of the edges inside it
# (and replacing colours that contain no edge by private ones) leaves P(H, L)
# unchanged, so an assignment is determined up to P(H, L) by how many shared
# colours sit on each edge-closed vertex set.  The search below enumerates
# those multiplicity vectors subject to every vertex holding at most k
# shared colours.


@dataclass
class PlminResult:
    k: int
    value: int
    witness: Assignment
    nodes: int
    verified: bool | None = None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "value": self.value,
            "witness": self.witness.to_json(),
            "nodes": self.nodes,
            "witness_recounted": self.verified,
        }


def closed_edge_sets(h: Hypergraph) -> list[tuple[int, int]]:
    """(edge mask, vertex mask) of each connected non-empty edge set that contains every edge inside its span.

    A shared colour on a disconnected closed set can be split into one colour
    per piece without changing any component's common-colour count (each
    component lies inside a single piece), so connected sets suffice.
    """
    out = []
    for d in range(1, 1 << h.m):
        span = 0
        for i in edge_indices(d):
            span |= h.edge_masks[i]
        inside = sum(1 << i for i, em in enumerate(h.edge_masks) if em & ~span == 0)
        if inside != d:
            continue
        pieces = [c for c in component_masks(h.n, h.edge_masks, d) if c & span]
        if len(pieces) == 1:
            out.append((d, span))
    return out


def _ie_terms(h: Hypergraph):
    """Per edge subset: sign, number of isolated vertices, edge masks of its edge-bearing components."""
    terms = []
    for a in range(1 << h.m):
        comps = []
        covered = 0
        for cm in component_masks(h.n, h.edge_masks, a):
            if cm.bit_count() == 1 and not any(cm & h.edge_masks[i] for i in edge_indices(a)):
                continue
            comps.append(sum(1 << i for i in edge_indices(a) if h.edge_masks[i] & cm))
            covered |= cm
        terms.append((-1 if a.bit_count() & 1 else 1, h.n - covered.bit_count(), tuple(comps)))
    return terms


def plmin_exact(
    h: Hypergraph,
    k: int,
    budget: Budget = DEFAULT_BUDGET,
    stop_at: int | None = None,
) -> PlminResult:
    """Minimum of P(H, L) over all k-assignments, with a minimising witness.

    Ties keep the first minimiser in search order.  With ``stop_at`` set the
    search returns as soon as a value <= stop_at is seen.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    budget.check_subsets(h.m)
    types = closed_edge_sets(h)
    # beta of a component only depends on which types contain all of its edges,
    # so terms sharing (isolated count, covering types per component) merge
    merged: dict[tuple, int] = {}
    for sign, iso, comps in _ie_terms(h):
        key = (iso, tuple(sorted(tuple(t for t, (d, _) in enumerate(types) if c & ~d == 0) for c in comps)))
        merged[key] = merged.get(key, 0) + sign
    terms = [(coeff, k**iso, groups) for (iso, groups), coeff in merged.items() if coeff]
    type_verts = [[v for v in range(h.n) if span >> v & 1] for _, span in types]
    value, mult, nodes, finished = kernels.active.profile_min(
        h.n, k, type_verts, terms, budget.canonical_nodes, stop_at
    )
    if not finished:
        raise BudgetExceeded("assignment classes", nodes, budget.canonical_nodes)
    witness = _materialise(h, k, types, mult)
    result = PlminResult(k=k, value=value, witness=witness, nodes=nodes)
    if k**h.n <= budget.colorings:
        result.verified = count_L_colorings(h, witness, budget) == result.value
    return result


def _materialise(h: Hypergraph, k: int, types, mult) -> Assignment:
    lists: list[list[int]] = [[] for _ in range(h.n)]
    nxt = 1
    for (_, span), x in zip(types, mult):
        for _ in range(x):
            for v in range(h.n):
                if span >> v & 1:
                    lists[v].append(nxt)
            nxt += 1
    for v in range(h.n):
        while len(lists[v]) < k:
            lists[v].append(nxt)
            nxt += 1
    return _canonical_relabel(Assignment(k, lists))


def _canonical_relabel(L: Assignment) -> Assignment:
    """Rename colours 1, 2, ... in order of first appearance (vertex order, then list order)."""
    mapping: dict[int, int] = {}
    for lst in L.lists:
        for c in lst:
            mapping.setdefault(c, len(mapping) + 1)
    return L.relabel(mapping)


def plmin_lists(h: Hypergraph, k: int, budget: Budget = DEFAULT_BUDGET) -> PlminResult:
    """Minimum of P(H, L) by enumerating canonical k-assignments directly.

    Vertex 0 gets {1..k}; every later vertex takes some j fresh colours (the
    next j unused integers) plus k - j colours already in use.  Every
    assignment is a relabelling of one of these, and each is counted by
    brute force, so this is independent of ``plmin_exact`` and only practical
    for very small inputs.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if h.n == 0:
        return PlminResult(k, 1, Assignment(k, []), 1)
    budget.check_colorings(k**h.n)
    lists: list[tuple[int, ...]] = [tuple(range(1, k + 1))]
    best: list = [None, None]
    nodes = 0

    def search(v: int, used: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget.canonical_nodes:
            raise BudgetExceeded("canonical assignments", nodes, budget.canonical_nodes)
        if v == h.n:
            L = Assignment(k, lists)
            value = kernels.active.count_colorings(h.n, h.edges, L.lists)
            if best[0] is None or value < best[0]:
                best[0], best[1] = value, L
            return
        for fresh in range(k + 1):
            for old in combinations(range(1, used + 1), k - fresh):
                lists.append(old + tuple(range(used + 1, used + fresh + 1)))
                search(v + 1, used + fresh)
                lists.pop()

    search(1, k)
    return PlminResult(k=k, value=best[0], witness=best[1], nodes=nodes, verified=True)


@dataclass
class ThresholdObservation:
    """Thresholds observed for 1 <= k <= kmax; tau values are not certified beyond kmax."""

    kmax: int
    chi: int
    chi_list: int | None
    tau_prime: int | None
    tau: int | None
    identity_holds: bool | None
    table: list[dict] = field(default_factory=list)
    note: str = "tau_prime and tau are bounded-range observations for k <= kmax, not certified thresholds"

    def to_json(self) -> dict:
        return {
            "kmax": self.kmax,
            "chi": self.chi,
            "chi_list": self.chi_list,
            "tau_prime_observed": self.tau_prime,
            "tau_observed": self.tau,
            "tau_equals_max_tau_prime_chi": self.identity_holds,
            "table": self.table,
            "note": self.note,
        }


def chi(h: Hypergraph, budget: Budget = DEFAULT_BUDGET) -> int:
    """Chromatic number: least q with P(H, q) > 0."""
    return chromatic_number(chromatic_polynomial_ie(h, budget), h.n)


def chi_list(h: Hypergraph, budget: Budget = DEFAULT_BUDGET, limit: int | None = None) -> int | None:
    """Least q such that every q-assignment admits an L-colouring (P_l(H, q) > 0).

    Returns None if no such q <= ``limit`` exists (default: n, where it
    always exists).
    """
    limit = max(h.n, 1) if limit is None else limit
    for q in range(chi(h, budget), limit + 1):
        if plmin_exact(h, q, budget, stop_at=0).value > 0:
            return q
    return None


def tau_prime_empirical(h: Hypergraph, kmax: int, budget: Budget = DEFAULT_BUDGET) -> int | None:
    """Least q <= kmax with P_l(H, k) = P(H, k) for every q <= k <= kmax (None if it fails at kmax)."""
    return thresholds(h, kmax, budget).tau_prime


def tau_empirical(h: Hypergraph, kmax: int, budget: Budget = DEFAULT_BUDGET) -> int | None:
    return thresholds(h, kmax, budget).tau


def thresholds(h: Hypergraph, kmax: int, budget: Budget = DEFAULT_BUDGET) -> ThresholdObservation:
    """Sweep k = 1..kmax and report chi, chi_l and the observed tau', tau."""
    if kmax < 1:
        raise ValueError("kmax must be positive")
    poly = chromatic_polynomial_ie(h, budget)
    chi_value = chromatic_number(poly, h.n)
    table = []
    for k in range(1, kmax + 1):
        res = plmin_exact(h, k, budget)
        table.append({"k": k, "P": poly(k), "P_l": res.value, "witness": res.witness.to_json()})

    def last_run(pred) -> int | None:
        q = None
        for row in reversed(table):
            if not pred(row):
                break
            q = row["k"]
        return q

    tau_prime = last_run(lambda row: row["P_l"] == row["P"])
    tau = last_run(lambda row: row["P_l"] == row["P"] > 0)
    chi_l = next((row["k"] for row in table if row["P_l"] > 0), None)
    identity = None
    if tau_prime is not None and tau is not None and chi_value <= kmax:
        identity = tau == max(tau_prime, chi_value)
    return ThresholdObservation(
        kmax=kmax,
        chi=chi_value,
        chi_list=chi_l,
        tau_prime=tau_prime,
        tau=tau,
        identity_holds=identity,
        table=table,
    )
