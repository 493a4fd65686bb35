"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line (printed with ``-s`` and summarised at the
end of the run) before asserting, so a failing criterion still reports its
measured values.
"""

import math
import random
import time
import warnings
from fractions import Fraction
from itertools import permutations

import pytest

from hypercolor.bounds import (
    THRESHOLD_REFERENCE_POINTS,
    FIFTIETH,
    certify_len0,
    certify_prn1,
    certify_th41,
    check_pp15,
    check_pro31,
    check_pro32,
    f_at_threshold,
    f_eta,
    nb_count_envelope,
    nb_difference,
    pp15_lower_bound,
)
from hypercolor.chromatic import IntPolynomial, chromatic_polynomial_ie, count_proper_colorings
from hypercolor.deltacycles import check_wanghyc, chromatic_polynomial_nbc
from hypercolor.hypergraph import Hypergraph, struct_stats
from hypercolor.listcolor import Assignment, count_L_colorings, count_L_colorings_nbc, plmin_exact
from hypercolor.sampling import random_assignment, random_hypergraphs, random_uniform

pytestmark = pytest.mark.acceptance

SEED = 20240601


def etas_for(h, rng):
    if h.m <= 4:
        return list(permutations(range(h.m)))
    out = [tuple(range(h.m))]
    for _ in range(4):
        eta = list(range(h.m))
        rng.shuffle(eta)
        out.append(tuple(eta))
    return out


def expansion_suite():
    return list(random_hypergraphs(SEED, 500, n_range=(3, 8), m_range=(1, 6), ranks=(2, 3, 4)))


def list_suite():
    rng = random.Random(SEED + 1)
    out = []
    for i, h in enumerate(random_hypergraphs(SEED + 1, 500, n_range=(3, 7), m_range=(1, 6))):
        k = 2 + i % 2
        out.append((h, random_assignment(rng, h.n, k)))
    return out


def large_m_suite(count=50):
    rng = random.Random(SEED + 6)
    out = []
    while len(out) < count:
        m = rng.choice((5, 6))
        r = rng.choice((3, 4))
        n = rng.randint(r + 1, 7)
        if math.comb(n, r) < m:
            continue
        h = random_uniform(rng, n, m, r)
        gamma = struct_stats(h).gamma
        if 5 * gamma > 4 * (m - 1):
            continue
        k = math.ceil(Fraction(3, 5) * (m - 1) + Fraction(gamma, 2))
        if k**n > 10**7:
            continue
        out.append((h, k))
    return out


def small_m_suite(count=20):
    rng = random.Random(SEED + 7)
    out = []
    while len(out) < count:
        n = rng.randint(4, 6)
        m = rng.randint(1, 4)
        out.append(random_uniform(rng, n, m, 3))
    return out


def test_expansion_equivalence(acceptance):
    start = time.perf_counter()
    suite = expansion_suite()
    rng = random.Random(SEED)
    bad = []
    etas_checked = 0
    for h in suite:
        ie = chromatic_polynomial_ie(h)
        for eta in etas_for(h, rng):
            etas_checked += 1
            if chromatic_polynomial_nbc(h, eta) != ie:
                bad.append((h, eta))
        for k in (1, 2, 3):
            if count_proper_colorings(h, k) != ie(k):
                bad.append((h, k))
    elapsed = time.perf_counter() - start
    ok = not bad and len(suite) >= 500 and elapsed < 60
    acceptance(
        "1 expansion equivalence",
        ok,
        f"instances={len(suite)} orderings={etas_checked} mismatches={len(bad)} time={elapsed:.1f}s",
    )
    assert ok, bad[:3]


def test_list_expansion(acceptance):
    start = time.perf_counter()
    suite = list_suite()
    bad = [(h, L) for h, L in suite if count_L_colorings_nbc(h, L) != count_L_colorings(h, L)]
    elapsed = time.perf_counter() - start
    ok = not bad and len(suite) >= 500 and elapsed < 60
    acceptance("2 list expansion", ok, f"instances={len(suite)} mismatches={len(bad)} time={elapsed:.1f}s")
    assert ok, bad[:3]


def test_difference_identity(acceptance):
    suite = list_suite()
    bad = []
    for h, L in suite:
        if nb_difference(h, L) != count_L_colorings(h, L) - count_proper_colorings(h, L.k):
            bad.append((h, L))
    ok = not bad
    acceptance("3 difference identity", ok, f"instances={len(suite)} mismatches={len(bad)}")
    assert ok, bad[:3]


def test_sandwich_bounds(acceptance):
    rng = random.Random(SEED + 4)
    suite = list(random_hypergraphs(SEED + 4, 200, n_range=(3, 7), m_range=(1, 5)))
    bad = []
    subsets = 0
    for h in suite:
        L = random_assignment(rng, h.n, rng.choice((2, 3)))
        for a in range(1, 1 << h.m):
            subsets += 1
            if not check_pro31(h, L, a).passed or not check_pro32(h, L, a).passed:
                bad.append((h, L, a))
    ok = not bad and len(suite) >= 200
    acceptance("4 sandwich bounds", ok, f"instances={len(suite)} subsets={subsets} violations={len(bad)}")
    assert ok, bad[:3]


def test_constants(acceptance):
    start = time.perf_counter()
    rows = []
    for a, w, listed in THRESHOLD_REFERENCE_POINTS:
        got = f_at_threshold(a, w)
        rows.append((f"f({a},1/q,{w:.4g})", got, listed))
    for m, listed in ((5, 0.3925925926), (6, 0.0864197531)):
        rows.append((f"envelope m={m}", float(nb_count_envelope(m, Fraction(1, 10), 3)), listed))
    elapsed = time.perf_counter() - start
    misses = [(name, got, listed) for name, got, listed in rows if abs(got - listed) > 1e-8]
    ok = not misses and elapsed < 1
    detail = "; ".join(f"{name}: got {got:.10f} listed {listed}" for name, got, listed in misses)
    acceptance("5 listed constants", ok, f"values={len(rows)} misses={len(misses)} {detail}".rstrip())
    assert ok, misses


def test_large_m_difference_bound(acceptance):
    k53 = Hypergraph.complete(5, 3)
    cases = [(k53, 9)] + large_m_suite()
    failures = []
    assignments = 0
    min_ratio = None
    for idx, (h, k) in enumerate(cases):
        prn1 = certify_prn1(h, None, k)
        if not prn1.passed:
            failures.append(("prn1", h, k))
        report = certify_th41(h, None, k, samples=100, seed=SEED + idx)
        assignments += report.values["assignments_checked"]
        if not report.passed:
            failures.append(("th41", h, k))
        ratio = report.values["min_difference_over_scaled_alpha"]
        if ratio is not None and (min_ratio is None or ratio < min_ratio):
            min_ratio = ratio
    ok = not failures and len(cases) >= 51
    acceptance(
        "6 large-m bound",
        ok,
        f"hypergraphs={len(cases)} assignments={assignments} failures={len(failures)} "
        f"min diff/(k^(n-r) alpha)={float(min_ratio) if min_ratio is not None else 'n/a'} target={float(FIFTIETH)}",
    )
    assert ok, failures[:3]


def test_small_m_list_function(acceptance):
    start = time.perf_counter()
    suite = small_m_suite()
    failures = []
    checks = 0
    for h in suite:
        p = chromatic_polynomial_ie(h)
        # m = 1 has no k in [max(2, m-1), m]; k = 2 is checked instead
        for k in range(max(2, h.m - 1), max(h.m, 2) + 1):
            checks += 1
            if plmin_exact(h, k).value != p(k):
                failures.append(("plmin", h, k))
            if not certify_len0(h, None, k).passed:
                failures.append(("len0", h, k))
    elapsed = time.perf_counter() - start
    ok = not failures and len(suite) >= 20 and elapsed < 600
    acceptance(
        "7 small-m list function",
        ok,
        f"hypergraphs={len(suite)} (h,k) checks={checks} failures={len(failures)} time={elapsed:.1f}s",
    )
    assert ok, failures[:3]


def test_component_bound(acceptance):
    suites = [h for h in expansion_suite() if h.is_uniform and h.m]
    suites += [h for h, _ in large_m_suite()] + small_m_suite() + [Hypergraph.complete(5, 3)]
    violations = 0
    checked = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for h in suites:
            report = check_wanghyc(h)
            checked += report.values["checked_sets"]
            if not report.passed:
                violations += 1
    ok = violations == 0
    acceptance("8 component bound", ok, f"hypergraphs={len(suites)} sets={checked} violations={violations}")
    assert ok


def test_worked_examples(acceptance):
    h = Hypergraph(4, [[0, 1, 2], [0, 1, 3]])
    L = Assignment(2, [[1, 2], [1, 2], [1, 3], [1, 4]])
    expected = IntPolynomial([0, 1, -2, 0, 1])
    diff = count_L_colorings(h, L) - count_proper_colorings(h, 2)
    checks = {
        "P": chromatic_polynomial_ie(h) == expected == chromatic_polynomial_nbc(h),
        "P(H,L)": count_L_colorings(h, L) == 13 == count_L_colorings_nbc(h, L),
        "F": all(f_eta(h, None, e, 2).value == Fraction(1, 2) for e in range(2)),
        "pp15": pp15_lower_bound(h, None, L) == 2 and diff == 3 and check_pp15(h, None, L).passed,
    }
    ok = all(checks.values())
    acceptance("9 worked examples", ok, " ".join(f"{k}={'ok' if v else 'bad'}" for k, v in checks.items()))
    assert ok
