"""Lower bounds on P(H, L) - P(H, k) and the certificates built on them.

Everything except ``f_axw`` and the logarithmic threshold runs in exact
rational arithmetic (``fractions.Fraction``).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from hypercolor.budget import DEFAULT_BUDGET, Budget
from hypercolor.chromatic import count_proper_colorings
from hypercolor.deltacycles import NBFamily, nb_family
from hypercolor.errors import BudgetExceeded, DomainError, NonUniform, PreconditionViolated, WrongRegime
from hypercolor.hypergraph import Hypergraph, component_masks, edge_indices, struct_stats
from hypercolor.listcolor import Assignment, alpha_profile, beta, count_L_colorings
from hypercolor.report import CertificateReport

FIFTIETH = Fraction(1, 50)


class LaurentRational:
    """Finite sum of rational multiples of k**j with j <= 0."""

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {j: Fraction(c) for j, c in (terms or {}).items() if c != 0}

    def add(self, exponent: int, coeff) -> None:
        c = self.terms.get(exponent, Fraction(0)) + Fraction(coeff)
        if c:
            self.terms[exponent] = c
        else:
            self.terms.pop(exponent, None)

    def __call__(self, k: int) -> Fraction:
        k = Fraction(k)
        return sum((c * k**j for j, c in self.terms.items()), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, LaurentRational) and self.terms == other.terms

    def __repr__(self):
        return f"LaurentRational({dict(sorted(self.terms.items(), reverse=True))})"

    @property
    def max_exponent(self) -> int | None:
        return max(self.terms, default=None)

    def to_json(self) -> dict:
        from hypercolor.report import rational_json

        return {str(j): rational_json(c) for j, c in sorted(self.terms.items(), reverse=True)}


_LOW_RANK_NOTE = "r < 3: the bound is only claimed for r >= 3 and may fail here"


def _require_uniform(h: Hypergraph) -> int:
    if h.rank is None:
        raise NonUniform("this bound is defined for uniform hypergraphs only")
    return h.rank


def f_eta_form(h: Hypergraph, e: int, nb: NBFamily) -> LaurentRational:
    """F_eta(H, e, .) as a polynomial in 1/k for the ordering baked into ``nb``."""
    r = _require_uniform(h)
    star = len(nb.star2(e))
    pairs = len(nb.of_size(2, e))
    form = LaurentRational({0: 1})
    form.add(-1, -star)
    form.add(-2, -(pairs - star))
    shift = h.n - r
    for a in nb.containing(e):
        size = a.bit_count()
        if size < 3:
            continue
        exponent = len(component_masks(h.n, h.edge_masks, a)) - 1 - shift
        form.add(exponent, Fraction(1, size) if size % 2 else -1)
    return form


@dataclass(frozen=True)
class FEta:
    edge: int
    k: int
    value: Fraction
    form: LaurentRational

    def to_json(self) -> dict:
        from hypercolor.report import rational_json

        return {"edge": self.edge, "k": self.k, "value": rational_json(self.value), "form": self.form.to_json()}


def f_eta(h: Hypergraph, eta, e: int, k: int, budget: Budget = DEFAULT_BUDGET, nb: NBFamily | None = None) -> FEta:
    if k < 1:
        raise ValueError("k must be a positive integer")
    if not 0 <= e < h.m:
        raise IndexError(f"edge {e} out of range for m={h.m}")
    _require_uniform(h)
    nb = nb_family(h, eta, budget) if nb is None else nb
    form = f_eta_form(h, e, nb)
    return FEta(edge=e, k=k, value=form(k), form=form)


def pp15_lower_bound(h: Hypergraph, eta, L: Assignment, budget: Budget = DEFAULT_BUDGET) -> Fraction:
    """k^(n-r) * sum_e alpha(e, L) F_eta(H, e, k), a lower bound for P(H, L) - P(H, k)."""
    r = _require_uniform(h)
    k = L.k
    nb = nb_family(h, eta, budget)
    alpha = alpha_profile(h, L)
    total = Fraction(0)
    for e, a_e in enumerate(alpha.per_edge):
        if a_e:
            total += a_e * f_eta_form(h, e, nb)(k)
    return Fraction(k) ** (h.n - r) * total


def check_pp15(h: Hypergraph, eta, L: Assignment, budget: Budget = DEFAULT_BUDGET) -> CertificateReport:
    """Compare the bound with the brute-force difference P(H, L) - P(H, k)."""
    bound = pp15_lower_bound(h, eta, L, budget)
    diff = count_L_colorings(h, L, budget) - count_proper_colorings(h, L.k, budget)
    ok = diff >= bound
    return CertificateReport(
        name="pp15-lower-bound",
        passed=ok,
        values={"bound": bound, "difference": diff, "k": L.k},
        witness=None if ok else {"assignment": L.to_json(), "bound": bound, "difference": diff},
        warnings=[_LOW_RANK_NOTE] if h.rank < 3 else [],
    )


def nb_difference(h: Hypergraph, L: Assignment, eta=None, budget: Budget = DEFAULT_BUDGET) -> int:
    """Sum over A in NB(H) of (-1)^|A| (beta(A, L) - k^c(A)), term by term."""
    nb = nb_family(h, eta, budget)
    total = 0
    for a in nb.members:
        b = beta(h, L, a)
        term = b.product - L.k ** len(b.per_component)
        total += -term if a.bit_count() & 1 else term
    return total


# -- per-edge certificates ------------------------------------------------------


def certify_cor31(h: Hypergraph, eta, k: int, budget: Budget = DEFAULT_BUDGET) -> CertificateReport:
    """Pass iff F_eta(H, e, k) >= 0 for every edge, which gives P(H, L) >= P(H, k) for all k-assignments."""
    _require_uniform(h)
    nb = nb_family(h, eta, budget)
    verdicts = []
    witness = None
    for e in range(h.m):
        value = f_eta_form(h, e, nb)(k)
        ok = value >= 0
        verdicts.append({"edge": e, "F": value, "passed": ok})
        if not ok and witness is None:
            witness = {"edge": e, "k": k, "F": value, "eta": list(nb.eta)}
    return CertificateReport(
        name="cor31-nonnegative-F",
        passed=witness is None,
        verdicts=verdicts,
        values={"k": k, "eta": list(nb.eta)},
        witness=witness,
        warnings=[_LOW_RANK_NOTE] if h.rank < 3 else [],
    )


def certify_len0(h: Hypergraph, eta, k: int, budget: Budget = DEFAULT_BUDGET) -> CertificateReport:
    """Small-m case: F_eta(H, e, k) >= 0 whenever |E_{r-1}(e)| <= 1 and k >= 2, or |E_{r-1}(e)| >= 2 and k >= m - 1."""
    _require_uniform(h)
    if h.m > 4:
        raise WrongRegime(f"the small-size check covers m <= 4 edges; got m = {h.m}")
    stats = struct_stats(h)
    nb = nb_family(h, eta, budget)
    verdicts = []
    witness = None
    covered = 0
    for e in range(h.m):
        ew = stats.ew_size(e)
        applies = (ew <= 1 and k >= 2) or (ew >= 2 and k >= h.m - 1)
        value = f_eta_form(h, e, nb)(k)
        entry = {"edge": e, "ew": ew, "in_hypothesis": applies, "F": value}
        if applies:
            covered += 1
            entry["passed"] = value >= 0
            if value < 0 and witness is None:
                witness = {"edge": e, "k": k, "F": value, "eta": list(nb.eta)}
        verdicts.append(entry)
    return CertificateReport(
        name="len0-small-m",
        passed=witness is None,
        verdicts=verdicts,
        values={"k": k, "m": h.m, "edges_in_hypothesis": covered, "all_edges_covered": covered == h.m},
        witness=witness,
    )


def _prn1_hypothesis(m: int, ew: int, k: int) -> tuple[bool, bool]:
    """(edge condition |E_{r-1}(e)| <= 0.8(m-1), k >= 0.6(m-1) + 0.5|E_{r-1}(e)|), in exact integers."""
    return 5 * ew <= 4 * (m - 1), 10 * k >= 6 * (m - 1) + 5 * ew


def certify_prn1(h: Hypergraph, eta, k: int, budget: Budget = DEFAULT_BUDGET) -> CertificateReport:
    """F_eta(H, e, k) > 1/50 on every edge meeting the large-m hypothesis; other edges are listed apart."""
    r = _require_uniform(h)
    if h.m < 5:
        raise WrongRegime(f"the large-m bound needs m >= 5 edges; got m = {h.m}")
    if r < 3:
        raise WrongRegime(f"the large-m bound needs r >= 3; got r = {r}")
    stats = struct_stats(h)
    nb = nb_family(h, eta, budget)
    verdicts = []
    outside = []
    witness = None
    for e in range(h.m):
        ew = stats.ew_size(e)
        edge_ok, k_ok = _prn1_hypothesis(h.m, ew, k)
        if not (edge_ok and k_ok):
            outside.append({"edge": e, "ew": ew, "edge_condition": edge_ok, "k_condition": k_ok})
            continue
        value = f_eta_form(h, e, nb)(k)
        ok = value > FIFTIETH
        verdicts.append({"edge": e, "ew": ew, "F": value, "passed": ok})
        if not ok and witness is None:
            witness = {"edge": e, "k": k, "F": value, "eta": list(nb.eta)}
    notes = [] if verdicts else ["no edge satisfies the hypothesis at this k"]
    return CertificateReport(
        name="prn1-F-above-1/50",
        passed=witness is None,
        verdicts=verdicts,
        values={"k": k, "m": h.m, "outside_hypothesis": outside, "threshold": FIFTIETH},
        witness=witness,
        warnings=notes,
    )


# -- sandwich inequalities ---------------------------------------------------------


def _sandwich_parts(h: Hypergraph, L: Assignment, a: int):
    b = beta(h, L, a)
    c = len(b.per_component)
    alpha = alpha_profile(h, L)
    alpha_sum = sum(alpha.per_edge[i] for i in edge_indices(a))
    return b.product - L.k**c, Fraction(L.k) ** (c - 1), alpha_sum


def check_pro31(h: Hypergraph, L: Assignment, a: int) -> CertificateReport:
    """beta(A, L) - k^c(A) >= -k^(c(A)-1) * sum_{e in A} alpha(e, L)."""
    diff, scale, alpha_sum = _sandwich_parts(h, L, a)
    lower = -scale * alpha_sum
    ok = diff >= lower
    return CertificateReport(
        name="pro31-lower",
        passed=ok,
        values={"A": edge_indices(a), "difference": diff, "lower": lower},
        witness=None if ok else {"A": edge_indices(a), "assignment": L.to_json()},
    )


def check_pro32(h: Hypergraph, L: Assignment, a: int) -> CertificateReport:
    """beta(A, L) - k^c(A) <= -(k^(c(A)-1) / |A|) * sum_{e in A} alpha(e, L), for non-empty A."""
    if a == 0:
        raise PreconditionViolated("the upper bound needs a non-empty edge set")
    diff, scale, alpha_sum = _sandwich_parts(h, L, a)
    upper = -scale * alpha_sum / a.bit_count()
    ok = diff <= upper
    return CertificateReport(
        name="pro32-upper",
        passed=ok,
        values={"A": edge_indices(a), "difference": diff, "upper": upper},
        witness=None if ok else {"A": edge_indices(a), "assignment": L.to_json()},
    )


def check_lem14(d: Sequence, q: Sequence, x) -> CertificateReport:
    """prod (x - d_i) <= x^s - x^(s-1) * sum(q_i d_i) / sum(q_i), exactly for rational input."""
    d = [Fraction(v) for v in d]
    q = [Fraction(v) for v in q]
    x = Fraction(x)
    if not d or len(d) != len(q):
        raise PreconditionViolated("d and q must be non-empty and of equal length")
    if any(v < 0 for v in d) or any(v <= 0 for v in q):
        raise PreconditionViolated("d must be non-negative and q positive")
    if x < max(d):
        raise PreconditionViolated(f"x = {x} is below max(d) = {max(d)}")
    s = len(d)
    lhs = Fraction(1)
    for v in d:
        lhs *= x - v
    rhs = x**s - x ** (s - 1) * sum(qi * di for qi, di in zip(q, d)) / sum(q)
    ok = lhs <= rhs
    return CertificateReport(
        name="lem14-product",
        passed=ok,
        values={"lhs": lhs, "rhs": rhs},
        witness=None if ok else {"d": d, "q": q, "x": x},
    )


def check_le35(h: Hypergraph, eta, e: int, k: int, i: int, budget: Budget = DEFAULT_BUDGET) -> CertificateReport:
    """Pairing bound for the size-(2i-1) and size-2i terms of F_eta, 2 <= i <= m/2."""
    r = _require_uniform(h)
    if not (2 <= i and 2 * i <= h.m):
        raise WrongRegime(f"i must satisfy 2 <= i <= m/2 (m = {h.m}); got i = {i}")
    nb = nb_family(h, eta, budget)
    shift = h.n - r
    kf = Fraction(k)

    def weight(a: int) -> Fraction:
        return kf ** (len(component_masks(h.n, h.edge_masks, a)) - 1 - shift)

    odd = nb.of_size(2 * i - 1, e)
    even = nb.of_size(2 * i, e)
    lhs = sum((weight(a) for a in odd), Fraction(0)) / (2 * i - 1) - sum((weight(a) for a in even), Fraction(0))
    rhs = -Fraction((h.m - 2 * i) * len(even), h.m - 2 * i + 1) * kf ** (1 - 2 * i)
    ok = lhs >= rhs
    return CertificateReport(
        name="le35-pairing",
        passed=ok,
        values={"edge": e, "k": k, "i": i, "lhs": lhs, "rhs": rhs},
        witness=None if ok else {"edge": e, "k": k, "i": i, "eta": list(nb.eta)},
    )


# -- the analytic envelope --------------------------------------------------------


def f_axw(a: float, x: float, w: float) -> float:
    """1 - a x - (1 - a) w x^2 + x - w x - sinh(x - w x).

    The hyperbolic sine is taken from ``math.sinh`` rather than as a
    difference of exponentials, which keeps the relative error near machine
    precision for small x.
    """
    if not (0 <= a <= 1 and x >= 0 and 0 <= w <= 0.25):
        raise DomainError(f"f_axw needs 0 <= a <= 1, x >= 0, 0 <= w <= 1/4; got a={a}, x={x}, w={w}")
    y = x - w * x
    return 1 - a * x - (1 - a) * w * x * x + y - math.sinh(y)


def q_of_a(a: float) -> float:
    return 0.6 + 0.5 * a


def f_at_threshold(a: float, w: float) -> float:
    """f(a, 1/q(a), w)."""
    return f_axw(a, 1 / q_of_a(a), w)


def d_threshold_da(a: float) -> float:
    """Derivative in a of f(a, 1/q(a), 0)."""
    s = a + 1.2
    return (math.exp(2 / s) + math.exp(-2 / s) - 4.4) / (s * s)


THRESHOLD_REFERENCE_POINTS = (
    (0.0, 0.0, 0.1138594424),
    (0.8, 0.0, 0.0247988066),
    (0.0, 1 / 6, 0.0454062374),
    (0.8, 1 / 6, 0.00668111582),
    (0.1, 0.25, 0.0399846613),
    (0.8, 0.25, 0.0776832684),
)


def falling(x: int, j: int) -> int:
    out = 1
    for t in range(j):
        out *= x - t
    return out


def nb_count_envelope(m: int, a, k: int) -> Fraction:
    """Counting lower bound for F_eta with a = |E_{r-1}(e)|/(m-1):

    1 - (m-1)a/k - (m-1)(1-a)/k^2 - sum_{2<=i<=m/2} (m-2i)(m-1)_(2i-1) / ((m-2i+1)(2i-1)!) k^(1-2i).
    """
    a = Fraction(a)
    kf = Fraction(k)
    out = 1 - (m - 1) * a / kf - (m - 1) * (1 - a) / kf**2
    for i in range(2, m // 2 + 1):
        coeff = Fraction((m - 2 * i) * falling(m - 1, 2 * i - 1), (m - 2 * i + 1) * math.factorial(2 * i - 1))
        out -= coeff * kf ** (1 - 2 * i)
    return out


# -- thresholds -----------------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdBounds:
    m: int
    r: int | None
    gamma: int | None
    rho: int | None
    th4_1: Fraction | None
    th4_1_valid: bool
    ssize: int
    ssize_valid: bool
    wanghy: Fraction
    wanghy_valid: bool
    th4_0_ln: float | None
    th4_0_log2: float | None
    th4_0_valid: bool

    def to_json(self) -> dict:
        from hypercolor.report import jsonable

        return {
            "m": self.m,
            "r": self.r,
            "gamma": self.gamma,
            "rho": self.rho,
            "large_m_gamma_bound": {"value": jsonable(self.th4_1), "valid": self.th4_1_valid},
            "small_m_bound": {"value": self.ssize, "valid": self.ssize_valid},
            "general_bound": {"value": jsonable(self.wanghy), "as_float": float(self.wanghy), "valid": self.wanghy_valid},
            "rho_log_bound": {
                "natural_log": self.th4_0_ln,
                "log2": self.th4_0_log2,
                "valid": self.th4_0_valid,
                "note": "log base is not fixed by the source; both conventions reported",
            },
        }


def threshold_bounds(h: Hypergraph) -> ThresholdBounds:
    """All upper bounds on tau'(H) with the conditions under which each applies."""
    stats = struct_stats(h)
    m, r = h.m, stats.r
    gamma, rho = stats.gamma_value, stats.rho_value
    uniform3 = r is not None and r >= 3
    th41 = None
    th41_valid = False
    if gamma is not None and m >= 1:
        th41 = Fraction(3, 5) * (m - 1) + Fraction(1, 2) * gamma
        th41_valid = uniform3 and m >= 5 and 5 * gamma <= 4 * (m - 1)
    ln_val = log2_val = None
    th40_valid = False
    if rho is not None and m >= 3:
        ln_val = 2.4 * (m - 1) / (rho * math.log(m - 1))
        log2_val = 2.4 * (m - 1) / (rho * math.log2(m - 1))
        th40_valid = uniform3 and rho >= 2 and 2 * (m - 1) >= rho**3
    return ThresholdBounds(
        m=m,
        r=r,
        gamma=gamma,
        rho=rho,
        th4_1=th41,
        th4_1_valid=th41_valid,
        ssize=m - 1,
        ssize_valid=r is not None and m <= 4,
        wanghy=Fraction("1.1346") * (m - 1),
        wanghy_valid=uniform3,
        th4_0_ln=ln_val,
        th4_0_log2=log2_val,
        th4_0_valid=th40_valid,
    )


def th41_preconditions(h: Hypergraph, k: int) -> None:
    r = _require_uniform(h)
    stats = struct_stats(h)
    problems = []
    if r < 3:
        problems.append(f"r >= 3 (got r = {r})")
    if h.m < 5:
        problems.append(f"m >= 5 (got m = {h.m})")
    elif 5 * stats.gamma > 4 * (h.m - 1):
        problems.append(f"gamma <= 0.8(m-1) (got gamma = {stats.gamma}, m = {h.m})")
    elif 10 * k < 6 * (h.m - 1) + 5 * stats.gamma:
        problems.append(f"k >= 0.6(m-1) + 0.5 gamma = {Fraction(3, 5) * (h.m - 1) + Fraction(stats.gamma, 2)} (got k = {k})")
    if problems:
        raise WrongRegime("the large-m difference bound needs " + "; ".join(problems))


def certify_th41(
    h: Hypergraph,
    eta,
    k: int,
    L: Assignment | None = None,
    samples: int = 200,
    seed: int = 0,
    budget: Budget = DEFAULT_BUDGET,
) -> CertificateReport:
    """Check P(H, L) - P(H, k) >= k^(n-r) alpha(H, L) / 50 on one or a sampled batch of assignments.

    Every checked assignment also runs through the chain
    difference >= pp15 bound >= k^(n-r) alpha / 50, whose second step is
    implied by a passing ``certify_prn1``.
    """
    from hypercolor.sampling import sample_assignments

    th41_preconditions(h, k)
    if k**h.n > budget.colorings:
        raise BudgetExceeded("colorings", k**h.n, budget.colorings)
    r = h.rank
    prn1 = certify_prn1(h, eta, k, budget)
    nb = nb_family(h, eta, budget)
    forms = [f_eta_form(h, e, nb) for e in range(h.m)]
    f_values = [form(k) for form in forms]
    batch = [L] if L is not None else sample_assignments(random.Random(seed), h.n, k, samples)
    base = count_proper_colorings(h, k, budget)
    scale = Fraction(k) ** (h.n - r)
    witness = None
    chain_breaks = 0
    min_ratio = None
    for lst in batch:
        alpha = alpha_profile(h, lst)
        diff = count_L_colorings(h, lst, budget) - base
        target = FIFTIETH * scale * alpha.total
        bound = scale * sum((a_e * f for a_e, f in zip(alpha.per_edge, f_values)), Fraction(0))
        if not (diff >= bound >= target) and prn1.passed:
            chain_breaks += 1
        if alpha.total:
            ratio = Fraction(diff) / (scale * alpha.total)
            min_ratio = ratio if min_ratio is None or ratio < min_ratio else min_ratio
        if diff < target and witness is None:
            witness = {"assignment": lst.to_json(), "difference": diff, "target": target}
    ok = witness is None and chain_breaks == 0
    if not ok and witness is None:
        witness = {"chain_breaks": chain_breaks}
    return CertificateReport(
        name="th41-difference",
        passed=ok,
        values={
            "k": k,
            "assignments_checked": len(batch),
            "P_k": base,
            "min_difference_over_scaled_alpha": min_ratio,
            "prn1_passed": prn1.passed,
            "chain_breaks": chain_breaks,
            "seed": seed if L is None else None,
        },
        witness=witness,
    )
