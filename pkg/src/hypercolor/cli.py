"""Command-line front end.

Exit status: 0 when every check passes, 1 when a certificate fails (the
witness is in the report), 2 for usage, input or regime errors, 3 when an
enumeration budget is exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from hypercolor import kernels
from hypercolor.bounds import (
    FIFTIETH,
    certify_cor31,
    certify_len0,
    certify_prn1,
    certify_th41,
    check_pro31,
    check_pro32,
    f_eta,
    nb_difference,
    pp15_lower_bound,
    th41_preconditions,
    threshold_bounds,
)
from hypercolor.budget import Budget
from hypercolor.chromatic import chromatic_polynomial_ie, count_proper_colorings
from hypercolor.deltacycles import (
    chromatic_polynomial_nbc,
    check_wanghyc,
    family_findings,
    nb_family,
    parse_eta,
)
from hypercolor.errors import BudgetExceeded, HypercolorError, InvalidHypergraph
from hypercolor.hypergraph import Hypergraph, edge_indices, struct_stats
from hypercolor.listcolor import (
    Assignment,
    alpha_profile,
    count_L_colorings,
    count_L_colorings_nbc,
    plmin_exact,
    thresholds,
)
from hypercolor.report import SCHEMA_VERSION, jsonable
from hypercolor.sampling import GENERATOR, sample_assignments

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    assignment: str | None = None
    k: int | None = None
    kmax: int | None = None
    eta: str | None = None
    edge: int | None = None
    which: str | None = None
    seed: int = 0
    samples: int = 200
    budget: Budget = Budget()
    json: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        return cls(
            command=ns.command,
            input=ns.input,
            assignment=getattr(ns, "assignment", None),
            k=getattr(ns, "k", None),
            kmax=getattr(ns, "kmax", None),
            eta=getattr(ns, "eta", None),
            edge=getattr(ns, "edge", None),
            which=getattr(ns, "which", None),
            seed=ns.seed,
            samples=ns.samples,
            budget=Budget(colorings=ns.budget_colorings, subset_edges=ns.budget_subsets),
            json=ns.json,
        )


def _sets(masks) -> list[list[int]]:
    return [edge_indices(a) for a in masks]


def cmd_validate(h: Hypergraph, cfg: RunConfig):
    return True, {"valid": True, "n": h.n, "m": h.m}


def cmd_stats(h: Hypergraph, cfg: RunConfig):
    return True, struct_stats(h).to_json()


def cmd_chromatic(h: Hypergraph, cfg: RunConfig):
    ie = chromatic_polynomial_ie(h, cfg.budget)
    nbc = chromatic_polynomial_nbc(h, cfg.eta, cfg.budget)
    out = {"inclusion_exclusion": ie, "nbc": nbc, "text": str(ie), "equal": ie == nbc}
    ok = ie == nbc
    if cfg.k is not None:
        brute = count_proper_colorings(h, cfg.k, cfg.budget)
        out["k"] = cfg.k
        out["brute_force"] = brute
        out["value"] = ie(cfg.k)
        ok = ok and brute == ie(cfg.k)
    return ok, out


def cmd_delta_cycles(h: Hypergraph, cfg: RunConfig):
    nb = nb_family(h, cfg.eta, cfg.budget)
    return True, {"eta": list(nb.eta), "delta_cycles": _sets(nb.cycles), "broken_delta_cycles": _sets(nb.broken)}


def cmd_nbc(h: Hypergraph, cfg: RunConfig):
    nb = nb_family(h, cfg.eta, cfg.budget)
    issues = family_findings(nb)
    out = {
        "eta": list(nb.eta),
        "nb_family": _sets(nb.members),
        "size": len(nb),
        "polynomial": chromatic_polynomial_nbc(h, cfg.eta, cfg.budget),
        "findings": issues,
    }
    ok = not issues
    if h.rank is not None and h.m:
        report = check_wanghyc(h, cfg.eta, cfg.budget)
        out["component_bound"] = report
        ok = ok and report.passed
    return ok, out


def _load_assignment(cfg: RunConfig) -> Assignment:
    if cfg.assignment is None:
        raise HypercolorError("--assignment is required for this command")
    return Assignment.load(cfg.assignment)


def cmd_list_count(h: Hypergraph, cfg: RunConfig):
    L = _load_assignment(cfg)
    brute = count_L_colorings(h, L, cfg.budget)
    nbc = count_L_colorings_nbc(h, L, cfg.eta, cfg.budget)
    return brute == nbc, {"k": L.k, "brute_force": brute, "nbc": nbc, "alpha": alpha_profile(h, L), "equal": brute == nbc}


def cmd_plmin(h: Hypergraph, cfg: RunConfig):
    k = _need_k(cfg)
    res = plmin_exact(h, k, cfg.budget)
    p = chromatic_polynomial_ie(h, cfg.budget)(k)
    return res.verified is not False, {"plmin": res, "P": p, "equal_to_P": res.value == p}


def cmd_thresholds(h: Hypergraph, cfg: RunConfig):
    out = {"bounds": threshold_bounds(h)}
    ok = True
    if cfg.kmax is not None:
        obs = thresholds(h, cfg.kmax, cfg.budget)
        out["observed"] = obs
        ok = obs.identity_holds is not False
    return ok, out


def cmd_feval(h: Hypergraph, cfg: RunConfig):
    k = _need_k(cfg)
    if cfg.edge is None:
        raise HypercolorError("--edge is required")
    return True, f_eta(h, cfg.eta, cfg.edge, k, cfg.budget)


def cmd_certify(h: Hypergraph, cfg: RunConfig):
    k = _need_k(cfg)
    if cfg.which == "cor31":
        report = certify_cor31(h, cfg.eta, k, cfg.budget)
    elif cfg.which == "len0":
        report = certify_len0(h, cfg.eta, k, cfg.budget)
    elif cfg.which == "prn1":
        report = certify_prn1(h, cfg.eta, k, cfg.budget)
    elif cfg.which == "th41":
        L = Assignment.load(cfg.assignment) if cfg.assignment else None
        report = certify_th41(h, cfg.eta, k, L, cfg.samples, cfg.seed, cfg.budget)
    else:
        raise HypercolorError(f"unknown certificate {cfg.which!r}")
    return report.passed, report


def _check(name: str, passed: bool, **values) -> dict:
    return {"check": name, "passed": bool(passed), **values}


def cmd_verify_all(h: Hypergraph, cfg: RunConfig):
    """Run every cross-module identity and inequality that applies to this instance."""
    k = _need_k(cfg)
    budget = cfg.budget
    rng = random.Random(cfg.seed)
    eta = parse_eta(cfg.eta, h.m)
    checks = []

    ie = chromatic_polynomial_ie(h, budget)
    nbc = chromatic_polynomial_nbc(h, eta, budget)
    brute = count_proper_colorings(h, k, budget)
    checks.append(_check("expansions-equal", ie == nbc, polynomial=str(ie)))
    checks.append(_check("polynomial-matches-brute-force", ie(k) == brute, k=k, value=brute))

    if h.m <= 4:
        orders = list(itertools.permutations(range(h.m)))
    else:
        orders = [tuple(rng.sample(range(h.m), h.m)) for _ in range(5)]
    bad = [list(o) for o in orders if chromatic_polynomial_nbc(h, o, budget) != ie]
    checks.append(_check("eta-independence", not bad, orders_tested=len(orders), failing=bad))

    nb = nb_family(h, eta, budget)
    issues = family_findings(nb)
    checks.append(_check("nb-family-structure", not issues, findings=issues))

    uniform = h.rank is not None and h.m > 0
    if uniform:
        report = check_wanghyc(h, eta, budget)
        checks.append(_check("nb-component-bound", report.passed, report=report))

    batch = [_load_assignment(cfg)] if cfg.assignment else sample_assignments(rng, h.n, k, min(cfg.samples, 20))
    for idx, L in enumerate(batch):
        if L.k != k:
            raise HypercolorError(f"assignment has k = {L.k} but --k is {k}")
        label = f"L{idx}"
        p_l = count_L_colorings(h, L, budget)
        p_l_nbc = count_L_colorings_nbc(h, L, eta, budget)
        checks.append(_check(f"{label}:list-expansion", p_l == p_l_nbc, brute_force=p_l, nbc=p_l_nbc))
        ident = nb_difference(h, L, eta, budget)
        checks.append(_check(f"{label}:difference-identity", ident == p_l - brute, nb_sum=ident, difference=p_l - brute))
        sandwich_fail = []
        for a in range(1, 1 << h.m):
            if not check_pro31(h, L, a).passed or not check_pro32(h, L, a).passed:
                sandwich_fail.append(edge_indices(a))
        checks.append(_check(f"{label}:sandwich", not sandwich_fail, failing_sets=sandwich_fail))
        if uniform:
            bound = pp15_lower_bound(h, eta, L, budget)
            alpha = alpha_profile(h, L).total
            target = FIFTIETH * Fraction(k) ** (h.n - h.rank) * alpha
            checks.append(
                _check(
                    f"{label}:pp15-bound",
                    p_l - brute >= bound,
                    difference=p_l - brute,
                    bound=bound,
                    fiftieth_target=target,
                    assignment=L,
                )
            )

    if uniform:
        cor = certify_cor31(h, eta, k, budget)
        checks.append(_check("cor31", True, certificate_passed=cor.passed, report=cor))
        if cor.passed:
            worst = min(count_L_colorings(h, L, budget) - brute for L in batch)
            checks.append(_check("cor31-implies-no-deficit", worst >= 0, min_difference=worst))
        if h.m <= 4:
            checks.append(_check("len0", (rep := certify_len0(h, eta, k, budget)).passed, report=rep))
        elif h.rank >= 3:
            checks.append(_check("prn1", (rep := certify_prn1(h, eta, k, budget)).passed, report=rep))
            try:
                th41_preconditions(h, k)
            except HypercolorError:
                pass
            else:
                rep = certify_th41(h, eta, k, None, cfg.samples, cfg.seed, budget)
                checks.append(_check("th41", rep.passed, report=rep))

    ok = all(c["passed"] for c in checks)
    return ok, {"k": k, "eta": list(eta), "generator": GENERATOR, "seed": cfg.seed, "checks": checks}


def _need_k(cfg: RunConfig) -> int:
    if cfg.k is None or cfg.k < 1:
        raise HypercolorError("--k must be given as a positive integer")
    return cfg.k


COMMANDS = {
    "validate": cmd_validate,
    "stats": cmd_stats,
    "chromatic": cmd_chromatic,
    "delta-cycles": cmd_delta_cycles,
    "nbc": cmd_nbc,
    "list-count": cmd_list_count,
    "plmin": cmd_plmin,
    "thresholds": cmd_thresholds,
    "feval": cmd_feval,
    "certify": cmd_certify,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="hypergraph JSON file")
    common.add_argument("--eta", help="edge ordering as comma-separated ranks, e.g. 2,0,1")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--budget-subsets", type=int, default=Budget.subset_edges, help="max edges for 2^m sweeps")
    common.add_argument("--budget-colorings", type=int, default=Budget.colorings, help="max maps for brute force")
    common.add_argument("--json", action="store_true", help="emit the JSON report")

    parser = argparse.ArgumentParser(prog="hypercolor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("validate", "stats", "delta-cycles", "nbc"):
        sub.add_parser(name, parents=[common])
    p = sub.add_parser("chromatic", parents=[common])
    p.add_argument("--k", type=int)
    p = sub.add_parser("list-count", parents=[common])
    p.add_argument("--assignment", required=True)
    p = sub.add_parser("plmin", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p = sub.add_parser("thresholds", parents=[common])
    p.add_argument("--kmax", type=int)
    p = sub.add_parser("feval", parents=[common])
    p.add_argument("--edge", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = sub.add_parser("certify", parents=[common])
    p.add_argument("--which", choices=["cor31", "len0", "prn1", "th41"], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--assignment")
    p = sub.add_parser("verify-all", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--assignment")
    return parser


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    obj = jsonable(obj)
    lines = []
    if isinstance(obj, dict):
        if set(obj) == {"num", "den"}:
            return [pad + (obj["num"] if obj["den"] == "1" else f"{obj['num']}/{obj['den']}")]
        for key in obj:
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not (isinstance(val, dict) and set(val) == {"num", "den"}):
                lines.append(f"{pad}{key}:")
                lines.extend(_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_text(val)[0].strip() if isinstance(val, dict) else json.dumps(val)}")
    elif isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj) or all(
            isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v) for v in obj
        ):
            lines.append(pad + json.dumps(obj))
        else:
            for v in obj:
                sub_lines = _text(v, indent + 1)
                lines.append(pad + "- " + sub_lines[0].strip())
                lines.extend(sub_lines[1:])
    else:
        lines.append(pad + json.dumps(obj))
    return lines


def run(cfg: RunConfig, out=None) -> int:
    out = sys.stdout if out is None else out
    envelope = {"schema_version": SCHEMA_VERSION, "command": cfg.command, "backend": kernels.active.name}
    try:
        h = Hypergraph.load(cfg.input)
        ok, result = COMMANDS[cfg.command](h, cfg)
        status = EXIT_OK if ok else EXIT_FAILED
        envelope.update(status="pass" if ok else "fail", result=result)
    except BudgetExceeded as exc:
        status = EXIT_BUDGET
        envelope.update(status="budget-exceeded", error=str(exc))
    except (HypercolorError, InvalidHypergraph, ValueError, OSError, json.JSONDecodeError) as exc:
        status = EXIT_USAGE
        envelope.update(status="error", error=f"{type(exc).__name__}: {exc}")
    envelope.pop("backend")  # reports must not depend on the kernel build
    if cfg.json:
        out.write(json.dumps(jsonable(envelope), indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(_text(envelope)) + "\n")
    return status


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return run(RunConfig.from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
