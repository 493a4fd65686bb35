"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

from __future__ import annotations

import argparse
import random
import time

from hypercolor import kernels
from hypercolor.hypergraph import Hypergraph
from hypercolor.listcolor import plmin_exact
from hypercolor.sampling import random_assignment, random_uniform


def _cases(quick: bool):
    rng = random.Random(7)
    big = random_uniform(rng, 9, 14 if quick else 18, 3)
    dense = Hypergraph.complete(6, 3)
    L = random_assignment(rng, 9, 3)
    k24 = Hypergraph(6, [[a, b] for a in (0, 1) for b in (2, 3, 4, 5)])
    k = 2 if quick else 3
    cov = kernels.PYTHON.covering_flags(big.edge_masks)
    return [
        ("count_colorings K6^3, k=4", lambda be: be.count_colorings(6, dense.edges, [list(range(4))] * 6)),
        (f"subset_poly m={big.m}", lambda be: be.subset_poly(big.n, big.edge_masks)),
        (f"subset_beta_sum m={big.m}", lambda be: be.subset_beta_sum(big.n, big.edge_masks, L.colour_masks())),
        (f"covering_flags m={big.m}", lambda be: be.covering_flags(big.edge_masks)),
        (f"minimal_flags m={big.m}", lambda be: be.minimal_flags(cov, big.m)),
        (f"plmin K_{{2,4}}, k={k}", lambda be: _plmin(be, k24, k)),
    ]


def _plmin(be, h, k):
    previous = kernels.active
    kernels.active = be
    try:
        return plmin_exact(h, k).value
    finally:
        kernels.active = previous


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="smaller inputs")
    args = parser.parse_args(argv)
    if kernels.COMPILED is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    print(f"{'kernel':34} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in _cases(args.quick):
        py_out, cy_out = fn(kernels.PYTHON), fn(kernels.COMPILED)
        if py_out != cy_out:
            raise SystemExit(f"{name}: backends disagree")
        t_py = _best(lambda: fn(kernels.PYTHON), args.repeat)
        t_cy = _best(lambda: fn(kernels.COMPILED), args.repeat)
        print(f"{name:34} {t_py:10.4f} {t_cy:10.4f} {t_py / max(t_cy, 1e-9):8.1f}")


if __name__ == "__main__":
    main()
