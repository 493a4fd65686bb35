"""Backend selection for the enumeration kernels.

The compiled extension ``_ckernels`` is used when it imports and the inputs
fit its 64-bit packing; otherwise every call runs the pure-Python twin in
``_pykernels``.  Set ``HYPERCOLOR_BACKEND=python`` to force the fallback.
"""

from __future__ import annotations

import os
from typing import Sequence

from hypercolor import _pykernels

try:
    from hypercolor import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_INT64_SAFE = 1 << 62


class Backend:
    """Kernel entry points bound to one implementation."""

    def __init__(self, name: str, impl):
        self.name = name
        self._impl = impl
        self._compiled = impl is not _pykernels

    def __repr__(self):
        return f"Backend({self.name!r})"

    def count_colorings(self, n: int, edges: Sequence[Sequence[int]], lists: Sequence[Sequence[int]]) -> int:
        if self._compiled:
            palette = {c: i for i, c in enumerate(sorted({c for lst in lists for c in lst}))}
            lists = [[palette[c] for c in lst] for lst in lists]
            if len(palette) >= 1 << 31:
                return _pykernels.count_colorings(n, edges, lists)
        return self._impl.count_colorings(n, [list(e) for e in edges], lists)

    def subset_poly(self, n: int, edge_masks: Sequence[int], include: bytes | None = None) -> list[int]:
        if self._compiled and n > 64:
            return _pykernels.subset_poly(n, edge_masks, include)
        return self._impl.subset_poly(n, list(edge_masks), include)

    def subset_beta_sum(
        self, n: int, edge_masks: Sequence[int], vertex_colours: Sequence[int], include: bytes | None = None
    ) -> int:
        if self._compiled:
            widest = max((c.bit_length() for c in vertex_colours), default=0)
            biggest = max((c.bit_count() for c in vertex_colours), default=1)
            if n > 64 or widest > 64 or (1 << len(edge_masks)) * max(biggest, 1) ** n >= _INT64_SAFE:
                return _pykernels.subset_beta_sum(n, edge_masks, vertex_colours, include)
        return self._impl.subset_beta_sum(n, list(edge_masks), list(vertex_colours), include)

    def covering_flags(self, edge_masks: Sequence[int]) -> bytearray:
        if self._compiled and any(e >> 64 for e in edge_masks):
            return _pykernels.covering_flags(edge_masks)
        return self._impl.covering_flags(list(edge_masks))

    def minimal_flags(self, flags: bytes, m: int) -> bytearray:
        return self._impl.minimal_flags(flags, m)

    def avoiding_flags(self, m: int, forbidden: Sequence[int]) -> bytearray:
        return self._impl.avoiding_flags(m, list(forbidden))

    def profile_min(
        self,
        n: int,
        k: int,
        type_verts: Sequence[Sequence[int]],
        terms: Sequence[tuple[int, int, Sequence[Sequence[int]]]],
        node_cap: int,
        stop_at: int | None = None,
    ):
        if self._compiled:
            # each group sums types sharing a vertex, so it is at most k
            bound = sum(abs(c) * b * k ** len(g) for c, b, g in terms)
            if bound >= 1 << 62 or (stop_at is not None and abs(stop_at) >= 1 << 62):
                return _pykernels.profile_min(n, k, type_verts, terms, node_cap, stop_at)
        return self._impl.profile_min(n, k, [list(t) for t in type_verts], terms, node_cap, stop_at)


PYTHON = Backend("python", _pykernels)
COMPILED = Backend("cython", _ckernels) if _ckernels is not None else None


def available() -> list[str]:
    return ["python"] + (["cython"] if COMPILED is not None else [])


def get_backend(name: str | None = None) -> Backend:
    """Return the named backend, or the default one when ``name`` is None."""
    if name is None:
        name = os.environ.get("HYPERCOLOR_BACKEND", "cython" if COMPILED is not None else "python")
    if name == "python":
        return PYTHON
    if name == "cython":
        if COMPILED is None:
            raise ImportError("compiled kernels are not built; run `pip install -e .`")
        return COMPILED
    raise ValueError(f"unknown backend {name!r}")


active = get_backend()


def set_backend(name: str) -> Backend:
    """Switch the backend used by the rest of the package; returns the previous one."""
    global active
    previous = active
    active = get_backend(name)
    return previous
