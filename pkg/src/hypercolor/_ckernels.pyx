# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Vertex and colour sets are packed into ``uint64``; callers guarantee
n <= 64 and at most 64 distinct colours (``kernels`` checks this and falls
back to the Python implementation otherwise).
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popcount(uint64_t x) nogil:
    return __builtin_popcountll(x)


def count_colorings(int n, edges, lists):
    cdef int m = len(edges)
    cdef int total_len = 0
    cdef int v, i, j, pos, c, ok, e, start, stop
    for v in range(n):
        total_len += len(lists[v])
    cdef int *colours = <int *> malloc(max(total_len, 1) * sizeof(int))
    cdef int *off = <int *> malloc((n + 1) * sizeof(int))
    cdef int *idx = <int *> malloc(max(n, 1) * sizeof(int))
    cdef int *col = <int *> malloc(max(n, 1) * sizeof(int))
    # edges grouped by their largest vertex; each stored without that vertex
    cdef int *cstart = <int *> malloc((n + 1) * sizeof(int))
    cdef int *estart = <int *> malloc((m + 1) * sizeof(int))
    cdef int nverts = 0
    for e in range(m):
        nverts += len(edges[e])
    cdef int *everts = <int *> malloc(max(nverts, 1) * sizeof(int))
    cdef uint64_t count = 0
    try:
        off[0] = 0
        for v in range(n):
            for j, c in enumerate(lists[v]):
                colours[off[v] + j] = c
            off[v + 1] = off[v] + len(lists[v])
        order = sorted(range(m), key=lambda t: max(edges[t]))
        pos = 0
        i = 0
        for v in range(n):
            cstart[v] = i
            while i < m and max(edges[order[i]]) == v:
                estart[i] = pos
                top = max(edges[order[i]])
                for u in edges[order[i]]:
                    if u != top:
                        everts[pos] = u
                        pos += 1
                i += 1
        cstart[n] = i
        estart[i] = pos
        with nogil:
            if n == 0:
                count = 1
            else:
                pos = 0
                idx[0] = -1
                while pos >= 0:
                    idx[pos] += 1
                    if idx[pos] >= off[pos + 1] - off[pos]:
                        pos -= 1
                        continue
                    c = colours[off[pos] + idx[pos]]
                    ok = 1
                    for e in range(cstart[pos], cstart[pos + 1]):
                        start = estart[e]
                        stop = estart[e + 1]
                        j = start
                        while j < stop and col[everts[j]] == c:
                            j += 1
                        if j == stop:
                            ok = 0
                            break
                    if not ok:
                        continue
                    col[pos] = c
                    if pos == n - 1:
                        count += 1
                    else:
                        pos += 1
                        idx[pos] = -1
    finally:
        free(colours); free(off); free(idx); free(col)
        free(cstart); free(estart); free(everts)
    return int(count)


cdef int walk(int m, uint64_t *em, uint64_t *ec, uint64_t a,
              uint64_t *cv, uint64_t *cc, uint64_t *covered) nogil:
    """Fill cv/cc with the edge-bearing components of a; return their number."""
    cdef int nc = 0, i = 0, t, w
    cdef uint64_t vm, cm
    covered[0] = 0
    while a:
        if a & 1:
            vm = em[i]
            cm = ec[i]
            w = 0
            for t in range(nc):
                if cv[t] & vm:
                    vm |= cv[t]
                    cm &= cc[t]
                else:
                    cv[w] = cv[t]
                    cc[w] = cc[t]
                    w += 1
            cv[w] = vm
            cc[w] = cm
            nc = w + 1
            covered[0] |= em[i]
        a >>= 1
        i += 1
    return nc


cdef uint64_t *to_u64(seq):
    cdef int i, size = len(seq)
    cdef uint64_t *out = <uint64_t *> malloc(max(size, 1) * sizeof(uint64_t))
    for i in range(size):
        out[i] = <uint64_t> seq[i]
    return out


def subset_poly(int n, edge_masks, keep=None):
    cdef int m = len(edge_masks)
    cdef uint64_t *em = to_u64(edge_masks)
    cdef uint64_t *ec = <uint64_t *> malloc(max(m, 1) * sizeof(uint64_t))
    cdef uint64_t cv[64]
    cdef uint64_t cc[64]
    cdef uint64_t covered, a, size = (<uint64_t> 1) << m
    cdef int64_t *coeffs = <int64_t *> malloc((n + 1) * sizeof(int64_t))
    cdef const unsigned char[:] inc
    cdef bint use_inc = keep is not None
    cdef int i, c
    if use_inc:
        inc = keep
    try:
        for i in range(m):
            ec[i] = 0
        for i in range(n + 1):
            coeffs[i] = 0
        with nogil:
            for a in range(size):
                if use_inc and not inc[a]:
                    continue
                c = walk(m, em, ec, a, cv, cc, &covered)
                c += n - popcount(covered)
                if popcount(a) & 1:
                    coeffs[c] -= 1
                else:
                    coeffs[c] += 1
        return [coeffs[i] for i in range(n + 1)]
    finally:
        free(em); free(ec); free(coeffs)


def subset_beta_sum(int n, edge_masks, vertex_colours, keep=None):
    """Callers guarantee 2**m * max_list_size**n < 2**63."""
    cdef int m = len(edge_masks)
    cdef uint64_t *em = to_u64(edge_masks)
    cdef uint64_t *vc = to_u64(vertex_colours)
    cdef uint64_t *ec = <uint64_t *> malloc(max(m, 1) * sizeof(uint64_t))
    cdef uint64_t cv[64]
    cdef uint64_t cc[64]
    cdef uint64_t covered, a, size = (<uint64_t> 1) << m
    cdef int64_t total = 0, prod
    cdef const unsigned char[:] inc
    cdef bint use_inc = keep is not None
    cdef int i, v, nc
    if use_inc:
        inc = keep
    try:
        for i in range(m):
            ec[i] = ~(<uint64_t> 0)
            for v in range(n):
                if (em[i] >> v) & 1:
                    ec[i] &= vc[v]
        with nogil:
            for a in range(size):
                if use_inc and not inc[a]:
                    continue
                nc = walk(m, em, ec, a, cv, cc, &covered)
                prod = 1
                for i in range(nc):
                    prod *= popcount(cc[i])
                if prod:
                    for v in range(n):
                        if not (covered >> v) & 1:
                            prod *= popcount(vc[v])
                if popcount(a) & 1:
                    total -= prod
                else:
                    total += prod
        return int(total)
    finally:
        free(em); free(vc); free(ec)


def covering_flags(edge_masks):
    cdef int m = len(edge_masks)
    cdef uint64_t *em = to_u64(edge_masks)
    cdef uint64_t size = (<uint64_t> 1) << m
    flags = bytearray(size)
    cdef unsigned char[:] out = flags
    cdef uint64_t a, b, once, twice
    cdef int i, ok
    try:
        with nogil:
            for a in range(1, size):
                once = 0
                twice = 0
                b = a
                i = 0
                while b:
                    if b & 1:
                        twice |= once & em[i]
                        once |= em[i]
                    b >>= 1
                    i += 1
                ok = 1
                b = a
                i = 0
                while b:
                    if (b & 1) and (em[i] & ~twice):
                        ok = 0
                        break
                    b >>= 1
                    i += 1
                out[a] = ok
    finally:
        free(em)
    return flags


def minimal_flags(flags, int m):
    cdef uint64_t size = (<uint64_t> 1) << m
    cdef const unsigned char[:] fl = flags
    below_buf = bytearray(size)
    result = bytearray(size)
    cdef unsigned char[:] below = below_buf
    cdef unsigned char[:] out = result
    cdef uint64_t a, b, low, sub
    with nogil:
        for a in range(1, size):
            b = a
            while b:
                low = b & (~b + 1)
                sub = a ^ low
                if fl[sub] or below[sub]:
                    below[a] = 1
                    break
                b ^= low
            out[a] = 1 if (fl[a] and not below[a]) else 0
    return result


def avoiding_flags(int m, forbidden):
    cdef uint64_t size = (<uint64_t> 1) << m
    bad_buf = bytearray(size)
    result = bytearray(size)
    cdef unsigned char[:] bad = bad_buf
    cdef unsigned char[:] out = result
    cdef uint64_t a, b, low
    for f in forbidden:
        bad[f] = 1
    with nogil:
        for a in range(size):
            if not bad[a]:
                b = a
                while b:
                    low = b & (~b + 1)
                    if bad[a ^ low]:
                        bad[a] = 1
                        break
                    b ^= low
            out[a] = 0 if bad[a] else 1
    return result


cdef struct Search:
    int n
    int ntypes
    int64_t *mult
    int64_t *cap
    int *tv_start
    int *tv
    int nterms
    int64_t *coeff
    int64_t *base
    int *term_start      # groups of term i: term_start[i] .. term_start[i+1]
    int *group_start     # members of group g: group_start[g] .. group_start[g+1]
    int *group_items
    int64_t nodes
    int64_t node_cap
    int64_t best
    bint have_best
    bint use_stop
    int64_t stop_at
    bint done
    int64_t *best_mult


cdef int64_t evaluate(Search *s) nogil:
    cdef int64_t total = 0, prod, acc
    cdef int i, g, j
    for i in range(s.nterms):
        prod = s.base[i]
        for g in range(s.term_start[i], s.term_start[i + 1]):
            acc = 0
            for j in range(s.group_start[g], s.group_start[g + 1]):
                acc += s.mult[s.group_items[j]]
            prod *= acc
            if prod == 0:
                break
        total += s.coeff[i] * prod
    return total


cdef void search(Search *s, int t) nogil:
    cdef int64_t room, x, value
    cdef int j, v
    if s.done:
        return
    s.nodes += 1
    if s.nodes > s.node_cap:
        s.done = True
        return
    if t == s.ntypes:
        value = evaluate(s)
        if not s.have_best or value < s.best:
            s.best = value
            s.have_best = True
            for j in range(s.ntypes):
                s.best_mult[j] = s.mult[j]
            if s.use_stop and value <= s.stop_at:
                s.done = True
        return
    room = -1
    for j in range(s.tv_start[t], s.tv_start[t + 1]):
        v = s.tv[j]
        if room < 0 or s.cap[v] < room:
            room = s.cap[v]
    if room < 0:
        room = 0
    x = 0
    while x <= room and not s.done:
        s.mult[t] = x
        for j in range(s.tv_start[t], s.tv_start[t + 1]):
            s.cap[s.tv[j]] -= x
        search(s, t + 1)
        for j in range(s.tv_start[t], s.tv_start[t + 1]):
            s.cap[s.tv[j]] += x
        x += 1
    s.mult[t] = 0


def profile_min(int n, int k, type_verts, terms, node_cap, stop_at=None):
    """Callers guarantee every partial product fits in int64."""
    cdef Search s
    cdef int ntypes = len(type_verts)
    cdef int i, j, g, pos
    n_tv = sum(len(t) for t in type_verts)
    n_groups = sum(len(groups) for _, _, groups in terms)
    n_items = sum(len(grp) for _, _, groups in terms for grp in groups)
    s.n = n
    s.ntypes = ntypes
    s.nterms = len(terms)
    s.mult = <int64_t *> malloc(max(ntypes, 1) * sizeof(int64_t))
    s.best_mult = <int64_t *> malloc(max(ntypes, 1) * sizeof(int64_t))
    s.cap = <int64_t *> malloc(max(n, 1) * sizeof(int64_t))
    s.tv_start = <int *> malloc((ntypes + 1) * sizeof(int))
    s.tv = <int *> malloc(max(n_tv, 1) * sizeof(int))
    s.coeff = <int64_t *> malloc(max(s.nterms, 1) * sizeof(int64_t))
    s.base = <int64_t *> malloc(max(s.nterms, 1) * sizeof(int64_t))
    s.term_start = <int *> malloc((s.nterms + 1) * sizeof(int))
    s.group_start = <int *> malloc((n_groups + 1) * sizeof(int))
    s.group_items = <int *> malloc(max(n_items, 1) * sizeof(int))
    try:
        for i in range(ntypes):
            s.mult[i] = 0
            s.best_mult[i] = 0
        for i in range(n):
            s.cap[i] = k
        pos = 0
        for i in range(ntypes):
            s.tv_start[i] = pos
            for v in type_verts[i]:
                s.tv[pos] = v
                pos += 1
        s.tv_start[ntypes] = pos
        g = 0
        pos = 0
        for i, (c, b, groups) in enumerate(terms):
            s.coeff[i] = c
            s.base[i] = b
            s.term_start[i] = g
            for grp in groups:
                s.group_start[g] = pos
                for t in grp:
                    s.group_items[pos] = t
                    pos += 1
                g += 1
        s.term_start[s.nterms] = g
        s.group_start[g] = pos
        s.nodes = 0
        s.node_cap = node_cap
        s.have_best = False
        s.best = 0
        s.use_stop = stop_at is not None
        s.stop_at = stop_at if stop_at is not None else 0
        s.done = False
        with nogil:
            search(&s, 0)
        best_mult = [s.best_mult[i] for i in range(ntypes)] if s.have_best else None
        return (s.best if s.have_best else None), best_mult, s.nodes, s.nodes <= s.node_cap
    finally:
        free(s.mult); free(s.best_mult); free(s.cap); free(s.tv_start); free(s.tv)
        free(s.coeff); free(s.base); free(s.term_start); free(s.group_start); free(s.group_items)
