# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same contract and visiting order as _kernels_py."""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

MAX_TABLE_CELLS = 64
MAX_CP_ELEMENTS = 64


cdef struct TableCtx:
    int side
    int permutation
    u64 *compat
    u64 *row_mask
    u64 *col_mask
    int *choice
    long long nodes
    long long budget
    int over


cdef int _table_dfs(TableCtx *ctx, int r, u64 allowed) nogil:
    cdef int c, r2, base, ok
    cdef u64 cand, nxt
    if ctx.nodes >= ctx.budget:
        ctx.over = 1
        return 0
    ctx.nodes += 1
    if r == ctx.side:
        return 1
    cand = allowed & ctx.row_mask[r]
    base = r * ctx.side
    for c in range(ctx.side):
        if not ((cand >> (base + c)) & 1):
            continue
        nxt = allowed & ctx.compat[base + c]
        if ctx.permutation:
            nxt &= ~ctx.col_mask[c]
        ok = 1
        for r2 in range(r + 1, ctx.side):
            if not (nxt & ctx.row_mask[r2]):
                ok = 0
                break
        if not ok:
            continue
        ctx.choice[r] = c + 1
        if _table_dfs(ctx, r + 1, nxt):
            return 1
        if ctx.over:
            return 0
    return 0


def table_search(int side, adj, bint independent, bint permutation, int quadrant_k, long long budget):
    cdef int n = side * side
    if n > MAX_TABLE_CELLS:
        raise ValueError("compiled table search supports at most 64 cells")
    cdef u64 full = (<u64>0xFFFFFFFFFFFFFFFF) if n == 64 else (((<u64>1) << n) - 1)
    cdef u64 ones = ((<u64>1) << side) - 1
    cdef u64 lo, hi, a
    cdef u64 compat[64]
    cdef u64 row_mask[8]
    cdef u64 col_mask[8]
    cdef int choice[8]
    cdef int r, c, found
    cdef TableCtx ctx
    for r in range(side):
        row_mask[r] = ones << (r * side)
    if quadrant_k:
        lo = ((<u64>1) << quadrant_k) - 1
        hi = ones ^ lo
        for r in range(side):
            row_mask[r] &= (lo if r < quadrant_k else hi) << (r * side)
    for c in range(side):
        col_mask[c] = 0
        for r in range(side):
            col_mask[c] |= (<u64>1) << (r * side + c)
    for c in range(n):
        a = <u64>adj[c]
        compat[c] = (full ^ a) if independent else a
        choice[c % 8] = 0
    ctx.side = side
    ctx.permutation = permutation
    ctx.compat = compat
    ctx.row_mask = row_mask
    ctx.col_mask = col_mask
    ctx.choice = choice
    ctx.nodes = 0
    ctx.budget = budget
    ctx.over = 0
    with nogil:
        found = _table_dfs(&ctx, 0, full)
    if ctx.over:
        return -1, None, ctx.nodes
    if found:
        return 1, [choice[r] for r in range(side)], ctx.nodes
    return 0, None, ctx.nodes


cdef struct HsCtx:
    int k
    int *cell_start
    int *cell_sets
    int *close_start
    int *close_sets
    int *hits
    int *choice
    long long nodes
    long long budget
    int over


cdef int _hs_dfs(HsCtx *ctx, int r) nogil:
    cdef int c, cell, q, ok
    if ctx.nodes >= ctx.budget:
        ctx.over = 1
        return 0
    ctx.nodes += 1
    if r == ctx.k:
        return 1
    for c in range(ctx.k):
        cell = r * ctx.k + c
        for q in range(ctx.cell_start[cell], ctx.cell_start[cell + 1]):
            ctx.hits[ctx.cell_sets[q]] += 1
        ok = 1
        for q in range(ctx.close_start[r], ctx.close_start[r + 1]):
            if not ctx.hits[ctx.close_sets[q]]:
                ok = 0
                break
        if ok:
            ctx.choice[r] = c + 1
            if _hs_dfs(ctx, r + 1):
                return 1
            if ctx.over:
                return 0
        for q in range(ctx.cell_start[cell], ctx.cell_start[cell + 1]):
            ctx.hits[ctx.cell_sets[q]] -= 1
    return 0


def hitting_set_search(int k, sets, long long budget):
    cdef int m = len(sets)
    cdef int ncell = k * k
    cdef int i, j, total, found, last
    cdef HsCtx ctx
    if budget <= 0:
        return -1, None, 0
    for s in sets:
        if len(s) == 0:
            return 0, None, 1
    by_cell = [[] for _ in range(ncell)]
    closing = [[] for _ in range(k)]
    for i, s in enumerate(sets):
        for c in s:
            by_cell[c].append(i)
        closing[max(c // k for c in s)].append(i)
    total = sum(len(b) for b in by_cell)
    cdef int *cell_start = <int *>malloc((ncell + 1) * sizeof(int))
    cdef int *cell_sets = <int *>malloc((total + 1) * sizeof(int))
    cdef int *close_start = <int *>malloc((k + 1) * sizeof(int))
    cdef int *close_sets = <int *>malloc((m + 1) * sizeof(int))
    cdef int *hits = <int *>malloc((m + 1) * sizeof(int))
    cdef int *choice = <int *>malloc((k + 1) * sizeof(int))
    try:
        j = 0
        for i in range(ncell):
            cell_start[i] = j
            for x in by_cell[i]:
                cell_sets[j] = x
                j += 1
        cell_start[ncell] = j
        j = 0
        for i in range(k):
            close_start[i] = j
            for x in closing[i]:
                close_sets[j] = x
                j += 1
        close_start[k] = j
        for i in range(m):
            hits[i] = 0
        ctx.k = k
        ctx.cell_start = cell_start
        ctx.cell_sets = cell_sets
        ctx.close_start = close_start
        ctx.close_sets = close_sets
        ctx.hits = hits
        ctx.choice = choice
        ctx.nodes = 0
        ctx.budget = budget
        ctx.over = 0
        with nogil:
            found = _hs_dfs(&ctx, 0)
        if ctx.over:
            return -1, None, ctx.nodes
        if found:
            return 1, [choice[i] for i in range(k)], ctx.nodes
        return 0, None, ctx.nodes
    finally:
        free(cell_start)
        free(cell_sets)
        free(close_start)
        free(close_sets)
        free(hits)
        free(choice)


cdef struct CsCtx:
    int sigma
    int L
    int d
    int t
    int *strings
    int *dist
    int *center
    long long nodes
    long long budget
    int over


cdef int _cs_dfs(CsCtx *ctx, int pos) nogil:
    cdef int ch, i, ok
    if ctx.nodes >= ctx.budget:
        ctx.over = 1
        return 0
    ctx.nodes += 1
    if pos == ctx.L:
        return 1
    for ch in range(1, ctx.sigma + 1):
        ok = 1
        for i in range(ctx.t):
            if ctx.strings[i * ctx.L + pos] != ch:
                ctx.dist[i] += 1
                if ctx.dist[i] > ctx.d:
                    ok = 0
        if ok:
            ctx.center[pos] = ch
            if _cs_dfs(ctx, pos + 1):
                return 1
            if ctx.over:
                return 0
        for i in range(ctx.t):
            if ctx.strings[i * ctx.L + pos] != ch:
                ctx.dist[i] -= 1
    return 0


def closest_string_enum(int sigma, int L, int d, strings, long long budget):
    cdef int t = len(strings)
    cdef int i, j, found
    cdef CsCtx ctx
    cdef int *buf = <int *>malloc((t * L + 1) * sizeof(int))
    cdef int *dist = <int *>malloc((t + 1) * sizeof(int))
    cdef int *center = <int *>malloc((L + 1) * sizeof(int))
    try:
        for i in range(t):
            dist[i] = 0
            for j in range(L):
                buf[i * L + j] = strings[i][j]
        ctx.sigma = sigma
        ctx.L = L
        ctx.d = d
        ctx.t = t
        ctx.strings = buf
        ctx.dist = dist
        ctx.center = center
        ctx.nodes = 0
        ctx.budget = budget
        ctx.over = 0
        with nogil:
            found = _cs_dfs(&ctx, 0)
        if ctx.over:
            return -1, None, ctx.nodes
        if found:
            return 1, [center[j] for j in range(L)], ctx.nodes
        return 0, None, ctx.nodes
    finally:
        free(buf)
        free(dist)
        free(center)


cdef inline int _popcount(u64 x) nogil:
    cdef int n = 0
    while x:
        x &= x - 1
        n += 1
    return n


cdef struct CpCtx:
    int n
    int m
    u64 *sets
    char *hit
    int *newly
    int *perm
    long long nodes
    long long budget
    int over


cdef int _cp_dfs(CpCtx *ctx, int pos, int last, u64 unplaced) nogil:
    cdef int x, i, ok, nnew, q
    cdef u64 bit, rest, s
    cdef int *newly
    if ctx.nodes >= ctx.budget:
        ctx.over = 1
        return 0
    ctx.nodes += 1
    if pos == ctx.n:
        for i in range(ctx.m):
            if not ctx.hit[i]:
                return 0
        return 1
    newly = ctx.newly + pos * ctx.m
    for x in range(ctx.n):
        bit = (<u64>1) << x
        if not (unplaced & bit):
            continue
        rest = unplaced ^ bit
        nnew = 0
        ok = 1
        for i in range(ctx.m):
            if ctx.hit[i]:
                continue
            s = ctx.sets[i]
            if last >= 0 and ((s >> last) & 1) and (s & bit):
                ctx.hit[i] = 1
                newly[nnew] = i
                nnew += 1
                continue
            if (s & bit) and (s & rest):
                continue
            if _popcount(s & rest) >= 2:
                continue
            ok = 0
            break
        if ok:
            ctx.perm[pos] = x + 1
            if _cp_dfs(ctx, pos + 1, x, rest):
                return 1
            if ctx.over:
                return 0
        for q in range(nnew):
            ctx.hit[newly[q]] = 0
    return 0


def cp_search(int n, sets, long long budget):
    if n > MAX_CP_ELEMENTS:
        raise ValueError("compiled constrained-permutation search supports at most 64 elements")
    cdef int m = len(sets)
    cdef int i, found
    cdef CpCtx ctx
    cdef u64 *sbuf = <u64 *>malloc((m + 1) * sizeof(u64))
    cdef char *hit = <char *>malloc((m + 1) * sizeof(char))
    cdef int *newly = <int *>malloc(((n + 1) * (m + 1)) * sizeof(int))
    cdef int *perm = <int *>malloc((n + 1) * sizeof(int))
    cdef u64 start = (<u64>0xFFFFFFFFFFFFFFFF) if n == 64 else (((<u64>1) << n) - 1)
    try:
        for i in range(m):
            sbuf[i] = <u64>sets[i]
            hit[i] = 0
        ctx.n = n
        ctx.m = m
        ctx.sets = sbuf
        ctx.hit = hit
        ctx.newly = newly
        ctx.perm = perm
        ctx.nodes = 0
        ctx.budget = budget
        ctx.over = 0
        with nogil:
            found = _cp_dfs(&ctx, 0, -1, start)
        if ctx.over:
            return -1, None, ctx.nodes
        if found:
            return 1, [perm[i] for i in range(n)], ctx.nodes
        return 0, None, ctx.nodes
    finally:
        free(sbuf)
        free(hit)
        free(newly)
        free(perm)
