"""Pure-Python search kernels.

Every kernel returns ``(status, witness, nodes)`` where status is 1 (found),
0 (exhausted) or -1 (node budget hit).  A node is one entry into the
recursive search; the root counts, and the budget is checked before a node
is entered.  The compiled twin in ``_kernels.pyx`` follows the same visiting
order, so both return identical witnesses and node counts.
"""


class _Budget(Exception):
    pass


def table_search(side, adj, independent, permutation, quadrant_k, budget):
    """Row-by-row DFS for one cell per row forming a clique or independent set.

    ``adj[c]`` is the neighbor bitmask of row-major cell ``c``.  With
    ``permutation`` columns must be distinct; ``quadrant_k > 0`` restricts
    rows ``< quadrant_k`` to columns ``< quadrant_k`` and the rest to the rest.
    Columns are tried in ascending order.
    """
    full = (1 << (side * side)) - 1
    row_mask = [((1 << side) - 1) << (r * side) for r in range(side)]
    if quadrant_k:
        lo = (1 << quadrant_k) - 1
        hi = ((1 << side) - 1) ^ lo
        for r in range(side):
            row_mask[r] &= (lo if r < quadrant_k else hi) << (r * side)
    col_mask = [0] * side
    for c in range(side):
        for r in range(side):
            col_mask[c] |= 1 << (r * side + c)
    compat = [((full ^ a) if independent else a) for a in adj]
    choice = [0] * side
    nodes = 0

    def dfs(r, allowed):
        nonlocal nodes
        if nodes >= budget:
            raise _Budget
        nodes += 1
        if r == side:
            return True
        cand = allowed & row_mask[r]
        base = r * side
        for c in range(side):
            if not cand >> (base + c) & 1:
                continue
            nxt = allowed & compat[base + c]
            if permutation:
                nxt &= ~col_mask[c]
            ok = True
            for r2 in range(r + 1, side):
                if not nxt & row_mask[r2]:
                    ok = False
                    break
            if not ok:
                continue
            choice[r] = c + 1
            if dfs(r + 1, nxt):
                return True
        return False

    try:
        found = dfs(0, full)
    except _Budget:
        return -1, None, nodes
    return (1, list(choice), nodes) if found else (0, None, nodes)


def hitting_set_search(k, sets, budget):
    """Row DFS choosing one column per row so that every set is hit.

    ``sets`` is a list of lists of 0-based row-major cell indices.  After row
    ``r`` is fixed, any unhit set whose last row is ``r`` kills the branch.
    """
    m = len(sets)
    nodes = 0
    if budget <= 0:
        return -1, None, 0
    if any(len(s) == 0 for s in sets):
        return 0, None, 1
    by_cell = [[] for _ in range(k * k)]
    closing = [[] for _ in range(k)]
    for idx, s in enumerate(sets):
        for c in s:
            by_cell[c].append(idx)
        closing[max(c // k for c in s)].append(idx)
    hits = [0] * m
    choice = [0] * k

    def dfs(r):
        nonlocal nodes
        if nodes >= budget:
            raise _Budget
        nodes += 1
        if r == k:
            return True
        for c in range(k):
            cell = r * k + c
            for idx in by_cell[cell]:
                hits[idx] += 1
            ok = True
            for idx in closing[r]:
                if not hits[idx]:
                    ok = False
                    break
            if ok:
                choice[r] = c + 1
                if dfs(r + 1):
                    return True
            for idx in by_cell[cell]:
                hits[idx] -= 1
        return False

    try:
        found = dfs(0)
    except _Budget:
        return -1, None, nodes
    return (1, list(choice), nodes) if found else (0, None, nodes)


def closest_string_enum(sigma, L, d, strings, budget):
    """Center enumeration over ``[sigma]^L`` with prefix distance pruning."""
    t = len(strings)
    dist = [0] * t
    center = [0] * L
    nodes = 0

    def dfs(pos):
        nonlocal nodes
        if nodes >= budget:
            raise _Budget
        nodes += 1
        if pos == L:
            return True
        for ch in range(1, sigma + 1):
            ok = True
            for i in range(t):
                if strings[i][pos] != ch:
                    dist[i] += 1
                    if dist[i] > d:
                        ok = False
            if ok:
                center[pos] = ch
                if dfs(pos + 1):
                    return True
            for i in range(t):
                if strings[i][pos] != ch:
                    dist[i] -= 1
        return False

    try:
        found = dfs(0)
    except _Budget:
        return -1, None, nodes
    return (1, list(center), nodes) if found else (0, None, nodes)


def cp_search(n, sets, budget):
    """Permutation DFS for constrained permutation.

    ``sets`` are bitmasks over 0-based elements.  A set still unhit dies once
    it cannot gain an adjacent pair: the last placed element is outside it or
    no unplaced element is in it, and fewer than two unplaced elements are in
    it.
    """
    m = len(sets)
    nodes = 0
    perm = [0] * n
    hit = [False] * m

    def dfs(pos, last, unplaced):
        nonlocal nodes
        if nodes >= budget:
            raise _Budget
        nodes += 1
        if pos == n:
            return all(hit)
        for x in range(n):
            bit = 1 << x
            if not unplaced & bit:
                continue
            rest = unplaced ^ bit
            newly = []
            ok = True
            for i in range(m):
                s = sets[i]
                if hit[i]:
                    continue
                if last >= 0 and (s >> last & 1) and (s & bit):
                    hit[i] = True
                    newly.append(i)
                    continue
                if (s & bit) and (s & rest):
                    continue
                if bin(s & rest).count("1") >= 2:
                    continue
                ok = False
                break
            if ok:
                perm[pos] = x + 1
                if dfs(pos + 1, x, rest):
                    return True
            for i in newly:
                hit[i] = False
        return False

    try:
        found = dfs(0, -1, (1 << n) - 1)
    except _Budget:
        return -1, None, nodes
    return (1, list(perm), nodes) if found else (0, None, nodes)
