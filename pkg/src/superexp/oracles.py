"""Exact decision procedures and witness verification.

Every solver is a pure function of ``(instance, budget)``.  Search order is
ascending by index everywhere, so the same input always yields the same
witness and node count.  A node is one entry into a recursive search step;
the root counts and the budget is checked before each node.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass

from . import kernels
from .errors import KindMismatch
from .instances import (
    Assignment, CenterString, ChromaticInstance, ClosestStringInstance, CnfFormula,
    ColorAssignment, ConstrainedPermutationInstance, DisjointPathsInstance,
    DistortionInstance, HittingSetInstance, LineEmbedding, PathSystem, RowSelection,
    TableGraph, ThreeColoring, ThreeColoringInstance, WITNESS_KIND,
)

DEFAULT_BUDGET = 10 ** 7
YES, NO, BUDGET = "yes", "no", "budget"
SHORTEST_PATH_CAP = 64


@dataclass(frozen=True)
class SolveResult:
    outcome: str
    witness: object = None
    nodes_explored: int = 0
    wall_time: float = 0.0

    @property
    def is_yes(self) -> bool:
        return self.outcome == YES

    @property
    def is_no(self) -> bool:
        return self.outcome == NO


class _Budget(Exception):
    pass


class _Counter:
    __slots__ = ("nodes", "budget")

    def __init__(self, budget):
        self.nodes = 0
        self.budget = budget

    def tick(self):
        if self.nodes >= self.budget:
            raise _Budget
        self.nodes += 1


def _result(status, witness, nodes, t0):
    outcome = {1: YES, 0: NO, -1: BUDGET}[status]
    return SolveResult(outcome, witness if status == 1 else None, nodes, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# verification


def verify_witness(inst, w) -> bool:
    """True iff ``w`` certifies a yes-answer for ``inst``."""
    expected = WITNESS_KIND.get(getattr(inst, "problem", None))
    if expected is None or not isinstance(w, expected):
        raise KindMismatch(f"{type(w).__name__} is not a witness for {getattr(inst, 'problem', inst)!r}")
    if isinstance(inst, TableGraph):
        return _verify_table(inst, w.rho)
    if isinstance(inst, HittingSetInstance):
        return _verify_hitting_set(inst, w.rho)
    if isinstance(inst, ClosestStringInstance):
        c = w.chars
        if len(c) != inst.L or any(not 1 <= x <= inst.sigma for x in c):
            return False
        return all(hamming(c, s) <= inst.d for s in inst.strings)
    if isinstance(inst, ConstrainedPermutationInstance):
        return _verify_cp(inst, w.rho)
    if isinstance(inst, DistortionInstance):
        return _verify_distortion(inst, w.positions)
    if isinstance(inst, DisjointPathsInstance):
        return _verify_paths(inst, w.paths)
    if isinstance(inst, ChromaticInstance):
        return _proper(inst.graph, w.colors, inst.ell)
    if isinstance(inst, ThreeColoringInstance):
        return _proper(inst.graph, w.colors, 3)
    if isinstance(inst, CnfFormula):
        vals = w.values
        if len(vals) != inst.num_vars:
            return False
        return all(any(vals[abs(l) - 1] == (l > 0) for l in c) for c in inst.clauses)
    raise KindMismatch(f"no verifier for {type(inst).__name__}")


def hamming(a, b) -> int:
    return sum(1 for x, y in zip(a, b) if x != y)


def _verify_table(inst: TableGraph, rho) -> bool:
    side, k = inst.side, inst.k
    if len(rho) != side or any(not 1 <= c <= side for c in rho):
        return False
    if inst.permutation and len(set(rho)) != side:
        return False
    if inst.problem == "bpis":
        for i, c in enumerate(rho, 1):
            if (i <= k) != (c <= k):
                return False
    edges = inst.edge_set()
    cells = [(i, c) for i, c in enumerate(rho, 1)]
    for a in range(side):
        for b in range(a + 1, side):
            adjacent = (cells[a], cells[b]) in edges
            if adjacent == inst.independent:
                return False
    return True


def _verify_hitting_set(inst: HittingSetInstance, rho) -> bool:
    k = inst.k
    if len(rho) != k or any(not 1 <= c <= k for c in rho):
        return False
    chosen = {(i, c) for i, c in enumerate(rho, 1)}
    return all(any(cell in chosen for cell in s) for s in inst.sets)


def _verify_cp(inst: ConstrainedPermutationInstance, rho) -> bool:
    n = inst.kprime
    if sorted(rho) != list(range(1, n + 1)):
        return False
    pairs = {frozenset((rho[j], rho[j + 1])) for j in range(n - 1)}
    return all(any(p <= set(s) for p in pairs) for s in inst.sets)


def _verify_distortion(inst: DistortionInstance, pos) -> bool:
    g = inst.graph
    n = g.num_vertices
    if len(pos) != n:
        return False
    for u, v in g.edges:
        if abs(pos[u - 1] - pos[v - 1]) > inst.d:
            return False
    for u in range(1, n + 1):
        dist = g.distances_from(u)
        for v in range(u + 1, n + 1):
            if dist[v] < 0 or abs(pos[u - 1] - pos[v - 1]) < dist[v]:
                return False
    return True


def _verify_paths(inst: DisjointPathsInstance, paths) -> bool:
    if len(paths) != len(inst.demands):
        return False
    g = inst.graph
    if inst.directed:
        ok_step = set(g.arcs)
    else:
        ok_step = set(g.edges) | {(v, u) for u, v in g.edges}
    seen = set()
    for (s, t), p in zip(inst.demands, paths):
        if not p or p[0] != s or p[-1] != t:
            return False
        for a, b in zip(p, p[1:]):
            if (a, b) not in ok_step:
                return False
        if len(set(p)) != len(p) or seen & set(p):
            return False
        seen.update(p)
    return True


def _proper(g, colors, ell) -> bool:
    if len(colors) != g.num_vertices or any(not 1 <= c <= ell for c in colors):
        return False
    return all(colors[u - 1] != colors[v - 1] for u, v in g.edges)


# ---------------------------------------------------------------------------
# dispatch


def solve_exhaustive(inst, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Complete pruned search; Yes carries a verified witness."""
    t0 = time.perf_counter()
    if isinstance(inst, TableGraph):
        return _solve_table(inst, budget, t0)
    if isinstance(inst, HittingSetInstance):
        sets = [[(i - 1) * inst.k + (j - 1) for i, j in s] for s in inst.sets]
        st, rho, nodes = kernels.hitting_set_search(inst.k, sets, budget)
        return _result(st, RowSelection(rho) if rho else None, nodes, t0)
    if isinstance(inst, ClosestStringInstance):
        st, c, nodes = kernels.closest_string_enum(inst.sigma, inst.L, inst.d,
                                                  [list(s) for s in inst.strings], budget)
        return _result(st, CenterString(c) if c is not None else None, nodes, t0)
    if isinstance(inst, ConstrainedPermutationInstance):
        masks = [sum(1 << (x - 1) for x in s) for s in inst.sets]
        st, rho, nodes = kernels.cp_search(inst.kprime, masks, budget)
        return _result(st, RowSelection(rho, True) if rho is not None else None, nodes, t0)
    if isinstance(inst, DistortionInstance):
        return solve_distortion_pushing(inst, budget)
    if isinstance(inst, DisjointPathsInstance):
        return solve_disjoint_paths(inst, budget)
    if isinstance(inst, ChromaticInstance):
        return _solve_coloring(inst.graph, inst.ell, budget, t0, ColorAssignment)
    if isinstance(inst, ThreeColoringInstance):
        return _solve_coloring(inst.graph, 3, budget, t0, ThreeColoring)
    if isinstance(inst, CnfFormula):
        return _solve_sat(inst, budget, t0)
    raise KindMismatch(f"no solver for {type(inst).__name__}")


def _solve_table(inst: TableGraph, budget, t0) -> SolveResult:
    quadrant = inst.k if inst.problem == "bpis" else 0
    st, rho, nodes = kernels.table_search(inst.side, inst.adjacency_masks(), inst.independent,
                                          inst.permutation, quadrant, budget)
    w = RowSelection(rho, inst.permutation) if rho is not None else None
    return _result(st, w, nodes, t0)


# ---------------------------------------------------------------------------
# closest string branching


def solve_closest_string_branching(inst: ClosestStringInstance, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Bounded search tree: fix the first violated string, branch on its
    first ``d + 1`` mismatch positions, at most ``d`` levels deep."""
    t0 = time.perf_counter()
    if not inst.strings:
        return _result(1, CenterString((1,) * inst.L), 1 if budget > 0 else 0, t0) if budget > 0 \
            else _result(-1, None, 0, t0)
    ctr = _Counter(budget)
    d = inst.d
    strings = inst.strings

    def rec(s, delta):
        ctr.tick()
        bad = None
        for si in strings:
            if hamming(s, si) > d:
                bad = si
                break
        if bad is None:
            return s
        if delta == 0:
            return None
        mism = [p for p in range(inst.L) if s[p] != bad[p]]
        for p in mism[:min(d + 1, len(mism))]:
            s2 = list(s)
            s2[p] = bad[p]
            got = rec(s2, delta - 1)
            if got is not None:
                return got
        return None

    try:
        found = rec(list(strings[0]), d)
    except _Budget:
        return _result(-1, None, ctr.nodes, t0)
    if found is None:
        return _result(0, None, ctr.nodes, t0)
    return _result(1, CenterString(found), ctr.nodes, t0)


# ---------------------------------------------------------------------------
# distortion


def twin_classes(g) -> list:
    """``prev[v]``: the next-lower-index twin of ``v`` (0 if none).

    Twins share a closed or an open neighborhood; swapping two twins is an
    automorphism, so placing each class in index order loses no solutions.
    """
    adj = g.neighbors()
    n = g.num_vertices
    prev = [0] * (n + 1)
    last_open, last_closed = {}, {}
    for v in range(1, n + 1):
        key_open = frozenset(adj[v])
        key_closed = frozenset(adj[v] | {v})
        if key_closed in last_closed:
            prev[v] = last_closed[key_closed]
        elif key_open in last_open:
            prev[v] = last_open[key_open]
        last_closed[key_closed] = v
        last_open[key_open] = v
    return prev


def solve_distortion_pushing(inst: DistortionInstance, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """DFS over left-to-right orderings with positions forced by the pushing rule."""
    t0 = time.perf_counter()
    g, d = inst.graph, inst.d
    n = g.num_vertices
    if n == 0:
        return _result(1, LineEmbedding(()), 1, t0) if budget > 0 else _result(-1, None, 0, t0)
    adj = [sorted(a) for a in g.neighbors()]
    D = g.distance_matrix()
    prev = twin_classes(g)
    pos = [None] * (n + 1)
    open_nbrs = [len(adj[v]) for v in range(n + 1)]
    placed_list = []
    ctr = _Counter(budget)

    def feasible(v, p):
        for u in adj[v]:
            if pos[u] is not None and p - pos[u] > d:
                return False
        if open_nbrs[v] > d:
            return False
        for u in placed_list:
            c = open_nbrs[u] - (1 if u in adjset[v] else 0)
            if c and p + c > pos[u] + d:
                return False
        return True

    adjset = [set(a) for a in adj]

    def place(v, p):
        pos[v] = p
        placed_list.append(v)
        for u in adj[v]:
            open_nbrs[u] -= 1

    def unplace(v):
        pos[v] = None
        placed_list.pop()
        for u in adj[v]:
            open_nbrs[u] += 1

    def dfs(last):
        ctr.tick()
        if len(placed_list) == n:
            return True
        base = pos[last]
        for v in range(1, n + 1):
            if pos[v] is not None or (prev[v] and pos[prev[v]] is None):
                continue
            p = base + D[last][v]
            if not feasible(v, p):
                continue
            place(v, p)
            if dfs(v):
                return True
            unplace(v)
        return False

    try:
        ctr.tick()
        found = False
        for v in range(1, n + 1):
            if prev[v]:
                continue
            place(v, 0)
            if dfs(v):
                found = True
                break
            unplace(v)
    except _Budget:
        return _result(-1, None, ctr.nodes, t0)
    if not found:
        return _result(0, None, ctr.nodes, t0)
    w = LineEmbedding(tuple(pos[1:]))
    if not verify_witness(inst, w):  # pushing embeddings are non-contracting; re-checked anyway
        raise AssertionError("pushing embedding failed verification")
    return _result(1, w, ctr.nodes, t0)


# ---------------------------------------------------------------------------
# disjoint paths


def _count_shortest(out, s, t, blocked, cap):
    dist = {s: 0}
    ways = {s: 1}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in out[u]:
            if w in blocked and w != t:
                continue
            if w not in dist:
                dist[w] = dist[u] + 1
                ways[w] = ways[u]
                queue.append(w)
            elif dist[w] == dist[u] + 1:
                ways[w] = min(cap, ways[w] + ways[u])
    return ways.get(t, 0)


def solve_disjoint_paths(inst: DisjointPathsInstance, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Demand-by-demand simple-path DFS keeping paths vertex-disjoint.

    Demands are routed fewest-candidates first (capped shortest-path count,
    then degree sum, then index).  Paths never enter another demand's
    terminals, and every extension must still reach its own target.
    """
    t0 = time.perf_counter()
    g = inst.graph
    n = g.num_vertices
    if inst.directed:
        out = g.out_neighbors()
    else:
        out = [sorted(a) for a in g.neighbors()]
    deg = [len(out[v]) for v in range(n + 1)]
    terminals = {}
    for idx, (s, t) in enumerate(inst.demands):
        terminals[s] = idx
        terminals[t] = idx
    term_set = set(terminals)

    def key(idx):
        s, t = inst.demands[idx]
        blocked = term_set - {s, t}
        return (_count_shortest(out, s, t, blocked, SHORTEST_PATH_CAP), deg[s] + deg[t], idx)

    order = sorted(range(len(inst.demands)), key=key)
    used = [False] * (n + 1)
    for v in term_set:
        used[v] = True
    paths = [None] * len(inst.demands)
    ctr = _Counter(budget)

    def reachable(s, t):
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in out[u]:
                if w == t:
                    return True
                if not used[w] and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    def all_remaining_reachable(pos_in_order):
        for idx in order[pos_in_order:]:
            s, t = inst.demands[idx]
            if not reachable(s, t):
                return False
        return True

    def route(pos_in_order):
        if pos_in_order == len(order):
            return True
        if not all_remaining_reachable(pos_in_order):
            return False
        idx = order[pos_in_order]
        s, t = inst.demands[idx]
        path = [s]

        def extend(u):
            ctr.tick()
            for w in out[u]:
                if w == t:
                    path.append(t)
                    paths[idx] = tuple(path)
                    if route(pos_in_order + 1):
                        return True
                    path.pop()
                    paths[idx] = None
                    continue
                if used[w]:
                    continue
                used[w] = True
                if reachable(w, t):
                    path.append(w)
                    if extend(w):
                        return True
                    path.pop()
                used[w] = False
            return False

        return extend(s)

    try:
        ctr.tick()
        found = route(0)
    except _Budget:
        return _result(-1, None, ctr.nodes, t0)
    if not found:
        return _result(0, None, ctr.nodes, t0)
    return _result(1, PathSystem(tuple(paths)), ctr.nodes, t0)


# ---------------------------------------------------------------------------
# coloring


def _solve_coloring(g, ell, budget, t0, cls) -> SolveResult:
    """Backtracking ell-coloring, vertices by decreasing degree, with the
    usual symmetry break: a vertex may open at most one new color."""
    n = g.num_vertices
    adj = g.neighbors()
    order = sorted(range(1, n + 1), key=lambda v: (-len(adj[v]), v))
    color = [0] * (n + 1)
    ctr = _Counter(budget)

    def dfs(i, top):
        ctr.tick()
        if i == n:
            return True
        v = order[i]
        taken = {color[u] for u in adj[v]}
        for c in range(1, min(ell, top + 1) + 1):
            if c in taken:
                continue
            color[v] = c
            if dfs(i + 1, max(top, c)):
                return True
        color[v] = 0
        return False

    try:
        found = dfs(0, 0)
    except _Budget:
        return _result(-1, None, ctr.nodes, t0)
    if not found:
        return _result(0, None, ctr.nodes, t0)
    return _result(1, cls(tuple(color[1:])), ctr.nodes, t0)


# ---------------------------------------------------------------------------
# sat


def _solve_sat(f: CnfFormula, budget, t0) -> SolveResult:
    """DPLL with unit propagation; branch on the lowest variable of the
    first shortest unsatisfied clause, true before false."""
    ctr = _Counter(budget)
    n = f.num_vars
    clauses = [tuple(c) for c in f.clauses]

    def simplify(assign):
        changed = True
        while changed:
            changed = False
            for c in clauses:
                free, sat = [], False
                for l in c:
                    v = assign[abs(l)]
                    if v is None:
                        free.append(l)
                    elif v == (l > 0):
                        sat = True
                        break
                if sat:
                    continue
                if not free:
                    return False
                if len(free) == 1:
                    l = free[0]
                    assign[abs(l)] = l > 0
                    changed = True
        return True

    def dpll(assign):
        ctr.tick()
        if not simplify(assign):
            return None
        best = None
        for c in clauses:
            if any(assign[abs(l)] == (l > 0) for l in c):
                continue
            free = [l for l in c if assign[abs(l)] is None]
            if best is None or len(free) < len(best):
                best = free
        if best is None:
            return assign
        var = min(abs(l) for l in best)
        for val in (True, False):
            a2 = list(assign)
            a2[var] = val
            got = dpll(a2)
            if got is not None:
                return got
        return None

    try:
        got = dpll([None] * (n + 1))
    except _Budget:
        return _result(-1, None, ctr.nodes, t0)
    if got is None:
        return _result(0, None, ctr.nodes, t0)
    return _result(1, Assignment(tuple(bool(x) for x in got[1:])), ctr.nodes, t0)
