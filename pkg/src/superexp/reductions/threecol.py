"""3SAT -> 3-Coloring -> k x k Clique."""
from __future__ import annotations

import itertools
import math

from ..errors import ClauseWidth, ExtractionFailed, KTooSmall
from ..instances import (
    CLIQUE, Assignment, CnfFormula, RowSelection, SimpleGraph, TableGraph,
    ThreeColoring, ThreeColoringInstance,
)
from .base import ReductionRecord, register

T, F, B = 1, 2, 3  # palette triangle vertices


def _lit_vertex(lit):
    v = abs(lit)
    return 3 + 2 * v - 1 if lit > 0 else 3 + 2 * v


def sat3_to_3col(f: CnfFormula) -> ReductionRecord:
    """Palette triangle, one adjacent pair per variable, and per clause two
    stacked triangles whose output is the palette vertex T.

    For literals (a, b, c): triangle p-q-r with p~a, q~b, then triangle
    s-t-T with s~r, t~c.  All-false inputs force r = F and then s = t = B.
    Clauses shorter than three repeat their last literal.
    """
    n, m = f.num_vars, len(f.clauses)
    edges = [(T, F), (T, B), (F, B)]
    for v in range(1, n + 1):
        x, nx = _lit_vertex(v), _lit_vertex(-v)
        edges += [(x, nx), (x, B), (nx, B)]
    gadgets = []
    nxt = 3 + 2 * n + 1
    for c in f.clauses:
        if len(c) > 3:
            raise ClauseWidth(f"clause {list(c)} has width {len(c)} > 3")
        lits = list(c) + [c[-1]] * (3 - len(c))
        a, b, cc = (_lit_vertex(l) for l in lits)
        p, q, r, s, t = range(nxt, nxt + 5)
        nxt += 5
        edges += [(p, q), (q, r), (p, r), (p, a), (q, b), (s, t), (s, T), (t, T), (s, r), (t, cc)]
        gadgets.append((p, q, r, s, t))
    g = SimpleGraph(3 + 2 * n + 5 * m, tuple(edges))
    return ReductionRecord("sat3_to_3col", f, ThreeColoringInstance(g), {"gadgets": tuple(gadgets)})


def _pull_sat(rec, w):
    col = w.colors
    true_color = col[T - 1]
    return Assignment(tuple(col[_lit_vertex(v) - 1] == true_color for v in range(1, rec.source.num_vars + 1)))


def _push_sat(rec, w):
    colors = [0] * rec.target.graph.num_vertices
    colors[T - 1], colors[F - 1], colors[B - 1] = T, F, B
    for v, val in enumerate(w.values, 1):
        colors[_lit_vertex(v) - 1] = T if val else F
        colors[_lit_vertex(-v) - 1] = F if val else T
    adj = rec.target.graph.neighbors()
    for gadget in rec.aux["gadgets"]:
        for choice in itertools.product((1, 2, 3), repeat=5):
            for v, c in zip(gadget, choice):
                colors[v - 1] = c
            if all(colors[v - 1] != colors[u - 1] for v in gadget for u in adj[v]):
                break
        else:
            raise ExtractionFailed("clause gadget admits no coloring")
    return ThreeColoring(tuple(colors))


register("sat3_to_3col", _pull_sat, _push_sat)


# ---------------------------------------------------------------------------


def smallest_k(n: int) -> int:
    """Smallest k with 3^ceil(n/k) <= k."""
    k = 1
    while 3 ** math.ceil(n / k) > k:
        k += 1
    return k


def group_colorings(g: SimpleGraph, group) -> list:
    """Proper 3-colorings of g[group], lexicographic with 1 < 2 < 3."""
    inside = set(group)
    local = [(u, v) for u, v in g.edges if u in inside and v in inside]
    pos = {v: i for i, v in enumerate(group)}
    out = []
    for col in itertools.product((1, 2, 3), repeat=len(group)):
        if all(col[pos[u]] != col[pos[v]] for u, v in local):
            out.append(col)
    return out


def threecol_to_kkclique(inst, k: int = None) -> ReductionRecord:
    """Cell (i, j) stands for the j-th proper coloring of group X_i; cells in
    different rows are adjacent iff their colorings are compatible."""
    g = inst.graph if isinstance(inst, ThreeColoringInstance) else inst
    n = g.num_vertices
    if k is None:
        k = smallest_k(n)
    if k < 1 or 3 ** math.ceil(n / k) > k:
        raise KTooSmall(f"k={k} violates 3^ceil(n/k) <= k for n={n}")
    size = math.ceil(n / k)
    groups = tuple(tuple(range(i * size + 1, min((i + 1) * size, n) + 1)) for i in range(k))
    colorings = tuple(tuple(group_colorings(g, X)) for X in groups)
    owner = {v: i for i, X in enumerate(groups) for v in X}
    pos = {v: p for X in groups for p, v in enumerate(X)}
    between = {}
    for u, v in g.edges:
        a, b = owner[u], owner[v]
        if a != b:
            key = (min(a, b), max(a, b))
            between.setdefault(key, []).append((u, v) if a < b else (v, u))
    edges = []
    for i1 in range(k):
        for i2 in range(i1 + 1, k):
            pairs = between.get((i1, i2), [])
            for j1, c1 in enumerate(colorings[i1]):
                for j2, c2 in enumerate(colorings[i2]):
                    if all(c1[pos[u]] != c2[pos[v]] for u, v in pairs):
                        edges.append(((i1 + 1, j1 + 1), (i2 + 1, j2 + 1)))
    target = TableGraph(k, tuple(edges), CLIQUE)
    source = inst if isinstance(inst, ThreeColoringInstance) else ThreeColoringInstance(g)
    return ReductionRecord("3col_to_kkclique", source, target, {"groups": groups, "colorings": colorings})


def _pull_kk(rec, w):
    groups, colorings = rec.aux["groups"], rec.aux["colorings"]
    colors = [0] * rec.source.graph.num_vertices
    for i, j in enumerate(w.rho):
        if j > len(colorings[i]):
            raise ExtractionFailed(f"row {i + 1} selects isolated cell ({i + 1},{j})")
        for v, c in zip(groups[i], colorings[i][j - 1]):
            colors[v - 1] = c
    return ThreeColoring(tuple(colors))


def _push_kk(rec, w):
    groups, colorings = rec.aux["groups"], rec.aux["colorings"]
    rho = []
    for X, cols in zip(groups, colorings):
        rho.append(cols.index(tuple(w.colors[v - 1] for v in X)) + 1)
    return RowSelection(tuple(rho))


register("3col_to_kkclique", _pull_kk, _push_kk)
