"""k x k Permutation Clique -> Chromatic Number with a vertex cover of size 2k.

Forward soundness of this construction is known to fail (crossed pairs can
leave a w vertex with no free color); push-forward reports NotApplicable in
that case and callers count it as an audit finding.
"""
from __future__ import annotations

from ..errors import ExtractionFailed, FlavorMismatch
from ..instances import PERM_CLIQUE, ChromaticInstance, ColorAssignment, RowSelection, SimpleGraph, TableGraph
from .base import NotApplicable, ReductionRecord, register


def perm_clique_to_chromatic(inst: TableGraph) -> ReductionRecord:
    """a_j = j, b_j = k + j, then one w vertex per (i<j, x != y) with
    (i,x), (j,y) non-adjacent; w is adjacent to b_i, b_j and every a_z with
    z not in {x, y}."""
    if inst.flavor != PERM_CLIQUE:
        raise FlavorMismatch(f"permclique_to_chromatic needs a permutation-clique instance, got {inst.flavor}")
    k = inst.k
    present = inst.edge_set()
    adj = lambda p, q: (min(p, q), max(p, q)) in present  # noqa: E731
    edges = []
    for x in range(1, k + 1):
        for y in range(x + 1, k + 1):
            edges += [(x, y), (k + x, k + y)]
    ws = []
    nxt = 2 * k + 1
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            for x in range(1, k + 1):
                for y in range(1, k + 1):
                    if x == y or adj((i, x), (j, y)):
                        continue
                    w = nxt
                    nxt += 1
                    ws.append((w, i, j, x, y))
                    edges += [(w, k + i), (w, k + j)]
                    edges += [(w, z) for z in range(1, k + 1) if z not in (x, y)]
    g = SimpleGraph(nxt - 1, tuple(edges))
    target = ChromaticInstance(g, frozenset(range(1, 2 * k + 1)), k)
    return ReductionRecord("permclique_to_chromatic", inst, target, {"k": k, "w": tuple(ws)})


def _push(rec, w):
    k = rec.aux["k"]
    rho = w.rho
    colors = list(range(1, k + 1)) + list(rho)
    for _, i, j, x, y in rec.aux["w"]:
        free = sorted({x, y} - {rho[i - 1], rho[j - 1]})
        if not free:
            return NotApplicable
        colors.append(free[0])
    return ColorAssignment(tuple(colors))


def _pull(rec, w):
    k = rec.aux["k"]
    f = w.colors
    relabel = {f[j - 1]: j for j in range(1, k + 1)}
    if len(relabel) != k:
        raise ExtractionFailed("clique C_a is not rainbow")
    return RowSelection(tuple(relabel[f[k + i - 1]] for i in range(1, k + 1)), True)


register("permclique_to_chromatic", _pull, _push)
