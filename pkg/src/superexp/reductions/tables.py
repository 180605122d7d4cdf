"""Complementation, Permutation IS -> bipartite permutation IS -> row-restricted Hitting Set."""
from __future__ import annotations

from ..errors import ExtractionFailed, FlavorMismatch
from ..instances import (
    BPIS, CLIQUE, INDEPENDENT_SET, PERM_CLIQUE, PERM_IS, HittingSetInstance,
    RowSelection, TableGraph,
)
from .base import ReductionRecord, register

_DUAL = {CLIQUE: INDEPENDENT_SET, INDEPENDENT_SET: CLIQUE, PERM_CLIQUE: PERM_IS, PERM_IS: PERM_CLIQUE}


def complement_table_graph(inst: TableGraph) -> TableGraph:
    """Complement adjacency over all pairs of distinct cells and toggle the flavor."""
    if inst.flavor not in _DUAL:
        raise FlavorMismatch(f"no complement flavor for {inst.flavor}")
    k = inst.k
    cells = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1)]
    present = inst.edge_set()
    edges = [(a, b) for x, a in enumerate(cells) for b in cells[x + 1:] if (a, b) not in present]
    return TableGraph(k, tuple(edges), _DUAL[inst.flavor])


def complement_record(inst: TableGraph) -> ReductionRecord:
    return ReductionRecord("complement", inst, complement_table_graph(inst))


def _same(rec, w):
    return RowSelection(w.rho, rec.source.permutation)


register("complement", _same, lambda rec, w: RowSelection(w.rho, rec.target.permutation))


def permis_to_bpis(inst: TableGraph) -> ReductionRecord:
    """Forced edges (i,j)-(i+k,j'+k) for j != j', plus (i1,j1)-(i2+k,j2+k)
    for each source edge taken with its smaller cell first."""
    if inst.flavor != PERM_IS:
        raise FlavorMismatch(f"permis_to_bpis needs a permutation-IS instance, got {inst.flavor}")
    k = inst.k
    edges = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            for j2 in range(1, k + 1):
                if j != j2:
                    edges.append(((i, j), (i + k, j2 + k)))
    for (i1, j1), (i2, j2) in inst.edges:
        edges.append(((i1, j1), (i2 + k, j2 + k)))
    return ReductionRecord("permis_to_bpis", inst, TableGraph(k, tuple(edges), BPIS))


def _pull_bpis(rec, w):
    k = rec.source.k
    return RowSelection(w.rho[:k], True)


def _push_bpis(rec, w):
    k = rec.source.k
    return RowSelection(tuple(w.rho) + tuple(x + k for x in w.rho), True)


register("permis_to_bpis", _pull_bpis, _push_bpis)


def bpis_to_hitting_set(inst: TableGraph) -> ReductionRecord:
    """Build the column-selection sets over [2k]x[2k] and transpose them.

    Row sets: first k cells of rows 1..k, last k cells of rows k+1..2k.
    Edge (i1,j1)-(i2,j2): row i1 minus j1 within the left half, row i2 minus
    j2 within the right half.
    """
    if inst.flavor != BPIS:
        raise FlavorMismatch(f"bpis_to_hs needs a bipartite instance, got {inst.flavor}")
    k = inst.k
    sets = []
    for i in range(1, 2 * k + 1):
        cols = range(1, k + 1) if i <= k else range(k + 1, 2 * k + 1)
        sets.append([(i, j) for j in cols])
    for a, b in inst.edges:
        (i1, j1), (i2, j2) = (a, b) if a[0] <= k else (b, a)
        s = [(i1, j) for j in range(1, k + 1) if j != j1]
        s += [(i2, j) for j in range(k + 1, 2 * k + 1) if j != j2]
        sets.append(s)
    transposed = tuple(tuple((j, i) for i, j in s) for s in sets)
    return ReductionRecord("bpis_to_hs", inst, HittingSetInstance(2 * k, transposed, True))


def _invert(rho):
    n = len(rho)
    if sorted(rho) != list(range(1, n + 1)):
        raise ExtractionFailed("row selection is not a permutation")
    inv = [0] * n
    for i, x in enumerate(rho, 1):
        inv[x - 1] = i
    return tuple(inv)


register("bpis_to_hs",
         lambda rec, w: RowSelection(_invert(w.rho), True),
         lambda rec, w: RowSelection(_invert(w.rho)))
