"""Random and derandomized row recoloring: k x k Clique -> Permutation Clique."""
from __future__ import annotations

from ..errors import ExtractionFailed, FlavorMismatch, SizeMismatch
from ..instances import CLIQUE, PERM_CLIQUE, RowSelection, TableGraph
from ..rng import SplitMix64
from .base import NotApplicable, ReductionRecord, register

STAR = 0  # clash marker in c'


def sample_random_coloring(k: int, seed: int) -> tuple:
    """Uniform coloring [k]x[k] -> [k], drawn row-major from SplitMix64(seed)."""
    rng = SplitMix64(seed)
    return tuple(tuple(rng.randint(k) for _ in range(k)) for _ in range(k))


def clash_coloring(c, k: int) -> tuple:
    """c' : a cell keeps its color when unique in its row, else STAR.

    Color k+1 (the never-selected marker of coloring families) is also STAR.
    """
    out = []
    for row in c:
        counts = {}
        for x in row:
            counts[x] = counts.get(x, 0) + 1
        out.append(tuple(x if counts[x] == 1 and 1 <= x <= k else STAR for x in row))
    return tuple(out)


def recolor_with(inst: TableGraph, c) -> ReductionRecord:
    """Rearrange each row by c'; edges at starred cells are dropped."""
    if inst.flavor != CLIQUE:
        raise FlavorMismatch(f"recolor needs a clique instance, got {inst.flavor}")
    k = inst.k
    c = tuple(tuple(int(x) for x in row) for row in c)
    if len(c) != k or any(len(row) != k for row in c):
        raise SizeMismatch(f"coloring is not {k}x{k}")
    cp = clash_coloring(c, k)
    edges = []
    for (i1, j1), (i2, j2) in inst.edges:
        x1, x2 = cp[i1 - 1][j1 - 1], cp[i2 - 1][j2 - 1]
        if x1 != STAR and x2 != STAR:
            edges.append(((i1, x1), (i2, x2)))
    target = TableGraph(k, tuple(edges), PERM_CLIQUE)
    return ReductionRecord("recolor", inst, target, {"c": c, "c_prime": cp})


def _pull(rec, w):
    cp = rec.aux["c_prime"]
    delta = []
    for i, x in enumerate(w.rho):
        js = [j for j in range(len(cp[i])) if cp[i][j] == x]
        if len(js) != 1:
            raise ExtractionFailed(f"row {i + 1}: no unique cell recolored to {x}")
        delta.append(js[0] + 1)
    return RowSelection(tuple(delta))


def _push(rec, w):
    cp = rec.aux["c_prime"]
    rho = tuple(cp[i][j - 1] for i, j in enumerate(w.rho))
    if STAR in rho or len(set(rho)) != len(rho):
        return NotApplicable
    return RowSelection(rho, True)


register("recolor", _pull, _push)


def kkclique_to_perm_derandomized(inst: TableGraph, family) -> list:
    """One recolor record per family member (color k+1 acts as the clash marker)."""
    if family.k != inst.k:
        raise SizeMismatch(f"family built for k={family.k}, instance has k={inst.k}")
    out = []
    for idx, table in enumerate(family.tables()):
        rec = recolor_with(inst, table)
        out.append(ReductionRecord("derand_recolor", inst, rec.target, dict(rec.aux, member=idx)))
    return out


register("derand_recolor", _pull, _push)
