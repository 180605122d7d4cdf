"""Row-restricted k x k Hitting Set -> Closest String."""
from __future__ import annotations

from ..errors import ExtractionFailed, NotRowRestricted
from ..instances import CenterString, ClosestStringInstance, HittingSetInstance, RowSelection
from .base import ReductionRecord, register


def hitting_set_to_closest_string(inst: HittingSetInstance) -> ReductionRecord:
    """Alphabet [2k+1], length k, radius k-1; string s_{x,y} spells set S_x
    and writes the dummy y+k in rows the set misses."""
    k = inst.k
    for idx, s in enumerate(inst.sets):
        rows = [i for i, _ in s]
        if len(rows) != len(set(rows)):
            raise NotRowRestricted(f"set {idx + 1} has two cells in one row")
    strings = []
    for s in inst.sets:
        col = {i: j for i, j in s}
        for y in range(1, k + 2):
            strings.append(tuple(col.get(i, y + k) for i in range(1, k + 1)))
    target = ClosestStringInstance(2 * k + 1, k, k - 1, tuple(strings))
    return ReductionRecord("hs_to_cs", inst, target)


def _pull(rec, w):
    k = rec.source.k
    absent = [y for y in range(k + 1, 2 * k + 2) if y not in w.chars]
    if not absent:
        raise ExtractionFailed("every dummy value appears in the center")
    return RowSelection(tuple(c if c <= k else 1 for c in w.chars))


register("hs_to_cs", _pull, lambda rec, w: CenterString(w.rho))
