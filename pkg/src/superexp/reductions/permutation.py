"""Bipartite permutation IS -> Constrained Permutation -> Distortion."""
from __future__ import annotations

from ..errors import ExtractionFailed, FlavorMismatch, SetOutOfRange
from ..instances import (
    BPIS, ConstrainedPermutationInstance, DistortionInstance, LineEmbedding,
    RowSelection, SimpleGraph, TableGraph,
)
from .base import ReductionRecord, register


def cp_label(kind: str, level: int, idx: int) -> str:
    """Element names: r, rb (row and its bar), c, cb (column and its bar)."""
    return f"{kind}{level}_{idx}"


def cp_labels(k: int) -> tuple:
    out = []
    for level in (1, 2, 3):
        for i in range(1, 2 * k + 1):
            out += [cp_label(x, level, i) for x in ("r", "rb", "c", "cb")]
    return tuple(out)


def cp_set_count(k: int, num_edges: int) -> int:
    return 6 * k + 6 * k + 3 * 2 * k * 4 ** k + k + k + num_edges


def bpis_to_constrained_permutation(inst: TableGraph) -> ReductionRecord:
    """Ground set of 24k labelled elements with the six set groups."""
    if inst.flavor != BPIS:
        raise FlavorMismatch(f"bpis_to_cp needs a bipartite instance, got {inst.flavor}")
    k = inst.k
    n2 = 2 * k
    labels = cp_labels(k)
    el = {name: x for x, name in enumerate(labels, 1)}
    r = lambda l, i: el[cp_label("r", l, i)]  # noqa: E731
    rb = lambda l, i: el[cp_label("rb", l, i)]  # noqa: E731
    c = lambda l, j: el[cp_label("c", l, j)]  # noqa: E731
    cb = lambda l, j: el[cp_label("cb", l, j)]  # noqa: E731
    sets = []
    for l in (1, 2, 3):
        for i in range(1, n2 + 1):
            sets.append((r(l, i), rb(l, i)))
    for l in (1, 2, 3):
        for j in range(1, n2 + 1):
            sets.append((c(l, j), cb(l, j)))
    for l1, l2 in ((1, 2), (1, 3), (2, 3)):
        for i in range(1, n2 + 1):
            for X in range(1 << n2):
                s = [rb(l1, i), rb(l2, i)]
                s += [c(l1, j) if X >> (j - 1) & 1 else c(l2, j) for j in range(1, n2 + 1)]
                sets.append(tuple(s))
    for i in range(1, k + 1):
        sets.append((rb(1, i),) + tuple(c(1, j) for j in range(1, k + 1)))
    for i in range(k + 1, n2 + 1):
        sets.append((rb(1, i),) + tuple(c(1, j) for j in range(k + 1, n2 + 1)))
    for a, b in inst.edges:
        (i1, j1), (i2, j2) = (a, b) if a[0] <= k else (b, a)
        s = [rb(1, i1), rb(1, i2)]
        s += [c(1, j) for j in range(1, k + 1) if j != j1]
        s += [c(1, j) for j in range(k + 1, n2 + 1) if j != j2]
        sets.append(tuple(s))
    target = ConstrainedPermutationInstance(24 * k, tuple(sets), labels)
    return ReductionRecord("bpis_to_cp", inst, target, {"k": k})


def _push_cp(rec, w):
    k = rec.aux["k"]
    t = rec.target
    order = []
    for l in (1, 2, 3):
        for i in range(1, 2 * k + 1):
            j = w.rho[i - 1]
            order += [t.element(cp_label("r", l, i)), t.element(cp_label("rb", l, i)),
                      t.element(cp_label("c", l, j)), t.element(cp_label("cb", l, j))]
    return RowSelection(tuple(order), True)


def _pull_cp(rec, w):
    k = rec.aux["k"]
    t = rec.target
    labels = t.element_labels
    rho = w.rho
    where = {x: p for p, x in enumerate(rho)}
    delta = []
    for i in range(1, 2 * k + 1):
        p = where[t.element(cp_label("rb", 1, i))]
        found = None
        for q in (p - 1, p + 1):
            if 0 <= q < len(rho):
                name = labels[rho[q] - 1]
                if name.startswith("c1_"):
                    found = int(name.split("_")[1])
        if found is None:
            raise ExtractionFailed(f"rb1_{i} has no c1 neighbor")
        delta.append(found)
    return RowSelection(tuple(delta), True)


register("bpis_to_cp", _pull_cp, _push_cp)


# ---------------------------------------------------------------------------


class DistortionLayout:
    """Vertex numbering for the distortion graph of an m-set, k-element instance."""

    def __init__(self, k, m):
        self.k, self.m, self.d = k, m, 2 * k

    def u(self, i, j):
        return (i - 1) * self.k + j

    def s(self, i):
        return self.m * self.k + i

    def ca(self, t):
        return self.m * self.k + self.m + t

    def cb(self, t):
        return self.m * self.k + self.m + self.d + 1 + t

    def v(self, i):
        return self.m * self.k + self.m + 2 * (self.d + 1) + i

    @property
    def n(self):
        return self.m * self.k + 2 * self.m + 4 * self.k + 3


def constrained_permutation_to_distortion(inst: ConstrainedPermutationInstance) -> ReductionRecord:
    """Layered copies U_1..U_m of the ground set threaded by the path v_1..v_{m+1},
    one vertex per set, and two (d+1)-cliques pinning the ends; d = 2k."""
    k, m = inst.kprime, inst.m
    for idx, s in enumerate(inst.sets):
        if not s:
            raise SetOutOfRange(f"set {idx + 1} is empty; its set vertex would be isolated")
        for x in s:
            if not 1 <= x <= k:
                raise SetOutOfRange(f"element {x} of set {idx + 1} outside 1..{k}")
    L = DistortionLayout(k, m)
    d = L.d
    edges = []
    for clique in (L.ca, L.cb):
        for a in range(1, d + 2):
            for b in range(a + 1, d + 2):
                edges.append((clique(a), clique(b)))
    for t in range(2, d + 2):
        edges.append((L.ca(t), L.v(1)))
        edges.append((L.cb(t), L.v(m + 1)))
    for i in range(1, m + 1):
        edges.append((L.v(i), L.v(i + 1)))
        for j in range(1, k + 1):
            edges.append((L.u(i, j), L.v(i)))
            edges.append((L.u(i, j), L.v(i + 1)))
            if i < m:
                edges.append((L.u(i, j), L.u(i + 1, j)))
    for i, s in enumerate(inst.sets, 1):
        for j in s:
            edges.append((L.s(i), L.u(i, j)))
    g = SimpleGraph(L.n, tuple(edges))
    return ReductionRecord("cp_to_distortion", inst, DistortionInstance(g, d), {"k": k, "m": m})


def _push_dist(rec, w):
    k, m = rec.aux["k"], rec.aux["m"]
    L = DistortionLayout(k, m)
    d = L.d
    rho = w.rho
    pos = [0] * L.n
    p = 0
    for t in range(1, d + 2):
        pos[L.ca(t) - 1] = p
        p += 1
    for i in range(1, m + 1):
        pos[L.v(i) - 1] = p
        s = set(rec.source.sets[i - 1])
        j_hit = next(j for j in range(k - 1) if rho[j] in s and rho[j + 1] in s)
        for j in range(k):
            p += 1
            pos[L.u(i, rho[j]) - 1] = p
            p += 1
            if j == j_hit:
                pos[L.s(i) - 1] = p
        p += 0
    pos[L.v(m + 1) - 1] = p
    for t in range(d + 1, 0, -1):
        p += 1
        pos[L.cb(t) - 1] = p
    return LineEmbedding(tuple(pos))


def _pull_dist(rec, w):
    k, m = rec.aux["k"], rec.aux["m"]
    if m == 0:
        return RowSelection(tuple(range(1, k + 1)), True)
    L = DistortionLayout(k, m)
    pos = list(w.positions)
    if pos[L.ca(1) - 1] > pos[L.v(1) - 1]:
        pos = [-x for x in pos]
    order = sorted(range(1, k + 1), key=lambda j: pos[L.u(1, j) - 1])
    return RowSelection(tuple(order), True)


register("cp_to_distortion", _pull_dist, _push_dist)
