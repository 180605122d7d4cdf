"""Path decompositions: validation and the transformations used by the
disjoint-paths reductions.

Bags are 0-indexed in code; ``l(x)`` and ``r(x)`` are the first and last bag
holding ``x``.
"""
from __future__ import annotations

from .errors import EdgeNotInBag
from .instances import PathDecomposition

# Width caps checked on emitted decompositions.
GADGET_CHAIN_WIDTH = lambda k: 7 * k + 5  # noqa: E731
SPLIT_WIDTH = lambda w: 2 * (w + 1) + 2  # noqa: E731


def decomposition_violations(g, pd: PathDecomposition) -> list:
    """All violated conditions, each with a witness vertex or edge."""
    out = []
    n = g.num_vertices
    span = {}
    for i, bag in enumerate(pd.bags):
        for x in bag:
            if not 1 <= x <= n:
                out.append(f"bag {i + 1} holds unknown vertex {x}")
                continue
            span.setdefault(x, []).append(i)
    for v in range(1, n + 1):
        if v not in span:
            out.append(f"coverage: vertex {v} in no bag")
    for u, v in g.edges:
        if u == v:
            continue
        if not any(u in b and v in b for b in pd.bags):
            out.append(f"edge ({u},{v}) in no bag")
    for x, idx in sorted(span.items()):
        if idx[-1] - idx[0] + 1 != len(idx):
            gap = next(i for i in range(idx[0], idx[-1]) if i not in set(idx))
            out.append(f"contiguity: vertex {x} missing from bag {gap + 1}")
    return out


def validate_path_decomposition(g, pd: PathDecomposition):
    """Width if ``pd`` is a path decomposition of ``g``, else the violation list."""
    bad = decomposition_violations(g, pd)
    return bad if bad else pd.width


def last_bag_index(pd: PathDecomposition) -> dict:
    return {x: lr[1] for x, lr in pd.first_last().items()}


def make_last_bags_distinct(pd: PathDecomposition) -> PathDecomposition:
    """Duplicate bags so every vertex has its own last bag.

    When several vertices last appear in bag ``B``, the bag is repeated and
    one vertex (ascending order) is dropped from each successive copy, so the
    original bag order is kept and no bag grows.
    """
    bags = [set(b) for b in pd.bags]
    out = []
    for i, bag in enumerate(bags):
        nxt = bags[i + 1] if i + 1 < len(bags) else set()
        ending = sorted(bag - nxt)
        cur = set(bag)
        out.append(frozenset(cur))
        for x in ending[:-1]:
            cur.discard(x)
            out.append(frozenset(cur))
    return PathDecomposition(tuple(out))


def pd_subdivide(pd: PathDecomposition, g, subdivided_edges) -> PathDecomposition:
    """Decomposition after replacing each ``(u, v, x)`` edge ``uv`` by ``u-x-v``.

    For each new vertex ``x`` a copy of the first bag containing both ``u``
    and ``v`` is inserted right after it, with ``x`` added.  Each copy grows
    by exactly one vertex, so width rises by at most one.
    """
    bags = list(pd.bags)
    extra = {}
    for u, v, x in subdivided_edges:
        at = next((i for i, b in enumerate(bags) if u in b and v in b), None)
        if at is None:
            raise EdgeNotInBag(f"edge ({u},{v}) is in no bag")
        extra.setdefault(at, []).append(x)
    out = []
    for i, bag in enumerate(bags):
        out.append(bag)
        for x in extra.get(i, ()):
            out.append(frozenset(bag | {x}))
    return PathDecomposition(tuple(out))


def extend_intervals(pd: PathDecomposition, inserts) -> PathDecomposition:
    """Add vertex ``x`` to bags ``lo..hi`` (inclusive) for each ``(x, lo, hi)``."""
    bags = [set(b) for b in pd.bags]
    for x, lo, hi in inserts:
        for j in range(lo, hi + 1):
            bags[j].add(x)
    return PathDecomposition(tuple(frozenset(b) for b in bags))
