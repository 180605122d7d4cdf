"""Perfect hash families, the FKS multiplier count, and coloring families
for cactus-grid graphs.

A cactus-grid graph of order k lives on the k x k table: one clique vertex
per row (at column ``clique_columns[i]``), joined to each other and to every
other cell of its own row.  A coloring family must properly color each of
the k^k such graphs with some member.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import EnvelopeExceeded, FksBoundViolated, NotPrime, PrimeOutOfRange
from .rng import SplitMix64

PHF_MAX_N = 128  # linear family needs (8k^2, k) families up to k = 4
PHF_MAX_K = 6
LOGLOG_MAX_K = 6
LINEAR_MAX_K = 4
CACTUS_MAX_K = 7
PHF_SEED = 0


# ---------------------------------------------------------------------------
# primes and FKS


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def smallest_prime_between(lo: int, hi: int) -> int:
    for p in range(max(lo, 2), hi + 1):
        if is_prime(p):
            return p
    raise PrimeOutOfRange(f"no prime in [{lo}, {hi}]")


def fks_count_good_multipliers(n: int, p: int, W, range_size: int = None) -> int:
    """Number of t in 1..p with x -> (t*x mod p) mod range_size injective on W.

    With ``range_size >= 2|W|^2`` at least half of the multipliers are good;
    a smaller count raises FksBoundViolated.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not n <= p <= 2 * n:
        raise PrimeOutOfRange(f"p={p} outside [{n}, {2 * n}]")
    W = sorted(set(int(x) for x in W))
    if range_size is None:
        range_size = max(1, 2 * len(W) ** 2)
    w = np.array(W, dtype=np.int64)
    t = np.arange(1, p + 1, dtype=np.int64)[:, None]
    img = (t * w[None, :] % p) % range_size
    img.sort(axis=1)
    good = int(np.all(img[:, 1:] != img[:, :-1], axis=1).sum()) if len(W) > 1 else p
    if range_size >= 2 * len(W) ** 2 and good < -(-p // 2):
        raise FksBoundViolated(f"only {good} of {p} multipliers injective on {W}")
    return good


# ---------------------------------------------------------------------------
# perfect hash families


def _combinations(n: int, k: int) -> np.ndarray:
    """All k-subsets of 0..n-1 as rows, lexicographic."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int16)
    rows = np.arange(n, dtype=np.int16)[:, None]
    for _ in range(k - 1):
        last = rows[:, -1].astype(np.int64)
        counts = n - 1 - last
        rep = np.repeat(rows, counts, axis=0)
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        offs = np.arange(len(rep)) - starts
        nxt = np.repeat(last + 1, counts) + offs
        rows = np.hstack([rep, nxt[:, None].astype(np.int16)])
    return rows


def _injective_rows(values: np.ndarray) -> np.ndarray:
    """Row mask: all entries distinct (pairwise compare; rows are short)."""
    w = values.shape[1]
    ok = np.ones(values.shape[0], dtype=bool)
    for a in range(w):
        for b in range(a + 1, w):
            ok &= values[:, a] != values[:, b]
    return ok


@dataclass(frozen=True)
class PerfectHashFamily:
    n: int
    k: int
    functions: tuple  # each a tuple of length n with values in 1..k

    def __len__(self):
        return len(self.functions)

    def __call__(self, idx: int, x: int) -> int:
        return self.functions[idx][x - 1]

    def is_perfect(self) -> bool:
        if self.k <= 1:
            return len(self.functions) > 0
        subsets = _combinations(self.n, self.k)
        open_ = np.ones(len(subsets), dtype=bool)
        for f in self.functions:
            arr = np.asarray(f, dtype=np.int16)
            open_ &= ~_injective_rows(arr[subsets])
            if not open_.any():
                return True
        return not open_.any()


def _phf_candidates(n: int, k: int):
    yield tuple((x - 1) % k + 1 for x in range(1, n + 1))
    yield tuple((x - 1) * k // n + 1 for x in range(1, n + 1))
    rng = SplitMix64(PHF_SEED)
    while True:
        yield tuple(rng.randint(k) for _ in range(n))


@lru_cache(maxsize=None)
def build_phf(n: int, k: int) -> PerfectHashFamily:
    """Greedy cover: keep each candidate that separates a still-unseparated
    k-subset, until every subset is separated.  Candidates are the two
    structured maps (residues, blocks) followed by a seeded random stream."""
    if not (1 <= k <= n):
        raise EnvelopeExceeded(f"need 1 <= k <= n, got n={n}, k={k}")
    if n > PHF_MAX_N or k > PHF_MAX_K:
        raise EnvelopeExceeded(f"(n={n}, k={k}) outside n <= {PHF_MAX_N}, k <= {PHF_MAX_K}")
    if k == 1:
        return PerfectHashFamily(n, 1, ((1,) * n,))
    subsets = _combinations(n, k)
    kept = []
    for f in _phf_candidates(n, k):
        arr = np.asarray(f, dtype=np.int8)
        hit = _injective_rows(arr[subsets])
        if hit.any():
            kept.append(f)
            subsets = subsets[~hit]
            if len(subsets) == 0:
                break
    return PerfectHashFamily(n, k, tuple(kept))


# ---------------------------------------------------------------------------
# cactus-grid graphs


@dataclass(frozen=True)
class CactusGridGraph:
    k: int
    clique_columns: tuple

    @property
    def clique(self) -> tuple:
        return tuple((i, c) for i, c in enumerate(self.clique_columns, 1))

    @property
    def edges(self) -> tuple:
        q = self.clique
        out = [(q[a], q[b]) for a in range(self.k) for b in range(a + 1, self.k)]
        for i, c in q:
            out += [((i, c), (i, j)) for j in range(1, self.k + 1) if j != c]
        return tuple(out)


def enumerate_cactus_grids(k: int):
    if not 1 <= k <= CACTUS_MAX_K:
        raise EnvelopeExceeded(f"k={k} outside 1..{CACTUS_MAX_K}")
    for cols in itertools.product(range(1, k + 1), repeat=k):
        yield CactusGridGraph(k, cols)


def coloring_is_proper_on(f, g: CactusGridGraph, clique_in_range: bool = False) -> bool:
    """f is a k x k table (f[i-1][j-1] is the color of cell (i, j)).

    With ``clique_in_range`` the clique must also avoid the spare color k+1,
    which is what the recoloring step needs: a clique cell colored k+1 is
    starred and the permutation clique is lost.
    """
    if clique_in_range and any(f[i - 1][c - 1] > g.k for i, c in g.clique):
        return False
    return all(f[a[0] - 1][a[1] - 1] != f[b[0] - 1][b[1] - 1] for a, b in g.edges)


def _proper_mask(tables: np.ndarray, cols) -> np.ndarray:
    """Which of the (F, k, k) tables properly color the graph with these
    clique columns using only colors 1..k on the clique."""
    k = tables.shape[1]
    rows = np.arange(k)
    c = np.asarray(cols) - 1
    clique = tables[:, rows, c]  # (F, k)
    ok = _injective_rows(clique) if k > 1 else np.ones(len(tables), dtype=bool)
    ok &= (clique <= k).all(axis=1)
    same = tables == clique[:, :, None]
    return ok & (same.sum(axis=2) == 1).all(axis=1)


# ---------------------------------------------------------------------------
# coloring families


@dataclass
class ColoringFamily:
    """Distinct coloring tables with the first descriptor producing each and
    the number of descriptors mapping to it."""

    k: int
    variant: str
    functions: np.ndarray  # (F, k, k), colors 1..k+1
    descriptors: list = field(default_factory=list)
    counts: list = field(default_factory=list)

    def __len__(self):
        return len(self.functions)

    @property
    def descriptor_count(self) -> int:
        return sum(self.counts)

    def tables(self) -> list:
        return [tuple(tuple(int(x) for x in row) for row in t) for t in self.functions]

    def covering_member(self, g: CactusGridGraph):
        hits = np.flatnonzero(_proper_mask(self.functions, g.clique_columns))
        return int(hits[0]) if len(hits) else None

    def coverage(self) -> tuple:
        """(covered, total) over all cactus-grid graphs of order k."""
        covered = total = 0
        for g in enumerate_cactus_grids(self.k):
            total += 1
            covered += self.covering_member(g) is not None
        return covered, total

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "variant": self.variant,
            "size": len(self),
            "descriptor_count": self.descriptor_count,
            "members": [
                {"table": t, "descriptor": d, "count": c}
                for t, d, c in zip(self.tables(), self.descriptors, self.counts)
            ],
        }


class _Collector:
    def __init__(self, k):
        self.k = k
        self.index = {}
        self.tables, self.descriptors, self.counts = [], [], []

    def add(self, table, descriptor, count=1):
        key = table.tobytes()
        at = self.index.get(key)
        if at is None:
            self.index[key] = len(self.tables)
            self.tables.append(table.copy())
            self.descriptors.append(descriptor)
            self.counts.append(count)
        else:
            self.counts[at] += count

    def family(self, variant):
        arr = np.array(self.tables, dtype=np.int8).reshape(-1, self.k, self.k)
        return ColoringFamily(self.k, variant, arr, self.descriptors, self.counts)


def compositions(total: int, parts: int):
    """Tuples of ``parts`` positive integers summing to ``total``, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _column_choices(k):
    """(S, (k_1..k_l), offsets) over nonempty S and compositions of k."""
    for size in range(1, k + 1):
        for S in itertools.combinations(range(1, k + 1), size):
            for comp in compositions(k, size):
                offs = tuple(sum(comp[:j]) for j in range(size))
                yield S, comp, offs


@lru_cache(maxsize=None)
def build_family_loglog(k: int) -> ColoringFamily:
    """Members g(i, s_j) = f_j(i) + k_1 + ... + k_{j-1} with f_j from a
    (k, k_j) perfect hash family; columns outside S get color k+1."""
    if not 1 <= k <= LOGLOG_MAX_K:
        raise EnvelopeExceeded(f"loglog family supports 1 <= k <= {LOGLOG_MAX_K}, got {k}")
    out = _Collector(k)
    table = np.empty((k, k), dtype=np.int8)
    for S, comp, offs in _column_choices(k):
        phfs = [build_phf(k, kj) for kj in comp]
        for picks in itertools.product(*(range(len(h)) for h in phfs)):
            table.fill(k + 1)
            for s, off, h, idx in zip(S, offs, phfs, picks):
                table[:, s - 1] = np.asarray(h.functions[idx]) + off
            out.add(table, {"S": S, "k": comp, "hash": picks})
    return out.family("loglog")


def size_classes(comp, k):
    """Class index c of each column: 2^(c-1) < k_j <= 2^c, c in 0..ceil(log2 k)."""
    return tuple(max(0, math.ceil(math.log2(kj))) for kj in comp)


@lru_cache(maxsize=None)
def build_family_linear(k: int) -> ColoringFamily:
    """Columns are grouped into size classes; inside a class every column
    of block L_a uses multiplier b_a, and row i of column s_j is colored
    offset_j + f_j(((b * i) mod p) mod 8k_j^2 + 1) with f_j from an
    (8k_j^2, k_j) perfect hash family."""
    if not 1 <= k <= LINEAR_MAX_K:
        raise EnvelopeExceeded(f"linear family supports 1 <= k <= {LINEAR_MAX_K}, got {k}")
    p = smallest_prime_between(k, 2 * k)
    q = max(1, math.ceil(math.log2(k)))
    rows = np.arange(1, k + 1, dtype=np.int64)
    out = _Collector(k)
    table = np.empty((k, k), dtype=np.int8)
    for S, comp, offs in _column_choices(k):
        cls = size_classes(comp, k)
        classes = sorted(set(cls))
        members = {c: [j for j in range(len(S)) if cls[j] == c] for c in classes}
        phfs = [build_phf(8 * kj * kj, kj) for kj in comp]
        # per nonempty class: multiplier tuple over [p]^q and block assignment
        per_class = [
            [(bs, blocks) for bs in itertools.product(range(1, p + 1), repeat=q)
             for blocks in itertools.product(range(q), repeat=len(members[c]))]
            for c in classes
        ]
        # many descriptors share the per-column multipliers; group them
        by_mult = {}
        for choice in itertools.product(*per_class):
            mult = [0] * len(S)
            for c, (bs, blocks) in zip(classes, choice):
                for j, a in zip(members[c], blocks):
                    mult[j] = bs[a]
            key = tuple(mult)
            if key in by_mult:
                by_mult[key][1] += 1
            else:
                by_mult[key] = [choice, 1]
        for mult, (choice, mcount) in by_mult.items():
            # distinct column vectors per column, with hash-pick multiplicity
            options = []
            for j in range(len(S)):
                reduced = ((mult[j] * rows) % p) % (8 * comp[j] ** 2)
                seen = {}
                for idx, f in enumerate(phfs[j].functions):
                    col = np.asarray(f, dtype=np.int8)[reduced] + offs[j]
                    key = col.tobytes()
                    if key in seen:
                        seen[key][2] += 1
                    else:
                        seen[key] = [col, idx, 1]
                options.append(list(seen.values()))
            for combo in itertools.product(*options):
                table.fill(k + 1)
                count = mcount
                for s, (col, _, c) in zip(S, combo):
                    table[:, s - 1] = col
                    count *= c
                desc = {
                    "S": S, "k": comp, "p": p,
                    "multipliers": {c: bs for c, (bs, _) in zip(classes, choice)},
                    "blocks": {c: blocks for c, (_, blocks) in zip(classes, choice)},
                    "hash": tuple(idx for _, idx, _ in combo),
                }
                out.add(table, desc, count)
    return out.family("linear")


@lru_cache(maxsize=None)
def build_family(k: int, variant: str) -> ColoringFamily:
    """Cached; treat the returned family as read-only."""
    if variant == "loglog":
        return build_family_loglog(k)
    if variant == "linear":
        return build_family_linear(k)
    raise ValueError(f"unknown family variant {variant!r}")
