"""Random instances, oracle-equivalence fuzzing, the recoloring success
probability, and growth benchmarks."""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import oracles
from .errors import EnvelopeExceeded, SuperexpError
from .hashing import build_family
from .instances import (
    BPIS, CLIQUE, FORMAT, INDEPENDENT_SET, PERM_CLIQUE, PERM_IS, ChromaticInstance,
    ClosestStringInstance, CnfFormula, ConstrainedPermutationInstance, DiGraph,
    DisjointPathsInstance, DistortionInstance, HittingSetInstance, RowSelection, SimpleGraph, TableGraph,
    ThreeColoringInstance, serialize_instance,
)
from .oracles import DEFAULT_BUDGET, solve_closest_string_branching, solve_exhaustive
from .reductions import (
    RULES, NotApplicable, has_push, kkclique_to_perm_derandomized, pull_back_witness,
    push_forward_witness, recolor_with, sample_random_coloring,
)
from .rng import SplitMix64, derive_seed, randint_block

MAX_TABLE_K = 8  # 64 cells
MAX_VERTICES = 64

_TABLE_FLAVOR = {
    "kk_clique": CLIQUE, "kk_is": INDEPENDENT_SET,
    "kk_perm_clique": PERM_CLIQUE, "kk_perm_is": PERM_IS,
}


# ---------------------------------------------------------------------------
# generators


def _pick(rng: SplitMix64, value):
    """Lists and tuples are choices; scalars are taken as is."""
    if isinstance(value, (list, tuple)):
        return value[rng.randint(len(value)) - 1]
    return value


def _random_graph(rng, n, p):
    return tuple((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.bernoulli(p))


def gen_random(problem: str, params: dict = None, seed: int = 0):
    """Deterministic random instance of ``problem``.  List-valued params are
    sampled uniformly, so one call covers a size range."""
    params = dict(params or {})
    rng = SplitMix64(seed)
    get = lambda key, default: _pick(rng, params.get(key, default))  # noqa: E731

    if problem in _TABLE_FLAVOR or problem == "bpis":
        k, p = get("k", 3), get("p", 0.5)
        side = 2 * k if problem == "bpis" else k
        if k < 1 or side > MAX_TABLE_K:
            raise EnvelopeExceeded(f"table side {side} outside 1..{MAX_TABLE_K}")
        cells = [(i, j) for i in range(1, side + 1) for j in range(1, side + 1)]
        edges = []
        for x, a in enumerate(cells):
            for b in cells[x + 1:]:
                if problem == "bpis":
                    if not (a[0] <= k and a[1] <= k and b[0] > k and b[1] > k):
                        continue
                elif a[0] == b[0]:
                    continue
                if rng.bernoulli(p):
                    edges.append((a, b))
        return TableGraph(k, tuple(edges), BPIS if problem == "bpis" else _TABLE_FLAVOR[problem])

    if problem == "sat3":
        n, m = get("n", 3), get("m", 4)
        if n < 1 or n > MAX_VERTICES:
            raise EnvelopeExceeded(f"n={n} outside 1..{MAX_VERTICES}")
        clauses = []
        for _ in range(m):
            width = get("width", 3)
            clauses.append(tuple(rng.randint(n) * (1 if rng.bernoulli(0.5) else -1) for _ in range(width)))
        return CnfFormula(n, tuple(clauses))

    if problem == "three_coloring":
        n, p = get("n", 4), get("p", 0.5)
        if n < 1 or n > MAX_VERTICES:
            raise EnvelopeExceeded(f"n={n} outside 1..{MAX_VERTICES}")
        return ThreeColoringInstance(SimpleGraph(n, _random_graph(rng, n, p)))

    if problem == "hitting_set":
        k, m, q = get("k", 3), get("m", 3), get("q", 0.3)
        rr = bool(params.get("row_restricted", False))
        if k < 1 or k > MAX_TABLE_K:
            raise EnvelopeExceeded(f"k={k} outside 1..{MAX_TABLE_K}")
        sets = []
        for _ in range(m):
            if rr:
                s = tuple((i, rng.randint(k)) for i in range(1, k + 1) if rng.bernoulli(q))
            else:
                s = tuple((i, j) for i in range(1, k + 1) for j in range(1, k + 1) if rng.bernoulli(q))
            sets.append(s)
        return HittingSetInstance(k, tuple(sets), rr)

    if problem == "closest_string":
        sigma, L, d, t = get("sigma", 3), get("L", 4), get("d", 1), get("t", 3)
        if sigma < 1 or L > 12 or sigma ** L > 10 ** 7:
            raise EnvelopeExceeded(f"sigma^L = {sigma}^{L} too large")
        strings = tuple(tuple(rng.randint(sigma) for _ in range(L)) for _ in range(t))
        return ClosestStringInstance(sigma, L, d, strings)

    if problem == "constrained_permutation":
        kp, m, q = get("kprime", 3), get("m", 2), get("q", 0.6)
        min_size = params.get("min_size", 1)
        if kp < 1 or kp > MAX_VERTICES:
            raise EnvelopeExceeded(f"kprime={kp} outside 1..{MAX_VERTICES}")
        sets = []
        for _ in range(m):
            s = [x for x in range(1, kp + 1) if rng.bernoulli(q)]
            while len(s) < min(min_size, kp):
                x = rng.randint(kp)
                if x not in s:
                    s.append(x)
            sets.append(tuple(sorted(s)))
        return ConstrainedPermutationInstance(kp, tuple(sets))

    if problem == "distortion":
        n, p, d = get("n", 6), get("p", 0.3), get("d", 2)
        if n < 1 or n > MAX_VERTICES:
            raise EnvelopeExceeded(f"n={n} outside 1..{MAX_VERTICES}")
        # random spanning tree keeps the graph connected
        edges = set(_random_graph(rng, n, p))
        for v in range(2, n + 1):
            u = rng.randint(v - 1)
            edges.add((u, v))
        return DistortionInstance(SimpleGraph(n, tuple(sorted(edges))), d)

    if problem in ("disjoint_paths", "directed_disjoint_paths"):
        n, p, r = get("n", 8), get("p", 0.3), get("demands", 2)
        if n < 2 * r or n > MAX_VERTICES:
            raise EnvelopeExceeded(f"n={n} cannot host {r} demands (max {MAX_VERTICES} vertices)")
        order = list(range(1, n + 1))
        rng.shuffle(order)
        demands = tuple((order[2 * i], order[2 * i + 1]) for i in range(r))
        if problem == "disjoint_paths":
            return DisjointPathsInstance(False, SimpleGraph(n, _random_graph(rng, n, p)), demands)
        arcs = tuple((u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.bernoulli(p))
        return DisjointPathsInstance(True, DiGraph(n, arcs), demands)

    if problem == "chromatic":
        n, p, ell = get("n", 6), get("p", 0.4), get("ell", 3)
        if n < 1 or n > MAX_VERTICES:
            raise EnvelopeExceeded(f"n={n} outside 1..{MAX_VERTICES}")
        g = SimpleGraph(n, _random_graph(rng, n, p))
        return ChromaticInstance(g, frozenset(range(1, n + 1)), ell)

    raise EnvelopeExceeded(f"no generator for problem {problem!r}")


# ---------------------------------------------------------------------------
# fuzzing

# rule -> (source problem, default generator params)
FUZZ_SOURCES = {
    "sat3_to_3col": ("sat3", {"n": [1, 2, 3], "m": [1, 2, 3, 4]}),
    "3col_to_kkclique": ("three_coloring", {"n": [1, 2, 3, 4], "p": 0.5}),
    "recolor": ("kk_clique", {"k": [1, 2, 3], "p": 0.6}),
    "derand_recolor": ("kk_clique", {"k": [1, 2, 3], "p": 0.6, "variant": "loglog"}),
    "complement": ("kk_clique", {"k": [1, 2, 3], "p": 0.5}),
    "permis_to_bpis": ("kk_perm_is", {"k": [1, 2, 3], "p": 0.3}),
    "bpis_to_hs": ("bpis", {"k": [1, 2, 3], "p": 0.2}),
    "hs_to_cs": ("hitting_set", {"k": [1, 2, 3, 4], "m": [1, 2, 3, 4, 5], "q": 0.5, "row_restricted": True}),
    "cp_to_distortion": ("constrained_permutation", {"kprime": [2, 3], "m": [1, 2], "q": 0.6}),
    "hs_to_ddp": ("hitting_set", {"k": [1, 2], "m": [1, 2], "q": 0.3}),
    "hs_to_ddp+ddp_to_udp": ("hitting_set", {"k": 1, "m": [1, 2], "q": 0.5}),
    "permclique_to_chromatic": ("kk_perm_clique", {"k": [1, 2, 3], "p": 0.6}),
}

# rules whose forward direction depends on a random or enumerated choice
ONE_SIDED = {"recolor"}
AUDITED = {"permclique_to_chromatic"}
# the gadget chain only represents injective row selections
INJECTIVE_ONLY = {"hs_to_ddp", "hs_to_ddp+ddp_to_udp"}


def injective_hitting_selection(inst: HittingSetInstance):
    """First permutation of the columns (lexicographic) hitting every set, or None."""
    sets = [set(s) for s in inst.sets]
    for perm in itertools.permutations(range(1, inst.k + 1)):
        if all(any((i + 1, c) in s for i, c in enumerate(perm)) for s in sets):
            return RowSelection(perm, True)
    return None


@dataclass
class FuzzReport:
    rule: str
    trials: int = 0
    agreements: int = 0
    disagreements: list = field(default_factory=list)
    budget_exceeded: int = 0
    audit_findings: list = field(default_factory=list)
    pullbacks: int = 0
    pullbacks_ok: int = 0
    pushes: int = 0
    pushes_ok: int = 0
    not_applicable: int = 0

    @property
    def consistent(self) -> bool:
        return self.trials == (self.agreements + len(self.disagreements)
                               + self.budget_exceeded + len(self.audit_findings))

    def summary(self) -> dict:
        return {
            "rule": self.rule, "trials": self.trials, "agreements": self.agreements,
            "disagreements": len(self.disagreements), "budget_exceeded": self.budget_exceeded,
            "audit_findings": len(self.audit_findings), "pullbacks": self.pullbacks,
            "pullbacks_ok": self.pullbacks_ok, "pushes": self.pushes, "pushes_ok": self.pushes_ok,
            "not_applicable": self.not_applicable,
        }


def _chain(rule, source, seed, params):
    """Reduction records along ``rule`` (a '+'-joined chain)."""
    recs = []
    cur = source
    for name in rule.split("+"):
        if name == "recolor":
            rec = recolor_with(cur, sample_random_coloring(cur.k, seed))
        elif name in RULES:
            rec = RULES[name](cur)
        else:
            raise ValueError(f"rule {name!r} cannot be chained")
        recs.append(rec)
        cur = rec.target
    return recs


def _pull_chain(recs, w):
    for rec in reversed(recs):
        w = pull_back_witness(rec, w)
    return w


def _push_chain(recs, w):
    for rec in recs:
        if not has_push(rec.rule):
            return None
        w = push_forward_witness(rec, w)
        if w is NotApplicable:
            return w
    return w


def _trial(report, rule, source, merged, seed, trial, budget):
    replay = {"trial": trial, "seed": seed, "source": serialize_instance(source).decode()}

    def disagree(reason, target=None):
        rec = dict(replay, reason=reason)
        if target is not None:
            rec["target"] = serialize_instance(target).decode()
        report.disagreements.append(rec)

    rs = solve_exhaustive(source, budget)
    if rs.outcome == oracles.BUDGET:
        report.budget_exceeded += 1
        return

    if rule == "derand_recolor":
        family = build_family(source.k, merged.get("variant", "loglog"))
        recs = kkclique_to_perm_derandomized(source, family)
        any_yes = False
        for rec in recs:
            rt = solve_exhaustive(rec.target, budget)
            if rt.outcome == oracles.BUDGET:
                report.budget_exceeded += 1
                return
            if rt.is_yes:
                any_yes = True
                report.pullbacks += 1
                try:
                    pull_back_witness(rec, rt.witness)
                    report.pullbacks_ok += 1
                except SuperexpError as exc:
                    disagree(f"member {rec.aux['member']}: pull-back failed: {exc}", rec.target)
                    return
                if rs.is_yes:
                    break
        if any_yes != rs.is_yes:
            disagree(f"source {rs.outcome} but some-member-yes is {any_yes}")
            return
        report.agreements += 1
        return

    try:
        recs = _chain(rule, source, seed, merged)
    except SuperexpError as exc:
        disagree(f"reduction raised {type(exc).__name__}: {exc}")
        return
    target = recs[-1].target
    rt = solve_exhaustive(target, budget)
    if rt.outcome == oracles.BUDGET:
        report.budget_exceeded += 1
        return

    if rt.is_yes:
        report.pullbacks += 1
        try:
            _pull_chain(recs, rt.witness)
            report.pullbacks_ok += 1
        except SuperexpError as exc:
            disagree(f"pull-back failed: {exc}", target)
            return
    audit = None
    if rs.is_yes:
        w_src = rs.witness
        if rule in INJECTIVE_ONLY:
            w_src = injective_hitting_selection(source) or w_src
        try:
            w = _push_chain(recs, w_src)
        except SuperexpError as exc:
            disagree(f"push-forward failed: {exc}", target)
            return
        if w is NotApplicable:
            report.not_applicable += 1
            if rule in AUDITED:
                audit = "forward witness construction not applicable"
        elif w is not None:
            report.pushes += 1
            if oracles.verify_witness(target, w):
                report.pushes_ok += 1
            else:
                disagree("pushed witness does not verify", target)
                return

    if rs.outcome != rt.outcome:
        if rs.is_yes and rule in ONE_SIDED:
            pass  # coloring missed the witness: allowed
        elif rs.is_yes and rule in AUDITED:
            audit = audit or "source yes, target no"
        elif rs.is_yes and rule in INJECTIVE_ONLY and injective_hitting_selection(source) is None:
            audit = "source yes only through non-injective row selections"
        else:
            disagree(f"source {rs.outcome}, target {rt.outcome}", target)
            return
    if audit is not None:
        report.audit_findings.append(dict(replay, reason=audit, target=serialize_instance(target).decode()))
        return
    report.agreements += 1


def fuzz_equivalence(rule: str, params: dict = None, trials: int = 200, seed: int = 0,
                     budget: int = DEFAULT_BUDGET) -> FuzzReport:
    """Generate, reduce, solve both sides, compare, and check witness maps.
    Trial i uses sub-seed derive_seed(seed, i)."""
    if rule not in FUZZ_SOURCES:
        raise ValueError(f"no fuzz source for rule {rule!r}; known: {sorted(FUZZ_SOURCES)}")
    problem, defaults = FUZZ_SOURCES[rule]
    merged = dict(defaults, **(params or {}))
    report = FuzzReport(rule)
    for i in range(trials):
        sub = derive_seed(seed, i)
        report.trials += 1
        _trial(report, rule, gen_random(problem, merged, sub), merged, sub, i, budget)
    return report


def fuzz_instance(rule: str, source, seed: int = 0, budget: int = DEFAULT_BUDGET) -> FuzzReport:
    """One trial on a given source instance (regression cases)."""
    report = FuzzReport(rule, trials=1)
    _trial(report, rule, source, dict(FUZZ_SOURCES[rule][1]), seed, 0, budget)
    return report


# ---------------------------------------------------------------------------
# recoloring success probability


def perm_success_closed_form(k: int) -> Fraction:
    """k!/k^k * (1 - 1/k)^(k(k-1))."""
    if k == 1:
        return Fraction(1)
    return Fraction(math.factorial(k), k ** k) * Fraction(k - 1, k) ** (k * (k - 1))


def _success_mask(c: np.ndarray, k: int) -> np.ndarray:
    """c has shape (N, k, k); events for the identity witness: the diagonal
    is a permutation of [k] and no other cell repeats its row's diagonal color."""
    diag = c[:, np.arange(k), np.arange(k)]
    ok = np.ones(len(c), dtype=bool)
    for a in range(k):
        for b in range(a + 1, k):
            ok &= diag[:, a] != diag[:, b]
    clash = (c == diag[:, :, None]).sum(axis=2) > 1
    return ok & ~clash.any(axis=1)


def estimate_perm_success_probability(k: int, mode: str = "exact", samples: int = 10 ** 6, seed: int = 0):
    """Exact: Fraction over all k^(k^2) colorings (k <= 3).
    Monte Carlo: (estimate, standard error); sample s uses stream
    outputs s*k^2 .. s*k^2 + k^2 - 1 of SplitMix64(seed), row-major."""
    if k < 1:
        raise EnvelopeExceeded("k must be positive")
    if mode == "exact":
        if k > 3:
            raise EnvelopeExceeded(f"exact enumeration needs k <= 3, got {k}")
        n = k * k
        total = k ** n
        idx = np.arange(total, dtype=np.int64)
        digits = np.empty((total, n), dtype=np.int8)
        for pos in range(n - 1, -1, -1):
            digits[:, pos] = idx % k + 1
            idx //= k
        good = int(_success_mask(digits.reshape(total, k, k), k).sum())
        return Fraction(good, total)
    if mode == "montecarlo":
        n = k * k
        hits = 0
        chunk = max(1, 2 ** 20 // n)
        for start in range(0, samples, chunk):
            cnt = min(chunk, samples - start)
            c = randint_block(seed, start * n, cnt * n, k).reshape(cnt, k, k)
            hits += int(_success_mask(c, k).sum())
        est = hits / samples
        return est, math.sqrt(max(est * (1 - est), 1e-300) / samples)
    raise ValueError(f"unknown mode {mode!r}")


def exhaustive_recolor_no_instances(inst: TableGraph) -> tuple:
    """(colorings checked, colorings whose target is Yes) for a source instance;
    for a no-instance the second number must be 0."""
    k = inst.k
    checked = bad = 0
    for flat in itertools.product(range(1, k + 1), repeat=k * k):
        c = tuple(tuple(flat[i * k:(i + 1) * k]) for i in range(k))
        rec = recolor_with(inst, c)
        checked += 1
        if solve_exhaustive(rec.target).is_yes:
            bad += 1
    return checked, bad


# ---------------------------------------------------------------------------
# growth benchmark

BENCH_COLUMNS = ("problem", "size", "nodes_explored", "wall_time", "outcome")
BENCH_PROBLEMS = (
    "kk_clique", "kk_clique_edgeless", "kk_perm_clique", "hitting_set",
    "closest_string_branching", "closest_string_enum", "distortion",
)


def _bench_instance(problem, size, seed):
    if problem == "kk_clique_edgeless":
        return TableGraph(size, (), CLIQUE)
    if problem in ("kk_clique", "kk_perm_clique"):
        return gen_random(problem, {"k": size, "p": 0.5}, seed)
    if problem == "hitting_set":
        return gen_random("hitting_set", {"k": size, "m": 2 * size, "q": 0.15}, seed)
    if problem.startswith("closest_string"):
        return gen_random("closest_string", {"sigma": 4, "L": size, "d": max(1, size // 2), "t": 4}, seed)
    if problem == "distortion":
        return gen_random("distortion", {"n": size, "p": 0.2, "d": 3}, seed)
    raise EnvelopeExceeded(f"no benchmark for {problem!r}")


def bench_growth(problem: str, sizes, budget: int = DEFAULT_BUDGET, repetitions: int = 1, seed: int = 0) -> list:
    """Rows (problem, size, nodes_explored, wall_time, outcome), fixed seeds."""
    rows = []
    for size in sizes:
        for rep in range(repetitions):
            inst = _bench_instance(problem, size, derive_seed(seed, size * 1000 + rep))
            t0 = time.perf_counter()
            if problem == "closest_string_branching":
                r = solve_closest_string_branching(inst, budget)
            else:
                r = solve_exhaustive(inst, budget)
            rows.append({
                "problem": problem, "size": size, "nodes_explored": r.nodes_explored,
                "wall_time": round(time.perf_counter() - t0, 6), "outcome": r.outcome,
            })
    return rows


__all__ = [
    "FORMAT", "FUZZ_SOURCES", "FuzzReport", "gen_random", "fuzz_equivalence", "fuzz_instance",
    "perm_success_closed_form", "estimate_perm_success_probability", "injective_hitting_selection",
    "exhaustive_recolor_no_instances", "bench_growth", "BENCH_COLUMNS", "BENCH_PROBLEMS",
]
