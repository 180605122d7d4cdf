"""Problem instances, witnesses, validation and canonical serialization.

All indices exposed to users are 1-based: table cells are ``(row, col)`` with
both coordinates in ``1..side``, graph vertices are ``1..n``, alphabet symbols
are ``1..sigma``.  Every instance canonicalizes itself on construction (edges
and sets sorted, duplicate edges dropped) so that two instances with the same
semantic content compare equal and serialize to identical bytes.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import InstanceSyntaxError, InvariantError, RangeError

FORMAT = "superexp/1"
WITNESS_FORMAT = "superexp-witness/1"

Cell = tuple  # (row, col)

# TableGraph flavors
CLIQUE = "clique"
INDEPENDENT_SET = "independent_set"
PERM_CLIQUE = "perm_clique"
PERM_IS = "perm_is"
BPIS = "bpis"

TABLE_TAGS = {
    "kk_clique": CLIQUE,
    "kk_is": INDEPENDENT_SET,
    "kk_perm_clique": PERM_CLIQUE,
    "kk_perm_is": PERM_IS,
    "bpis": BPIS,
}
FLAVOR_TAGS = {v: k for k, v in TABLE_TAGS.items()}


def _canon_pair(a, b):
    return (a, b) if a <= b else (b, a)


def _cell(x) -> Cell:
    return (int(x[0]), int(x[1]))


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class SimpleGraph:
    num_vertices: int
    edges: tuple = ()

    def __post_init__(self):
        canon = sorted({_canon_pair(int(u), int(v)) for u, v in self.edges})
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def n(self) -> int:
        return self.num_vertices

    def neighbors(self) -> list:
        """Adjacency sets indexed ``0..n`` (slot 0 unused)."""
        adj = [set() for _ in range(self.num_vertices + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def distances_from(self, source: int) -> list:
        """Breadth-first distances from ``source``; ``-1`` marks unreachable vertices."""
        adj = self.neighbors()
        dist = [-1] * (self.num_vertices + 1)
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def distance_matrix(self) -> list:
        return [None] + [self.distances_from(v)[:] for v in range(1, self.num_vertices + 1)]

    def is_connected(self) -> bool:
        if self.num_vertices <= 1:
            return True
        return all(x >= 0 for x in self.distances_from(1)[1:])


@dataclass(frozen=True)
class DiGraph:
    num_vertices: int
    arcs: tuple = ()

    def __post_init__(self):
        canon = sorted({(int(u), int(v)) for u, v in self.arcs})
        object.__setattr__(self, "arcs", tuple(canon))

    @property
    def n(self) -> int:
        return self.num_vertices

    @property
    def edges(self) -> tuple:
        return self.arcs

    def out_neighbors(self) -> list:
        adj = [[] for _ in range(self.num_vertices + 1)]
        for u, v in self.arcs:
            adj[u].append(v)
        return adj

    def in_neighbors(self) -> list:
        adj = [[] for _ in range(self.num_vertices + 1)]
        for u, v in self.arcs:
            adj[v].append(u)
        return adj

    def underlying(self) -> SimpleGraph:
        return SimpleGraph(self.num_vertices, tuple((u, v) for u, v in self.arcs if u != v))


# ---------------------------------------------------------------------------
# problem instances


@dataclass(frozen=True)
class TableGraph:
    """Graph on the ``side x side`` table, ``side = side_multiplier * k``."""

    k: int
    edges: tuple = ()
    flavor: str = CLIQUE
    side_multiplier: int = 0  # 0: derived from flavor

    def __post_init__(self):
        if self.side_multiplier == 0:
            object.__setattr__(self, "side_multiplier", 2 if self.flavor == BPIS else 1)
        canon = sorted({_canon_pair(_cell(a), _cell(b)) for a, b in self.edges})
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def problem(self) -> str:
        return FLAVOR_TAGS[self.flavor]

    @property
    def side(self) -> int:
        return self.side_multiplier * self.k

    @property
    def permutation(self) -> bool:
        return self.flavor in (PERM_CLIQUE, PERM_IS, BPIS)

    @property
    def independent(self) -> bool:
        return self.flavor in (INDEPENDENT_SET, PERM_IS, BPIS)

    def cell_index(self, cell: Cell) -> int:
        """0-based linear index, row-major."""
        return (cell[0] - 1) * self.side + (cell[1] - 1)

    def adjacency_masks(self) -> list:
        """Per-cell neighbor bitmask over row-major cell indices."""
        adj = [0] * (self.side * self.side)
        for a, b in self.edges:
            ia, ib = self.cell_index(a), self.cell_index(b)
            adj[ia] |= 1 << ib
            adj[ib] |= 1 << ia
        return adj

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple = ()
    problem = "sat3"

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(int(x) for x in c) for c in self.clauses))


@dataclass(frozen=True)
class ThreeColoringInstance:
    graph: SimpleGraph
    problem = "three_coloring"


@dataclass(frozen=True)
class HittingSetInstance:
    k: int
    sets: tuple = ()
    row_restricted: bool = False
    problem = "hitting_set"

    def __post_init__(self):
        canon = sorted(tuple(sorted({_cell(c) for c in s})) for s in self.sets)
        object.__setattr__(self, "sets", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class ClosestStringInstance:
    sigma: int
    L: int
    d: int
    strings: tuple = ()
    problem = "closest_string"

    def __post_init__(self):
        object.__setattr__(self, "strings", tuple(tuple(int(c) for c in s) for s in self.strings))

    @property
    def t(self) -> int:
        return len(self.strings)


@dataclass(frozen=True)
class ConstrainedPermutationInstance:
    kprime: int
    sets: tuple = ()
    element_labels: Optional[tuple] = None
    problem = "constrained_permutation"

    def __post_init__(self):
        canon = sorted(tuple(sorted({int(x) for x in s})) for s in self.sets)
        object.__setattr__(self, "sets", tuple(canon))
        if self.element_labels is not None:
            object.__setattr__(self, "element_labels", tuple(str(x) for x in self.element_labels))

    @property
    def m(self) -> int:
        return len(self.sets)

    def element(self, label: str) -> int:
        """1-based element carrying ``label``."""
        return self.element_labels.index(label) + 1


@dataclass(frozen=True)
class DistortionInstance:
    graph: SimpleGraph
    d: int
    problem = "distortion"


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(int(x) for x in b) for b in self.bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def first_last(self) -> dict:
        """Vertex -> (l(x), r(x)), 0-based first and last bag index."""
        span = {}
        for i, bag in enumerate(self.bags):
            for x in bag:
                if x in span:
                    span[x] = (span[x][0], i)
                else:
                    span[x] = (i, i)
        return span

    def to_json(self) -> dict:
        return {"bags": [sorted(b) for b in self.bags]}


@dataclass(frozen=True)
class DisjointPathsInstance:
    directed: bool
    graph: Union[SimpleGraph, DiGraph]
    demands: tuple = ()
    decomposition: Optional[PathDecomposition] = None

    def __post_init__(self):
        object.__setattr__(self, "demands", tuple((int(s), int(t)) for s, t in self.demands))

    @property
    def problem(self) -> str:
        return "directed_disjoint_paths" if self.directed else "disjoint_paths"


@dataclass(frozen=True)
class ChromaticInstance:
    graph: SimpleGraph
    vertex_cover: frozenset = frozenset()
    ell: int = 1
    problem = "chromatic"

    def __post_init__(self):
        object.__setattr__(self, "vertex_cover", frozenset(int(v) for v in self.vertex_cover))


ProblemInstance = Union[
    TableGraph, CnfFormula, ThreeColoringInstance, HittingSetInstance,
    ClosestStringInstance, ConstrainedPermutationInstance, DistortionInstance,
    DisjointPathsInstance, ChromaticInstance,
]

PROBLEM_TAGS = (
    "sat3", "three_coloring", "kk_clique", "kk_is", "kk_perm_clique", "kk_perm_is",
    "bpis", "hitting_set", "closest_string", "constrained_permutation",
    "distortion", "disjoint_paths", "directed_disjoint_paths", "chromatic",
)


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class RowSelection:
    """``rho[i-1]`` is the column chosen in row ``i``."""

    rho: tuple
    bijective: bool = False
    kind = "row_selection"

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(int(x) for x in self.rho))

    def __call__(self, i: int) -> int:
        return self.rho[i - 1]


def Permutation(rho: Sequence[int]) -> RowSelection:
    return RowSelection(tuple(rho), True)


@dataclass(frozen=True)
class CenterString:
    chars: tuple
    kind = "center_string"

    def __post_init__(self):
        object.__setattr__(self, "chars", tuple(int(x) for x in self.chars))


@dataclass(frozen=True)
class LineEmbedding:
    """``positions[v-1]`` is the integer image of vertex ``v``."""

    positions: tuple
    kind = "line_embedding"

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(int(x) for x in self.positions))


@dataclass(frozen=True)
class PathSystem:
    """One vertex sequence per demand, in demand order."""

    paths: tuple
    kind = "path_system"

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(tuple(int(x) for x in p) for p in self.paths))


@dataclass(frozen=True)
class ColorAssignment:
    colors: tuple
    kind = "color_assignment"

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(x) for x in self.colors))


@dataclass(frozen=True)
class Assignment:
    values: tuple
    kind = "assignment"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(bool(x) for x in self.values))


@dataclass(frozen=True)
class ThreeColoring:
    colors: tuple
    kind = "three_coloring"

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(x) for x in self.colors))


Witness = Union[RowSelection, CenterString, LineEmbedding, PathSystem,
                ColorAssignment, Assignment, ThreeColoring]

WITNESS_KIND = {
    "sat3": Assignment,
    "three_coloring": ThreeColoring,
    "kk_clique": RowSelection,
    "kk_is": RowSelection,
    "kk_perm_clique": RowSelection,
    "kk_perm_is": RowSelection,
    "bpis": RowSelection,
    "hitting_set": RowSelection,
    "closest_string": CenterString,
    "constrained_permutation": RowSelection,
    "distortion": LineEmbedding,
    "disjoint_paths": PathSystem,
    "directed_disjoint_paths": PathSystem,
    "chromatic": ColorAssignment,
}


# ---------------------------------------------------------------------------
# validation


def _graph_violations(g, what="edge") -> Iterable:
    n = g.num_vertices
    if n < 0:
        yield RangeError, "num_vertices is negative"
    for u, v in g.edges:
        if not (1 <= u <= n and 1 <= v <= n):
            yield RangeError, f"{what} ({u},{v}) out of range 1..{n}"
        elif u == v:
            yield InvariantError, f"{what} ({u},{v}) is a self-loop"


def _violations(inst) -> Iterable:
    """Yield ``(error class, message)`` for every broken invariant."""
    if isinstance(inst, TableGraph):
        if inst.k < 1:
            yield RangeError, "k must be positive"
            return
        if inst.flavor not in FLAVOR_TAGS:
            yield InvariantError, f"unknown flavor {inst.flavor!r}"
        expected = 2 if inst.flavor == BPIS else 1
        if inst.side_multiplier != expected:
            yield InvariantError, f"side_multiplier {inst.side_multiplier} invalid for {inst.flavor}"
        side, k = inst.side, inst.k
        for a, b in inst.edges:
            if not all(1 <= x <= side for x in a + b):
                yield RangeError, f"edge {a}-{b} out of range 1..{side}"
                continue
            if a == b:
                yield InvariantError, f"edge {a}-{b} is a self-loop"
            elif inst.flavor == BPIS:
                in1 = lambda c: c[0] <= k and c[1] <= k
                in2 = lambda c: c[0] > k and c[1] > k
                if not ((in1(a) and in2(b)) or (in2(a) and in1(b))):
                    yield InvariantError, f"bpis edge {a}-{b} does not join I1 to I2"
    elif isinstance(inst, CnfFormula):
        if inst.num_vars < 0:
            yield RangeError, "num_vars is negative"
        for idx, clause in enumerate(inst.clauses):
            if not clause:
                yield InvariantError, f"clause {idx + 1} is empty"
            for lit in clause:
                if lit == 0 or abs(lit) > inst.num_vars:
                    yield RangeError, f"literal {lit} in clause {idx + 1} out of range"
    elif isinstance(inst, ThreeColoringInstance):
        yield from _graph_violations(inst.graph)
    elif isinstance(inst, HittingSetInstance):
        if inst.k < 1:
            yield RangeError, "k must be positive"
            return
        for idx, s in enumerate(inst.sets):
            rows = set()
            for c in s:
                if not (1 <= c[0] <= inst.k and 1 <= c[1] <= inst.k):
                    yield RangeError, f"cell {c} of set {idx + 1} out of range 1..{inst.k}"
                if c[0] in rows and inst.row_restricted:
                    yield InvariantError, f"set {idx + 1} has two elements in row {c[0]}"
                rows.add(c[0])
    elif isinstance(inst, ClosestStringInstance):
        if inst.sigma < 1 or inst.L < 0:
            yield RangeError, "sigma must be positive and L non-negative"
        if inst.d < 0:
            yield RangeError, "d must be non-negative"
        for idx, s in enumerate(inst.strings):
            if len(s) != inst.L:
                yield InvariantError, f"string {idx + 1} has length {len(s)} != L={inst.L}"
            for ch in s:
                if not 1 <= ch <= inst.sigma:
                    yield RangeError, f"character {ch} of string {idx + 1} outside 1..{inst.sigma}"
    elif isinstance(inst, ConstrainedPermutationInstance):
        if inst.kprime < 1:
            yield RangeError, "kprime must be positive"
        for idx, s in enumerate(inst.sets):
            for x in s:
                if not 1 <= x <= inst.kprime:
                    yield RangeError, f"element {x} of set {idx + 1} outside 1..{inst.kprime}"
        if inst.element_labels is not None:
            if len(inst.element_labels) != inst.kprime or len(set(inst.element_labels)) != inst.kprime:
                yield InvariantError, "element_labels is not a bijection onto the ground set"
    elif isinstance(inst, DistortionInstance):
        yield from _graph_violations(inst.graph)
        if inst.d < 1:
            yield RangeError, "distortion bound d must be at least 1"
        if not inst.graph.is_connected():
            yield InvariantError, "graph is not connected"
    elif isinstance(inst, DisjointPathsInstance):
        g = inst.graph
        if inst.directed != isinstance(g, DiGraph):
            yield InvariantError, "directed flag does not match graph type"
        yield from _graph_violations(g, "arc" if inst.directed else "edge")
        seen = set()
        for s, t in inst.demands:
            if not (1 <= s <= g.num_vertices and 1 <= t <= g.num_vertices):
                yield RangeError, f"demand ({s},{t}) out of range"
            elif s == t:
                yield InvariantError, f"demand ({s},{t}) has equal endpoints"
            if s in seen or t in seen:
                yield InvariantError, "demand terminals not distinct"
            seen.update((s, t))
        if inst.decomposition is not None:
            from .widths import decomposition_violations

            for msg in decomposition_violations(g, inst.decomposition):
                yield InvariantError, f"decomposition: {msg}"
    elif isinstance(inst, ChromaticInstance):
        yield from _graph_violations(inst.graph)
        if inst.ell < 1:
            yield RangeError, "ell must be positive"
        for v in inst.vertex_cover:
            if not 1 <= v <= inst.graph.num_vertices:
                yield RangeError, f"vertex_cover vertex {v} out of range"
        for u, v in inst.graph.edges:
            if u not in inst.vertex_cover and v not in inst.vertex_cover:
                yield InvariantError, f"vertex_cover misses edge ({u},{v})"
    else:
        yield InvariantError, f"not a problem instance: {type(inst).__name__}"


def validate_instance(inst) -> list:
    """Return the list of violated invariants; empty iff ``inst`` is valid."""
    return [msg for _, msg in _violations(inst)]


def check_instance(inst):
    """Raise the error matching the first violation, else return ``inst``."""
    for cls, msg in _violations(inst):
        raise cls(msg)
    return inst


# ---------------------------------------------------------------------------
# serialization


def _graph_fields(g) -> dict:
    return {"num_vertices": g.num_vertices, "edges": [list(e) for e in g.edges]}


def instance_to_json(inst) -> dict:
    out = {"format": FORMAT, "problem": inst.problem}
    if isinstance(inst, TableGraph):
        out["k"] = inst.k
        out["edges"] = [[list(a), list(b)] for a, b in inst.edges]
    elif isinstance(inst, CnfFormula):
        out["num_vars"] = inst.num_vars
        out["clauses"] = [list(c) for c in inst.clauses]
    elif isinstance(inst, ThreeColoringInstance):
        out.update(_graph_fields(inst.graph))
    elif isinstance(inst, HittingSetInstance):
        out["k"] = inst.k
        out["row_restricted"] = inst.row_restricted
        out["sets"] = [[list(c) for c in s] for s in inst.sets]
    elif isinstance(inst, ClosestStringInstance):
        out.update(sigma=inst.sigma, L=inst.L, d=inst.d, strings=[list(s) for s in inst.strings])
    elif isinstance(inst, ConstrainedPermutationInstance):
        out["kprime"] = inst.kprime
        out["sets"] = [list(s) for s in inst.sets]
        if inst.element_labels is not None:
            out["element_labels"] = list(inst.element_labels)
    elif isinstance(inst, DistortionInstance):
        out.update(_graph_fields(inst.graph))
        out["d"] = inst.d
    elif isinstance(inst, DisjointPathsInstance):
        out["num_vertices"] = inst.graph.num_vertices
        out["arcs" if inst.directed else "edges"] = [list(e) for e in inst.graph.edges]
        out["demands"] = [list(x) for x in inst.demands]
        if inst.decomposition is not None:
            out["decomposition"] = inst.decomposition.to_json()
    elif isinstance(inst, ChromaticInstance):
        out.update(_graph_fields(inst.graph))
        out["vertex_cover"] = sorted(inst.vertex_cover)
        out["ell"] = inst.ell
    else:
        raise TypeError(f"cannot serialize {type(inst).__name__}")
    return out


def _dumps(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def serialize_instance(inst) -> bytes:
    """Canonical JSON envelope: sorted keys, canonical element order, compact."""
    return _dumps(instance_to_json(inst))


def _need(obj: dict, key: str):
    if key not in obj:
        raise InstanceSyntaxError(f"missing field {key!r}")
    return obj[key]


def _pairs(raw, what):
    try:
        return [(int(a), int(b)) for a, b in raw]
    except (TypeError, ValueError) as exc:
        raise InstanceSyntaxError(f"malformed {what}: {exc}") from None


def instance_from_json(obj: dict):
    if not isinstance(obj, dict):
        raise InstanceSyntaxError("envelope must be a JSON object")
    if obj.get("format", FORMAT) != FORMAT:
        raise InstanceSyntaxError(f"unsupported format {obj.get('format')!r}")
    tag = _need(obj, "problem")
    try:
        if tag in TABLE_TAGS:
            edges = [(_cell(a), _cell(b)) for a, b in _need(obj, "edges")]
            inst = TableGraph(int(_need(obj, "k")), tuple(edges), TABLE_TAGS[tag])
        elif tag == "sat3":
            inst = CnfFormula(int(_need(obj, "num_vars")), tuple(_need(obj, "clauses")))
        elif tag == "three_coloring":
            inst = ThreeColoringInstance(SimpleGraph(int(_need(obj, "num_vertices")),
                                                     tuple(_pairs(_need(obj, "edges"), "edges"))))
        elif tag == "hitting_set":
            sets = tuple(tuple(_cell(c) for c in s) for s in _need(obj, "sets"))
            inst = HittingSetInstance(int(_need(obj, "k")), sets, bool(obj.get("row_restricted", False)))
        elif tag == "closest_string":
            inst = ClosestStringInstance(int(_need(obj, "sigma")), int(_need(obj, "L")),
                                         int(_need(obj, "d")), tuple(_need(obj, "strings")))
        elif tag == "constrained_permutation":
            labels = obj.get("element_labels")
            inst = ConstrainedPermutationInstance(int(_need(obj, "kprime")), tuple(_need(obj, "sets")),
                                                  tuple(labels) if labels is not None else None)
        elif tag == "distortion":
            g = SimpleGraph(int(_need(obj, "num_vertices")), tuple(_pairs(_need(obj, "edges"), "edges")))
            inst = DistortionInstance(g, int(_need(obj, "d")))
        elif tag in ("disjoint_paths", "directed_disjoint_paths"):
            directed = tag == "directed_disjoint_paths"
            n = int(_need(obj, "num_vertices"))
            raw = _pairs(_need(obj, "arcs" if directed else "edges"), "edges")
            g = DiGraph(n, tuple(raw)) if directed else SimpleGraph(n, tuple(raw))
            pd = obj.get("decomposition")
            pd = PathDecomposition(tuple(_need(pd, "bags"))) if pd is not None else None
            inst = DisjointPathsInstance(directed, g, tuple(_pairs(_need(obj, "demands"), "demands")), pd)
        elif tag == "chromatic":
            g = SimpleGraph(int(_need(obj, "num_vertices")), tuple(_pairs(_need(obj, "edges"), "edges")))
            inst = ChromaticInstance(g, frozenset(_need(obj, "vertex_cover")), int(_need(obj, "ell")))
        else:
            raise InstanceSyntaxError(f"unknown problem tag {tag!r}")
    except InstanceSyntaxError:
        raise
    except (TypeError, ValueError, IndexError) as exc:
        raise InstanceSyntaxError(f"malformed {tag} envelope: {exc}") from None
    return inst


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = num_clauses = None
    clauses, current = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InstanceSyntaxError(f"bad DIMACS header: {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise InstanceSyntaxError(f"bad DIMACS header: {line!r}") from None
            continue
        if num_vars is None:
            raise InstanceSyntaxError("DIMACS clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise InstanceSyntaxError(f"bad DIMACS literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if num_vars is None:
        raise InstanceSyntaxError("missing DIMACS header")
    if current:
        clauses.append(tuple(current))
    if len(clauses) != num_clauses:
        raise InstanceSyntaxError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def to_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines += [" ".join(str(x) for x in c) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def parse_instance(data: Union[bytes, str]):
    """Parse a JSON envelope or DIMACS CNF text into a validated instance."""
    text = data.decode() if isinstance(data, (bytes, bytearray)) else data
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceSyntaxError(f"invalid JSON: {exc}") from None
        inst = instance_from_json(obj)
    else:
        inst = parse_dimacs(text)
    return check_instance(inst)


# witness files

def witness_to_json(w) -> dict:
    out = {"format": WITNESS_FORMAT, "kind": w.kind}
    if isinstance(w, RowSelection):
        out["rho"] = list(w.rho)
        out["bijective"] = w.bijective
    elif isinstance(w, CenterString):
        out["chars"] = list(w.chars)
    elif isinstance(w, LineEmbedding):
        out["positions"] = list(w.positions)
    elif isinstance(w, PathSystem):
        out["paths"] = [list(p) for p in w.paths]
    elif isinstance(w, (ColorAssignment, ThreeColoring)):
        out["colors"] = list(w.colors)
    elif isinstance(w, Assignment):
        out["values"] = list(w.values)
    else:
        raise TypeError(f"not a witness: {type(w).__name__}")
    return out


def serialize_witness(w) -> bytes:
    return _dumps(witness_to_json(w))


def parse_witness(data: Union[bytes, str]):
    text = data.decode() if isinstance(data, (bytes, bytearray)) else data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceSyntaxError(f"invalid JSON: {exc}") from None
    if obj.get("format") != WITNESS_FORMAT:
        raise InstanceSyntaxError(f"unsupported witness format {obj.get('format')!r}")
    kind = obj.get("kind")
    try:
        if kind == "row_selection":
            return RowSelection(tuple(obj["rho"]), bool(obj.get("bijective", False)))
        if kind == "center_string":
            return CenterString(tuple(obj["chars"]))
        if kind == "line_embedding":
            return LineEmbedding(tuple(obj["positions"]))
        if kind == "path_system":
            return PathSystem(tuple(tuple(p) for p in obj["paths"]))
        if kind == "color_assignment":
            return ColorAssignment(tuple(obj["colors"]))
        if kind == "three_coloring":
            return ThreeColoring(tuple(obj["colors"]))
        if kind == "assignment":
            return Assignment(tuple(obj["values"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceSyntaxError(f"malformed witness: {exc}") from None
    raise InstanceSyntaxError(f"unknown witness kind {kind!r}")
