"""Compare the compiled and pure-Python search kernels on identical workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--csv out.csv]

Both backends must return the same (status, witness, nodes); the script
aborts on any mismatch.
"""
import argparse
import csv
import sys
import time

from superexp import _kernels_py as py
from superexp.harness import gen_random
from superexp.instances import TableGraph

try:
    from superexp import _kernels as native
except ImportError:
    native = None


def _pigeonhole_table(k, flavor):
    """Cross-row edges between distinct columns 1..k-1: k rows cannot get
    distinct columns, so the search is exhaustive."""
    cells = [(i, j) for i in range(1, k + 1) for j in range(1, k)]
    edges = tuple((a, b) for a in cells for b in cells if a < b and a[0] != b[0] and a[1] != b[1])
    return TableGraph(k, edges, flavor)


def workloads():
    for flavor in ("clique", "perm_clique"):
        for k in (7, 8):
            inst = _pigeonhole_table(k, flavor)
            yield f"table_search {flavor} k={k}", "table_search", (
                inst.side, inst.adjacency_masks(), inst.independent, inst.permutation, 0, 10 ** 8)
    for seed in (0, 2):
        inst = gen_random("hitting_set", {"k": 8, "m": 30, "q": 0.1}, seed)
        sets = [[(i - 1) * 8 + (j - 1) for i, j in s] for s in inst.sets]
        yield f"hitting_set_search k=8 seed={seed}", "hitting_set_search", (8, sets, 10 ** 8)
    for L in (8, 10):
        inst = gen_random("closest_string", {"sigma": 4, "L": L, "d": L // 2, "t": 8}, L)
        yield f"closest_string_enum L={L}", "closest_string_enum", (
            inst.sigma, inst.L, inst.d, [list(s) for s in inst.strings], 10 ** 8)
    for n in (9, 10):
        # element 1 would need three neighbors: no permutation satisfies all sets
        masks = [0b11, 0b101, 0b1001]
        yield f"cp_search star n={n}", "cp_search", (n, masks, 10 ** 8)


def best_of(fn, args, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--csv")
    args = ap.parse_args(argv)
    if native is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`")
        return 1
    rows = []
    for label, name, call in workloads():
        tp, rp = best_of(getattr(py, name), call, args.repeat)
        tc, rc = best_of(getattr(native, name), call, args.repeat)
        if tuple(rp) != tuple(rc):
            print(f"MISMATCH on {label}: python {rp} vs cython {rc}")
            return 2
        rows.append({"workload": label, "nodes": rp[2], "python_s": round(tp, 5),
                     "cython_s": round(tc, 5), "speedup": round(tp / tc, 1) if tc else float("inf")})
    w = csv.DictWriter(open(args.csv, "w", newline="") if args.csv else sys.stdout, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
