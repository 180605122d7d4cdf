import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from superexp import _kernels_py as py
from superexp import kernels
from superexp.harness import gen_random

native = pytest.importorskip("superexp._kernels")


def _table_args(problem, k, p, seed, budget):
    inst = gen_random(problem, {"k": k, "p": p}, seed)
    quadrant = inst.k if inst.problem == "bpis" else 0
    return inst.side, inst.adjacency_masks(), inst.independent, inst.permutation, quadrant, budget


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(["kk_clique", "kk_is", "kk_perm_clique", "kk_perm_is", "bpis"]),
       st.integers(1, 4), st.floats(0.0, 1.0), st.integers(0, 2 ** 32), st.sampled_from([3, 50, 10 ** 6]))
def test_table_parity(problem, k, p, seed, budget):
    args = _table_args(problem, k, p, seed, budget)
    assert tuple(py.table_search(*args)) == tuple(native.table_search(*args))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 6), st.integers(0, 12), st.floats(0.0, 0.5), st.integers(0, 2 ** 32),
       st.sampled_from([5, 10 ** 6]))
def test_hitting_set_parity(k, m, q, seed, budget):
    inst = gen_random("hitting_set", {"k": k, "m": m, "q": q}, seed)
    sets = [[(i - 1) * k + (j - 1) for i, j in s] for s in inst.sets]
    assert tuple(py.hitting_set_search(k, sets, budget)) == tuple(native.hitting_set_search(k, sets, budget))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 5), st.integers(1, 7), st.integers(0, 4), st.integers(1, 5), st.integers(0, 2 ** 32),
       st.sampled_from([7, 10 ** 6]))
def test_closest_string_parity(sigma, L, d, t, seed, budget):
    inst = gen_random("closest_string", {"sigma": sigma, "L": L, "d": d, "t": t}, seed)
    args = (sigma, L, d, [list(s) for s in inst.strings], budget)
    assert tuple(py.closest_string_enum(*args)) == tuple(native.closest_string_enum(*args))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10), st.floats(0.1, 0.8), st.integers(0, 2 ** 32),
       st.sampled_from([4, 10 ** 6]))
def test_cp_parity(n, m, q, seed, budget):
    inst = gen_random("constrained_permutation", {"kprime": n, "m": m, "q": q}, seed)
    masks = [sum(1 << (x - 1) for x in s) for s in inst.sets]
    assert tuple(py.cp_search(n, masks, budget)) == tuple(native.cp_search(n, masks, budget))


def test_budget_counts_root():
    # budget 0 refuses even the root; budget 1 enters only the root
    args = _table_args("kk_perm_clique", 3, 0.5, 1, 0)
    assert py.table_search(*args)[0] == -1 and py.table_search(*args)[2] == 0
    assert native.table_search(*args)[:1] == py.table_search(*args)[:1]


def test_dispatch_uses_compiled_backend():
    assert kernels.BACKEND == "cython"


def test_pure_python_override():
    env = dict(os.environ, SUPEREXP_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from superexp import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
