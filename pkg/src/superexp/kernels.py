"""Backend selection for the search kernels.

The compiled extension is used when it imports and the problem fits its
fixed-width bitmasks; otherwise the pure-Python kernels run.  Setting
``SUPEREXP_PURE_PYTHON=1`` forces the fallback everywhere.
"""
import os

from . import _kernels_py as py

try:
    if os.environ.get("SUPEREXP_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python forced")
    from . import _kernels as native
except ImportError:
    native = None

BACKEND = "cython" if native is not None else "python"


def table_search(side, adj, independent, permutation, quadrant_k, budget):
    if native is not None and side * side <= 64:
        return native.table_search(side, adj, independent, permutation, quadrant_k, budget)
    return py.table_search(side, adj, independent, permutation, quadrant_k, budget)


def hitting_set_search(k, sets, budget):
    if native is not None:
        return native.hitting_set_search(k, sets, budget)
    return py.hitting_set_search(k, sets, budget)


def closest_string_enum(sigma, L, d, strings, budget):
    if native is not None:
        return native.closest_string_enum(sigma, L, d, strings, budget)
    return py.closest_string_enum(sigma, L, d, strings, budget)


def cp_search(n, sets, budget):
    if native is not None and n <= 64:
        return native.cp_search(n, sets, budget)
    return py.cp_search(n, sets, budget)
