import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from superexp.errors import EnvelopeExceeded, NotPrime, PrimeOutOfRange
from superexp.hashing import (
    CactusGridGraph, build_family, build_phf, coloring_is_proper_on, compositions,
    enumerate_cactus_grids, fks_count_good_multipliers, is_prime, smallest_prime_between,
)
from superexp.harness import gen_random
from superexp.instances import CLIQUE, TableGraph
from superexp.oracles import solve_exhaustive, verify_witness
from superexp.reductions import kkclique_to_perm_derandomized, pull_back_witness, recolor_with


def _separates_all(phf):
    """Independent check: every k-subset gets k distinct values from some member."""
    for W in itertools.combinations(range(phf.n), phf.k):
        if not any(len({f[x] for x in W}) == phf.k for f in phf.functions):
            return False
    return True


def test_primes():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert smallest_prime_between(8, 16) == 11
    with pytest.raises(PrimeOutOfRange):
        smallest_prime_between(24, 28)


def test_phf_examples():
    small = build_phf(4, 2)
    assert small.functions == ((1, 2, 1, 2), (1, 1, 2, 2))
    assert _separates_all(small)
    assert len(build_phf(5, 5)) == 1 and sorted(build_phf(5, 5).functions[0]) == [1, 2, 3, 4, 5]
    assert _separates_all(build_phf(8, 3)) and build_phf(8, 3).is_perfect()


@pytest.mark.parametrize("n,k", [(6, 2), (7, 3), (9, 4), (10, 5), (12, 3)])
def test_phf_perfect(n, k):
    phf = build_phf(n, k)
    assert phf.is_perfect() and _separates_all(phf)
    assert all(set(f) <= set(range(1, k + 1)) and len(f) == n for f in phf.functions)


def test_phf_envelope():
    with pytest.raises(EnvelopeExceeded):
        build_phf(200, 3)
    with pytest.raises(EnvelopeExceeded):
        build_phf(3, 4)


def _good_multipliers_scalar(p, W, r):
    return sum(len({(t * x % p) % r for x in W}) == len(W) for t in range(1, p + 1))


def test_fks_examples():
    assert fks_count_good_multipliers(10, 11, {2, 5, 9}, 18) == 10
    count = fks_count_good_multipliers(20, 23, {3, 7, 20}, 18)
    assert count >= 12 and count == _good_multipliers_scalar(23, {3, 7, 20}, 18)
    assert fks_count_good_multipliers(7, 7, {4}) == 7


def test_fks_errors():
    with pytest.raises(NotPrime):
        fks_count_good_multipliers(10, 12, {1, 2})
    with pytest.raises(PrimeOutOfRange):
        fks_count_good_multipliers(10, 23, {1, 2})


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 20), st.data())
def test_fks_matches_scalar(n, data):
    primes = [p for p in range(n, 2 * n + 1) if is_prime(p)]
    p = data.draw(st.sampled_from(primes))
    W = data.draw(st.sets(st.integers(1, n), min_size=1, max_size=4))
    r = 2 * len(W) ** 2
    count = fks_count_good_multipliers(n, p, W, r)
    assert count == _good_multipliers_scalar(p, W, r) and count >= math.ceil(p / 2)


def test_cactus_grids():
    assert [len(g.edges) for g in enumerate_cactus_grids(1)] == [0]
    g2 = list(enumerate_cactus_grids(2))
    assert len(g2) == 4 and all(len(g.edges) == 3 for g in g2)
    g3 = list(enumerate_cactus_grids(3))
    assert len(g3) == 27 and all(len(g.edges) == 9 for g in g3)
    assert [g.clique_columns for g in g3[:2]] == [(1, 1, 1), (1, 1, 2)]


def test_proper_coloring_check():
    assert coloring_is_proper_on(((1,),), CactusGridGraph(1, (1,)))
    const = ((1, 1, 1),) * 3
    assert not coloring_is_proper_on(const, CactusGridGraph(3, (1, 2, 3)))
    # proper, but the clique uses the spare color 3: useless for recoloring
    spare = ((1, 3), (2, 3))
    g = CactusGridGraph(2, (1, 2))
    assert coloring_is_proper_on(spare, g) and not coloring_is_proper_on(spare, g, clique_in_range=True)


def test_compositions():
    assert list(compositions(3, 2)) == [(1, 2), (2, 1)]
    assert sum(1 for _ in compositions(5, 3)) == math.comb(4, 2)


@pytest.mark.parametrize("variant,k", [("loglog", 1), ("loglog", 2), ("loglog", 3), ("loglog", 4),
                                       ("linear", 1), ("linear", 2), ("linear", 3)])
def test_family_coverage_independent(variant, k):
    fam = build_family(k, variant)
    tables = fam.tables()
    for g in enumerate_cactus_grids(k):
        assert any(coloring_is_proper_on(t, g, clique_in_range=True) for t in tables), g
    assert fam.coverage() == (k ** k, k ** k)


def test_family_k1_single_member():
    for variant in ("loglog", "linear"):
        fam = build_family(1, variant)
        assert len(fam) == 1 and fam.tables() == [((1,),)]


def test_loglog_descriptor_colors_its_graph():
    # the member built from descriptor S={1,2,3}, k=(1,1,1) colors column s_j
    # with the single color j; it is proper on the graph with clique columns (1,2,3)
    fam = build_family(3, "loglog")
    idx = next(i for i, d in enumerate(fam.descriptors) if d["S"] == (1, 2, 3))
    table = fam.tables()[idx]
    assert coloring_is_proper_on(table, CactusGridGraph(3, (1, 2, 3)))


def test_family_sizes_monotone():
    sizes = [len(build_family(k, "loglog")) for k in range(1, 6)]
    assert sizes == sorted(sizes) and sizes[0] == 1


def test_family_json_shape():
    doc = build_family(2, "linear").to_json()
    assert doc["size"] == len(doc["members"]) and doc["descriptor_count"] >= doc["size"]
    assert {"table", "descriptor", "count"} <= set(doc["members"][0])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.floats(0.3, 0.9), st.integers(0, 2 ** 32))
def test_family_bridge(k, p, seed):
    """The member covering a witness's cactus-grid graph recolors to a Yes target."""
    inst = gen_random("kk_clique", {"k": k, "p": p}, seed)
    r = solve_exhaustive(inst)
    if not r.is_yes:
        return
    fam = build_family(k, "loglog")
    idx = fam.covering_member(CactusGridGraph(k, r.witness.rho))
    rec = recolor_with(inst, fam.tables()[idx])
    t = solve_exhaustive(rec.target)
    assert t.is_yes and verify_witness(inst, pull_back_witness(rec, t.witness))


def test_derandomized_members():
    yes = TableGraph(2, (((1, 1), (2, 2)),), CLIQUE)
    recs = kkclique_to_perm_derandomized(yes, build_family(2, "linear"))
    assert any(solve_exhaustive(r.target).is_yes for r in recs)
    no = TableGraph(2, (((1, 1), (1, 2)),), CLIQUE)
    assert all(solve_exhaustive(r.target).is_no for r in kkclique_to_perm_derandomized(no, build_family(2, "linear")))
    one = kkclique_to_perm_derandomized(TableGraph(1), build_family(1, "loglog"))
    assert len(one) == 1 and solve_exhaustive(one[0].target).is_yes


def test_family_tables_in_range():
    fam = build_family(3, "linear")
    arr = np.asarray(fam.functions)
    assert arr.min() >= 1 and arr.max() <= 4
