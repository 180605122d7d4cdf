import csv
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superexp import harness
from superexp.cli import COVERAGE_COLUMNS, FUZZ_COLUMNS, main
from superexp.errors import EnvelopeExceeded
from superexp.instances import (
    CLIQUE, PERM_CLIQUE, HittingSetInstance, TableGraph, parse_instance, serialize_instance,
)
from superexp.oracles import solve_exhaustive
from superexp.rng import derive_seed

import brute


# ---------------------------------------------------------------------------
# generators

def test_gen_deterministic():
    a = harness.gen_random("kk_clique", {"k": 3, "p": 0.5}, 1)
    b = harness.gen_random("kk_clique", {"k": 3, "p": 0.5}, 1)
    assert serialize_instance(a) == serialize_instance(b)


def test_gen_bpis_full():
    inst = harness.gen_random("bpis", {"k": 2, "p": 1.0}, 0)
    assert len(inst.edges) == 4 * 4
    for a, b in inst.edges:
        assert max(a) <= 2 and min(b) > 2


def test_gen_row_restricted():
    for seed in range(20):
        inst = harness.gen_random("hitting_set", {"k": 3, "m": 4, "row_restricted": True}, seed)
        assert len(inst.sets) == 4
        for s in inst.sets:
            rows = [i for i, _ in s]
            assert len(rows) == len(set(rows))


@pytest.mark.parametrize("problem", [
    "kk_clique", "kk_is", "kk_perm_clique", "kk_perm_is", "bpis", "sat3", "three_coloring",
    "hitting_set", "closest_string", "constrained_permutation", "distortion",
    "disjoint_paths", "directed_disjoint_paths", "chromatic",
])
def test_gen_round_trips(problem):
    inst = harness.gen_random(problem, {}, 7)
    assert parse_instance(serialize_instance(inst)) == inst


def test_gen_envelopes():
    with pytest.raises(EnvelopeExceeded):
        harness.gen_random("kk_clique", {"k": 9}, 0)
    with pytest.raises(EnvelopeExceeded):
        harness.gen_random("bpis", {"k": 5}, 0)
    with pytest.raises(EnvelopeExceeded):
        harness.gen_random("no_such_problem", {}, 0)


def test_gen_table_no_same_row_edges():
    inst = harness.gen_random("kk_clique", {"k": 4, "p": 1.0}, 3)
    assert all(a[0] != b[0] for a, b in inst.edges)
    assert len(inst.edges) == 16 * 12 // 2


# ---------------------------------------------------------------------------
# fuzzing

def test_fuzz_deterministic():
    a = harness.fuzz_equivalence("bpis_to_hs", None, 30, 5)
    b = harness.fuzz_equivalence("bpis_to_hs", None, 30, 5)
    assert a == b


@pytest.mark.parametrize("rule", sorted(harness.FUZZ_SOURCES))
def test_fuzz_report_consistent(rule):
    r = harness.fuzz_equivalence(rule, None, 15, 2)
    assert r.trials == 15 and r.consistent
    assert not r.disagreements
    assert r.pullbacks == r.pullbacks_ok and r.pushes == r.pushes_ok


def test_fuzz_unknown_rule():
    with pytest.raises(ValueError):
        harness.fuzz_equivalence("no_such_rule")


def test_chromatic_single_edge_audit():
    inst = TableGraph(2, (((1, 1), (2, 2)),), PERM_CLIQUE)
    r = harness.fuzz_instance("permclique_to_chromatic", inst)
    assert len(r.audit_findings) == 1 and not r.disagreements and r.consistent


def test_gadget_non_injective_audit():
    # only selection: both rows in column 1
    inst = HittingSetInstance(2, (((1, 1),), ((2, 1),)))
    r = harness.fuzz_instance("hs_to_ddp", inst)
    assert len(r.audit_findings) == 1 and not r.disagreements
    assert harness.injective_hitting_selection(inst) is None


def test_injective_selection():
    inst = HittingSetInstance(2, (((1, 2), (2, 2)), ((2, 1),)))
    assert harness.injective_hitting_selection(inst).rho == (2, 1)


def test_records_replay_from_seed():
    """Every stored record regenerates bit-exactly from its sub-seed."""
    problem, params = harness.FUZZ_SOURCES["permclique_to_chromatic"]
    r = harness.fuzz_equivalence("permclique_to_chromatic", None, 40, 3)
    assert r.audit_findings
    for rec in r.audit_findings:
        src = harness.gen_random(problem, params, rec["seed"])
        assert serialize_instance(src).decode() == rec["source"]
        assert rec["seed"] == derive_seed(3, rec["trial"])


# ---------------------------------------------------------------------------
# probability

def test_probability_k1():
    assert harness.estimate_perm_success_probability(1) == 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_probability_exact_matches_closed_form(k):
    assert harness.estimate_perm_success_probability(k) == harness.perm_success_closed_form(k)


def test_probability_k3_value():
    assert harness.perm_success_closed_form(3) == Fraction(384, 19683) == Fraction(128, 6561)


def test_probability_envelope():
    with pytest.raises(EnvelopeExceeded):
        harness.estimate_perm_success_probability(4, "exact")


def test_montecarlo_small():
    est, se = harness.estimate_perm_success_probability(2, "montecarlo", 20000, 3)
    assert abs(est - float(harness.perm_success_closed_form(2))) <= 4 * se


def test_exhaustive_recolor_no_instance():
    no = TableGraph(2, (), CLIQUE)
    checked, bad = harness.exhaustive_recolor_no_instances(no)
    assert (checked, bad) == (16, 0)


# ---------------------------------------------------------------------------
# benchmark

def test_bench_edgeless_monotone():
    rows = harness.bench_growth("kk_clique_edgeless", range(2, 7))
    nodes = [r["nodes_explored"] for r in rows]
    assert nodes == sorted(nodes)
    assert all(r["outcome"] == "no" for r in rows)
    assert set(rows[0]) == set(harness.BENCH_COLUMNS)


def test_bench_branching_vs_enum_same_outcome():
    a = harness.bench_growth("closest_string_branching", range(3, 6))
    b = harness.bench_growth("closest_string_enum", range(3, 6))
    assert [r["outcome"] for r in a] == [r["outcome"] for r in b]


# ---------------------------------------------------------------------------
# CLI

def test_cli_gen_solve_verify(tmp_path, capsys):
    f, w = tmp_path / "i.json", tmp_path / "w.json"
    assert main(["gen", "--problem", "hitting_set", "--k", "2", "--m", "2", "--q", "0.6",
                 "--seed", "4", "--out", str(f)]) == 0
    inst = parse_instance(f.read_bytes())
    code = main(["solve", "--in", str(f), "--witness-out", str(w)])
    assert code == (0 if brute.decide(inst) else 1)
    if code == 0:
        assert main(["verify", "--in", str(f), "--witness", str(w)]) == 0


def test_cli_solve_budget(tmp_path):
    f = tmp_path / "i.json"
    f.write_bytes(serialize_instance(harness.gen_random("kk_clique", {"k": 7, "p": 0.7}, 0)))
    assert main(["solve", "--in", str(f), "--budget", "5"]) == 2


def test_cli_reduce_chain(tmp_path):
    f, g = tmp_path / "i.json", tmp_path / "o.json"
    f.write_bytes(serialize_instance(HittingSetInstance(1, (((1, 1),),))))
    assert main(["reduce", "--rule", "hs_to_ddp+ddp_to_udp", "--in", str(f), "--out", str(g)]) == 0
    out = parse_instance(g.read_bytes())
    assert not out.directed and solve_exhaustive(out).is_yes


def test_cli_reduce_audited_refuses(tmp_path):
    f = tmp_path / "i.json"
    f.write_bytes(serialize_instance(TableGraph(2, (), PERM_CLIQUE)))
    with pytest.raises(SystemExit):
        main(["reduce", "--rule", "permclique_to_chromatic+complement", "--audited", "--in", str(f)])


def test_cli_reduce_derand_member(tmp_path):
    f, g = tmp_path / "i.json", tmp_path / "o.json"
    f.write_bytes(serialize_instance(TableGraph(2, (((1, 1), (2, 2)),), CLIQUE)))
    assert main(["reduce", "--rule", "derand_recolor", "--in", str(f), "--member", "1", "--out", str(g)]) == 0
    assert parse_instance(g.read_bytes()).permutation
    with pytest.raises(SystemExit):
        main(["reduce", "--rule", "derand_recolor", "--in", str(f), "--member", "99"])


def test_cli_fuzz_report(tmp_path, capsys):
    rep, rpl = tmp_path / "r.csv", tmp_path / "r.json"
    assert main(["fuzz", "--rule", "hs_to_cs", "--trials", "10", "--seed", "1",
                 "--report", str(rep), "--replay", str(rpl)]) == 0
    with open(rep) as fh:
        rows = list(csv.DictReader(fh))
    assert tuple(rows[0]) == FUZZ_COLUMNS and rows[0]["trials"] == "10"
    assert json.loads(rpl.read_text()) == {"disagreements": [], "audit_findings": []}


def test_cli_family(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert main(["family", "--k", "3", "--variant", "loglog", "--verify", "--coverage-csv", str(out)]) == 0
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    assert tuple(rows[0]) == COVERAGE_COLUMNS and rows[0]["covered"] == rows[0]["total"] == "27"


def test_cli_prob(capsys):
    assert main(["prob", "--k", "3", "--exact"]) == 0
    assert json.loads(capsys.readouterr().out)["exact"] == "128/6561"


def test_cli_bench(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--problem", "kk_clique_edgeless", "--from", "2", "--to", "4", "--csv", str(out)]) == 0
    with open(out) as fh:
        assert tuple(next(csv.reader(fh))) == harness.BENCH_COLUMNS


def test_cli_error_exit(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"format": "superexp-instance/v1", "type": "nonsense"}')
    assert main(["solve", "--in", str(f)]) == 3


# ---------------------------------------------------------------------------
# properties

@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(harness.FUZZ_SOURCES)), st.integers(0, 2 ** 32))
def test_gen_sources_valid_for_oracle(rule, seed):
    problem, params = harness.FUZZ_SOURCES[rule]
    inst = harness.gen_random(problem, params, seed)
    assert parse_instance(serialize_instance(inst)) == inst
