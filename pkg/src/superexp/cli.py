"""Command line front end: superexp {gen,reduce,solve,verify,fuzz,family,prob,bench}."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import harness, oracles
from .errors import SuperexpError
from .hashing import build_family
from .instances import parse_instance, parse_witness, serialize_instance, serialize_witness
from .reductions import RULE_NAMES, RULES, kkclique_to_perm_derandomized, recolor_with, sample_random_coloring

FUZZ_COLUMNS = (
    "rule", "trials", "agreements", "disagreements", "budget_exceeded", "audit_findings",
    "pullbacks", "pullbacks_ok", "pushes", "pushes_ok", "not_applicable",
)
COVERAGE_COLUMNS = ("k", "variant", "size", "descriptor_count", "covered", "total")
SIZE_KEYS = ("k", "n", "m", "p", "q", "L", "sigma", "d", "t", "kprime", "demands", "ell", "width")
AUDITED_RULES = {"permclique_to_chromatic"}


def _number(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


def _size_value(text: str):
    """'3' -> 3, '0.5' -> 0.5, '1,2,3' -> [1, 2, 3] (sampled per instance)."""
    parts = [_number(x) for x in text.split(",") if x]
    return parts if len(parts) > 1 else parts[0]


def _add_size_flags(p):
    for key in SIZE_KEYS:
        p.add_argument(f"--{key}", type=_size_value, default=None, help="value or comma-separated choices")
    p.add_argument("--row-restricted", action="store_true")


def _size_params(args) -> dict:
    out = {key: getattr(args, key) for key in SIZE_KEYS if getattr(args, key) is not None}
    if args.row_restricted:
        out["row_restricted"] = True
    if getattr(args, "variant", None):
        out["variant"] = args.variant
    return out


def _read(path):
    return Path(path).read_bytes()


def _write(path, data: bytes):
    if path in (None, "-"):
        sys.stdout.write(data.decode() + "\n")
    else:
        Path(path).write_bytes(data)


def cmd_gen(args) -> int:
    inst = harness.gen_random(args.problem, _size_params(args), args.seed)
    _write(args.out, serialize_instance(inst))
    return 0


def cmd_reduce(args) -> int:
    names = args.rule.split("+")
    if args.audited and len(names) > 1 and AUDITED_RULES & set(names):
        raise SystemExit(f"--audited: {sorted(AUDITED_RULES & set(names))} cannot be chained")
    cur = parse_instance(_read(args.inp))
    for name in names:
        if name == "recolor":
            rec = recolor_with(cur, sample_random_coloring(cur.k, args.seed))
        elif name == "derand_recolor":
            family = build_family(args.family or cur.k, args.variant)
            recs = kkclique_to_perm_derandomized(cur, family)
            if not 0 <= args.member < len(recs):
                raise SystemExit(f"member {args.member} outside 0..{len(recs) - 1}")
            rec = recs[args.member]
        elif name in RULES:
            rec = RULES[name](cur)
        else:
            raise SystemExit(f"unknown rule {name!r}; known: {', '.join(RULE_NAMES)}")
        cur = rec.target
    _write(args.out, serialize_instance(cur))
    return 0


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.inp))
    r = oracles.solve_exhaustive(inst, args.budget)
    print(json.dumps({"outcome": r.outcome, "nodes_explored": r.nodes_explored,
                      "wall_time": round(r.wall_time, 6)}))
    if r.is_yes and args.witness_out:
        _write(args.witness_out, serialize_witness(r.witness))
    return {oracles.YES: 0, oracles.NO: 1}.get(r.outcome, 2)


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.inp))
    w = parse_witness(_read(args.witness))
    ok = oracles.verify_witness(inst, w)
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def cmd_fuzz(args) -> int:
    if args.audited and "+" in args.rule and AUDITED_RULES & set(args.rule.split("+")):
        raise SystemExit("--audited: permclique_to_chromatic cannot be chained")
    report = harness.fuzz_equivalence(args.rule, _size_params(args), args.trials, args.seed, args.budget)
    summary = report.summary()
    if args.report:
        with open(args.report, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=FUZZ_COLUMNS)
            w.writeheader()
            w.writerow(summary)
    if args.replay:
        Path(args.replay).write_text(json.dumps(
            {"disagreements": report.disagreements, "audit_findings": report.audit_findings}, indent=1))
    print(json.dumps(summary))
    return 1 if report.disagreements else 0


def cmd_family(args) -> int:
    fam = build_family(args.k, args.variant)
    if args.out:
        Path(args.out).write_text(json.dumps(fam.to_json()))
    row = {"k": args.k, "variant": args.variant, "size": len(fam),
           "descriptor_count": fam.descriptor_count, "covered": "", "total": ""}
    if args.verify:
        row["covered"], row["total"] = fam.coverage()
    if args.coverage_csv:
        with open(args.coverage_csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=COVERAGE_COLUMNS)
            w.writeheader()
            w.writerow(row)
    print(json.dumps(row))
    return 0 if not args.verify or row["covered"] == row["total"] else 1


def cmd_prob(args) -> int:
    closed = harness.perm_success_closed_form(args.k)
    if args.exact:
        p = harness.estimate_perm_success_probability(args.k, "exact")
        print(json.dumps({"k": args.k, "exact": str(p), "closed_form": str(closed), "equal": p == closed}))
        return 0 if p == closed else 1
    est, se = harness.estimate_perm_success_probability(args.k, "montecarlo", args.samples, args.seed)
    z = (est - float(closed)) / se if se else 0.0
    print(json.dumps({"k": args.k, "estimate": est, "stderr": se, "closed_form": float(closed), "z": z}))
    return 0


def cmd_bench(args) -> int:
    rows = harness.bench_growth(args.problem, range(args.lo, args.hi + 1), args.budget,
                                args.repetitions, args.seed)
    fh = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=harness.BENCH_COLUMNS)
        w.writeheader()
        w.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="superexp")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="random instance")
    p.add_argument("--problem", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    _add_size_flags(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="apply a rule or a '+'-joined chain")
    p.add_argument("--rule", required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0, help="coloring seed for recolor")
    p.add_argument("--family", type=int, help="family order for derand_recolor")
    p.add_argument("--variant", default="loglog", choices=("loglog", "linear"))
    p.add_argument("--member", type=int, default=0)
    p.add_argument("--audited", action="store_true", help="refuse chains through audited rules")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="exit 0 yes, 1 no, 2 budget")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--budget", type=int, default=oracles.DEFAULT_BUDGET)
    p.add_argument("--witness-out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="exit 0 valid, 1 invalid")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", help="oracle-equivalence fuzzing")
    p.add_argument("--rule", required=True, choices=sorted(harness.FUZZ_SOURCES))
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=oracles.DEFAULT_BUDGET)
    p.add_argument("--report", help="summary CSV")
    p.add_argument("--replay", help="JSON with disagreement and audit records")
    p.add_argument("--audited", action="store_true")
    _add_size_flags(p)
    p.add_argument("--variant", choices=("loglog", "linear"))
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("family", help="coloring family descriptors and coverage")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--variant", default="loglog", choices=("loglog", "linear"))
    p.add_argument("--verify", action="store_true", help="exhaustive cactus-grid coverage")
    p.add_argument("--out", help="descriptor table JSON")
    p.add_argument("--coverage-csv")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("prob", help="recoloring success probability")
    p.add_argument("--k", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--samples", type=int, default=10 ** 6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("bench", help="solver growth table")
    p.add_argument("--problem", required=True, choices=harness.BENCH_PROBLEMS)
    p.add_argument("--from", dest="lo", type=int, required=True)
    p.add_argument("--to", dest="hi", type=int, required=True)
    p.add_argument("--budget", type=int, default=oracles.DEFAULT_BUDGET)
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SuperexpError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
