"""Command-line front end: ``qinfoloc {list,reduce,analyze,sweep,verify}``.

Subsets on the command line and in the ``subset`` report field are 1-based;
reports also carry the 0-based ``subset0``.  Exit codes: 0 success,
1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .codefile import CodeFile, CodeFileError, bundled_names, load_code
from .graphcode import CosetRep, EncodedCode, TrivialForm
from .infoloc import (
    Classification,
    Presence,
    SubsetReport,
    all_subsets,
    rep_order,
    rep_power,
    subset_info_group,
    sweep,
)
from .oracle import (
    ATOL,
    DEFAULT_DENSE_BUDGET,
    DenseBudgetError,
    DenseCode,
    check_budget,
    stabilizer_projector,
    verify_correctable_algebra,
    verify_encoding,
    verify_isomorphism,
    verify_type_presence,
)

SCHEMA = "qinfoloc.report/1"
TABLE_MEMBER_LIMIT = 64
DEFAULT_SWEEP_MAX_N = 16

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


# --------------------------------------------------------------------------
# serialization


def rep_to_json(rep: CosetRep) -> dict:
    return {"xi": list(rep.xi), "zeta": list(rep.zeta), "label": rep.label()}


def rep_from_json(obj: dict) -> CosetRep:
    return CosetRep(tuple(int(v) for v in obj["xi"]), tuple(int(v) for v in obj["zeta"]))


def subset_report_to_json(report: SubsetReport) -> dict:
    out = {
        "subset": list(report.subset_1based),
        "subset0": list(report.subset),
        "case": report.case(),
        "all_present": report.all_present,
        "all_absent": report.all_absent,
        "is_abelian": report.is_abelian,
        "K": report.K,
        "member_count": report.member_count,
        "generators": [rep_to_json(g) for g in report.generators],
        "members": [rep_to_json(m) for m in report.members],
        "N": str(report.N),
        "rank_pb": report.rank_pb,
        "stab_in_subset": report.stab_in_subset,
    }
    if report.classification:
        out["classification"] = [
            {**rep_to_json(r), "status": c.status.value, "power": c.power}
            for r, c in report.classification.items()
        ]
    return out


def subset_report_from_json(obj: dict) -> SubsetReport:
    classification = {
        rep_from_json(c): Classification(Presence(c["status"]), c["power"])
        for c in obj.get("classification", [])
    }
    return SubsetReport(
        subset=tuple(obj["subset0"]),
        K=obj["K"],
        members=[rep_from_json(m) for m in obj["members"]],
        member_count=obj["member_count"],
        generators=[rep_from_json(g) for g in obj["generators"]],
        all_present=obj["all_present"],
        all_absent=obj["all_absent"],
        is_abelian=obj["is_abelian"],
        classification=classification,
        N=Fraction(obj["N"]),
        rank_pb=obj["rank_pb"],
        stab_in_subset=obj["stab_in_subset"],
    )


def trivial_to_json(tr: TrivialForm) -> dict:
    return {
        "k": tr.k,
        "m": list(tr.m),
        "d": list(tr.d),
        "K": tr.K,
        "stabilizer_order": tr.stabilizer_order,
        "dropped_rows": [i + 1 for i in tr.dropped_rows],
        "warnings": list(tr.warnings),
    }


def encoding_to_json(code: EncodedCode) -> dict:
    def gates(gs):
        return [{**g.to_json(), "label": g.label()} for g in gs]

    return {"gates_w": gates(code.trivial.gates_w), "gates_u": gates(code.gates_u)}


def base_report(command: str, cf: CodeFile, code: EncodedCode) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "input": cf.to_json(),
        "trivial_form": trivial_to_json(code.trivial),
        "encoding": encoding_to_json(code),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


# --------------------------------------------------------------------------
# commands


def parse_subset(text: str, n: int) -> tuple[int, ...]:
    """'1,3,5' -> (0, 2, 4); an empty string is the empty subset."""
    text = text.strip()
    if not text:
        return ()
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"--subset: expected a comma-separated list of integers, got {text!r}") from None
    bad = [v for v in vals if not 1 <= v <= n]
    if bad:
        raise InputError(f"--subset: qudits {bad} outside 1..{n}")
    if len(set(vals)) != len(vals):
        raise InputError(f"--subset: repeated qudits in {text!r}")
    return tuple(sorted(v - 1 for v in vals))


def cmd_reduce(cf: CodeFile, code: EncodedCode, args) -> tuple[dict, int]:
    return base_report("reduce", cf, code), EXIT_OK


def cmd_analyze(cf: CodeFile, code: EncodedCode, args) -> tuple[dict, int]:
    if args.subset is None:
        raise InputError("analyze needs --subset")
    B = parse_subset(args.subset, code.n)
    rep = subset_info_group(code, B)
    report = base_report("analyze", cf, code)
    report["subsets"] = [subset_report_to_json(rep)]
    return report, EXIT_OK


def cmd_sweep(cf: CodeFile, code: EncodedCode, args) -> tuple[dict, int]:
    if code.n > args.max_n:
        raise InputError(f"sweep over n = {code.n} qudits exceeds --max-n {args.max_n}")
    if args.size is not None and not 0 <= args.size <= code.n:
        raise InputError(f"--size must lie in 0..{code.n}")
    result = sweep(code, args.size, workers=args.workers)
    report = base_report("sweep", cf, code)
    subsets = [subset_report_to_json(result.reports[B]) for B in sorted(result.reports, key=lambda b: (len(b), b))]
    counts = {"all_present": 0, "all_absent": 0, "partial": 0}
    for s in subsets:
        counts[s["case"]] += 1
    report["summary"] = {"subsets": len(subsets), **counts}
    report["duality_violations"] = [
        {"subset": [b + 1 for b in B], "complement": [b + 1 for b in Bc]} for B, Bc in result.duality_violations
    ]
    report["subsets"] = subsets
    return report, EXIT_OK if not result.duality_violations else EXIT_FAIL


def verify_subset(code: EncodedCode, dense: DenseCode, B: tuple[int, ...]) -> dict:
    rep = subset_info_group(code, B)
    symbolic = set(rep.members)
    dense_members = dense.members(B)
    iso = verify_isomorphism(dense, B, rep.members, rep.generators)
    alg = verify_correctable_algebra(dense, B, rep.members)
    presence_failures = []
    for r, c in rep.classification.items():
        member = c.status is Presence.PERFECT
        absent = c.status is Presence.ABSENT
        if not (member or absent):
            continue
        check = verify_type_presence(dense, r, B, member, absent)
        if not check.ok:
            presence_failures.append(r.label())
    N_ok = abs(iso.normalization - float(rep.N)) <= ATOL
    checks = {
        "membership": symbolic == dense_members,
        "product_rule": iso.max_product_error <= ATOL,
        "normalization": N_ok,
        "traced_projector": iso.projector_error <= ATOL and iso.projector_rank == rep.rank_pb,
        "faithful": iso.distinct,
        "type_presence": not presence_failures,
        "correctable_algebra": alg.dimension == rep.member_count and alg.max_commutator <= ATOL,
    }
    return {
        "subset": [b + 1 for b in B],
        "subset0": list(B),
        "member_count": rep.member_count,
        "dense_member_count": len(dense_members),
        "symbolic_only": [r.label() for r in sorted(symbolic - dense_members, key=lambda r: r.xi + r.zeta)],
        "dense_only": [r.label() for r in sorted(dense_members - symbolic, key=lambda r: r.xi + r.zeta)],
        "N": str(rep.N),
        "dense_N": round(iso.normalization, 9),
        "rank_pb": rep.rank_pb,
        "max_product_error": float(f"{iso.max_product_error:.3e}"),
        "commutant_dimension": alg.dimension,
        "type_presence_failures": presence_failures,
        "checks": checks,
        "passed": all(checks.values()),
    }


def refinement_summary(code: EncodedCode, rep: SubsetReport) -> list[dict]:
    """Types that are neither present nor absent, with the powers that are present."""
    out = []
    for r, c in rep.classification.items():
        if c.status is Presence.PARTIAL:
            order = rep_order(r, code.trivial)
            present = [k for k in range(1, order) if rep_power(r, k, code.trivial) in set(rep.members)]
            out.append({**rep_to_json(r), "order": order, "smallest_present_power": c.power, "present_powers": present})
    return out


def cmd_verify(cf: CodeFile, code: EncodedCode, args) -> tuple[dict, int]:
    try:
        check_budget(code.n, code.D, args.dense_budget)
    except DenseBudgetError as exc:
        raise InputError(str(exc)) from None
    dense = DenseCode(code, args.dense_budget)
    enc = verify_encoding(code, args.dense_budget)
    P = dense.projector()
    proj_err = float(abs(P - stabilizer_projector(code, args.dense_budget)).max())
    subsets = [parse_subset(args.subset, code.n)] if args.subset is not None else all_subsets(code.n, args.size, include_empty=args.size == 0)
    blocks = [verify_subset(code, dense, B) for B in subsets]
    refinements = []
    for B in subsets:
        rep = subset_info_group(code, B)
        ref = refinement_summary(code, rep)
        if ref:
            refinements.append({"subset": [b + 1 for b in B], "types": ref})
    passed = enc.ok and proj_err <= ATOL and all(b["passed"] for b in blocks)
    report = base_report("verify", cf, code)
    report["verification"] = {
        "dense_dimension": code.D**code.n,
        "encoding": {
            "max_deviation": float(f"{enc.max_deviation:.3e}"),
            "exponents_in_group": enc.exponents_in_group,
            "orthonormal": enc.orthonormal,
            "passed": enc.ok,
        },
        "projector_vs_stabilizer_sum": {"max_error": float(f"{proj_err:.3e}"), "passed": proj_err <= ATOL},
        "subsets": blocks,
        "partially_present_types": refinements,
        "passed": passed,
    }
    return report, EXIT_OK if passed else EXIT_FAIL


# --------------------------------------------------------------------------
# tables


def _table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header), fmt.format(*["-" * w for w in widths])]
    lines += [fmt.format(*[str(x) for x in r]) for r in rows]
    return "\n".join(line.rstrip() for line in lines)


def _subset_label(s: list[int]) -> str:
    return "{" + ",".join(str(v) for v in s) + "}"


def render_table(report: dict) -> str:
    inp, tr = report["input"], report["trivial_form"]
    out = [
        f"code: {inp['name'] or '(unnamed)'}  n={inp['n']}  D={inp['D']}",
        f"trivial form: m={tr['m']}  d={tr['d']}  K={tr['K']}  |S|={tr['stabilizer_order']}",
        "W gates: " + (" ".join(g["label"] for g in report["encoding"]["gates_w"]) or "(none)"),
        "U gates: " + (" ".join(g["label"] for g in report["encoding"]["gates_u"]) or "(none)"),
    ]
    out += [f"warning: {w}" for w in tr["warnings"]]
    if "subsets" in report:
        rows = [
            [_subset_label(s["subset"]), s["case"], s["member_count"], s["is_abelian"], s["N"], s["rank_pb"],
             ", ".join(g["label"] for g in s["generators"]) or "-"]
            for s in report["subsets"]
        ]
        out += ["", _table(rows, ["subset", "case", "members", "abelian", "N", "rank", "generators"])]
        if report["command"] == "analyze":
            s = report["subsets"][0]
            members = s["members"]
            shown = members[:TABLE_MEMBER_LIMIT]
            out += ["", f"members ({s['member_count']}):", "  " + " | ".join(m["label"] for m in shown)]
            if len(members) > TABLE_MEMBER_LIMIT:
                out.append(f"  ... {len(members) - TABLE_MEMBER_LIMIT} more; generators above")
            partial = [c for c in s.get("classification", []) if c["status"] == "partially_present"]
            if partial:
                rows = [[c["label"], c["power"]] for c in partial[:TABLE_MEMBER_LIMIT]]
                out += ["", "partially present types:", _table(rows, ["type", "smallest present power"])]
                if len(partial) > TABLE_MEMBER_LIMIT:
                    out.append(f"  ... {len(partial) - TABLE_MEMBER_LIMIT} more")
    if "summary" in report:
        sm = report["summary"]
        out += ["", f"{sm['subsets']} subsets: {sm['all_present']} all present, {sm['all_absent']} all absent, "
                f"{sm['partial']} partial; duality violations: {len(report['duality_violations'])}"]
    if "verification" in report:
        v = report["verification"]
        out += [
            "",
            f"dense dimension {v['dense_dimension']}",
            f"encoding: max deviation {v['encoding']['max_deviation']}  passed={v['encoding']['passed']}",
            f"projector vs stabilizer sum: {v['projector_vs_stabilizer_sum']['max_error']}  "
            f"passed={v['projector_vs_stabilizer_sum']['passed']}",
        ]
        rows = [
            [_subset_label(b["subset"]), b["member_count"], b["dense_member_count"], b["commutant_dimension"],
             b["N"], b["max_product_error"], "ok" if b["passed"] else
             "FAIL: " + ",".join(k for k, ok in b["checks"].items() if not ok)]
            for b in v["subsets"]
        ]
        out += ["", _table(rows, ["subset", "members", "dense", "commutant", "N", "product err", "result"])]
        for r in v["partially_present_types"]:
            for t in r["types"]:
                out.append(f"partially present in {_subset_label(r['subset'])}: {t['label']} "
                           f"(order {t['order']}, present powers {t['present_powers']})")
        out += ["", "verification " + ("passed" if v["passed"] else "FAILED")]
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("code", help="path to a JSON code file, or the name of a bundled example")
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--out", help="write the report to this path instead of stdout")
    common.add_argument("--dense-budget", type=int, default=DEFAULT_DENSE_BUDGET,
                        help="largest D^n the dense oracle may use (default %(default)s)")

    parser = argparse.ArgumentParser(prog="qinfoloc", description="Locate encoded information in additive graph codes.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list the bundled example codes")
    sub.add_parser("reduce", parents=[common], help="Smith reduction and encoding circuit")
    p = sub.add_parser("analyze", parents=[common], help="subset information group for one subset")
    p.add_argument("--subset", help="1-based comma-separated qudits, e.g. 1,3")
    p = sub.add_parser("sweep", parents=[common], help="analyze every subset (or every subset of one size)")
    p.add_argument("--size", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-n", type=int, default=DEFAULT_SWEEP_MAX_N)
    p = sub.add_parser("verify", parents=[common], help="check symbolic results against the dense oracle")
    p.add_argument("--subset")
    p.add_argument("--size", type=int)
    return parser


COMMANDS = {"reduce": cmd_reduce, "analyze": cmd_analyze, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.command == "list":
        print("\n".join(bundled_names()))
        return EXIT_OK
    try:
        cf = load_code(args.code)
        code = cf.encode()
        report, status = COMMANDS[args.command](cf, code, args)
    except (CodeFileError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(report) if args.format == "json" else render_table(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
