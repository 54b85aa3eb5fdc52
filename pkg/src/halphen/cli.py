"""Command-line front end: analyze one pencil file or verify the corpus.

Exit codes: 0 success; 1 corpus failures; 2 not a Halphen pencil / fixed
component; 3 unsupported field; 4 parse or I/O errors.
"""

from __future__ import annotations

import argparse
import fnmatch
import json
import sys
from fractions import Fraction

from .curve import SharedComponent, UnsupportedField
from .poly import PolynomialError
from .resolution import (
    FixedComponent, NotABasePoint, NotHalphen, ResolutionError,
    resolve_base_points, verify_halphen,
)
from . import corpus as corpusmod
from . import fiber as fib
from . import lct as lctmod


def _fmt_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def analyze_record(record) -> dict:
    """Full pipeline on one record; returns the report as plain data."""
    spec = record.spec()
    forest = resolve_base_points(spec)
    out = {
        "id": record.id,
        "field_d": record.field.d,
        "char_seq": list(forest.characteristic_sequence),
        "clusters": [
            {
                "base_point": repr(cl.base_point),
                "m_B": [p.m_B for p in cl.points],
                "d_B": [p.d_B for p in cl.points],
            }
            for cl in forest.clusters
        ],
        "halphen_checks": [
            {"name": h.name, "ok": h.ok, "detail": h.detail}
            for h in verify_halphen(forest)
        ],
    }
    fiber_div = fib.build_fiber(forest)
    graph = fib.dual_graph(fiber_div, forest)
    kt = fib.classify_kodaira(graph)
    out["fiber"] = kt.label
    out["n_F"] = fiber_div.n_components
    out["S_F"] = fiber_div.S_F
    out["M_F"] = fiber_div.M_F
    out["mult_seq"] = [[m, d] for m, d in record.B.multiplicity_sequence()]
    out["dual_graph"] = graph.to_dot()
    if record.pencil_kind == "halphen2":
        out["matrix"] = corpusmod.intersection_matrix(forest)
        mf = fib.multiple_fiber(forest)
        out["multiple_fiber"] = mf.kodaira.label
        out["n_E_minus_C"] = mf.n_absorbed
        glob = lctmod.lct_global(record.B, forest)
        lct_f = lctmod.lct_fiber(kt.label)
        lmc = lctmod.lct_multiple_cubic(record.C, spec.m)
        report = lctmod.LctReport(
            lct_B=glob.value, lct_F=lct_f,
            inv_MB=Fraction(1, record.B.max_multiplicity),
            M_B=record.B.max_multiplicity, M_F=fiber_div.M_F,
            reduced_B=record.B.is_reduced,
            reduced_F=all(c.mult == 1 for c in fiber_div.components),
            conditional=glob.conditional)
        verdicts = lctmod.verify_bounds(report, spec.m, lmc.value)
        out["lct_B"] = _fmt_fraction(glob.value)
        out["lct_B_conditional"] = glob.conditional
        out["lct_F"] = _fmt_fraction(lct_f)
        out["lct_mC"] = _fmt_fraction(lmc.value)
        out["M_B"] = record.B.max_multiplicity
        out["inequalities"] = [
            {"name": v.name, "holds": v.holds, "detail": v.detail}
            for v in verdicts
        ]
    return out


def _render_text(rep: dict) -> str:
    lines = [f"id: {rep['id']}"]
    lines.append(f"field: Q(sqrt({rep['field_d']}))" if rep["field_d"] != 1 else "field: Q")
    lines.append(f"fiber: {rep['fiber']}")
    lines.append(f"char_seq: ({','.join(map(str, rep['char_seq']))})")
    lines.append("mult_seq: " + ", ".join(f"{m}-{d}" for m, d in rep["mult_seq"]))
    lines.append(f"n_F: {rep['n_F']}  S_F: {rep['S_F']}  M_F: {rep['M_F']}")
    if "matrix" in rep:
        lines.append("matrix: " + "; ".join(" ".join(map(str, row)) for row in rep["matrix"]))
        lines.append(f"multiple_fiber: {rep['multiple_fiber']} (n_E\\C = {rep['n_E_minus_C']})")
        lines.append(f"lct_B: {rep['lct_B']}  lct_F: {rep['lct_F']}  lct_mC: {rep['lct_mC']}")
        for v in rep["inequalities"]:
            lines.append(f"  [{'ok' if v['holds'] else 'FAIL'}] {v['name']}")
    bad = [h for h in rep["halphen_checks"] if not h["ok"]]
    lines.append("halphen identities: " + ("all pass" if not bad else f"{len(bad)} FAIL"))
    for h in bad:
        lines.append(f"  FAIL {h['name']}: {h['detail']}")
    return "\n".join(lines)


def run_analyze(args) -> int:
    try:
        with open(args.pencil) as fh:
            record = corpusmod.load_example(fh.read())
    except (OSError, corpusmod.InvalidRecord, PolynomialError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    try:
        rep = analyze_record(record)
    except (NotHalphen, FixedComponent, NotABasePoint) as e:
        print(f"not a Halphen pencil: {e}", file=sys.stderr)
        return 2
    except (UnsupportedField,) as e:
        print(f"unsupported field: {e}", file=sys.stderr)
        return 3
    except (SharedComponent, ResolutionError, fib.ClassificationError) as e:
        print(f"analysis failed: {e}", file=sys.stderr)
        return 2
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(rep["dual_graph"] + "\n")
    if args.format == "json":
        print(json.dumps(rep, indent=2, sort_keys=True))
    else:
        print(_render_text(rep))
    return 0


def run_corpus(args) -> int:
    import os
    path = args.dir or corpusmod.default_corpus_dir()
    if not os.path.isdir(path):
        print(f"error: corpus directory {path} not found", file=sys.stderr)
        return 4
    try:
        records = corpusmod.load_corpus_dir(path)
    except (corpusmod.InvalidRecord, PolynomialError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    if args.filter:
        records = [r for r in records if fnmatch.fnmatch(r.id, args.filter)]
    reports = _run_many(records, args.jobs)
    summary = {"total": len(reports),
               "passed": sum(1 for r in reports if r.passed),
               "records": {}}
    for r in sorted(reports, key=lambda r: r.id):
        print(r.summary_line())
        summary["records"][r.id] = {
            "pass": r.passed,
            "failed_checks": r.failed_names(),
            "n_checks": len(r.checks),
        }
    print(f"{summary['passed']}/{summary['total']} records pass")
    if args.json_summary:
        with open(args.json_summary, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
    return 0 if summary["passed"] == summary["total"] else 1


def _run_many(records, jobs):
    if jobs and jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(corpusmod.verify_example, records))
    return [corpusmod.verify_example(r) for r in records]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="halphen",
        description="Resolve Halphen pencils of index two, classify their "
                    "Kodaira fibers, and compute log canonical thresholds.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    pa = sub.add_parser("analyze", help="analyze one pencil file")
    pa.add_argument("--pencil", required=True, help="record JSON file")
    pa.add_argument("--format", choices=("text", "json"), default="text")
    pa.add_argument("--dot", help="write the dual graph in DOT format")

    pc = sub.add_parser("corpus", help="corpus operations")
    csub = pc.add_subparsers(dest="corpus_cmd", required=True)
    pv = csub.add_parser("verify", help="verify every corpus record")
    pv.add_argument("--filter", help="glob on record ids")
    pv.add_argument("--jobs", type=int, default=1)
    pv.add_argument("--dir", help="corpus directory (default: packaged)")
    pv.add_argument("--json-summary", help="write machine summary JSON here")

    args = ap.parse_args(argv)
    if args.cmd == "analyze":
        return run_analyze(args)
    if args.cmd == "corpus" and args.corpus_cmd == "verify":
        return run_corpus(args)
    ap.error("unknown command")
    return 4


if __name__ == "__main__":
    raise SystemExit(main())
