"""Command-line front end.

Usage examples::

    ucframes example24 --blocks 32 > ex24.json
    ucframes diagnose ex24.json --report report.json --spectrum-csv spectrum.csv
    ucframes gram ex24.json
    ucframes riesz system.json
    ucframes dual system.json --type 2
    ucframes gen --dim 4 --count 4 --seed 7 --mode riesz_spec

Exit codes: 0 success, 1 negative diagnostic verdict, 2 input/parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import linalg
from .battery import EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, _clean, run_battery, spectrum_csv
from .controlled import ControlledSystem, controlled_gram, gram_row_bound
from .errors import FrameError
from .generators import MODES, gen_example24, gen_random_system
from .io import dumps, encode_complex, read_document, system_to_document
from .riesz import ControlledRieszSpec, dual_type1, dual_type2, recover_m, riesz_diagnose


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _tol(args, doc) -> float:
    if args.tol is not None:
        return args.tol
    if doc is not None and doc.tol is not None:
        return doc.tol
    return linalg.TOL_POS


def _seed(args, doc):
    if args.seed is not None:
        return args.seed
    return None if doc is None else doc.seed


def cmd_diagnose(args) -> int:
    doc = read_document(args.file)
    report = run_battery(doc.system, _tol(args, doc), _seed(args, doc))
    report["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    _emit(json.dumps(report, indent=2) + "\n", args.report)
    if args.spectrum_csv:
        Path(args.spectrum_csv).write_text(spectrum_csv(doc.system), encoding="utf-8")
    if args.report:
        v = report["verdict"]
        print(f"negative verdicts: {', '.join(v['negative']) or 'none'}", file=sys.stderr)
    return report["verdict"]["exit_status"]


def cmd_gram(args) -> int:
    doc = read_document(args.file)
    g = controlled_gram(doc.system)
    out = _clean({
        "G": encode_complex(g.G),
        "op_norm": g.op_norm,
        "hs_norm": g.hs_norm,
        "trace_norm": g.trace_norm,
        "min_singular": g.min_singular,
        "row_bound": gram_row_bound(g),
        "singular_values": g.singular_values,
        "tolerance": _tol(args, doc),
    })
    _emit(json.dumps(out, indent=2) + "\n", args.report)
    return EXIT_OK


def cmd_riesz(args) -> int:
    doc = read_document(args.file)
    rz = riesz_diagnose(doc.system, _tol(args, doc))
    out = _clean({
        "L": rz.L,
        "P": rz.P,
        "complete": rz.complete,
        "gram_invertible": rz.gram_invertible,
        "is_controlled_riesz": rz.is_controlled_riesz,
        "recovered_M": None if rz.recovered_M is None else encode_complex(rz.recovered_M),
        "recovery_invertible": rz.recovery_invertible,
        "biorthogonality_defect": rz.biorthogonality_defect,
        "form_sampled": rz.form_sampled,
        "tolerance": rz.tolerance,
    })
    _emit(json.dumps(out, indent=2) + "\n", args.report)
    return EXIT_OK if rz.is_controlled_riesz else EXIT_NEGATIVE


def cmd_dual(args) -> int:
    doc = read_document(args.file)
    s = doc.system
    rz = riesz_diagnose(s, _tol(args, doc))
    if not rz.is_controlled_riesz:
        print("family is not a controlled Riesz basis; no dual emitted", file=sys.stderr)
        return EXIT_NEGATIVE
    spec = ControlledRieszSpec(s.U, s.C, recover_m(s))
    dual = dual_type1(spec) if args.type == 1 else dual_type2(spec)
    out = system_to_document(ControlledSystem(dual, s.U, s.C), doc.tolerances, doc.seed)
    _emit(dumps(out), args.report)
    return EXIT_OK


def cmd_example24(args) -> int:
    if args.blocks < 1:
        print("--blocks must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    tols = {"tol": args.tol} if args.tol is not None else None
    _emit(dumps(system_to_document(gen_example24(args.blocks), tols, args.seed)), args.report)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.dim < 1 or args.count < 1:
        print("--dim and --count must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    seed = 0 if args.seed is None else args.seed
    s = gen_random_system(args.dim, args.count, seed, args.mode)
    tols = {"tol": args.tol} if args.tol is not None else None
    _emit(dumps(system_to_document(s, tols, seed)), args.report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="Global tolerance override.")
    common.add_argument("--report", default=None, help="Write output here instead of stdout.")
    common.add_argument("--seed", type=int, default=None)

    ap = argparse.ArgumentParser(prog="ucframes", description="Controlled frame diagnostics.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagnose", parents=[common], help="Run the full diagnostic battery.")
    p.add_argument("file")
    p.add_argument("--spectrum-csv", default=None, help="Also write spectra as CSV.")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("gram", parents=[common], help="Controlled Gram matrix and its norms.")
    p.add_argument("file")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("riesz", parents=[common], help="Controlled Riesz basis diagnosis.")
    p.add_argument("file")
    p.set_defaults(func=cmd_riesz)

    p = sub.add_parser("dual", parents=[common], help="Emit a dual family as a system document.")
    p.add_argument("file")
    p.add_argument("--type", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("example24", parents=[common], help="Alternating-sign example, d = 2N.")
    p.add_argument("--blocks", type=int, required=True)
    p.set_defaults(func=cmd_example24)

    p = sub.add_parser("gen", parents=[common], help="Random system document.")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="general")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FrameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
