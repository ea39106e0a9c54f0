"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 check failure or invalid design,
2 usage, file or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ryser.classify import classify
from ryser.design import (
    DesignFormatError,
    Invalid,
    Ryser,
    catalog,
    catalog_entry,
    complement,
    format_design,
    from_difference_set,
    parse_design,
    verify_design,
)
from ryser.linalg import (
    check_gram,
    gram_determinant,
    i_plus_r_inverse,
    incidence_matrix,
    r_matrix,
    rank_one_inverse_update,
    row_order,
    ryser_inverse,
    RationalMatrix,
)
from ryser.params import (
    InconsistencyError,
    block_signatures,
    check_identities,
    format_fraction,
    ryser_profile,
)
from ryser.scan import TABLE_HEADER, audit, scan_params, table_row

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_design(text)
    except (DesignFormatError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write(S, path: str | None, out) -> None:
    text = format_design(S)
    if path is None or path == "-":
        out.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _parse_ds(spec: str):
    try:
        v, points = spec.split(":", 1)
        return int(v), [int(p) for p in points.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"--ds expects v:p1,p2,..., got {spec!r}") from None


def _ryser(S, out):
    kind = verify_design(S)
    if not isinstance(kind, Ryser):
        out.write(f"{kind}\n")
        return None
    return ryser_profile(S)


def cmd_catalog(args, out):
    for e in catalog():
        base = ",".join(map(str, e.base_block))
        out.write(f"{e.name} v={e.v} k={e.expected_k} lambda={e.expected_lam_prime} base={base}\n")
    return EXIT_OK


def cmd_build(args, out):
    if (args.name is None) == (args.ds is None):
        raise UsageError("build needs exactly one of --name or --ds")
    if args.name is not None:
        try:
            S = catalog_entry(args.name).build()
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    else:
        v, base = _parse_ds(args.ds)
        try:
            S = from_difference_set(v, base)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    _write(S, args.output, out)
    return EXIT_OK


def cmd_complement(args, out):
    S = _read(args.input)
    try:
        T = complement(S, args.block)
    except (IndexError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _write(T, args.output, out)
    return EXIT_OK


def cmd_verify(args, out):
    kind = verify_design(_read(args.input))
    out.write(f"{kind}\n")
    return EXIT_FAIL if isinstance(kind, Invalid) else EXIT_OK


def cmd_params(args, out):
    S = _read(args.input)
    P = _ryser(S, out)
    if P is None:
        return EXIT_FAIL
    out.write("[profile]\n")
    for line in P.lines():
        out.write(line + "\n")
    out.write("E1=" + ",".join(map(str, P.E1)) + "\n")
    out.write("E2=" + ",".join(map(str, P.E2)) + "\n")
    out.write("[blocks]\n")
    for sig in block_signatures(S, P):
        out.write(f"block {sig.block_index}: size={sig.size} t={sig.t} tau1={sig.tau1} "
                  f"tau2={sig.tau2} {sig.kind}\n")
    out.write("[identities]\n")
    report = check_identities(S, P)
    for ident in report:
        out.write(f"{ident}\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_invert(args, out):
    S = _read(args.input)
    P = _ryser(S, out)
    if P is None:
        return EXIT_FAIL
    results = []
    gram = check_gram(S, P)
    results.append(("gram", gram.ok, "" if gram.ok else f"{gram.failed} at {gram.entry}"))
    closed, direct = gram_determinant(S, P)
    results.append(("det(A^T A)", closed == direct != 0,
                    f"closed={format_fraction(closed)} direct={format_fraction(direct)}"))
    R = r_matrix(P)
    miller = rank_one_inverse_update(RationalMatrix.identity(S.v), R)
    results.append(("(I+R)^-1 via rank-one update", miller == i_plus_r_inverse(P), ""))
    X = ryser_inverse(S, P)
    results.append(("A^-1 closed form", True, ""))
    results.append(("A^-1 = elimination inverse", X == incidence_matrix(S, P.E1).inverse(), ""))
    for name, ok, detail in results:
        out.write(f"{name}: {'pass' if ok else 'FAIL'}" + (f" ({detail})" if detail else "") + "\n")
    if args.dump:
        out.write("# rows: blocks 0..v-1; columns: points " +
                  " ".join(map(str, row_order(S, P.E1))) + "\n")
        out.write(X.dump())
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_FAIL


def cmd_classify(args, out):
    S = _read(args.input)
    P = _ryser(S, out)
    if P is None:
        return EXIT_FAIL
    report = classify(S, P)
    if args.json:
        out.write(json.dumps(report.to_record()) + "\n")
    else:
        out.write(report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_scan(args, out):
    if args.lam_max < 2:
        raise UsageError("--lam-max must be at least 2 (lambda = 1 is not scanned)")
    if args.r_max < 1:
        raise UsageError("--r-max must be at least 1")
    cands = scan_params(args.lam_max, args.r_max, args.type1_only, workers=args.workers)
    if not args.json:
        out.write(TABLE_HEADER + "\n")
    for c in cands:
        out.write((c.to_json() if args.json else table_row(c)) + "\n")
    problems = audit(cands)
    for p in problems:
        sys.stderr.write(f"audit: {p}\n")
    return EXIT_FAIL if problems else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ryser", description="Ryser design toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list built-in symmetric designs")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("build", help="write a symmetric design file")
    p.add_argument("--name", help="catalog design name")
    p.add_argument("--ds", metavar="V:P1,P2,...",
                   help="develop a difference set, e.g. 7:1,2,4")
    p.add_argument("-o", "--output", help="output .des file (default stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("complement", help="block complementation D*A")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--block", type=int, required=True, help="0-based block index")
    p.add_argument("-o", "--output", help="output .des file (default stdout)")
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("verify", help="classify as symmetric / Ryser / invalid")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("params", help="Ryser parameters, block signatures, identities")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("invert", help="closed-form incidence inverse and Gram checks")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--dump", action="store_true", help="print the inverse matrix")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("classify", help="Type-1 tests, necessary conditions, bounds")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--json", action="store_true", help="one JSON record instead of key=value")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", help="enumerate admissible (v, lambda, r, D)")
    p.add_argument("--lam-max", type=int, required=True, help="largest lambda (>= 2)")
    p.add_argument("--r-max", type=int, required=True, help="largest r = r1 - r2")
    p.add_argument("--type1-only", action="store_true", help="restrict to D in {0, -1}")
    p.add_argument("--json", action="store_true", help="JSON lines output")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_scan)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"ryser: error: {exc}\n")
        return EXIT_USAGE
    except InconsistencyError as exc:
        sys.stderr.write(f"ryser: internal check failed: {exc}\n")
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
