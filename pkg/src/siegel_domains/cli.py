"""Command-line front end.

Exit status: 0 on success, 1 when a verification row or the elimination
pattern fails, 2 on malformed input or an invalid domain.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .algebra import DomainError, GradedReport, report
from .catalog import (
    bound_scan,
    case_analysis,
    elimination_pattern_holds,
    named_domain,
    verify_paper,
)
from .cones import ConeError
from .hermitian import HermitianError
from .serialize import REPORT_SCHEMA, GRADES, InputError, ReportDocument, dumps, parse_domain_document

OK, MISMATCH, BAD_INPUT = 0, 1, 2


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit a machine-readable document")
    p.add_argument("--generators", action="store_true", help="include generator bases as vector fields")
    p.add_argument("--samples", type=int, default=8, metavar="N",
                   help="random interior points for the transitivity check (default 8)")
    p.add_argument("--seed", type=int, default=0, metavar="S", help="seed for every sampling step")
    p.add_argument("--no-validate", action="store_true", help="skip the Omega-Hermitian check")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="siegel", description="Exact automorphism algebras of Siegel domains.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("compute", parents=[common], help="report for a domain JSON document")
    p.add_argument("file", help="path to the document, or - for stdin")
    p = sub.add_parser("catalog", parents=[common], help="report for a named domain")
    p.add_argument("name")
    p.add_argument("params", nargs="*")
    sub.add_parser("verify-paper", parents=[common], help="recompute the classification table")
    p = sub.add_parser("bounds", parents=[common], help="elimination table of the quadratic bound")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int)
    p = sub.add_parser("case-analysis", parents=[common], help="replay the exclusion argument")
    p.add_argument("n", type=int)
    return parser


def format_report(r: GradedReport, doc: ReportDocument) -> str:
    lines = []
    if doc.name:
        lines.append(f"domain: {doc.name}")
    lines.append(f"cone: {r.cone}   n = {r.n}   k = {r.k}   m = {r.m}")
    lines.append(f"H: {r.validation}")
    dims = "  ".join(f"g_{g} = {v}" for g, v in zip(GRADES, r.dims))
    lines.append(f"dims: {dims}")
    lines.append(f"d = {r.d}   s = {r.s}   dim g(Omega) = {r.cone_algebra_dim}   "
                 f"dim G(Omega,H) = {r.stabilizer_dim}")
    h = r.homogeneity
    lines.append(f"homogeneity: {h.verdict} (orbit ranks {list(h.ranks)} at {len(h.points)} points)")
    lines.append("bound checks:")
    for b in r.bound_checks:
        mark = "ok  " if b.holds else "FAIL"
        lines.append(f"  [{mark}] {b.label}: {b.statement}   ({b.lhs} {b.relation} {b.rhs})")
    if doc.generators is not None:
        lines.append("generators:")
        for g, fields in zip(GRADES, doc.generators):
            lines.append(f"  grade {g}:")
            for f in fields:
                lines.append(f"    {f}")
    return "\n".join(lines) + "\n"


def _emit_report(domain, args, name, out) -> int:
    r = report(domain, samples=args.samples, seed=args.seed)
    doc = ReportDocument.from_report(r, domain.cone, name=name, generators=args.generators)
    out.write(dumps(doc.to_json()) if args.json else format_report(r, doc))
    return OK


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def cmd_compute(args, out) -> int:
    doc = parse_domain_document(_read(args.file))
    domain = doc.build(validate=not args.no_validate, seed=args.seed)
    name = doc.name if doc.name is None or not doc.params else f"{doc.name}({', '.join(doc.params)})"
    return _emit_report(domain, args, name, out)


def cmd_catalog(args, out) -> int:
    nd = named_domain(args.name, args.params, validate=not args.no_validate)
    return _emit_report(nd.spec, args, nd.label, out)


def cmd_verify(args, out) -> int:
    rows = verify_paper()
    passed = all(r.passed for r in rows)
    if args.json:
        out.write(dumps({
            "schema": REPORT_SCHEMA,
            "kind": "verification",
            "passed": passed,
            "rows": [{"group": r.group, "label": r.label, "quantity": r.quantity,
                      "relation": r.relation, "expected": str(r.expected),
                      "computed": str(r.computed), "passed": r.passed} for r in rows],
        }))
    else:
        group = None
        for r in rows:
            if r.group != group:
                group = r.group
                out.write(f"{group}\n")
            mark = "PASS" if r.passed else "FAIL"
            out.write(f"  [{mark}] {r.label}: {r.quantity} {r.relation} {r.expected} (computed {r.computed})\n")
        out.write(f"{sum(r.passed for r in rows)}/{len(rows)} rows pass\n")
    return OK if passed else MISMATCH


def cmd_bounds(args, out) -> int:
    if args.n_min < 4 or args.n_max < args.n_min:
        raise InputError("need 4 <= n_min <= n_max")
    rows = bound_scan(args.n_min, args.n_max)
    holds = elimination_pattern_holds(rows)
    if args.json:
        out.write(dumps({
            "schema": REPORT_SCHEMA,
            "kind": "bound-scan",
            "pattern_holds": holds,
            "rows": [{"n": str(r.n), "k": str(r.k), "rhs": str(r.rhs), "target": str(r.target),
                      "eliminated": r.eliminated} for r in rows],
        }))
    else:
        out.write(" n  k   bound  n^2-3  eliminated\n")
        for r in rows:
            out.write(f"{r.n:>2} {r.k:>2} {str(r.rhs):>7} {r.target:>6}  {'yes' if r.eliminated else 'no'}\n")
        out.write(f"k >= 4 excluded for n >= 5 and k = 3 for n >= 6: {'holds' if holds else 'FAILS'}\n")
    return OK if holds else MISMATCH


def cmd_cases(args, out) -> int:
    if args.n not in (4, 5):
        raise InputError("case analysis is available for n = 4 and n = 5")
    ca = case_analysis(args.n)
    if args.json:
        out.write(dumps({
            "schema": REPORT_SCHEMA,
            "kind": "case-analysis",
            "n": str(ca.n),
            "steps": [{"case": s.case, "subject": s.subject, "finding": s.finding,
                       "excluded": s.excluded} for s in ca.steps],
            "survivors": [{"domain": name, "d": str(d)} for name, d in ca.survivors],
        }))
    else:
        out.write(f"homogeneous Siegel domains with n = {ca.n} and d = {ca.n ** 2 - 3}\n")
        for s in ca.steps:
            verdict = "excluded" if s.excluded else "open"
            out.write(f"  {s.case:<4} {s.subject}: {s.finding} -> {verdict}\n")
        if ca.survivors:
            for name, d in ca.survivors:
                out.write(f"survivor: {name} with d = {d}\n")
        else:
            out.write("survivors: none\n")
    return OK


COMMANDS = {
    "compute": cmd_compute,
    "catalog": cmd_catalog,
    "verify-paper": cmd_verify,
    "bounds": cmd_bounds,
    "case-analysis": cmd_cases,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else BAD_INPUT
    if args.samples < 0:
        err.write("error: --samples must be non-negative\n")
        return BAD_INPUT
    try:
        return COMMANDS[args.command](args, out)
    except (InputError, DomainError, HermitianError, ConeError) as exc:
        err.write(f"error: {exc}\n")
        return BAD_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
