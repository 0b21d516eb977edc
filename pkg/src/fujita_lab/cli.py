"""``fujita-lab``: classify surface descriptions, print tables, run the oracle checks."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .engine import classify_many
from .errors import DomainError, FujitaError, SchemaError
from .lattice import as_fraction, encode_number, pair
from .oracles import DEFAULT_BUDGET, run_verification
from .riemann_roch import adjunction_genus, chi_of_class
from .schema import load_document
from .tables import TABLES, render
from .verdict import FujitaVerdict

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FAILED = 2
EXIT_OPEN = 3

BUDGET_ENV = "FUJITA_LAB_BUDGET"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT


def _format_verdict(v: FujitaVerdict, title: str | None = None) -> str:
    lines = []
    if title:
        lines.append(f"## {title}")
    if v.exact:
        lines.append(f"conFN = {v.lower}")
    else:
        lines.append(f"{v.lower} <= conFN <= {v.upper}")
    if v.conditional_on:
        lines.append("conditional on: " + "; ".join(v.conditional_on))
    lines.append("")
    for i, t in enumerate(v.trace, 1):
        lines.append(f"{i}. `{t.rule}`: {t.cite}")
        if t.witness is not None:
            lines.append(f"   witness: {json.dumps(t.to_dict()['witness'], ensure_ascii=False)}")
    return "\n".join(lines)


def cmd_classify(args) -> int:
    try:
        descriptions = load_document(args.file)
    except SchemaError as e:
        return _fail(str(e))
    try:
        models = [d.model for d in descriptions if d.model is not None]
        verdicts_iter = iter(classify_many(models, workers=args.workers))
        verdicts = [next(verdicts_iter) if d.model is not None else d.classify() for d in descriptions]
    except FujitaError as e:
        return _fail(str(e))
    if args.json:
        payload = [v.to_dict() for v in verdicts]
        print(json.dumps(payload[0] if len(payload) == 1 and not args.batch_output else payload,
                         ensure_ascii=False, indent=2))
    else:
        blocks = []
        for d, v in zip(descriptions, verdicts):
            title = d.model.name if d.model is not None else f"P(E), rank {d.profile.rank}"
            if d.where:
                title = f"{d.where}: {title}"
            blocks.append(_format_verdict(v, title))
        print("\n\n".join(blocks))
    return EXIT_OK if all(v.exact for v in verdicts) else EXIT_OPEN


def cmd_table(args) -> int:
    sys.stdout.write(render(args.name, args.format))
    return EXIT_OK


def _budget(args) -> int | None:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env is None:
        return DEFAULT_BUDGET
    try:
        return int(env)
    except ValueError:
        return None


def cmd_verify(args) -> int:
    budget = _budget(args)
    if budget is None:
        return _fail(f"{BUDGET_ENV} must be an integer")
    if budget < 1:
        return _fail("budget must be at least 1")
    report = run_verification(budget, mutate=args.mutate)
    for c in report.checks:
        status = "ok" if c.passed else "FAILED"
        print(f"{status:6s} {c.name} ({c.seconds:.2f}s): {c.detail}")
    failure = report.first_failure()
    if failure is not None:
        print(f"first counterexample ({failure.name}): {failure.counterexample!r}")
        return EXIT_FAILED
    print(f"all checks passed at budget {budget}")
    return EXIT_OK


def _parse_coords(text: str) -> list:
    try:
        return [as_fraction(c) for c in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot read class coordinates {text!r}; use e.g. 1,2 or 1/2,-3") from None


def cmd_rr(args) -> int:
    try:
        descriptions = load_document(args.file)
        if len(descriptions) != 1:
            raise SchemaError("rr takes a single description, not a batch", field="batch")
        model = descriptions[0].model
        if model is None:
            raise SchemaError("a projective bundle of rank other than 2 is not a surface", field="params.rank")
        s = model.numerics
        L = s.lattice.vector(*_parse_coords(args.class_coords))
    except FujitaError as e:
        return _fail(str(e))
    out = {
        "basis": list(s.lattice.basis_labels),
        "class": [encode_number(c) for c in L.coords],
        "L_sq": encode_number(pair(L, L)),
        "K_dot_L": encode_number(pair(s.canonical, L)),
        "chi": encode_number(chi_of_class(s, L)),
    }
    if L.is_integral:
        out["arithmetic_genus"] = encode_number(adjunction_genus(s, L))
    if model.has_ample_oracle:
        out["ample"] = model.is_ample(L)
    if args.json:
        print(json.dumps(out, ensure_ascii=False, indent=2))
    else:
        for k, v in out.items():
            print(f"{k}: {v}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fujita-lab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="classify the surfaces described in a JSON file")
    c.add_argument("file")
    c.add_argument("--json", action="store_true", help="print the verdict as JSON")
    c.add_argument("--workers", type=int, default=None, help="threads for batch files")
    c.add_argument("--batch-output", action="store_true",
                   help="always print a JSON list, even for a single description")
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("table", help="print one of the reproduced tables")
    t.add_argument("name", choices=sorted(TABLES))
    t.add_argument("--format", choices=["md", "csv"], default="md")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="cross-check closed forms against brute-force enumeration")
    v.add_argument("--budget", type=int, default=None,
                   help=f"box bound (default {DEFAULT_BUDGET}, or ${BUDGET_ENV})")
    v.add_argument("--mutate", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("rr", help="Riemann-Roch numbers of a class")
    r.add_argument("file")
    r.add_argument("--class", dest="class_coords", required=True,
                   help="comma-separated coordinates in the lattice basis")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_rr)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
