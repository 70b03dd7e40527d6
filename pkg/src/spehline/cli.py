"""Command-line surface.

Subcommands: ``diagram`` (render a shape or a superposed component),
``resolution`` and ``filtration`` (ledger listings), ``congruence``
(two-sided dataset comparison).  Exit codes are fixed for scripting:

    0  success / verdict equal
    1  verdict unequal
    2  inconsistent input (semantic invariant broken)
    64 usage error
    65 stratum index out of range
    66 schema violation in an input file
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .congruence import InconsistentDataError, theorem_check
from .diagrams import DiagramPoint, LocalComponent, constituent, diagram, superpose, trace_back
from .jsonio import (
    SchemaError,
    canonical_dumps,
    component_from_dict,
    dataset_from_dict,
    diagram_to_dict,
    ledger_listing_to_dict,
    verdict_to_dict,
)
from .ledger import (
    GlobalContext,
    InvariantViolation,
    filtration_graded,
    generic_infinitesimal,
    resolution_terms,
)
from .render import ascii_diagram, svg_diagram
from .zline import InertialCuspidal

EX_OK = 0
EX_UNEQUAL = 1
EX_INCONSISTENT = 2
EX_USAGE = 64
EX_STRATUM = 65
EX_SCHEMA = 66


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 64 instead of argparse's default 2
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        raise SystemExit(EX_USAGE)
    except json.JSONDecodeError as exc:
        print(f"error: {path} is not valid JSON: {exc}", file=sys.stderr)
        raise SystemExit(EX_SCHEMA)


def _load_config(args) -> dict:
    config = {}
    if getattr(args, "config", None):
        config = _load_json(args.config)
    return config


def _context_from(args, parser: _Parser) -> GlobalContext:
    config = _load_config(args)
    d = args.d if args.d is not None else config.get("d")
    g = args.g if args.g is not None else config.get("g")
    e_pi = args.e_pi if args.e_pi is not None else config.get("e_pi", 1)
    kappa = args.kappa if args.kappa is not None else config.get("kappa", "1")
    pi_id = args.pi_id if args.pi_id is not None else config.get("pi_id", "pi")
    if d is None or g is None:
        parser.error("d and g are required (flags or config file)")
    if not (d >= g >= 1):
        print(f"error: need d >= g >= 1, got d={d}, g={g}", file=sys.stderr)
        raise SystemExit(EX_INCONSISTENT)
    kappa = Fraction(str(kappa))
    if kappa <= 0:
        print(f"error: kappa must be positive, got {kappa}", file=sys.stderr)
        raise SystemExit(EX_INCONSISTENT)
    pi = InertialCuspidal(id=pi_id, g=g, e_pi=e_pi)
    return GlobalContext(d=d, pi=pi, kappa=kappa)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -------------------------------------------------------------------- commands


def cmd_diagram(args, parser: _Parser) -> int:
    if args.at_r is not None and not args.component:
        parser.error("--at-r needs a --component file")
    if args.component:
        obj = _load_json(args.component)
        try:
            component = component_from_dict(obj)
        except SchemaError as exc:
            print(f"schema error: {exc}", file=sys.stderr)
            return EX_SCHEMA
        if args.at_r is not None:
            return _print_constituents(component, args.at_r)
        diag = superpose(component)
    else:
        if args.s is None or args.t is None:
            parser.error("either --component or both --s and --t are required")
        diag = diagram(args.s, args.t)

    if args.format == "json":
        _emit(canonical_dumps(diagram_to_dict(diag)) + "\n", args.out)
    elif args.format == "svg":
        _emit(svg_diagram(diag), args.out)
    else:
        _emit(ascii_diagram(diag, show_counts=args.component is not None), args.out)
    return EX_OK


def _print_constituents(component: LocalComponent, r: int) -> int:
    p = DiagramPoint(r, 0)
    diag = superpose(component)
    if p not in diag.points:
        print(f"no support at {p}", file=sys.stderr)
        return EX_INCONSISTENT
    for k in diag.factors_at(p):
        label = constituent(component, p, k)
        origin = trace_back(component, p, k)
        source = f"comes from {origin}" if origin else "no higher origin"
        t_k, _ = component.factor(k)
        print(f"{p} factor {k} (t={t_k}): {label.product_str()}  <- {source}")
    return EX_OK


def cmd_ledger(args, parser: _Parser, which: str) -> int:
    ctx = _context_from(args, parser)
    if not 1 <= args.t <= ctx.s_g:
        print(
            f"error: t={args.t} outside 1..s_g={ctx.s_g} for d={ctx.d}, g={ctx.g}",
            file=sys.stderr,
        )
        return EX_STRATUM
    inf = generic_infinitesimal(ctx, args.t)
    try:
        if which == "resolution":
            terms = resolution_terms(ctx, args.t, inf)
        else:
            terms = filtration_graded(ctx, args.t, inf)
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_INCONSISTENT
    if args.format == "json":
        listing = ledger_listing_to_dict(ctx.d, ctx.g, args.t, terms)
        _emit(canonical_dumps(listing) + "\n", args.out)
    else:
        lines = [
            f"{term.kind} h={term.stratum} sign={term.sign:+d} "
            f"xi={term.xi_power} tate={term.tate} deg={term.degree(ctx.g)} "
            f":: {term.infinitesimal}"
            for term in terms
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return EX_OK


def cmd_congruence(args, parser: _Parser) -> int:
    obj_a = _load_json(args.dataset_a)
    obj_b = _load_json(args.dataset_b)
    try:
        ds_a = dataset_from_dict(obj_a)
        ds_b = dataset_from_dict(obj_b)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EX_SCHEMA
    except (InconsistentDataError, ValueError) as exc:
        print(f"inconsistent input: {exc}", file=sys.stderr)
        return EX_INCONSISTENT
    try:
        verdict = theorem_check(
            ds_a, ds_a.context.pi, ds_b, ds_b.context.pi, args.r, args.s
        )
    except (InconsistentDataError, ValueError) as exc:
        print(f"inconsistent input: {exc}", file=sys.stderr)
        return EX_INCONSISTENT
    report = canonical_dumps(verdict_to_dict(verdict))
    _emit(report + "\n", args.report)
    if args.report:
        print("equal" if verdict.equal else "unequal")
    for warning in verdict.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return verdict.exit_code


# ---------------------------------------------------------------------- parser


def build_parser() -> _Parser:
    parser = _Parser(prog="spehline", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_diag = sub.add_parser("diagram", help="render a support diagram")
    p_diag.add_argument("--s", type=int, default=None, help="row count")
    p_diag.add_argument("--t", type=int, default=None, help="row length")
    p_diag.add_argument("--component", default=None, help="local component JSON file")
    p_diag.add_argument(
        "--at-r", type=int, default=None, help="list constituents at (r, 0)"
    )
    p_diag.add_argument(
        "--format", choices=("ascii", "json", "svg"), default="ascii"
    )
    p_diag.add_argument(
        "--ascii", dest="format", action="store_const", const="ascii"
    )
    p_diag.add_argument("--json", dest="format", action="store_const", const="json")
    p_diag.add_argument("--svg", dest="format", action="store_const", const="svg")
    p_diag.add_argument("--out", default=None, help="write output to a file")

    for name in ("resolution", "filtration"):
        p = sub.add_parser(name, help=f"list the {name} terms at stratum t")
        p.add_argument("--d", type=int, default=None)
        p.add_argument("--g", type=int, default=None)
        p.add_argument("--t", type=int, required=True)
        p.add_argument("--e-pi", dest="e_pi", type=int, default=None)
        p.add_argument("--pi-id", dest="pi_id", default=None)
        p.add_argument("--kappa", default=None)
        p.add_argument("--config", default=None, help="JSON config file")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--json", dest="format", action="store_const", const="json")
        p.add_argument("--out", default=None)

    p_cong = sub.add_parser("congruence", help="compare two datasets")
    p_cong.add_argument("dataset_a")
    p_cong.add_argument("dataset_b")
    p_cong.add_argument("--r", type=int, required=True)
    p_cong.add_argument("--s", type=int, required=True)
    p_cong.add_argument("--report", default=None, help="write the JSON report here")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "diagram":
        return cmd_diagram(args, parser)
    if args.command in ("resolution", "filtration"):
        return cmd_ledger(args, parser, args.command)
    if args.command == "congruence":
        return cmd_congruence(args, parser)
    parser.error(f"unknown command {args.command!r}")
    return EX_USAGE


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
