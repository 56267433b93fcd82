"""Command-line front end.

    yinv eval FILE|--catalog NAME --invariant ll [--oriented] ...
    yinv catalog list|show NAME|dump [NAME]
    yinv verify groebner|golden|moves|all [--seed S]
    yinv moves check FILE SCRIPT

Exit codes: 0 ok, 1 failed verification, 2 parse error, 3 invalid diagram or
unknown catalog name, 4 domain error.  Diagnostics go to stderr, one line.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import catalog
from .bracket import EVALUATORS, double_bracket, kauffman_bracket, ll, ll_normalized, normalized_bracket
from .diagram import (
    DiagramError,
    DomainError,
    MarkedGraphDiagram,
    ParseError,
    parse_diagram,
    require_valid,
    serialize,
    to_json,
)
from .evalring import EPSILONS, EvalError, K_invariant, format_modular, reduce_mod
from .groebner import normal_form_invariant
from .moves import MoveError, apply_move, parse_move_script
from .verify import SUITES, Check

INVARIANTS = ("bracket", "double", "ll", "ll-normalized", "normal-form", "K", "K-mod")

EXIT_FAIL, EXIT_PARSE, EXIT_INVALID, EXIT_DOMAIN = 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None


def _load(args) -> tuple[MarkedGraphDiagram, str]:
    if args.catalog:
        try:
            return catalog.get(args.catalog).diagram, f"catalog:{args.catalog}"
        except KeyError as exc:
            raise CliError(EXIT_INVALID, exc.args[0]) from None
    if not args.diagram:
        raise CliError(EXIT_PARSE, "give a diagram file or --catalog NAME")
    return parse_diagram(_read(args.diagram)), args.diagram


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def compute(D: MarkedGraphDiagram, invariant: str, *, oriented: bool = False, n: int = 2,
            t: Optional[Fraction] = None, epsilon: str = "pp", evaluator: str = "kauffman") -> str:
    """The canonical string for one invariant of ``D``."""
    if oriented and D.orientation is None:
        raise DomainError("--oriented needs a diagram with an orientation")
    require_valid(D)
    mode = "oriented" if oriented else "unoriented"
    E = EVALUATORS[evaluator]
    if invariant == "bracket":
        if D.marked_vertices():
            raise DomainError("bracket is defined for link diagrams; use double or ll")
        return str(normalized_bracket(D) if oriented else kauffman_bracket(D))
    if invariant == "double":
        return str(double_bracket(D, E))
    if invariant == "ll":
        return str(ll_normalized(D) if oriented else ll(D, E))
    if invariant == "ll-normalized":
        return str(ll_normalized(D))
    if invariant == "normal-form":
        return str(normal_form_invariant(D, mode))
    eps = EPSILONS[epsilon]
    if invariant == "K":
        return str(K_invariant(D, n if t is None else t, mode, eps))
    if invariant == "K-mod":
        if t is not None and t != n:
            raise DomainError("K-mod is taken at t = n")
        return format_modular(reduce_mod(K_invariant(D, n, mode, eps), n), with_modulus=True)
    raise DomainError(f"unknown invariant {invariant!r}")


def _emit(args, doc: dict, text: str) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print(text)


def cmd_eval(args) -> int:
    start = time.perf_counter()
    D, source = _load(args)
    value = compute(D, args.invariant, oriented=args.oriented, n=args.n, t=args.t,
                    epsilon=args.epsilon, evaluator=args.evaluator)
    doc = {
        "input": {"source": source, "invariant": args.invariant, "oriented": args.oriented, "n": args.n,
                  "t": None if args.t is None else str(args.t), "epsilon": args.epsilon,
                  "evaluator": args.evaluator},
        "result": value,
        "timing_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    _emit(args, doc, value)
    return 0


def _entry_doc(e: catalog.CatalogEntry) -> dict:
    return {
        "name": e.name,
        "description": e.description,
        "kind": e.kind,
        "oriented": e.oriented,
        "code": serialize(e.diagram),
        "diagram": json.loads(to_json(e.diagram)),
        "expected": e.expected,
    }


def cmd_catalog(args) -> int:
    try:
        if args.action == "list":
            for e in catalog.CATALOG:
                print(f"{e.name} {e.description}")
        elif args.action == "show":
            if not args.name:
                raise CliError(EXIT_INVALID, "catalog show needs a name")
            print(serialize(catalog.get(args.name).diagram))
        else:
            entries = [catalog.get(args.name)] if args.name else catalog.CATALOG
            print(json.dumps([_entry_doc(e) for e in entries], indent=2, sort_keys=True))
    except KeyError as exc:
        raise CliError(EXIT_INVALID, exc.args[0]) from None
    return 0


def cmd_verify(args) -> int:
    start = time.perf_counter()
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    checks: list[Check] = []
    for s in suites:
        checks += SUITES[s](args.seed)
    failed = sum(not c.ok for c in checks)
    doc = {
        "input": {"suite": args.suite, "seed": args.seed},
        "checks": [c.to_json() for c in checks],
        "passed": len(checks) - failed,
        "failed": failed,
        "timing_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    if args.suite in ("groebner", "all"):
        from .groebner import kauffman_basis

        doc["basis"] = [str(g) for g in kauffman_basis()]
    lines = [c.line() for c in checks]
    if "basis" in doc:
        lines += ["basis: " + ", ".join(doc["basis"])]
    lines.append(f"{'PASS' if not failed else 'FAIL'} {len(checks) - failed}/{len(checks)} checks")
    _emit(args, doc, "\n".join(lines))
    return EXIT_FAIL if failed else 0


_TRACKED = ("ll", "ll-normalized", "normal-form", "K-mod")


def cmd_moves_check(args) -> int:
    start = time.perf_counter()
    D = parse_diagram(_read(args.diagram))
    try:
        script = parse_move_script(_read(args.script))
    except MoveError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    E = D
    for site in script:
        try:
            E = apply_move(E, site)
        except MoveError as exc:
            raise CliError(EXIT_DOMAIN, f"{site}: {exc}") from None
    tracked = [inv for inv in _TRACKED if inv != "ll-normalized" or D.orientation is not None]
    rows = []
    for inv in tracked:
        for n in ((2, 3, 4, 5) if inv == "K-mod" else (2,)):
            oriented = D.orientation is not None and inv in ("normal-form", "K-mod")
            try:
                a = compute(D, inv, oriented=oriented, n=n)
                b = compute(E, inv, oriented=oriented, n=n)
            except (DomainError, EvalError) as exc:
                a = b = f"n/a ({exc})"
            label = f"K_{2 * n - 1}" if inv == "K-mod" else inv
            rows.append({"invariant": label, "before": a, "after": b, "changed": a != b})
    doc = {
        "input": {"diagram": args.diagram, "script": [str(s) for s in script]},
        "result": serialize(E),
        "invariants": rows,
        "timing_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    lines = [f"{'changed' if r['changed'] else 'same'} {r['invariant']}: {r['before']} -> {r['after']}" for r in rows]
    _emit(args, doc, "\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="yinv", description="Invariants of surface-links from marked graph diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="compute one invariant")
    ev.add_argument("diagram", nargs="?", help="diagram file ('-' for stdin)")
    ev.add_argument("--catalog", metavar="NAME")
    ev.add_argument("--invariant", choices=INVARIANTS, default="ll")
    ev.add_argument("--n", type=int, default=2)
    ev.add_argument("--t", type=_rational)
    ev.add_argument("--oriented", action="store_true")
    ev.add_argument("--epsilon", choices=sorted(EPSILONS), default="pp")
    ev.add_argument("--evaluator", choices=sorted(EVALUATORS), default="kauffman")
    ev.add_argument("--format", choices=("text", "json"), default="text")
    ev.set_defaults(func=cmd_eval)

    cat = sub.add_parser("catalog", help="built-in diagrams")
    cat.add_argument("action", choices=("list", "show", "dump"))
    cat.add_argument("name", nargs="?")
    cat.set_defaults(func=cmd_catalog)

    ver = sub.add_parser("verify", help="run self-checks")
    ver.add_argument("suite", choices=tuple(SUITES) + ("all",))
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--format", choices=("text", "json"), default="text")
    ver.set_defaults(func=cmd_verify)

    mv = sub.add_parser("moves", help="apply move scripts")
    mv_sub = mv.add_subparsers(dest="moves_command", required=True)
    chk = mv_sub.add_parser("check", help="report which invariants a move script changes")
    chk.add_argument("diagram")
    chk.add_argument("script")
    chk.add_argument("--format", choices=("text", "json"), default="text")
    chk.set_defaults(func=cmd_moves_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        code, msg = exc.code, str(exc)
    except ParseError as exc:
        code, msg = EXIT_PARSE, f"parse error: {exc}"
    except DiagramError as exc:
        code, msg = EXIT_INVALID, f"invalid diagram: {exc}"
    except (DomainError, EvalError, MoveError) as exc:
        code, msg = EXIT_DOMAIN, f"domain error: {exc}"
    print(f"yinv: {msg}".replace("\n", " "), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
