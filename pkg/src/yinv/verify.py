"""Self-checks behind ``yinv verify``.

Each suite returns a list of :class:`Check` records in a fixed order, so
reports are reproducible whatever the thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from . import catalog
from .algebra import DELTA, BracketPoly, parse_bracketpoly, parse_laurent, parse_multipoly
from .bracket import kauffman_bracket, kauffman_bracket_skein, ll, ll_normalized, normalized_bracket, thread_count
from .diagram import MarkedGraphDiagram, self_writhe, validate, writhe
from .evalring import K_invariant, closed_form, format_modular, parse_table_entry, reduce_mod
from .groebner import G16, buchberger, is_groebner_basis, kauffman_ideal, normal_form_invariant, reduce_basis
from .moves import MoveSite, apply_insertion, catalog_move_pairs, random_sequence

__all__ = ["Check", "groebner_checks", "golden_checks", "moves_checks", "SUITES", "entry_mode"]

N_RANGE = (2, 3, 4, 5)


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    ok: bool
    expected: str = ""
    got: str = ""

    def __post_init__(self):
        object.__setattr__(self, "expected", str(self.expected))
        object.__setattr__(self, "got", str(self.got))

    def line(self) -> str:
        head = f"{'PASS' if self.ok else 'FAIL'} {self.suite} {self.name}"
        if self.ok:
            return head
        return f"{head}: expected {self.expected}, got {self.got}"

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "ok": self.ok, "expected": self.expected, "got": self.got}


def _ordered_map(fn: Callable, items: Sequence) -> list:
    # pool.map keeps input order, so output never depends on scheduling
    workers = thread_count()
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def entry_mode(e: catalog.CatalogEntry) -> str:
    return "oriented" if e.oriented else "unoriented"


def groebner_checks() -> list[Check]:
    raw = buchberger(kauffman_ideal())
    basis = reduce_basis(raw)
    got = " ; ".join(str(g) for g in basis)
    want = " ; ".join(str(g) for g in reduce_basis(list(G16)))
    return [
        Check("groebner", "buchberger output is a Groebner basis", is_groebner_basis(raw), "True", str(is_groebner_basis(raw))),
        Check("groebner", "reduced basis", set(basis) == set(G16), want, got),
    ]


def _entry_checks(e: catalog.CatalogEntry) -> list[Check]:
    D, ex, out = e.diagram, e.expected, []

    def add(key: str, ok: bool, want, got):
        out.append(Check("golden", f"{e.name} {key}", ok, str(want), str(got)))

    problems = validate(D)
    add("valid", not problems, "no problems", "; ".join(problems) or "no problems")
    if "ll" in ex:
        got = ll(D)
        add("ll", got == parse_bracketpoly(ex["ll"]), ex["ll"], got)
    if "ll_normalized" in ex:
        got = ll_normalized(D)
        add("ll_normalized", got == parse_bracketpoly(ex["ll_normalized"]), ex["ll_normalized"], got)
    if "normalized_bracket" in ex:
        got = normalized_bracket(D)
        add("normalized_bracket", got == parse_laurent(ex["normalized_bracket"]), ex["normalized_bracket"], got)
    if "sw" in ex:
        got = self_writhe(D.forget_orientation())
        add("sw", got == ex["sw"], ex["sw"], got)
    if "writhe" in ex:
        got = writhe(D)
        add("writhe", got == ex["writhe"], ex["writhe"], got)
    if "normal_form" in ex:
        got = normal_form_invariant(D, entry_mode(e))
        add("normal_form", got == parse_multipoly(ex["normal_form"]), ex["normal_form"], got)
    if "K_closed" in ex:
        for n in N_RANGE:
            got = K_invariant(D, n, entry_mode(e))
            want = closed_form(ex["K_closed"], n)
            add(f"K n={n}", got == want, want, got)
    table = ex.get("table") or (catalog.get(ex["table_like"]).expected["table"] if "table_like" in ex else None)
    if table:
        for n, cell in zip(N_RANGE, table):
            got = format_modular(reduce_mod(K_invariant(D, n, entry_mode(e)), n))
            want = format_modular(parse_table_entry(cell, n))
            add(f"K_{2 * n - 1} table", got == want, f"{want} (printed {cell})", got)
    return out


def golden_checks(entries: Sequence[catalog.CatalogEntry] | None = None) -> list[Check]:
    entries = list(catalog.CATALOG if entries is None else entries)
    return [c for part in _ordered_map(_entry_checks, entries) for c in part]


# diagrams the random walks start from
WALK_START = ("0_1", "2^1_1", "2^{-1}_1", "6^{0,1}_1", "7^{0,-2}_1", "8_1", "3_1")


def _fingerprint(D: MarkedGraphDiagram, mode: str) -> tuple[str, ...]:
    nf = str(normal_form_invariant(D, mode))
    return (nf,) + tuple(format_modular(reduce_mod(K_invariant(D, n, mode), n)) for n in (2, 3))


def _walk(args: tuple[int, int]) -> Check:
    seed, length = args
    e = catalog.get(WALK_START[seed % len(WALK_START)])
    mode = entry_mode(e) if e.diagram.marked_vertices() else "unoriented"
    before = _fingerprint(e.diagram, mode)
    E, trail = e.diagram, []
    for site, E in random_sequence(e.diagram, seed, length):
        trail.append(str(site))
    after = _fingerprint(E, mode)
    name = f"walk seed={seed} {e.name} [{'; '.join(trail)}]"
    return Check("moves", name, before == after, " | ".join(before), " | ".join(after))


def moves_checks(seed: int = 0, count: int = 100, length: int = 3) -> list[Check]:
    out = _ordered_map(_walk, [(seed + k, length) for k in range(count)])
    x, y = BracketPoly.x(), BracketPoly.y()
    for e in (catalog.get("6^{0,1}_1"), catalog.get("8_1")):
        base = ll_normalized(e.diagram)
        edge = e.diagram.edges()[0]
        for move, factor in (("O6", DELTA * x + y), ("O6'", x + DELTA * y)):
            got = ll_normalized(apply_insertion(e.diagram, MoveSite(move, (edge,))))
            want = base * factor
            out.append(Check("moves", f"{move} factor on {e.name}", got == want, want, got))
        got = ll_normalized(apply_insertion(e.diagram, MoveSite("circle")))
        out.append(Check("moves", f"circle factor on {e.name}", got == base.scalar_mul(DELTA), base.scalar_mul(DELTA), got))
    for k, (D, E, move) in enumerate(catalog_move_pairs()):
        nd, ne = normal_form_invariant(D), normal_form_invariant(E)
        out.append(Check("moves", f"{move} pair {k} normal form", nd == ne, nd, ne))
        if move == "G5":
            out.append(Check("moves", f"{move} pair {k} ll", ll(D) == ll(E), ll(D), ll(E)))
        for n in N_RANGE:
            diff = format_modular(reduce_mod(K_invariant(E, n) - K_invariant(D, n), n))
            out.append(Check("moves", f"{move} pair {k} K_{2 * n - 1} difference", diff == "[0]", "[0]", diff))
    return out


def oracle_checks(diagrams: Sequence[tuple[str, MarkedGraphDiagram]]) -> list[Check]:
    out = []
    for name, D in diagrams:
        a, b = kauffman_bracket(D), kauffman_bracket_skein(D)
        out.append(Check("oracle", name, a == b, b, a))
    return out


SUITES = {
    "groebner": lambda seed: groebner_checks(),
    "golden": lambda seed: golden_checks(),
    "moves": lambda seed: moves_checks(seed),
}
