"""Local surface-link move rewrites on diagram codes.

Insertion moves (kinks, pokes, marked kinks, extra circles) apply on any
edge.  The triangle move is found by pattern search.  The remaining moves
ship as fixed before/after pairs closed up into small diagrams.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Optional, Sequence

from .diagram import (
    DiagramError,
    MarkedGraphDiagram,
    Node,
    orient_by_propagation,
    require_valid,
)

__all__ = [
    "MoveError",
    "MoveSite",
    "INSERTION_MOVES",
    "apply_insertion",
    "apply_r3",
    "find_r3_sites",
    "r3_setup",
    "apply_move",
    "parse_move_script",
    "random_sites",
    "random_sequence",
    "catalog_move_pairs",
]

INSERTION_MOVES = ("O1+", "O1-", "O2", "O6", "O6'", "circle")
ALL_MOVES = INSERTION_MOVES + ("O3",)


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class MoveSite:
    move: str
    edges: tuple[int, ...] = ()
    nodes: tuple[int, ...] = ()

    def __post_init__(self):
        if self.move not in ALL_MOVES:
            raise MoveError(f"unknown move {self.move!r}")

    def __str__(self) -> str:
        parts = [self.move]
        parts += [f"e{e}" for e in self.edges]
        parts += [f"n{n}" for n in self.nodes]
        return " ".join(parts)


def parse_move_script(text: str) -> list[MoveSite]:
    """One move per line, e.g. ``O1+ e3``, ``O2 e1 e4``, ``O3 n0 n1 n2``, ``circle``."""
    sites = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        move, *args = line.split()
        edges, nodes = [], []
        for a in args:
            mo = re.fullmatch(r"([en])(\d+)", a)
            if not mo:
                raise MoveError(f"line {lineno}: bad argument {a!r}")
            (edges if mo.group(1) == "e" else nodes).append(int(mo.group(2)))
        sites.append(MoveSite(move, tuple(edges), tuple(nodes)))
    return sites


# --- insertion moves ---------------------------------------------------------

class _Builder:
    """Mutable copy of a diagram that can cut edges and add nodes."""

    def __init__(self, D: MarkedGraphDiagram):
        self.D = D
        self.slots = [list(n.slots) for n in D.nodes]
        self.kinds = [n.kind for n in D.nodes]
        self.free_loops = D.free_loops
        self.next = D.max_label() + 1
        self.seeds: dict[int, tuple[int, int]] = dict(D.heads) if D.oriented else {}

    def fresh(self) -> int:
        self.next += 1
        return self.next - 1

    def add(self, kind: str, slots: Sequence[int]) -> int:
        self.kinds.append(kind)
        self.slots.append(list(slots))
        return len(self.kinds) - 1

    def cut(self, e: int) -> tuple[int, int]:
        """Split edge ``e``; returns (tail piece, head piece) labels.

        The tail piece keeps the old label.  The caller attaches both pieces
        to new nodes and calls ``enter`` for the tail piece.
        """
        occ = self.D.occurrences().get(e)
        if not occ or len(occ) != 2:
            raise MoveError(f"edge {e} is not in the diagram")
        head = self.D.heads[e] if self.D.oriented else occ[1]
        out = self.fresh()
        n, s = head
        self.slots[n][s] = out
        if self.D.oriented:
            # the head piece keeps the old head end
            self.seeds[out] = head
            del self.seeds[e]
        return e, out

    def enter(self, e: int, node: int, slot: int) -> None:
        """Record that edge ``e`` points into ``(node, slot)``."""
        if self.D.oriented:
            self.seeds[e] = (node, slot)

    def build(self) -> MarkedGraphDiagram:
        nodes = tuple(Node(k, tuple(s)) for k, s in zip(self.kinds, self.slots))
        D = MarkedGraphDiagram(nodes, self.free_loops)
        if self.D.oriented:
            try:
                D = orient_by_propagation(D, self.seeds)
            except DiagramError as exc:
                raise MoveError(f"orientation does not extend: {exc}") from None
        return D


def _kink(D: MarkedGraphDiagram, e: Optional[int], kind: str, pattern: str) -> MarkedGraphDiagram:
    """Insert a one-node curl on edge ``e`` (or on a free loop if ``e`` is None).

    ``pattern`` "ab" joins the arc through slots 0,1 and the loop at 2,3;
    "ad" runs the arc through slots 0,3 with the loop at 1,2.
    """
    B = _Builder(D)
    loop = B.fresh()
    if e is None:
        if D.free_loops < 1:
            raise MoveError("no free loop to kink")
        B.free_loops -= 1
        arc = B.fresh()
        slots = (arc, arc, loop, loop) if pattern == "ab" else (arc, loop, loop, arc)
        n = B.add(kind, slots)
        B.enter(arc, n, 0)
        return B.build()
    tail, head = B.cut(e)
    slots = (tail, head, loop, loop) if pattern == "ab" else (tail, loop, loop, head)
    n = B.add(kind, slots)
    B.enter(tail, n, 0)
    return B.build()


def _poke(D: MarkedGraphDiagram, e: int, f: int) -> MarkedGraphDiagram:
    """Push a bight of edge ``f`` across edge ``e``: two new crossings, ``e`` under."""
    if e == f:
        raise MoveError("a poke needs two different edges")
    B = _Builder(D)
    e0, e2 = B.cut(e)
    f0, f2 = B.cut(f)
    e1, f1 = B.fresh(), B.fresh()
    n1 = B.add("X", (e0, f1, e1, f0))
    n2 = B.add("X", (e1, f1, e2, f2))
    B.enter(e0, n1, 0)
    B.enter(f0, n1, 3)
    return B.build()


def apply_insertion(D: MarkedGraphDiagram, site: MoveSite) -> MarkedGraphDiagram:
    """Apply an insertion move.  All new edges get fresh labels."""
    require_valid(D.forget_orientation())
    e = site.edges[0] if site.edges else None
    if site.move == "circle":
        return MarkedGraphDiagram(D.nodes, D.free_loops + 1, D.orientation)
    if site.move in ("O1+", "O1-"):
        if e is None and D.free_loops == 0:
            raise MoveError(f"{site.move} needs an edge")
        return _kink(D, e, "X", "ab" if site.move == "O1+" else "ad")
    if site.move in ("O6", "O6'"):
        if e is None:
            raise MoveError(f"{site.move} needs an edge")
        return _kink(D, e, "M", "ab" if site.move == "O6" else "ad")
    if site.move == "O2":
        if len(site.edges) != 2:
            raise MoveError("O2 needs two edges")
        return _poke(D, *site.edges)
    raise MoveError(f"{site.move} is not an insertion move")


# --- the triangle move ---------------------------------------------------------

# three strands crossing pairwise, as in the braid words s1 s2 s1 and s2 s1 s2.
# internal edges are q1 q2 r2 (left) and u2 u3 v2 (right); p1 p2 p3 enter and
# s1 s2 r3 (= v1 w2 w3) leave.
_R3_LEFT = (("p1", "p2", "q2", "q1"), ("q2", "p3", "r3", "r2"), ("q1", "r2", "s2", "s1"))
_R3_RIGHT = (("p2", "p3", "u3", "u2"), ("p1", "u2", "v2", "s1"), ("v2", "u3", "r3", "s2"))
_R3_INNER = {"q1", "q2", "r2", "u2", "u3", "v2"}


def _variants():
    for left, right in ((_R3_LEFT, _R3_RIGHT), (_R3_RIGHT, _R3_LEFT)):
        for reflect, flip in product((False, True), repeat=2):
            def tr(nodes):
                out = []
                for a, b, c, d in nodes:
                    s = (a, d, c, b) if reflect else (a, b, c, d)
                    if flip:
                        s = s[1:] + s[:1]
                    out.append(s)
                return tuple(out)
            yield tr(left), tr(right)


_R3_VARIANTS = tuple(_variants())


def _match(D: MarkedGraphDiagram, idx: Sequence[int], pattern) -> Optional[tuple[dict, dict]]:
    """Bind pattern variables to labels; also returns (node, slot) -> variable."""
    occ = D.occurrences()
    for rots in product((0, 2), repeat=3):
        env: dict[str, int] = {}
        where: dict[tuple[int, int], str] = {}
        ok = True
        for i, pat, r in zip(idx, pattern, rots):
            node = D.nodes[i]
            if node.kind != "X":
                return None
            slots = node.slots[r:] + node.slots[:r]
            for k, (var, lab) in enumerate(zip(pat, slots)):
                where[(i, (r + k) % 4)] = var
                if env.setdefault(var, lab) != lab:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        inner = [env[v] for v in env if v in _R3_INNER]
        outer = [env[v] for v in env if v not in _R3_INNER]
        if len(set(inner)) != 3 or set(inner) & set(outer):
            continue
        if any({n for n, _ in occ[lab]} - set(idx) for lab in inner):
            continue
        return env, where
    return None


def find_r3_sites(D: MarkedGraphDiagram) -> list[MoveSite]:
    xs = set(D.crossings())
    occ = D.occurrences()
    near: dict[int, set[int]] = {i: set() for i in xs}
    for ends in occ.values():
        ns = {n for n, _ in ends}
        if len(ns) == 2 and ns <= xs:
            a, b = ns
            near[a].add(b)
            near[b].add(a)
    sites = []
    for i in sorted(xs):
        for j in sorted(near[i]):
            for k in sorted(near[i] & near[j]):
                if not i < j < k:
                    continue
                if any(_match(D, trio, left) is not None for trio in permutations((i, j, k)) for left, _ in _R3_VARIANTS):
                    for trio in permutations((i, j, k)):
                        if any(_match(D, trio, left) is not None for left, _ in _R3_VARIANTS):
                            sites.append(MoveSite("O3", nodes=trio))
                            break
    return sites


def r3_setup(D: MarkedGraphDiagram, rng: random.Random, tries: int = 400) -> Optional[list[MoveSite]]:
    """Two pokes next to a crossing that leave a triangle; None if none found.

    Both pokes are ordinary second moves, so doing them and then the
    triangle move is a legal move sequence.
    """
    xs = D.crossings()
    if not xs:
        return None
    for _ in range(tries):
        c = rng.choice(xs)
        g = rng.choice(D.edges())
        e1 = rng.choice(D.nodes[c].slots)
        if e1 == g:
            continue
        first = MoveSite("O2", (e1, g) if rng.random() < 0.5 else (g, e1))
        try:
            D1 = apply_insertion(D, first)
        except MoveError:
            continue
        new = [x for x in D1.edges() if x > D.max_label()] + [g]
        e2 = rng.choice(D1.nodes[c].slots)
        h = rng.choice(new)
        if e2 == h:
            continue
        second = MoveSite("O2", (e2, h) if rng.random() < 0.5 else (h, e2))
        try:
            D2 = apply_insertion(D1, second)
        except MoveError:
            continue
        sites = [x for x in find_r3_sites(D2) if c in x.nodes]
        if sites:
            return [first, second, sites[0]]
    return None


def apply_r3(D: MarkedGraphDiagram, site: MoveSite) -> MarkedGraphDiagram:
    """Slide one strand across the crossing of the other two."""
    if site.move != "O3" or len(site.nodes) != 3:
        raise MoveError("O3 needs three node indices")
    idx = site.nodes
    if len(set(idx)) != 3 or any(not 0 <= i < len(D.nodes) for i in idx):
        raise MoveError("bad node indices")
    for left, right in _R3_VARIANTS:
        m = _match(D, idx, left)
        if m is None:
            continue
        env, where = m
        nxt = D.max_label() + 1
        for var in sorted({v for pat in right for v in pat} - set(env)):
            env[var] = nxt
            nxt += 1
        nodes = list(D.nodes)
        for i, pat in zip(idx, right):
            nodes[i] = Node("X", tuple(env[v] for v in pat))
        out = MarkedGraphDiagram(tuple(nodes), D.free_loops)
        if D.oriented:
            # outer edges keep their direction; a head inside the triangle
            # moves to wherever its pattern variable sits on the other side
            new_pos = {v: (i, k) for i, pat in zip(idx, right) for k, v in enumerate(pat)}
            seeds = {}
            for e, h in D.heads.items():
                if h not in where:
                    seeds[e] = h
                elif where[h] not in _R3_INNER:
                    seeds[e] = new_pos[where[h]]
            seeds = {e: h for e, h in seeds.items() if out.nodes[h[0]].slots[h[1]] == e}
            try:
                out = orient_by_propagation(out, seeds)
            except DiagramError as exc:
                raise MoveError(f"orientation does not extend: {exc}") from None
        return out
    raise MoveError(f"no triangle at nodes {idx}")


def apply_move(D: MarkedGraphDiagram, site: MoveSite) -> MarkedGraphDiagram:
    if site.move == "O3":
        return apply_r3(D, site)
    return apply_insertion(D, site)


# --- random sequences --------------------------------------------------------------

def random_sites(D: MarkedGraphDiagram, rng: random.Random, moves: Sequence[str] = ALL_MOVES) -> MoveSite:
    """Pick one applicable move at random."""
    edges = D.edges()
    while True:
        move = rng.choice(list(moves))
        if move == "circle":
            return MoveSite(move)
        if move == "O3":
            sites = find_r3_sites(D)
            if sites:
                return rng.choice(sites)
            continue
        if move in ("O1+", "O1-") and not edges:
            if D.free_loops:
                return MoveSite(move)
            continue
        if not edges:
            continue
        if move == "O2":
            if len(edges) < 2:
                continue
            return MoveSite(move, tuple(rng.sample(edges, 2)))
        return MoveSite(move, (rng.choice(edges),))


def random_sequence(D: MarkedGraphDiagram, seed: int, length: int = 3,
                    moves: Sequence[str] = ALL_MOVES) -> Iterator[tuple[MoveSite, MarkedGraphDiagram]]:
    """Seeded random walk of moves; yields each site with the diagram after it.

    When the triangle move is drawn and no triangle exists, two pokes that
    create one are made first.  If an oriented site fails to extend its
    orientation another site is drawn.
    """
    rng = random.Random(seed)
    for _ in range(length):
        for _attempt in range(50):
            move = rng.choice(list(moves))
            if move == "O3":
                sites = find_r3_sites(D)
                plan = [rng.choice(sites)] if sites else r3_setup(D, rng)
                if not plan:
                    continue
            else:
                plan = [random_sites(D, rng, [move])]
            try:
                steps = []
                E = D
                for site in plan:
                    E = apply_move(E, site)
                    steps.append((site, E))
            except MoveError:
                continue
            yield from steps
            D = E
            break
        else:
            return


# --- transcribed before/after pairs -----------------------------------------------

def _closed(rows: Sequence[tuple[str, Sequence[str]]], closure: Sequence[tuple[str, str]]) -> MarkedGraphDiagram:
    """Build a diagram from named tangle nodes, then close the boundary.

    ``closure`` pairs up boundary points; each pair becomes one edge.
    """
    alias = {}
    for a, b in closure:
        alias[b] = a
    labels: dict[str, int] = {}
    nodes = []
    for kind, pts in rows:
        slots = []
        for p in pts:
            p = alias.get(p, p)
            slots.append(labels.setdefault(p, len(labels) + 1))
        nodes.append(Node(kind, tuple(slots)))
    return MarkedGraphDiagram(tuple(nodes))


def _mirror_swap(rows):
    """Reflect a tangle left-right and switch every marker (a,b,c,d) -> (a,d,c,b)."""
    return [(k, (a, d, c, b)) for k, (a, b, c, d) in rows]


def _relabel_rows(rows, mapping):
    return [(k, tuple(mapping.get(p, p) for p in pts)) for k, pts in rows]


def catalog_move_pairs() -> list[tuple[MarkedGraphDiagram, MarkedGraphDiagram, str]]:
    """Before/after pairs for the moves without a generic rewrite.

    Boundary points are named by position; the same closure is used on both
    sides.  Interior edge names only need to be unique within one side.
    """
    pairs = []

    # Γ5: a crossing next to a vertex; the vertex moves to the other side
    g5_l = [("X", ("L1", "L2", "bot", "top")), ("M", ("R1", "top", "bot", "R2"))]
    g5_r = [("M", ("top", "L1", "L2", "bot")), ("X", ("top", "bot", "R2", "R1"))]
    close4 = [("L1", "R1"), ("L2", "R2")]
    pairs.append((_closed(g5_l, close4), _closed(g5_r, close4), "G5"))

    # Γ4 / Γ4': an arc slides over (under) a marked vertex
    g4_l = [("X", ("BL", "m", "vsw", "S1")), ("X", ("vse", "m", "BR", "S2")), ("M", ("TR", "TL", "vsw", "vse"))]
    g4_r = [("X", ("TL", "S1", "vnw", "m")), ("X", ("vne", "S2", "TR", "m")), ("M", ("vne", "vnw", "BL", "BR"))]
    g4p_l = [("X", ("S1", "BL", "m", "vsw")), ("X", ("m", "BR", "S2", "vse")), ("M", ("TR", "TL", "vsw", "vse"))]
    g4p_r = [("X", ("S1", "vnw", "m", "TL")), ("X", ("m", "vne", "S2", "TR")), ("M", ("vne", "vnw", "BL", "BR"))]
    close6 = [("TL", "S1"), ("BL", "BR"), ("S2", "TR")]
    pairs.append((_closed(g4_l, close6), _closed(g4_r, close6), "G4"))
    pairs.append((_closed(g4p_l, close6), _closed(g4p_r, close6), "G4'"))

    # Γ7: two vertices on a 3-tangle; bottom P1 P3 P6, top P2 P4 P5
    g7_l = [("M", ("P2", "P1", "P3", "e")), ("M", ("P5", "P4", "e", "P6"))]
    flip7 = {"P1": "P6", "P6": "P1", "P2": "P5", "P5": "P2"}
    g7_r = _relabel_rows(_mirror_swap(g7_l), flip7)
    # the first two closures change <<.>> by a multiple of x*y, the last does not
    for closure in ([("P1", "P3"), ("P6", "P2"), ("P5", "P4")], [("P1", "P5"), ("P3", "P6"), ("P4", "P2")],
                    [("P1", "P3"), ("P2", "P4"), ("P5", "P6")]):
        pairs.append((_closed(g7_l, closure), _closed(g7_r, closure), "G7"))

    # Γ8: two vertices and four crossings on a 4-tangle; top T1..T4, bottom B1..B4
    g8_l = [
        ("M", ("T1", "b1", "a1", "T2")),
        ("M", ("T4", "T3", "d2", "c1")),
        ("X", ("a1", "d1", "a2", "d2")),
        ("X", ("b1", "B1", "b2", "d1")),
        ("X", ("b2", "B2", "B3", "c2")),
        ("X", ("a2", "c2", "B4", "c1")),
    ]
    flip8 = {"T1": "T4", "T4": "T1", "T2": "T3", "T3": "T2", "B1": "B4", "B4": "B1", "B2": "B3", "B3": "B2"}
    g8_r = _relabel_rows(_mirror_swap(g8_l), flip8)
    for closure in ([("T1", "B1"), ("T2", "B2"), ("T3", "B3"), ("T4", "B4")],
                    [("T1", "T4"), ("T2", "T3"), ("B4", "B1"), ("B3", "B2")],
                    [("T1", "B1"), ("T2", "T3"), ("B2", "B3"), ("T4", "B4")]):
        pairs.append((_closed(g8_l, closure), _closed(g8_r, closure), "G8"))

    for D, E, _ in pairs:
        require_valid(D)
        require_valid(E)
    return pairs
