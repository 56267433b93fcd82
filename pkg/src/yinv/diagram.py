"""Marked graph diagrams as planar-diagram codes.

A diagram is a list of 4-valent nodes whose slots carry edge labels listed
counterclockwise, plus a count of free (node-less) circles.

Node kinds:

``X[a,b,c,d]``
    classical crossing, the strand a-c passes under b-d.
``V[a,b,c,d]``
    virtual crossing, a-c and b-d simply pass through each other.
``M[a,b,c,d]``
    marked vertex whose marker separates {a,b} from {c,d}. The positive
    (``T_inf``) smoothing joins a-b and c-d, the negative (``T_0``) one joins
    a-d and b-c.

An orientation records, for every edge, the slot occurrence it points into
(its head).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

__all__ = [
    "Node",
    "MarkedGraphDiagram",
    "LinkDiagram",
    "DiagramError",
    "DomainError",
    "ParseError",
    "T_INF",
    "T_ZERO",
    "parse_diagram",
    "serialize",
    "to_json",
    "from_json",
    "load_diagram",
    "validate",
    "resolve",
    "resolve_state",
    "smooth_vertex",
    "components",
    "trace_orientation",
    "crossing_sign",
    "writhe",
    "self_writhe",
    "is_admissible_heuristic",
    "orient_by_propagation",
    "mirror",
    "disjoint_union",
    "connected_sum",
    "relabel",
    "canonical_relabel",
]

KINDS = ("X", "V", "M")
SLOT_LETTERS = "abcd"
T_INF = "inf"
T_ZERO = "0"

Occ = tuple  # (node index, slot index)


class DiagramError(ValueError):
    """Bad diagram data (validation, missing orientation, bad state)."""


class DomainError(ValueError):
    """Input is well formed but outside an operation's domain."""


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Node:
    kind: str
    slots: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DiagramError(f"unknown node kind {self.kind!r}")
        if len(self.slots) != 4:
            raise DiagramError(f"{self.kind} node needs 4 slots, got {len(self.slots)}")
        object.__setattr__(self, "slots", tuple(int(s) for s in self.slots))

    def __str__(self) -> str:
        return f"{self.kind}[{','.join(map(str, self.slots))}]"


@dataclass(frozen=True)
class MarkedGraphDiagram:
    nodes: tuple = ()
    free_loops: int = 0
    # sorted tuple of (edge, (node, slot)) pairs naming each edge's head
    orientation: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if self.free_loops < 0:
            raise DiagramError("free_loops must be non-negative")
        if self.orientation is not None and not isinstance(self.orientation, tuple):
            o = self.orientation
            items = o.items() if isinstance(o, Mapping) else o
            object.__setattr__(
                self, "orientation",
                tuple(sorted((int(e), (int(h[0]), int(h[1]))) for e, h in items)),
            )

    # -- queries -------------------------------------------------------
    @property
    def oriented(self) -> bool:
        return self.orientation is not None

    @property
    def heads(self) -> dict:
        if self.orientation is None:
            raise DomainError("diagram has no orientation")
        return dict(self.orientation)

    def occurrences(self) -> dict:
        occ: dict[int, list] = {}
        for i, n in enumerate(self.nodes):
            for s, e in enumerate(n.slots):
                occ.setdefault(e, []).append((i, s))
        return occ

    def edges(self) -> list:
        return sorted({e for n in self.nodes for e in n.slots})

    def marked_vertices(self) -> list:
        return [i for i, n in enumerate(self.nodes) if n.kind == "M"]

    def crossings(self) -> list:
        return [i for i, n in enumerate(self.nodes) if n.kind == "X"]

    def max_label(self) -> int:
        return max((e for n in self.nodes for e in n.slots), default=0)

    def forget_orientation(self) -> "MarkedGraphDiagram":
        return type(self)(self.nodes, self.free_loops, None)

    def with_orientation(self, heads: Mapping) -> "MarkedGraphDiagram":
        return type(self)(self.nodes, self.free_loops, dict(heads))

    def is_link(self) -> bool:
        return not self.marked_vertices()

    def __str__(self) -> str:
        return serialize(self)


class LinkDiagram(MarkedGraphDiagram):
    """A diagram with no marked vertices."""

    def __post_init__(self):
        super().__post_init__()
        if any(n.kind == "M" for n in self.nodes):
            raise DiagramError("a link diagram cannot contain marked vertices")


def as_link(D: MarkedGraphDiagram) -> LinkDiagram:
    if isinstance(D, LinkDiagram):
        return D
    return LinkDiagram(D.nodes, D.free_loops, D.orientation)


# ----------------------------------------------------------------------
# text and JSON formats

_ATOM = re.compile(r"([XVM])\[\s*([^\]]*)\]|O\b|orient\s*:")
_ORIENT_ITEM = re.compile(r"(\d+)\s*->\s*(\d+)\s*([abcd])")


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def parse_diagram(text: str) -> MarkedGraphDiagram:
    """Parse the text code; a leading ``{`` switches to the JSON form."""
    if text.lstrip().startswith("{"):
        return from_json(text)
    # blank out comments but keep offsets for error positions
    clean = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
    nodes: list[Node] = []
    loops = 0
    orient: Optional[dict] = None
    pos = 0
    while pos < len(clean):
        if clean[pos].isspace():
            pos += 1
            continue
        m = _ATOM.match(clean, pos)
        if not m:
            raise ParseError(f"unexpected {clean[pos:pos + 12].split()[0]!r}", *_line_col(clean, pos))
        tok = m.group(0)
        if tok.startswith("orient"):
            if orient is not None:
                raise ParseError("duplicate orient block", *_line_col(clean, pos))
            orient, pos = _parse_orient(clean, m.end())
            continue
        if tok == "O":
            loops += 1
        else:
            raw = [s.strip() for s in m.group(2).split(",")]
            if len(raw) != 4:
                raise ParseError(f"{m.group(1)} node needs 4 labels, got {len(raw)}", *_line_col(clean, pos))
            try:
                labels = [int(s) for s in raw]
            except ValueError:
                raise ParseError(f"non-integer edge label in {tok!r}", *_line_col(clean, pos)) from None
            if min(labels) <= 0:
                raise ParseError("edge labels must be positive", *_line_col(clean, pos))
            nodes.append(Node(m.group(1), tuple(labels)))
        pos = m.end()
    D = MarkedGraphDiagram(tuple(nodes), loops, orient)
    _check_arity(D)
    return D


def _parse_orient(text: str, pos: int) -> tuple[dict, int]:
    heads: dict[int, tuple] = {}
    while True:
        while pos < len(text) and (text[pos].isspace() or text[pos] == ","):
            pos += 1
        m = _ORIENT_ITEM.match(text, pos)
        if not m:
            break
        e = int(m.group(1))
        if e in heads:
            raise ParseError(f"edge {e} oriented twice", *_line_col(text, pos))
        heads[e] = (int(m.group(2)), SLOT_LETTERS.index(m.group(3)))
        pos = m.end()
    return heads, pos


def _check_arity(D: MarkedGraphDiagram) -> None:
    # a label seen once is left for validate(); more than twice cannot be an arc
    for e, occ in D.occurrences().items():
        if len(occ) > 2:
            raise ParseError(f"edge {e} occurs {len(occ)} times", 1, 1)


def serialize(D: MarkedGraphDiagram) -> str:
    parts = [str(n) for n in D.nodes] + ["O"] * D.free_loops
    out = " ".join(parts)
    if D.orientation is not None:
        items = ", ".join(f"{e}->{n}{SLOT_LETTERS[s]}" for e, (n, s) in D.orientation)
        out += ("\n" if out else "") + "orient: " + items
    return out


def to_json(D: MarkedGraphDiagram) -> str:
    doc = {
        "nodes": [{"kind": n.kind, "slots": list(n.slots)} for n in D.nodes],
        "free_loops": D.free_loops,
    }
    if D.orientation is not None:
        doc["orientation"] = {str(e): [n, SLOT_LETTERS[s]] for e, (n, s) in D.orientation}
    return json.dumps(doc, sort_keys=True)


def from_json(text: str) -> MarkedGraphDiagram:
    try:
        doc = json.loads(text)
        nodes = tuple(Node(d["kind"], tuple(d["slots"])) for d in doc.get("nodes", []))
        orient = doc.get("orientation")
        if orient is not None:
            orient = {int(e): (int(v[0]), SLOT_LETTERS.index(v[1])) for e, v in orient.items()}
        D = MarkedGraphDiagram(nodes, int(doc.get("free_loops", 0)), orient)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        line, col = (exc.lineno, exc.colno) if isinstance(exc, json.JSONDecodeError) else (1, 1)
        raise ParseError(f"bad JSON diagram: {exc}", line, col) from None
    _check_arity(D)
    return D


def load_diagram(path: str) -> MarkedGraphDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


# ----------------------------------------------------------------------
# validation

def _slot_in(D: MarkedGraphDiagram, heads: Mapping, n: int, s: int) -> bool:
    return heads.get(D.nodes[n].slots[s]) == (n, s)


def validate(D: MarkedGraphDiagram) -> list[str]:
    problems: list[str] = []
    occ = D.occurrences()
    for e in sorted(occ):
        if e <= 0:
            problems.append(f"edge {e} is not a positive label")
        k = len(occ[e])
        if k != 2:
            problems.append(f"edge {e} occurs {k} time{'s' if k != 1 else ''}")
    if D.orientation is None or problems:
        return problems
    heads = D.heads
    for e in sorted(occ):
        if e not in heads:
            problems.append(f"edge {e} has no orientation")
        elif heads[e] not in occ[e]:
            problems.append(f"edge {e} head {heads[e]} is not one of its ends")
    for e in heads:
        if e not in occ:
            problems.append(f"orientation names unknown edge {e}")
    if problems:
        return problems
    for i, n in enumerate(D.nodes):
        ins = [_slot_in(D, heads, i, s) for s in range(4)]
        if n.kind in ("X", "V"):
            for s in (0, 1):
                if ins[s] == ins[s + 2]:
                    problems.append(
                        f"node {i} {n}: strand {SLOT_LETTERS[s]}-{SLOT_LETTERS[s + 2]} "
                        f"needs one inflow and one outflow"
                    )
        else:
            # in/out alternate around an oriented marked vertex, so each side
            # of the marker carries one incoming and one outgoing edge
            if not (ins[0] == ins[2] and ins[1] == ins[3] and ins[0] != ins[1]):
                pattern = "".join("i" if b else "o" for b in ins)
                problems.append(f"node {i} {n}: orientation pattern {pattern} is not an oriented marked vertex")
    return problems


def require_valid(D: MarkedGraphDiagram) -> None:
    problems = validate(D)
    if problems:
        raise DiagramError("; ".join(problems))


# ----------------------------------------------------------------------
# smoothing

_JOINS = {T_INF: ((0, 1), (2, 3)), T_ZERO: ((0, 3), (1, 2))}


class _DSU:
    __slots__ = ("p",)

    def __init__(self):
        self.p = {}

    def find(self, a):
        p = self.p
        p.setdefault(a, a)
        root = a
        while p[root] != root:
            root = p[root]
        while p[a] != root:
            p[a], a = root, p[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.p[rb] = ra


def _apply_joins(D: MarkedGraphDiagram, joins: Mapping[int, Sequence[tuple]], cls=None) -> MarkedGraphDiagram:
    """Remove the nodes in ``joins``; each pair of slots listed is spliced."""
    cls = cls or type(D)
    dsu = _DSU()
    for e in D.edges():
        dsu.find(e)
    for i, pairs in joins.items():
        sl = D.nodes[i].slots
        for s, t in pairs:
            dsu.union(sl[s], sl[t])
    keep = [i for i in range(len(D.nodes)) if i not in joins]
    index = {old: new for new, old in enumerate(keep)}
    remaining: dict[int, list] = {}
    for i in keep:
        for s, e in enumerate(D.nodes[i].slots):
            remaining.setdefault(dsu.find(e), []).append((i, s))
    roots = {dsu.find(e) for e in D.edges()}
    loops = D.free_loops + sum(1 for r in roots if r not in remaining)
    nodes = tuple(Node(D.nodes[i].kind, tuple(dsu.find(e) for e in D.nodes[i].slots)) for i in keep)
    orient = None
    if D.orientation is not None:
        heads = D.heads
        orient = {}
        for r, occs in remaining.items():
            hs = [o for o in occs if heads.get(D.nodes[o[0]].slots[o[1]]) == o]
            if len(hs) != 1:
                raise DiagramError(f"smoothing is not orientation-coherent along edge {r}")
            orient[r] = (index[hs[0][0]], hs[0][1])
    return cls(nodes, loops, orient)


def _state_map(D: MarkedGraphDiagram, state) -> dict[int, str]:
    mv = D.marked_vertices()
    if isinstance(state, Mapping):
        st = {int(k): v for k, v in state.items()}
    else:
        st = dict(zip(mv, state))
        if len(list(state)) != len(mv):
            raise DiagramError("state must assign a smoothing to every marked vertex")
    if sorted(st) != mv:
        raise DiagramError("state must assign a smoothing to every marked vertex")
    for k, v in st.items():
        if v not in _JOINS:
            raise DiagramError(f"unknown smoothing {v!r} at vertex {k}")
    return st


def resolve_state(D: MarkedGraphDiagram, state) -> LinkDiagram:
    """Smooth each marked vertex as the state says (``T_INF`` or ``T_ZERO``)."""
    st = _state_map(D, state)
    return _apply_joins(D, {i: _JOINS[v] for i, v in st.items()}, LinkDiagram)


def resolve(D: MarkedGraphDiagram, r: str) -> LinkDiagram:
    """``r`` is ``"positive"`` (all ``T_inf``) or ``"negative"`` (all ``T_0``)."""
    if r not in ("positive", "negative", "+", "-"):
        raise DiagramError(f"resolution must be positive or negative, got {r!r}")
    v = T_INF if r in ("positive", "+") else T_ZERO
    return resolve_state(D, {i: v for i in D.marked_vertices()})


def smooth_vertex(D: MarkedGraphDiagram, vertex: int, smoothing: str) -> MarkedGraphDiagram:
    if D.nodes[vertex].kind != "M":
        raise DiagramError(f"node {vertex} is not a marked vertex")
    return _apply_joins(D, {vertex: _JOINS[smoothing]}, MarkedGraphDiagram)


# ----------------------------------------------------------------------
# components and orientations

def components(L: MarkedGraphDiagram) -> list[tuple]:
    """Strand components; free loops show up as empty tuples."""
    dsu = _DSU()
    for e in L.edges():
        dsu.find(e)
    for n in L.nodes:
        if n.kind == "M":
            raise DiagramError("components() needs a link diagram")
        a, b, c, d = n.slots
        dsu.union(a, c)
        dsu.union(b, d)
    groups: dict[int, list] = {}
    for e in L.edges():
        groups.setdefault(dsu.find(e), []).append(e)
    comps = sorted(tuple(sorted(g)) for g in groups.values())
    return comps + [()] * L.free_loops


def trace_orientation(L: MarkedGraphDiagram) -> dict:
    """Deterministic orientation of a link diagram.

    Each component starts at its smallest edge label, which points toward the
    first place that label is listed.
    """
    occ = L.occurrences()
    heads: dict[int, Occ] = {}
    for e in sorted(occ):
        if e in heads:
            continue
        cur = e
        head = occ[e][0]
        while cur not in heads:
            heads[cur] = head
            n, s = head
            t = (s + 2) % 4
            nxt = L.nodes[n].slots[t]
            o = occ[nxt]
            head = o[1] if o[0] == (n, t) else o[0]
            cur = nxt
    return heads


def crossing_sign(L: MarkedGraphDiagram, heads: Mapping, i: int) -> int:
    """Sign of crossing ``i``: under a->c with over b->d is -1."""
    n = L.nodes[i]
    if n.kind != "X":
        return 0
    under_ac = heads.get(n.slots[0]) == (i, 0)
    over_bd = heads.get(n.slots[1]) == (i, 1)
    return -1 if under_ac == over_bd else 1


def writhe(D: MarkedGraphDiagram) -> int:
    if D.orientation is None:
        raise DomainError("writhe needs an oriented diagram")
    require_valid(D)
    heads = D.heads
    return sum(crossing_sign(D, heads, i) for i in D.crossings())


def _self_crossing_sum(L: MarkedGraphDiagram) -> int:
    heads = trace_orientation(L)
    comp_of = {}
    for k, comp in enumerate(components(L)):
        for e in comp:
            comp_of[e] = k
    total = 0
    for i in L.crossings():
        a, b, _, _ = L.nodes[i].slots
        if comp_of[a] == comp_of[b]:
            total += crossing_sign(L, heads, i)
    return total


def self_writhe(D: MarkedGraphDiagram) -> Fraction:
    require_valid(D.forget_orientation())
    plus = _self_crossing_sum(resolve(D.forget_orientation(), "positive"))
    minus = _self_crossing_sum(resolve(D.forget_orientation(), "negative"))
    return Fraction(plus + minus, 2)


def orient_by_propagation(D: MarkedGraphDiagram, seeds: Mapping[int, Occ]) -> MarkedGraphDiagram:
    """Extend a partial orientation through the strand and vertex rules.

    Raises ``DiagramError`` on a conflict or if some edge stays undetermined.
    """
    occ = D.occurrences()
    heads: dict[int, Occ] = {}
    todo: list[tuple[int, Occ]] = list(seeds.items())

    def other(e, o):
        a, b = occ[e]
        return b if a == o else a

    while todo:
        e, h = todo.pop()
        if h not in occ.get(e, []):
            raise DiagramError(f"edge {e} has no end at {h}")
        if e in heads:
            if heads[e] != h:
                raise DiagramError(f"orientation conflict on edge {e}")
            continue
        heads[e] = h
        for (n, s), is_in in ((h, True), (other(e, h), False)):
            node = D.nodes[n]
            implied = []  # (slot, inflow?)
            if node.kind in ("X", "V"):
                implied.append(((s + 2) % 4, not is_in))
            else:
                implied += [((s + 2) % 4, is_in), ((s + 1) % 4, not is_in), ((s + 3) % 4, not is_in)]
            for t, t_in in implied:
                f = node.slots[t]
                todo.append((f, (n, t) if t_in else other(f, (n, t))))
    missing = [e for e in occ if e not in heads]
    if missing:
        raise DiagramError(f"orientation undetermined on edges {sorted(missing)}")
    return type(D)(D.nodes, D.free_loops, heads)


def is_admissible_heuristic(D: MarkedGraphDiagram) -> str:
    """Necessary-condition check: ``"no"``, ``"yes"`` or ``"unknown"``.

    A trivial k-component link has normalized bracket ``delta^(k-1)`` for any
    orientation, since its linking numbers vanish.
    """
    from .algebra import ALPHA, DELTA
    from .bracket import kauffman_bracket

    verdict = "yes"
    for r in ("positive", "negative"):
        L = resolve(D.forget_orientation(), r)
        k = len(components(L))
        heads = trace_orientation(L)
        w = sum(crossing_sign(L, heads, i) for i in L.crossings())
        if kauffman_bracket(L) != DELTA ** (k - 1) * ALPHA ** w:
            return "no"
        if L.crossings():
            verdict = "unknown"
    return verdict


# ----------------------------------------------------------------------
# structural helpers

def relabel(D: MarkedGraphDiagram, mapping: Mapping[int, int]) -> MarkedGraphDiagram:
    nodes = tuple(Node(n.kind, tuple(mapping[e] for e in n.slots)) for n in D.nodes)
    orient = None if D.orientation is None else {mapping[e]: h for e, h in D.orientation}
    return type(D)(nodes, D.free_loops, orient)


def canonical_relabel(D: MarkedGraphDiagram) -> MarkedGraphDiagram:
    """Relabel edges 1..k in order of first appearance."""
    mapping: dict[int, int] = {}
    for n in D.nodes:
        for e in n.slots:
            mapping.setdefault(e, len(mapping) + 1)
    return relabel(D, mapping)


def mirror(D: MarkedGraphDiagram) -> MarkedGraphDiagram:
    """Swap over and under at every classical crossing."""
    nodes = []
    remap: dict[tuple, tuple] = {}
    for i, n in enumerate(D.nodes):
        if n.kind == "X":
            a, b, c, d = n.slots
            nodes.append(Node("X", (b, c, d, a)))
            for s in range(4):
                remap[(i, s)] = (i, (s - 1) % 4)
        else:
            nodes.append(n)
    orient = None
    if D.orientation is not None:
        orient = {e: remap.get(h, h) for e, h in D.orientation}
    return type(D)(tuple(nodes), D.free_loops, orient)


def disjoint_union(D1: MarkedGraphDiagram, D2: MarkedGraphDiagram) -> MarkedGraphDiagram:
    off = D1.max_label()
    shift = len(D1.nodes)
    D2s = relabel(D2, {e: e + off for e in D2.edges()})
    nodes = D1.nodes + D2s.nodes
    orient = None
    if D1.orientation is not None and D2.orientation is not None:
        orient = dict(D1.orientation)
        orient.update({e: (n + shift, s) for e, (n, s) in D2s.orientation})
    cls = LinkDiagram if isinstance(D1, LinkDiagram) and isinstance(D2, LinkDiagram) else MarkedGraphDiagram
    return cls(nodes, D1.free_loops + D2.free_loops, orient)


def connected_sum(D1: MarkedGraphDiagram, e1: int, D2: MarkedGraphDiagram, e2: int) -> MarkedGraphDiagram:
    """Cut edge ``e1`` of D1 and ``e2`` of D2 and reconnect the four ends.

    With orientations the tail of each cut edge is joined to the head of the
    other, so the result stays coherently oriented.
    """
    U = disjoint_union(D1, D2)
    f2 = e2 + D1.max_label()
    occ = U.occurrences()
    if U.orientation is not None:
        h = U.heads
        h1 = h[e1]
        h2 = h[f2]
    else:
        h1 = occ[e1][1]
        h2 = occ[f2][1]
    # edge e1 keeps its tail and now ends at D2's old head; f2 likewise
    nodes = [list(n.slots) for n in U.nodes]
    nodes[h1[0]][h1[1]] = f2
    nodes[h2[0]][h2[1]] = e1
    new_nodes = tuple(Node(U.nodes[i].kind, tuple(s)) for i, s in enumerate(nodes))
    orient = None
    if U.orientation is not None:
        orient = dict(U.orientation)
        orient[e1] = h2
        orient[f2] = h1
    return type(U)(new_nodes, U.free_loops, orient)
