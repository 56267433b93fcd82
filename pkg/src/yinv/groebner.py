"""Buchberger's algorithm over Q[A, B, x, y] and the bracket ideal-coset invariant.

Everything here uses graded reverse lexicographic order with A > B > x > y.
Polynomials are immutable, so every function is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .algebra import MultiPoly, Monomial, grevlex_key, parse_multipoly, to_multipoly
from .diagram import MarkedGraphDiagram

__all__ = [
    "MonomialOrder",
    "GREVLEX",
    "Ideal",
    "reduce",
    "s_polynomial",
    "buchberger",
    "reduce_basis",
    "is_groebner_basis",
    "kauffman_ideal",
    "kauffman_basis",
    "G16",
    "normal_form_invariant",
    "GroebnerError",
]


class GroebnerError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    variables: tuple[str, ...] = ("A", "B", "x", "y")

    def key(self, m: Monomial):
        if self.kind != "grevlex":
            raise GroebnerError(f"unsupported order {self.kind!r}")
        return grevlex_key(m)


GREVLEX = MonomialOrder()


@dataclass(frozen=True)
class Ideal:
    generators: tuple[MultiPoly, ...]

    def __post_init__(self):
        if any(g.is_zero() for g in self.generators):
            raise GroebnerError("ideal generators must be nonzero")


def _divides(m: Monomial, n: Monomial) -> bool:
    return all(a <= b for a, b in zip(m, n))


def _lcm(m: Monomial, n: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(m, n))


def _quot(n: Monomial, m: Monomial) -> Monomial:
    return tuple(b - a for a, b in zip(m, n))


def _lead(f: MultiPoly, ord: MonomialOrder) -> tuple[Monomial, Fraction]:
    terms = f.terms
    m = max(terms, key=ord.key)
    return m, terms[m]


def reduce(f: MultiPoly, G: Sequence[MultiPoly], ord: MonomialOrder = GREVLEX) -> MultiPoly:
    """Full multivariate division of ``f`` by ``G``; returns the remainder.

    At each step the largest remaining term is divided by the first element
    of ``G`` whose leading monomial divides it, so the result depends on the
    listing of ``G`` unless ``G`` is a Gröbner basis.
    """
    heads = []
    for g in G:
        if g.is_zero():
            raise GroebnerError("cannot divide by the zero polynomial")
        heads.append((*_lead(g, ord), g))
    p = dict(f.terms)
    rem: dict[Monomial, Fraction] = {}
    while p:
        m = max(p, key=ord.key)
        c = p[m]
        for hm, hc, g in heads:
            if _divides(hm, m):
                q, k = _quot(m, hm), c / hc
                for gm, gc in g.terms.items():
                    t = tuple(a + b for a, b in zip(gm, q))
                    v = p.get(t, 0) - k * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[m] = c
            del p[m]
    return MultiPoly(rem)


def s_polynomial(f: MultiPoly, g: MultiPoly, ord: MonomialOrder = GREVLEX) -> MultiPoly:
    if f.is_zero() or g.is_zero():
        raise GroebnerError("S-polynomial of a zero polynomial")
    fm, fc = _lead(f, ord)
    gm, gc = _lead(g, ord)
    L = _lcm(fm, gm)
    return f.mul_term(_quot(L, fm), 1 / fc) - g.mul_term(_quot(L, gm), 1 / gc)


def _coprime(m: Monomial, n: Monomial) -> bool:
    return all(a == 0 or b == 0 for a, b in zip(m, n))


def buchberger(I: Ideal | Iterable[MultiPoly], ord: MonomialOrder = GREVLEX) -> list[MultiPoly]:
    """A Gröbner basis of the ideal, not yet reduced.

    Pairs are taken smallest lcm degree first.  A pair is skipped when its
    heads are coprime, or when some third element's head divides their lcm
    and both of its pairs with the two have already been dealt with.
    """
    gens = I.generators if isinstance(I, Ideal) else tuple(I)
    G: list[MultiPoly] = [g for g in gens if not g.is_zero()]
    heads = [_lead(g, ord)[0] for g in G]
    pairs = set(combinations(range(len(G)), 2))

    def key(p):
        L = _lcm(heads[p[0]], heads[p[1]])
        return (sum(L), ord.key(L), p)

    while pairs:
        pair = min(pairs, key=key)
        pairs.discard(pair)
        i, j = pair
        L = _lcm(heads[i], heads[j])
        if _coprime(heads[i], heads[j]):
            continue
        if any(
            k not in pair
            and _divides(heads[k], L)
            and tuple(sorted((i, k))) not in pairs
            and tuple(sorted((j, k))) not in pairs
            for k in range(len(G))
        ):
            continue
        r = reduce(s_polynomial(G[i], G[j], ord), G, ord)
        if not r.is_zero():
            G.append(r)
            heads.append(_lead(r, ord)[0])
            n = len(G) - 1
            pairs |= {(k, n) for k in range(n)}
    return G


def is_groebner_basis(G: Sequence[MultiPoly], ord: MonomialOrder = GREVLEX) -> bool:
    return all(reduce(s_polynomial(f, g, ord), G, ord).is_zero() for f, g in combinations(G, 2))


def reduce_basis(G: Sequence[MultiPoly], ord: MonomialOrder = GREVLEX) -> list[MultiPoly]:
    """The unique reduced monic Gröbner basis generated by ``G``."""
    G = [g for g in G if not g.is_zero()]
    if not is_groebner_basis(G, ord):
        raise GroebnerError("input is not a Gröbner basis")
    # drop elements whose head is divisible by another head
    kept: list[MultiPoly] = []
    for i, g in enumerate(G):
        hm = _lead(g, ord)[0]
        redundant = False
        for j, h in enumerate(G):
            if i == j:
                continue
            hh = _lead(h, ord)[0]
            if _divides(hh, hm) and (hh != hm or j < i):
                redundant = True
                break
        if not redundant:
            kept.append(g)
    out = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        hm, hc = _lead(g, ord)
        tail = reduce(g - MultiPoly({hm: hc}), others, ord)
        out.append((MultiPoly({hm: 1}) + MultiPoly({m: c / hc for m, c in tail.terms.items()})))
    return sorted(out, key=lambda p: ord.key(_lead(p, ord)[0]), reverse=True)


def kauffman_ideal() -> Ideal:
    """The four generators in A, B, x, y, with B standing for A^-1."""
    return Ideal(tuple(parse_multipoly(s) for s in (
        "(-A^2 - B^2)*x + y - 1",
        "x + (-A^2 - B^2)*y - 1",
        "(A^4 + 1 + B^4)*x*y",
        "A*B - 1",
    )))


G16 = tuple(parse_multipoly(s) for s in ("x - 1 + y", "A*B - 1", "A^2 + B^2 + 1", "B^3 + A + B"))


@lru_cache(maxsize=1)
def kauffman_basis() -> tuple[MultiPoly, ...]:
    return tuple(reduce_basis(buchberger(kauffman_ideal())))


def normal_form_invariant(D: MarkedGraphDiagram, mode: str = "unoriented") -> MultiPoly:
    """Remainder of the bracket polynomial modulo the reduced basis."""
    from .bracket import ll, ll_normalized

    if mode == "unoriented":
        P = ll(D)
    elif mode == "oriented":
        P = ll_normalized(D)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return reduce(to_multipoly(P), kauffman_basis())
