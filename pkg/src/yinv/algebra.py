"""Exact polynomial arithmetic.

Three sparse, immutable polynomial types live here:

* ``LaurentPoly``: integer Laurent polynomials in ``A``.
* ``BracketPoly``: polynomials in commuting ``x, y`` whose coefficients are
  ``LaurentPoly`` values.
* ``MultiPoly``: rational polynomials in ``A, B, x, y`` (``B`` stands for
  ``A^-1``) carrying a monomial-order tag, used by the Groebner code.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "LaurentPoly",
    "BracketPoly",
    "MultiPoly",
    "VARS",
    "grevlex_key",
    "render_key",
    "DELTA",
    "ALPHA",
    "laurent_to_AB",
    "to_multipoly",
    "parse_multipoly",
    "parse_laurent",
    "parse_bracketpoly",
]

VARS = ("A", "B", "x", "y")

Monomial = tuple  # 4-tuple of non-negative ints over VARS


def _clean(terms: Mapping) -> dict:
    return {k: v for k, v in terms.items() if v != 0}


def _fmt_coeff_term(coeff, body: str) -> str:
    """Render ``coeff*body`` with a leading sign, body may be empty."""
    sign = "-" if coeff < 0 else "+"
    mag = -coeff if coeff < 0 else coeff
    if body == "":
        return sign + str(mag)
    if mag == 1:
        return sign + body
    return f"{sign}{mag}*{body}"


def _join_signed(parts: list[str]) -> str:
    if not parts:
        return "0"
    out = parts[0][1:] if parts[0][0] == "+" else parts[0]
    for p in parts[1:]:
        out += (" + " if p[0] == "+" else " - ") + p[1:]
    return out


class LaurentPoly:
    """Integer Laurent polynomial in ``A``, stored as ``{exponent: coeff}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        t = _clean({int(k): int(v) for k, v in (terms or {}).items()})
        object.__setattr__(self, "_terms", t)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def mono(cls, exp: int, c: int = 1) -> "LaurentPoly":
        return cls({exp: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        t = dict(self._terms)
        for e, c in other._terms.items():
            t[e] = t.get(e, 0) + c
        return LaurentPoly(t)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        t: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                t[e1 + e2] = t.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_unit():
                raise ValueError(f"negative power of non-unit {self}")
            (e, c), = self._terms.items()
            return LaurentPoly({e * n: c ** (-n)})
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def substitute_inverse(self) -> "LaurentPoly":
        """``A -> A^-1`` (the mirror-image involution)."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def __str__(self) -> str:
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            body = "" if e == 0 else ("A" if e == 1 else f"A^{e}")
            parts.append(_fmt_coeff_term(c, body))
        return _join_signed(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


DELTA = LaurentPoly({2: -1, -2: -1})
ALPHA = LaurentPoly({3: -1})


class BracketPoly:
    """Polynomial in ``x, y`` with ``LaurentPoly`` coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], LaurentPoly] | None = None):
        t = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative x/y degree")
            if isinstance(c, int):
                c = LaurentPoly.const(c)
            if not c.is_zero():
                t[(int(i), int(j))] = c
        object.__setattr__(self, "_terms", t)

    def __setattr__(self, name, value):
        raise AttributeError("BracketPoly is immutable")

    @classmethod
    def x(cls) -> "BracketPoly":
        return cls({(1, 0): LaurentPoly.const(1)})

    @classmethod
    def y(cls) -> "BracketPoly":
        return cls({(0, 1): LaurentPoly.const(1)})

    @classmethod
    def const(cls, c: LaurentPoly | int) -> "BracketPoly":
        return cls({(0, 0): c})

    @property
    def terms(self) -> dict[tuple[int, int], LaurentPoly]:
        return dict(self._terms)

    def coeff(self, i: int, j: int) -> LaurentPoly:
        return self._terms.get((i, j), LaurentPoly())

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, BracketPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> "BracketPoly":
        if not isinstance(other, BracketPoly):
            return NotImplemented
        t = dict(self._terms)
        for k, c in other._terms.items():
            t[k] = t[k] + c if k in t else c
        return BracketPoly(t)

    def __neg__(self) -> "BracketPoly":
        return BracketPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "BracketPoly":
        return self + (-other)

    def __mul__(self, other) -> "BracketPoly":
        if isinstance(other, (int, LaurentPoly)):
            return self.scalar_mul(other)
        if not isinstance(other, BracketPoly):
            return NotImplemented
        t: dict[tuple[int, int], LaurentPoly] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                p = c1 * c2
                t[k] = t[k] + p if k in t else p
        return BracketPoly(t)

    def __rmul__(self, other) -> "BracketPoly":
        if isinstance(other, (int, LaurentPoly)):
            return self.scalar_mul(other)
        return NotImplemented

    def scalar_mul(self, s: LaurentPoly | int) -> "BracketPoly":
        if isinstance(s, int):
            s = LaurentPoly.const(s)
        return BracketPoly({k: c * s for k, c in self._terms.items()})

    def map_coeffs(self, f) -> "BracketPoly":
        return BracketPoly({k: f(c) for k, c in self._terms.items()})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self._terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if s
            )
            cs = str(c)
            if len(c.terms) > 1:
                parts.append(f"+({cs})*{mono}" if mono else f"+({cs})")
                continue
            # a single-term coefficient folds into the monomial
            sign, mag = ("-", cs[1:]) if cs.startswith("-") else ("+", cs)
            if not mono:
                parts.append(sign + mag)
            else:
                parts.append(sign + (mono if mag == "1" else f"{mag}*{mono}"))
        return _join_signed(parts)

    def __repr__(self) -> str:
        return f"BracketPoly({self})"


def grevlex_key(m: Monomial) -> tuple:
    """Sort key: larger key means larger monomial in grevlex with A>B>x>y."""
    return (sum(m), tuple(-e for e in reversed(m)))


def render_key(m: Monomial) -> tuple:
    """Display order: total degree, then lexicographic in A>B>x>y."""
    return (sum(m), tuple(m))


ORDERS = {"grevlex": grevlex_key}

Number = Union[int, Fraction]


class MultiPoly:
    """Rational polynomial in ``A, B, x, y`` with a monomial-order tag."""

    __slots__ = ("_terms", "order", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None, order: str = "grevlex"):
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        t = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != 4 or min(m) < 0:
                raise ValueError(f"bad monomial {m}")
            c = Fraction(c)
            if c:
                t[m] = t.get(m, 0) + c
        object.__setattr__(self, "_terms", _clean(t))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # constructors
    @classmethod
    def const(cls, c: Number) -> "MultiPoly":
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        e = [0, 0, 0, 0]
        e[VARS.index(name)] = 1
        return cls({tuple(e): 1})

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        return parse_multipoly(text)

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _key(self):
        return ORDERS[self.order]

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: self._key()(kv[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=self._key())

    def leading_coeff(self) -> Fraction:
        return self._terms[self.leading_monomial()]

    def monic(self) -> "MultiPoly":
        lc = self.leading_coeff()
        return MultiPoly({m: c / lc for m, c in self._terms.items()}, self.order)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return other

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        t = dict(self._terms)
        for m, c in other._terms.items():
            t[m] = t.get(m, 0) + c
        return MultiPoly(t, self.order)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self._terms.items()}, self.order)

    def __sub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return MultiPoly({m: c * other for m, c in self._terms.items()}, self.order)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        t: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
                t[m] = t.get(m, 0) + c1 * c2
        return MultiPoly(t, self.order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power in a polynomial ring")
        out = MultiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def mul_term(self, mono: Monomial, coeff: Fraction) -> "MultiPoly":
        return MultiPoly(
            {tuple(a + b for a, b in zip(m, mono)): c * coeff for m, c in self._terms.items()},
            self.order,
        )

    def __str__(self) -> str:
        parts = []
        for m, c in sorted(self._terms.items(), key=lambda kv: render_key(kv[0]), reverse=True):
            body = "*".join(
                (v if e == 1 else f"{v}^{e}") for v, e in zip(VARS, m) if e
            )
            parts.append(_fmt_coeff_term(c, body))
        return _join_signed(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def laurent_to_AB(p: LaurentPoly) -> MultiPoly:
    """Substitute ``B`` for ``A^-1``; no mixed ``A*B`` monomials arise."""
    return MultiPoly(
        {((e, 0, 0, 0) if e >= 0 else (0, -e, 0, 0)): c for e, c in p.items()}
    )


def to_multipoly(P: BracketPoly) -> MultiPoly:
    t: dict[Monomial, Fraction] = {}
    for (i, j), c in P.terms.items():
        for e, k in c.items():
            m = (e, 0, i, j) if e >= 0 else (0, -e, i, j)
            t[m] = t.get(m, 0) + k
    return MultiPoly(t)


def laurent_sum(items: Iterable[LaurentPoly]) -> LaurentPoly:
    t: dict[int, int] = {}
    for p in items:
        for e, c in p.items():
            t[e] = t.get(e, 0) + c
    return LaurentPoly(t)


# A small expression reader so golden values can be written as they print.

_TOKEN = re.compile(r"\s*(?:(\d+)|([ABxy])|(\^)|([-+*/()]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at column {pos + 1}: {text[pos:pos + 10]!r}")
        out.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    return out


def _parse_terms(text: str) -> dict[tuple, Fraction]:
    """Parse into ``{(a, b, i, j): coeff}``; only ``a`` may be negative."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise ValueError(f"unexpected end of {text!r}")
        pos += 1
        return toks[pos - 1]

    def mul(p, q):
        r: dict[tuple, Fraction] = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                r[m] = r.get(m, 0) + c1 * c2
        return _clean(r)

    def add(p, q, sign=1):
        r = dict(p)
        for m, c in q.items():
            r[m] = r.get(m, 0) + sign * c
        return _clean(r)

    def integer():
        neg = False
        while peek() in ("-", "+"):
            neg ^= take() == "-"
        t = take()
        if t is None or not t.isdigit():
            raise ValueError(f"expected integer exponent in {text!r}")
        return -int(t) if neg else int(t)

    def atom():
        t = take()
        if t is None:
            raise ValueError(f"unexpected end of {text!r}")
        if t == "(":
            v = expr()
            if take() != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
        elif t.isdigit():
            v = {(0, 0, 0, 0): Fraction(int(t))}
        elif t in VARS:
            e = [0, 0, 0, 0]
            e[VARS.index(t)] = 1
            v = {tuple(e): Fraction(1)}
        else:
            raise ValueError(f"unexpected {t!r} in {text!r}")
        if peek() == "^":
            take()
            n = integer()
            if n < 0:
                if len(v) != 1:
                    raise ValueError("negative power of a non-monomial")
                (m, c), = v.items()
                if m[1:] != (0, 0, 0):
                    raise ValueError("only A may carry a negative exponent")
                v = {(m[0] * n, 0, 0, 0): c ** n}
            else:
                r = {(0, 0, 0, 0): Fraction(1)}
                for _ in range(n):
                    r = mul(r, v)
                v = r
        return v

    def factor():
        if peek() == "-":
            take()
            return {m: -c for m, c in factor().items()}
        if peek() == "+":
            take()
            return factor()
        return atom()

    def term():
        v = factor()
        while peek() in ("*", "/") or (peek() is not None and peek() not in ("+", "-", ")")):
            op = take() if peek() in ("*", "/") else "*"
            w = factor()
            if op == "/":
                if len(w) != 1 or next(iter(w)) != (0, 0, 0, 0):
                    raise ValueError("division only by integers")
                d = next(iter(w.values()))
                v = {m: c / d for m, c in v.items()}
            else:
                v = mul(v, w)
        return v

    def expr():
        v = term()
        while peek() in ("+", "-"):
            s = 1 if take() == "+" else -1
            v = add(v, term(), s)
        return v

    out = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return out


def parse_multipoly(text: str) -> MultiPoly:
    t = _parse_terms(text)
    return MultiPoly(t)


def parse_laurent(text: str) -> LaurentPoly:
    t = _parse_terms(text)
    out = {}
    for (a, b, i, j), c in t.items():
        if b or i or j or c.denominator != 1:
            raise ValueError(f"not an integer Laurent polynomial in A: {text!r}")
        out[a] = out.get(a, 0) + int(c)
    return LaurentPoly(out)


def parse_bracketpoly(text: str) -> BracketPoly:
    t = _parse_terms(text)
    out: dict[tuple[int, int], dict[int, int]] = {}
    for (a, b, i, j), c in t.items():
        if b or c.denominator != 1:
            raise ValueError(f"not a bracket polynomial: {text!r}")
        d = out.setdefault((i, j), {})
        d[a] = d.get(a, 0) + int(c)
    return BracketPoly({k: LaurentPoly(v) for k, v in out.items()})
