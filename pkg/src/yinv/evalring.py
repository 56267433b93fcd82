"""Arithmetic in Q(i, s1, s2) with s1^2 = 1 + 1/t, s2^2 = 3 - 1/t.

An ``ExtScalar`` stores eight rationals on the basis

    1, i, s1, i s1, s2, i s2, s1s2, i s1s2

together with the parameter ``t`` the relations depend on.  ``reduce_mod``
sends a value at ``t = n`` to residues modulo ``2n - 1``.
"""

from __future__ import annotations

import ast
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence, Union

from .algebra import BracketPoly, LaurentPoly
from .diagram import MarkedGraphDiagram

__all__ = [
    "BASIS",
    "EvalError",
    "ExtScalar",
    "ModExtScalar",
    "SignPair",
    "EPSILONS",
    "z_of",
    "eval_phi",
    "K_invariant",
    "reduce_mod",
    "format_modular",
    "closed_form",
    "parse_rational_function",
    "parse_table_entry",
]

BASIS = ("1", "i", "s1", "i s1", "s2", "i s2", "s1s2", "i s1s2")
Rational = Union[int, Fraction]


class EvalError(ValueError):
    pass


def _split(idx: int) -> tuple[int, int, int]:
    """Basis index -> (imaginary bit, s1 bit, s2 bit)."""
    return idx & 1, (idx >> 1) & 1, (idx >> 2) & 1


def _join(j: int, b1: int, b2: int) -> int:
    return j | (b1 << 1) | (b2 << 2)


def _mul_table(v, w, r1, r2, zero):
    out = [zero] * 8
    for p, a in enumerate(v):
        if not a:
            continue
        j1, x1, y1 = _split(p)
        for q, b in enumerate(w):
            if not b:
                continue
            j2, x2, y2 = _split(q)
            c = a * b
            if j1 and j2:
                c = -c
            if x1 and x2:
                c = c * r1
            if y1 and y2:
                c = c * r2
            k = _join(j1 ^ j2, x1 ^ x2, y1 ^ y2)
            out[k] = out[k] + c
    return out


@dataclass(frozen=True)
class SignPair:
    e1: int = 1
    e2: int = 1

    def __post_init__(self):
        if self.e1 not in (1, -1) or self.e2 not in (1, -1):
            raise ValueError("sign pair entries must be +1 or -1")

    @classmethod
    def parse(cls, text: str) -> "SignPair":
        try:
            return EPSILONS[text]
        except KeyError:
            raise ValueError(f"epsilon must be one of {sorted(EPSILONS)}") from None


EPSILONS = {"pp": SignPair(1, 1), "pm": SignPair(1, -1), "mp": SignPair(-1, 1), "mm": SignPair(-1, -1)}


class ExtScalar:
    __slots__ = ("t", "coeffs")

    def __init__(self, t: Rational, coeffs: Sequence[Rational] | Mapping[str, Rational] = ()):
        t = Fraction(t)
        if t == 0:
            raise EvalError("t must be nonzero")
        if isinstance(coeffs, Mapping):
            c = [Fraction(0)] * 8
            for name, v in coeffs.items():
                c[BASIS.index(name)] = Fraction(v)
        else:
            c = [Fraction(v) for v in coeffs] + [Fraction(0)] * (8 - len(coeffs))
            if len(c) != 8:
                raise ValueError("an ExtScalar has eight coefficients")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("ExtScalar is immutable")

    @property
    def r1(self) -> Fraction:
        return 1 + 1 / self.t

    @property
    def r2(self) -> Fraction:
        return 3 - 1 / self.t

    @classmethod
    def rational(cls, t: Rational, c: Rational) -> "ExtScalar":
        return cls(t, [c])

    def _same_t(self, other: "ExtScalar") -> "ExtScalar":
        if isinstance(other, (int, Fraction)):
            return ExtScalar.rational(self.t, other)
        if not isinstance(other, ExtScalar):
            return NotImplemented
        if other.t != self.t:
            raise EvalError(f"mixing t={self.t} with t={other.t}")
        return other

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ExtScalar.rational(self.t, other).coeffs
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return self.t == other.t and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.t, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        other = self._same_t(other)
        if other is NotImplemented:
            return other
        return ExtScalar(self.t, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return ExtScalar(self.t, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._same_t(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same_t(other)
        if other is NotImplemented:
            return other
        return ExtScalar(self.t, _mul_table(self.coeffs, other.coeffs, self.r1, self.r2, Fraction(0)))

    __rmul__ = __mul__

    def conj(self) -> "ExtScalar":
        """Complex conjugation: i -> -i, the square roots are real."""
        return ExtScalar(self.t, [-a if k & 1 else a for k, a in enumerate(self.coeffs)])

    def rational_value(self) -> Fraction | None:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def inverse(self) -> "ExtScalar":
        """Inverse when ``v * conj(v)`` is a nonzero rational (e.g. powers of z)."""
        norm = (self * self.conj()).rational_value()
        if not norm:
            raise EvalError(f"no known inverse for {self}")
        return self.conj() * ExtScalar.rational(self.t, 1 / norm)

    def __pow__(self, n: int) -> "ExtScalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = ExtScalar.rational(self.t, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    int_power = __pow__

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            parts.append(str(c) if k == 0 else f"[{c}] {BASIS[k].replace('s1s2', 's1*s2').replace('i s', 'i*s')}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"ExtScalar(t={self.t}, {self})"

    def to_json(self) -> dict:
        return {"t": str(self.t), "coefficients": {BASIS[k]: str(c) for k, c in enumerate(self.coeffs) if c}}


def z_of(t: Rational, eps: SignPair = SignPair()) -> ExtScalar:
    """``z = (e1 s2 + e2 i s1) / 2``; it satisfies ``z * conj(z) = 1``."""
    half = Fraction(1, 2)
    c = [0] * 8
    c[BASIS.index("s2")] = eps.e1 * half
    c[BASIS.index("i s1")] = eps.e2 * half
    return ExtScalar(t, c)


def _eval_laurent(L: LaurentPoly, z: ExtScalar, zbar: ExtScalar, cache: dict) -> ExtScalar:
    out = ExtScalar.rational(z.t, 0)
    for e, c in L.items():
        if e not in cache:
            cache[e] = z ** e if e >= 0 else zbar ** (-e)
        out = out + cache[e] * c
    return out


def eval_phi(P: BracketPoly | LaurentPoly, t: Rational, eps: SignPair = SignPair()) -> ExtScalar:
    """Substitute A -> z, A^-1 -> conj(z), x -> t, y -> t."""
    z = z_of(t, eps)
    zbar = z.conj()
    cache: dict[int, ExtScalar] = {}
    if isinstance(P, LaurentPoly):
        return _eval_laurent(P, z, zbar, cache)
    t = Fraction(t)
    out = ExtScalar.rational(t, 0)
    for (i, j), L in P.terms.items():
        out = out + _eval_laurent(L, z, zbar, cache) * (t ** (i + j))
    return out


def K_invariant(D: MarkedGraphDiagram, t: Rational, mode: str = "unoriented", eps: SignPair = SignPair()) -> ExtScalar:
    from .bracket import ll, ll_normalized

    if mode == "unoriented":
        P = ll(D)
    elif mode == "oriented":
        P = ll_normalized(D)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return eval_phi(P, t, eps)


@dataclass(frozen=True)
class ModExtScalar:
    modulus: int
    residues: tuple[int, ...]

    def __post_init__(self):
        m = self.modulus
        if m < 3 or m % 2 == 0:
            raise ValueError("modulus must be odd and at least 3")
        if len(self.residues) != 8:
            raise ValueError("eight residues expected")
        object.__setattr__(self, "residues", tuple(int(r) % m for r in self.residues))

    @property
    def n(self) -> int:
        return (self.modulus + 1) // 2

    @classmethod
    def from_basis(cls, modulus: int, values: Mapping[str, int]) -> "ModExtScalar":
        r = [0] * 8
        for name, v in values.items():
            r[BASIS.index(name)] = v
        return cls(modulus, tuple(r))

    def _check(self, other: "ModExtScalar"):
        if other.modulus != self.modulus:
            raise EvalError("moduli differ")

    def __add__(self, other: "ModExtScalar") -> "ModExtScalar":
        self._check(other)
        return ModExtScalar(self.modulus, tuple(a + b for a, b in zip(self.residues, other.residues)))

    def __neg__(self) -> "ModExtScalar":
        return ModExtScalar(self.modulus, tuple(-a for a in self.residues))

    def __sub__(self, other: "ModExtScalar") -> "ModExtScalar":
        return self + (-other)

    def __mul__(self, other: "ModExtScalar") -> "ModExtScalar":
        # at t = n: 1 + 1/n -> 1 + 2 and 3 - 1/n -> 3 - 2
        self._check(other)
        return ModExtScalar(self.modulus, tuple(_mul_table(self.residues, other.residues, 3, 1, 0)))

    def is_zero(self) -> bool:
        return not any(self.residues)

    def __str__(self) -> str:
        return format_modular(self)


def _fold(q: Fraction, m: int) -> int:
    if gcd(q.denominator, m) != 1:
        raise EvalError(f"denominator of {q} is not invertible modulo {m}")
    return q.numerator * pow(q.denominator, -1, m) % m


def reduce_mod(v: ExtScalar, n: int) -> ModExtScalar:
    """Residues of the coefficients of ``v`` (taken at ``t = n``) modulo ``2n - 1``."""
    if n < 2:
        raise EvalError("n must be at least 2")
    if v.t != n:
        raise EvalError(f"value was computed at t={v.t}, not t={n}")
    m = 2 * n - 1
    return ModExtScalar(m, tuple(_fold(c, m) for c in v.coeffs))


def format_modular(v: ModExtScalar, with_modulus: bool = False) -> str:
    parts = []
    for k, r in enumerate(v.residues):
        if r:
            parts.append(f"[{r}]" if k == 0 else f"[{r}] {BASIS[k]}")
    text = " + ".join(parts) if parts else "[0]"
    return f"{text} (mod {v.modulus})" if with_modulus else text


# closed forms and printed table entries ------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def parse_rational_function(text: str, t: Rational) -> Fraction:
    """Evaluate an expression in ``t`` such as ``(4*t^3 + 1)/(2*t^4)`` exactly."""
    t = Fraction(t)
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name) and node.id == "t":
            return t
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = ev(node.right)
                if e.denominator != 1:
                    raise ValueError("only integer exponents are allowed")
                return ev(node.left) ** int(e)
            if type(node.op) in _BINOPS:
                return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise ValueError(f"unsupported expression {text!r}")

    return ev(tree)


# keys of a closed-form dict and the basis element each one multiplies;
# sqrt((t+1)(3t-1)) equals t * s1 * s2
_CLOSED_KEYS = {"real": ("1", False), "s2": ("s2", False), "i*sqrt((t+1)(3t-1))": ("i s1s2", True)}


def closed_form(forms: Mapping[str, str], t: Rational) -> ExtScalar:
    t = Fraction(t)
    c: dict[str, Fraction] = {}
    for key, expr in forms.items():
        name, times_t = _CLOSED_KEYS[key]
        v = parse_rational_function(expr, t)
        c[name] = v * t if times_t else v
    return ExtScalar(t, c)


_ENTRY = re.compile(r"^\[(-?\d+)\]((?:\d+\^-?\d+)(?:\*\d+\^-?\d+)*)?(?:\s+(s1|s2|s1s2))?$")


def parse_table_entry(text: str, n: int) -> ModExtScalar:
    """Fold a printed residue like ``[1]2^-1*3^-4`` or ``[1] s2`` modulo ``2n - 1``."""
    mo = _ENTRY.match(text.strip())
    if not mo:
        raise ValueError(f"cannot read table entry {text!r}")
    value = Fraction(int(mo.group(1)))
    if mo.group(2):
        for factor in mo.group(2).split("*"):
            base, exp = factor.split("^")
            value *= Fraction(int(base)) ** int(exp)
    m = 2 * n - 1
    return ModExtScalar.from_basis(m, {mo.group(3) or "1": _fold(value, m)})
