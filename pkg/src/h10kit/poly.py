"""Sparse multivariate polynomials with integer coefficients.

A monomial is a sorted tuple of ``(variable, exponent)`` pairs with every
exponent positive; the constant monomial is ``()``.  A polynomial maps
monomials to non-zero Python ints, so coefficients and values never overflow.

    2*x1^3*x2 - x2 + 17  ->  {((1, 3), (2, 1)): 2, ((2, 1),): -1, (): 17}
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Monomial = Tuple[Tuple[int, int], ...]

ONE_MONOMIAL: Monomial = ()


class PolySyntaxError(ValueError):
    """Raised by :func:`parse_poly`; ``pos`` is the 0-based offset in the text."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def make_monomial(exponents: Mapping[int, int]) -> Monomial:
    for var, exp in exponents.items():
        if var < 1:
            raise ValueError(f"variable index must be >= 1, got {var}")
        if exp < 0:
            raise ValueError(f"negative exponent {exp} for x{var}")
    return tuple(sorted((v, e) for v, e in exponents.items() if e))


def monomial_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    exps: Dict[int, int] = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _grlex_key(mono: Monomial):
    # Higher total degree first; ties broken so that x1 outranks x2 (lex).
    dense: Dict[int, int] = dict(mono)
    top = max(dense, default=0)
    return (-monomial_degree(mono), tuple(-dense.get(v, 0) for v in range(1, top + 1)))


@dataclass(frozen=True)
class Polynomial:
    terms: Mapping[Monomial, int] = field(default_factory=dict)
    var_count: int = 1

    def __post_init__(self):
        clean = {m: int(c) for m, c in self.terms.items() if c}
        top = max((v for m in clean for v, _ in m), default=0)
        if self.var_count < 1:
            raise ValueError("var_count must be positive")
        if top > self.var_count:
            raise ValueError(f"x{top} exceeds var_count {self.var_count}")
        object.__setattr__(self, "terms", clean)

    # -- construction helpers -------------------------------------------
    @classmethod
    def constant(cls, value: int, var_count: int = 1) -> "Polynomial":
        return cls({ONE_MONOMIAL: value}, var_count)

    @classmethod
    def variable(cls, index: int, var_count: int | None = None) -> "Polynomial":
        return cls({((index, 1),): 1}, max(index, var_count or 1))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == ONE_MONOMIAL for m in self.terms)

    def sorted_terms(self):
        """Terms in graded lexicographic order (the rendering order)."""
        return sorted(self.terms.items(), key=lambda mc: _grlex_key(mc[0]))

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial.constant(other, self.var_count)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out, max(self.var_count, other.var_count))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, self.var_count)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = monomial_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial(out, max(self.var_count, other.var_count))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.var_count)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, *point: int) -> int:
        return eval_poly(self, point)

    def __str__(self) -> str:
        return render_poly(self)


def render_monomial(mono: Monomial) -> str:
    return "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in mono)


def render_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, (mono, coeff) in enumerate(p.sorted_terms()):
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        if mono == ONE_MONOMIAL:
            body = str(mag)
        elif mag == 1:
            body = render_monomial(mono)
        else:
            body = f"{mag}*{render_monomial(mono)}"
        if i == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<var>x(?P<idx>\d+))|(?P<int>\d+)|(?P<op>[-+*^]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolySyntaxError(f"unexpected character {text[bad]!r}", bad)
        if m.group("var"):
            tokens.append(("var", int(m.group("idx")), m.start("var")))
        elif m.group("int"):
            tokens.append(("int", int(m.group("int")), m.start("int")))
        else:
            tokens.append((m.group("op"), None, m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def parse_poly(text: str, var_count: int | None = None) -> Polynomial:
    """Parse ``2*x1^3*x2 - x2 + 17`` style text into a collapsed polynomial.

    ``var_count`` defaults to the largest variable index mentioned (at least 1),
    even when that variable cancels out.
    """
    tokens = _tokenize(text)
    i = 0
    terms: Dict[Monomial, int] = {}
    top = 0

    def peek():
        return tokens[i]

    def take(kind=None):
        nonlocal i
        tok = tokens[i]
        if kind is not None and tok[0] != kind:
            raise PolySyntaxError(f"expected {kind}, found {tok[0]}", tok[2])
        i += 1
        return tok

    def factor():
        nonlocal top
        tok = peek()
        if tok[0] == "int":
            take()
            return tok[1], {}
        if tok[0] == "var":
            take()
            if tok[1] == 0:
                raise PolySyntaxError("variable index 0", tok[2])
            top = max(top, tok[1])
            exp = 1
            if peek()[0] == "^":
                take()
                etok = take("int")
                exp = etok[1]
                if exp < 1:
                    raise PolySyntaxError("exponent must be >= 1", etok[2])
                if exp > sys.maxsize:
                    raise PolySyntaxError("exponent overflows machine word", etok[2])
            return 1, {tok[1]: exp}
        raise PolySyntaxError(f"expected factor, found {tok[0]}", tok[2])

    sign = 1
    if peek()[0] in ("+", "-"):
        sign = -1 if take()[0] == "-" else 1
    while True:
        coeff, exps = factor()
        coeff *= sign
        while peek()[0] == "*":
            take()
            c, e = factor()
            coeff *= c
            for v, k in e.items():
                exps[v] = exps.get(v, 0) + k
        mono = make_monomial(exps)
        terms[mono] = terms.get(mono, 0) + coeff
        tok = peek()
        if tok[0] == "end":
            break
        if tok[0] not in ("+", "-"):
            raise PolySyntaxError(f"expected '+' or '-', found {tok[0]}", tok[2])
        sign = -1 if take()[0] == "-" else 1
    return Polynomial(terms, var_count or max(top, 1))


def eval_poly(p: Polynomial, point: Sequence[int]) -> int:
    if len(point) < p.var_count:
        raise ValueError(f"point has {len(point)} coordinates, need {p.var_count}")
    total = 0
    for mono, coeff in p.terms.items():
        value = coeff
        for v, e in mono:
            value *= point[v - 1] ** e
        total += value
    return total


def degree_in(p: Polynomial, i: int) -> int:
    if not 1 <= i <= p.var_count:
        raise ValueError(f"variable index {i} out of range 1..{p.var_count}")
    return max((dict(m).get(i, 0) for m in p.terms), default=0)


def split_nonneg(d: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Return ``(P, Q)`` with positive coefficients such that ``d == P - Q``."""
    pos = {m: c for m, c in d.terms.items() if c > 0}
    neg = {m: -c for m, c in d.terms.items() if c < 0}
    return Polynomial(pos, d.var_count), Polynomial(neg, d.var_count)


def variables_used(p: Polynomial) -> Iterable[int]:
    return sorted({v for m in p.terms for v, _ in m})
