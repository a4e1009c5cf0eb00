"""Lowering a polynomial equation ``D = 0`` into a system over E_n.

Every auxiliary variable is the target of one straight-line-program step
(``1``, ``a + b`` or ``a * b``, plus ``0`` for an empty side), so once the
original variables are chosen all other values are forced.  The only
non-defining equation is the final ``r_P * one = r_Q`` tying the two sides
of ``P = Q`` together, where ``D = P - Q`` with non-negative coefficients.

Layout: originals ``1..p``, the constant one at ``p + 1``, then auxiliaries in
emission order.  Terms are processed side ``P`` then side ``Q``, each in graded
lexicographic order; within a term the monomial is built before its
coefficient.  Identical steps are shared.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .esystem import (Add, EEquation, ESystem, Mul, Unit, iter_content_lines,
                      parse_equation)
from .poly import ONE_MONOMIAL, Monomial, Polynomial, eval_poly, split_nonneg
from .solver import Propagator, iter_box


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class SlpStep:
    target: int
    kind: str  # "one" | "zero" | "add" | "mul"
    a: int = 0
    b: int = 0

    def equation(self) -> EEquation:
        if self.kind == "one":
            return Unit(self.target)
        if self.kind == "zero":
            return Add(self.target, self.target, self.target)
        if self.kind == "add":
            return Add(self.a, self.b, self.target)
        return Mul(self.a, self.b, self.target)

    def evaluate(self, values: Sequence[int]) -> int:
        if self.kind == "one":
            return 1
        if self.kind == "zero":
            return 0
        x, y = values[self.a - 1], values[self.b - 1]
        return x + y if self.kind == "add" else x * y

    def __str__(self):
        rhs = {"one": "1", "zero": "0"}.get(self.kind)
        if rhs is None:
            op = "+" if self.kind == "add" else "*"
            rhs = f"x{self.a} {op} x{self.b}"
        return f"x{self.target} := {rhs}"


@dataclass(frozen=True)
class ReductionCertificate:
    p: int
    n: int
    slp: Tuple[SlpStep, ...]
    constraints: Tuple[EEquation, ...]

    def __post_init__(self):
        if not self.p < self.n:
            raise ValueError(f"need p < n, got p={self.p}, n={self.n}")
        targets = [s.target for s in self.slp]
        if targets != list(range(self.p + 1, self.n + 1)):
            raise ValueError("SLP must define exactly x_{p+1}..x_n in order")
        for s in self.slp:
            if s.kind in ("add", "mul") and not (1 <= s.a < s.target and 1 <= s.b < s.target):
                raise ValueError(f"step {s} refers to an undefined value")
        for e in self.constraints:
            if max(e.indices()) > self.n:
                raise ValueError(f"constraint {e} exceeds n={self.n}")

    def equations(self) -> List[EEquation]:
        return [s.equation() for s in self.slp] + list(self.constraints)

    def system(self) -> ESystem:
        return ESystem(self.n, frozenset(self.equations()))


@dataclass(frozen=True)
class ReductionResult:
    system: ESystem
    certificate: ReductionCertificate


class _SlpBuilder:
    def __init__(self, p: int):
        self.p = p
        self.steps: List[SlpStep] = []
        self.memo: Dict[tuple, int] = {}
        self.one = self._emit(("one",), "one")
        self.pow2 = [self.one]

    def _emit(self, key: tuple, kind: str, a: int = 0, b: int = 0) -> int:
        if key in self.memo:
            return self.memo[key]
        target = self.p + len(self.steps) + 1
        self.steps.append(SlpStep(target, kind, a, b))
        self.memo[key] = target
        return target

    def add(self, a: int, b: int) -> int:
        a, b = min(a, b), max(a, b)
        return self._emit(("add", a, b), "add", a, b)

    def mul(self, a: int, b: int) -> int:
        a, b = min(a, b), max(a, b)
        return self._emit(("mul", a, b), "mul", a, b)

    def zero(self) -> int:
        return self._emit(("zero",), "zero")

    def power_of_two(self, k: int) -> int:
        while len(self.pow2) <= k:
            last = self.pow2[-1]
            self.pow2.append(self.add(last, last))
        return self.pow2[k]

    def const(self, c: int) -> int:
        if c < 1:
            raise ValueError("constants in the program are positive")
        key = ("const", c)
        if key in self.memo:
            return self.memo[key]
        acc: Optional[int] = None
        for k in range(c.bit_length()):
            if c >> k & 1:
                bit = self.power_of_two(k)
                acc = bit if acc is None else self.add(acc, bit)
        self.memo[key] = acc
        return acc

    def power(self, v: int, e: int) -> int:
        acc = v
        for _ in range(e - 1):
            acc = self.mul(acc, v)
        return acc

    def monomial(self, mono: Monomial) -> int:
        acc: Optional[int] = None
        for v, e in mono:
            f = self.power(v, e)
            acc = f if acc is None else self.mul(acc, f)
        return acc

    def term(self, mono: Monomial, coeff: int) -> int:
        if mono == ONE_MONOMIAL:
            return self.const(coeff)
        m = self.monomial(mono)
        if coeff == 1:
            return m
        return self.mul(self.const(coeff), m)

    def side(self, poly: Polynomial) -> int:
        if poly.is_zero():
            return self.zero()
        acc: Optional[int] = None
        for mono, coeff in poly.sorted_terms():
            t = self.term(mono, coeff)
            acc = t if acc is None else self.add(acc, t)
        return acc


def reduce(d: Polynomial) -> ReductionResult:
    """Lower ``d = 0`` to a system with the same solutions over N on x_1..x_p."""
    if d.is_zero():
        raise ReductionError("zero polynomial: every tuple is a solution, nothing to encode")
    if d.is_constant():
        raise ReductionError("nonzero constant polynomial has no variables and no solutions")
    p = d.var_count
    pos, neg = split_nonneg(d)
    b = _SlpBuilder(p)
    r_p = b.side(pos)
    r_q = b.side(neg)
    constraint = Mul(min(r_p, b.one), max(r_p, b.one), r_q)
    cert = ReductionCertificate(p=p, n=p + len(b.steps), slp=tuple(b.steps),
                                constraints=(constraint,))
    return ReductionResult(system=cert.system(), certificate=cert)


def extend_solution(cert: ReductionCertificate, base: Sequence[int]) -> Tuple[int, ...]:
    if len(base) != cert.p:
        raise ValueError(f"base has {len(base)} values, certificate expects p={cert.p}")
    values = list(base)
    for step in cert.slp:
        values.append(step.evaluate(values))
    return tuple(values)


@dataclass
class VerificationReport:
    box: int
    aux_box: int
    d_count: int
    t_count: int
    condition1: bool
    condition2: bool
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.condition1 and self.condition2 and self.d_count == self.t_count


_MAX_FAILURES = 10


def verify_conditions(d: Polynomial, result: ReductionResult, box: int) -> VerificationReport:
    """Brute-force check of equisolvability and unique extension on ``[0, box]^p``.

    Pass one evaluates ``d`` and the program's extension at every base tuple.
    Pass two runs the box solver on the whole system, with auxiliaries bounded
    by the largest value any extension takes, and requires every solution it
    finds to be exactly the extension of its base.
    """
    cert = result.certificate
    system = result.system
    p = cert.p
    if d.var_count != p:
        raise ValueError(f"polynomial has {d.var_count} variables, certificate p={p}")
    failures: List[str] = []

    def fail(msg):
        if len(failures) < _MAX_FAILURES:
            failures.append(msg)

    cond1 = True
    roots = set()
    aux_box = 0
    for base in iter_box(p, box):
        ext = extend_solution(cert, base)
        aux_box = max(aux_box, max(ext[p:]))
        is_root = eval_poly(d, base) == 0
        if is_root:
            roots.add(base)
        if is_root != system.solves(ext):
            cond1 = False
            fail(f"base {base}: D=0 is {is_root} but extension solves T is {not is_root}")

    lo = [0] * system.n
    hi = [box] * p + [aux_box] * (system.n - p)
    cond2 = True
    t_count = 0
    t_bases = set()
    for sol in Propagator(system).iter_solutions(lo, hi):
        t_count += 1
        base = sol[:p]
        t_bases.add(base)
        if sol != extend_solution(cert, base):
            cond2 = False
            fail(f"solution {sol} is not the program extension of {base}")
    if t_bases != roots:
        cond1 = False
        fail(f"T projects onto {len(t_bases)} bases, D has {len(roots)} roots")
    return VerificationReport(box=box, aux_box=aux_box, d_count=len(roots), t_count=t_count,
                              condition1=cond1, condition2=cond2, failures=failures)


def render_certificate(cert: ReductionCertificate) -> str:
    lines = [f"p {cert.p}", f"n {cert.n}", "slp"]
    lines.extend(str(s) for s in cert.slp)
    lines.append("constraints")
    lines.extend(str(e) for e in cert.constraints)
    return "\n".join(lines) + "\n"


_STEP = re.compile(r"^\s*x(\d+)\s*:=\s*(?:(?P<const>[01])|x(?P<a>\d+)\s*(?P<op>[+*])\s*x(?P<b>\d+))\s*$")
_KEYVAL = re.compile(r"^\s*(p|n)\s+(\d+)\s*$")


def parse_certificate(text: str) -> ReductionCertificate:
    header: Dict[str, int] = {}
    steps: List[SlpStep] = []
    constraints: List[EEquation] = []
    section = None
    for lineno, line in iter_content_lines(text):
        word = line.strip()
        if word in ("slp", "constraints"):
            section = word
            continue
        m = _KEYVAL.match(line)
        if section is None and m:
            header[m.group(1)] = int(m.group(2))
            continue
        if section == "slp":
            m = _STEP.match(line)
            if not m:
                raise ValueError(f"line {lineno}: bad program step {word!r}")
            target = int(m.group(1))
            if m.group("const") is not None:
                kind = "one" if m.group("const") == "1" else "zero"
                steps.append(SlpStep(target, kind))
            else:
                a, b = sorted((int(m.group("a")), int(m.group("b"))))
                kind = "add" if m.group("op") == "+" else "mul"
                steps.append(SlpStep(target, kind, a, b))
        elif section == "constraints":
            constraints.append(parse_equation(line, lineno))
        else:
            raise ValueError(f"line {lineno}: unexpected {word!r}")
    if "p" not in header or "n" not in header:
        raise ValueError("certificate needs 'p' and 'n' header lines")
    return ReductionCertificate(p=header["p"], n=header["n"], slp=tuple(steps),
                                constraints=tuple(constraints))
