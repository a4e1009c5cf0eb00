"""Atomic equations ``x_k = 1``, ``x_i + x_j = x_k``, ``x_i * x_j = x_k`` and systems of them.

Additions and multiplications are stored with ``i <= j``; the swapped form has
the same solutions, so only canonical equations are enumerated.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Sequence, Union


@dataclass(frozen=True, order=True)
class Unit:
    k: int

    def indices(self):
        return (self.k,)

    def holds(self, t: Sequence[int]) -> bool:
        return t[self.k - 1] == 1

    def __str__(self):
        return f"x{self.k} = 1"


class _Binary:
    op = "?"

    def __post_init__(self):
        if self.i > self.j:
            i, j = self.j, self.i
            object.__setattr__(self, "i", i)
            object.__setattr__(self, "j", j)

    def indices(self):
        return (self.i, self.j, self.k)

    def __str__(self):
        return f"x{self.i} {self.op} x{self.j} = x{self.k}"


@dataclass(frozen=True, order=True)
class Add(_Binary):
    i: int
    j: int
    k: int
    op = "+"

    def holds(self, t: Sequence[int]) -> bool:
        return t[self.i - 1] + t[self.j - 1] == t[self.k - 1]


@dataclass(frozen=True, order=True)
class Mul(_Binary):
    i: int
    j: int
    k: int
    op = "*"

    def holds(self, t: Sequence[int]) -> bool:
        return t[self.i - 1] * t[self.j - 1] == t[self.k - 1]


EEquation = Union[Unit, Add, Mul]

_KIND_RANK = {Unit: 0, Add: 1, Mul: 2}


def equation_key(e: EEquation):
    return (_KIND_RANK[type(e)], e.indices())


def eval_equation(e: EEquation, t: Sequence[int]) -> bool:
    if len(t) < max(e.indices()):
        raise ValueError(f"tuple of length {len(t)} too short for {e}")
    return e.holds(t)


@dataclass(frozen=True)
class ESystem:
    n: int
    equations: FrozenSet[EEquation] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("variable count n must be positive")
        eqs = frozenset(self.equations)
        for e in eqs:
            if min(e.indices()) < 1 or max(e.indices()) > self.n:
                raise ValueError(f"equation {e} uses an index outside 1..{self.n}")
        object.__setattr__(self, "equations", eqs)

    def sorted_equations(self) -> List[EEquation]:
        return sorted(self.equations, key=equation_key)

    def solves(self, t: Sequence[int]) -> bool:
        if len(t) != self.n:
            raise ValueError(f"expected {self.n} values, got {len(t)}")
        return all(e.holds(t) for e in self.equations)

    def __len__(self):
        return len(self.equations)

    def __str__(self):
        return render_system(self)


def enumerate_en(n: int) -> List[EEquation]:
    """All canonical members of E_n: n units, then additions, then multiplications."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = range(1, n + 1)
    out: List[EEquation] = [Unit(k) for k in rng]
    for cls in (Add, Mul):
        out.extend(cls(i, j, k) for i in rng for j in rng if i <= j for k in rng)
    return out


def render_system(s: ESystem) -> str:
    lines = [f"vars {s.n}"]
    lines.extend(str(e) for e in s.sorted_equations())
    return "\n".join(lines) + "\n"


class SystemSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


_VARS = re.compile(r"^\s*vars\s+(\d+)\s*$")
_UNIT = re.compile(r"^\s*x(\d+)\s*=\s*1\s*$")
_BIN = re.compile(r"^\s*x(\d+)\s*([+*])\s*x(\d+)\s*=\s*x(\d+)\s*$")


def parse_equation(line: str, lineno: int = 1) -> EEquation:
    m = _UNIT.match(line)
    if m:
        return Unit(int(m.group(1)))
    m = _BIN.match(line)
    if m:
        cls = Add if m.group(2) == "+" else Mul
        return cls(int(m.group(1)), int(m.group(3)), int(m.group(4)))
    raise SystemSyntaxError(f"cannot parse equation {line.strip()!r}", lineno)


def iter_content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield lineno, line


def parse_system(text: str) -> ESystem:
    lines = list(iter_content_lines(text))
    if not lines:
        raise SystemSyntaxError("missing 'vars N' header", 1)
    lineno, header = lines[0]
    m = _VARS.match(header)
    if not m:
        raise SystemSyntaxError("first line must be 'vars N'", lineno)
    n = int(m.group(1))
    if n < 1:
        raise SystemSyntaxError("variable count must be positive", lineno)
    seen = set()
    for lineno, line in lines[1:]:
        e = parse_equation(line, lineno)
        if min(e.indices()) < 1 or max(e.indices()) > n:
            raise SystemSyntaxError(f"index out of range 1..{n} in {line.strip()!r}", lineno)
        if e in seen:
            warnings.warn(f"line {lineno}: duplicate equation {e} ignored", stacklevel=2)
        seen.add(e)
    return ESystem(n, frozenset(seen))


def system_of(n: int, equations: Iterable[EEquation]) -> ESystem:
    return ESystem(n, frozenset(equations))
