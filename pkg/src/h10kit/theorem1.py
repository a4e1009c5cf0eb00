"""The system S_n that pins x1 = n and exposes g(n) + 1 as a coordinate.

Given a conjunction Phi over x1..xs whose solutions with x1 = a force
x2 = g(a), S_n appends padding units, a unit-step chain t_1..t_h with
h = floor(n/2), ``w = t_h + t_h``, ``x1 = w + y`` with y fixed by parity, and
``u = x2 + t_1``.  Variable order: x1..xs, paddings, t's, w, y, u.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List

from .esystem import Add, EEquation, ESystem, Unit
from .solver import Propagator, search_box

BUILTIN_G: Dict[str, Callable[[int], int]] = {
    "square": lambda x: x * x,
    "successor": lambda x: x + 1,
    "identity": lambda x: x,
}


@dataclass(frozen=True)
class FunctionGraphSpec:
    s: int
    phi: ESystem
    reference_g: Callable[[int], int]

    def __post_init__(self):
        if self.s < 2:
            raise ValueError("Phi needs at least the two variables x1, x2")
        if self.phi.n != self.s:
            raise ValueError(f"Phi has {self.phi.n} variables, expected s={self.s}")


@dataclass(frozen=True)
class SnLayout:
    n: int
    s: int
    padding: List[int]
    t: List[int]
    w: int
    y: int
    u: int


def min_n(s: int) -> int:
    return 6 + 2 * s


def sn_layout(s: int, n: int) -> SnLayout:
    if n < min_n(s):
        raise ValueError(f"n >= 6+2s violated: n={n}, s={s} needs n >= {min_n(s)}")
    h = n // 2
    pad = n - h - 3 - s
    nxt = s + 1
    padding = list(range(nxt, nxt + pad))
    nxt += pad
    t = list(range(nxt, nxt + h))
    nxt += h
    w, y, u = nxt, nxt + 1, nxt + 2
    assert u == n
    return SnLayout(n=n, s=s, padding=padding, t=t, w=w, y=y, u=u)


def build_sn(spec: FunctionGraphSpec, n: int) -> ESystem:
    lay = sn_layout(spec.s, n)
    t = lay.t
    eqs: List[EEquation] = list(spec.phi.equations)
    eqs.extend(Unit(z) for z in lay.padding)
    eqs.append(Unit(t[0]))
    eqs.extend(Add(t[k], t[0], t[k + 1]) for k in range(len(t) - 1))
    eqs.append(Add(t[-1], t[-1], lay.w))
    eqs.append(Add(lay.w, lay.y, 1))
    eqs.append(Add(lay.y, lay.y, lay.y) if n % 2 == 0 else Unit(lay.y))
    eqs.append(Add(2, t[0], lay.u))
    return ESystem(n, frozenset(eqs))


def count_phi_witnesses(spec: FunctionGraphSpec, x1: int, box: int) -> int:
    """Number of solutions of Phi inside ``[0, box]^s`` with the given x1."""
    lo = [0] * spec.s
    hi = [box] * spec.s
    lo[0] = hi[0] = x1
    return search_box(spec.phi, lo, hi, store_cap=0)[0]


def verify_forced_value(spec: FunctionGraphSpec, n: int, box: int) -> bool:
    return forced_value_report(spec, n, box)["passed"]


def forced_value_report(spec: FunctionGraphSpec, n: int, box: int) -> dict:
    target = spec.reference_g(n) + 1
    system = build_sn(spec, n)
    lay = sn_layout(spec.s, n)
    sols = list(Propagator(system).iter_solutions([0] * n, [box] * n))
    u_values = sorted({sol[lay.u - 1] for sol in sols})
    witnesses = count_phi_witnesses(spec, n, box)
    passed = bool(sols) and u_values == [target] and len(sols) == witnesses
    return {"n": n, "box": box, "expected_u": target, "u_values": u_values,
            "count": len(sols), "phi_witnesses": witnesses, "passed": passed}
