"""Bounded exhaustive solving over boxes of naturals.

Search keeps an interval ``[lo, hi]`` per variable, narrows all intervals to a
fixed point with per-equation bound reasoning, then branches on the variable
with the smallest interval, trying values in ascending order.  Every leaf is
re-checked against every equation, so pruning can only skip dead subtrees.

Upper bounds may be ``None`` (unbounded) in :func:`propagate`; search itself
always runs on finite boxes.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from math import isqrt
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .esystem import Add, EEquation, ESystem, Mul, Unit
from .poly import Polynomial, eval_poly

DEFAULT_STORE_CAP = 10**6

Bound = Optional[int]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _ceil_sqrt(a: int) -> int:
    r = isqrt(a)
    return r if r * r == a else r + 1


def _hmin(a: Bound, b: Bound) -> Bound:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class _Wipeout(Exception):
    pass


class _Domains:
    """Mutable interval store (0-based) that records which variables changed."""

    __slots__ = ("lo", "hi", "changed")

    def __init__(self, lo: List[int], hi: List[Bound]):
        self.lo = lo
        self.hi = hi
        self.changed: List[int] = []

    def raise_lo(self, v: int, value: int):
        if value > self.lo[v]:
            h = self.hi[v]
            if h is not None and value > h:
                raise _Wipeout
            self.lo[v] = value
            self.changed.append(v)

    def lower_hi(self, v: int, value: Bound):
        if value is None:
            return
        h = self.hi[v]
        if h is None or value < h:
            if value < self.lo[v]:
                raise _Wipeout
            self.hi[v] = value
            self.changed.append(v)


def _revise(e: EEquation, d: _Domains):
    lo, hi = d.lo, d.hi
    if type(e) is Unit:
        k = e.k - 1
        d.raise_lo(k, 1)
        d.lower_hi(k, 1)
        return
    i, j, k = e.i - 1, e.j - 1, e.k - 1
    if type(e) is Add:
        if i == j == k:
            d.lower_hi(i, 0)
        elif i == j:
            # x_k = 2 x_i
            d.raise_lo(k, 2 * lo[i])
            if hi[i] is not None:
                d.lower_hi(k, 2 * hi[i])
            d.raise_lo(i, _ceil_div(lo[k], 2))
            if hi[k] is not None:
                d.lower_hi(i, hi[k] // 2)
            d.raise_lo(k, 2 * lo[i])
        elif i == k:
            d.lower_hi(j, 0)
        elif j == k:
            d.lower_hi(i, 0)
        else:
            d.raise_lo(k, lo[i] + lo[j])
            if hi[i] is not None and hi[j] is not None:
                d.lower_hi(k, hi[i] + hi[j])
            for a, b in ((i, j), (j, i)):
                if hi[k] is not None:
                    d.lower_hi(a, hi[k] - lo[b])
                if hi[b] is not None:
                    d.raise_lo(a, lo[k] - hi[b])
        return
    # Mul
    if i == j == k:
        d.lower_hi(i, 1)
    elif i == j:
        # x_k = x_i^2
        d.raise_lo(k, lo[i] * lo[i])
        if hi[i] is not None:
            d.lower_hi(k, hi[i] * hi[i])
        d.raise_lo(i, _ceil_sqrt(lo[k]))
        if hi[k] is not None:
            d.lower_hi(i, isqrt(hi[k]))
    elif i == k or j == k:
        # x_a * x_b = x_a  <=>  x_a = 0 or x_b = 1
        a, b = (i, j) if i == k else (j, i)
        if lo[a] >= 1:
            d.raise_lo(b, 1)
            d.lower_hi(b, 1)
        elif lo[b] > 1 or hi[b] == 0:
            d.lower_hi(a, 0)
    else:
        d.raise_lo(k, lo[i] * lo[j])
        if hi[i] == 0 or hi[j] == 0:
            d.lower_hi(k, 0)
        elif hi[i] is not None and hi[j] is not None:
            d.lower_hi(k, hi[i] * hi[j])
        if lo[k] >= 1:
            d.raise_lo(i, 1)
            d.raise_lo(j, 1)
        for a, b in ((i, j), (j, i)):
            if lo[b] >= 1 and hi[k] is not None:
                d.lower_hi(a, hi[k] // lo[b])
            if hi[b] is not None and hi[b] >= 1:
                d.raise_lo(a, _ceil_div(lo[k], hi[b]))


class Propagator:
    """Equation watch lists for one system; reused across search nodes."""

    def __init__(self, system: ESystem):
        self.system = system
        self.equations = system.sorted_equations()
        self.watch: Dict[int, List[int]] = {v: [] for v in range(system.n)}
        for idx, e in enumerate(self.equations):
            for v in set(e.indices()):
                self.watch[v - 1].append(idx)
        self.max_revisions = 64 * (len(self.equations) + system.n) + 256

    def run(self, lo: List[int], hi: List[Bound], seeds: Optional[Sequence[int]] = None) -> bool:
        """Narrow ``lo``/``hi`` in place.  Returns False if some interval empties."""
        d = _Domains(lo, hi)
        if seeds is None:
            queue = deque(range(len(self.equations)))
        else:
            queue = deque(sorted({q for v in seeds for q in self.watch[v]}))
        queued = set(queue)
        budget = self.max_revisions
        try:
            while queue and budget:
                budget -= 1
                idx = queue.popleft()
                queued.discard(idx)
                d.changed.clear()
                _revise(self.equations[idx], d)
                for v in d.changed:
                    for q in self.watch[v]:
                        if q not in queued:
                            queued.add(q)
                            queue.append(q)
        except _Wipeout:
            return False
        return True

    def iter_solutions(self, lo: List[int], hi: List[int]) -> Iterator[Tuple[int, ...]]:
        lo, hi = list(lo), list(hi)
        if any(h is None for h in hi):
            raise ValueError("search needs finite upper bounds")
        if any(l > h for l, h in zip(lo, hi)):
            return
        if not self.run(lo, hi):
            return
        yield from self._dfs(lo, hi)

    def _dfs(self, lo: List[int], hi: List[int]) -> Iterator[Tuple[int, ...]]:
        best, width = -1, None
        for v in range(len(lo)):
            w = hi[v] - lo[v]
            if w and (width is None or w < width):
                best, width = v, w
        if best < 0:
            point = tuple(lo)
            if all(e.holds(point) for e in self.equations):
                yield point
            return
        for value in range(lo[best], hi[best] + 1):
            clo, chi = list(lo), list(hi)
            clo[best] = chi[best] = value
            if self.run(clo, chi, seeds=(best,)):
                yield from self._dfs(clo, chi)


def propagate(system: ESystem, lo: Sequence[int], hi: Sequence[Bound]):
    """Fixed-point narrowing of the intervals; ``None`` if some interval empties."""
    lo, hi = list(lo), list(hi)
    if not Propagator(system).run(lo, hi):
        return None
    return lo, hi


def pinned_solution(system: ESystem) -> Optional[Tuple[int, ...]]:
    """The unique solution over all of N^n when propagation from ``[0, inf)`` fixes
    every variable and the fixed point solves the system; otherwise ``None``.

    A non-None result is a proof that the system has exactly one solution.
    """
    res = propagate(system, [0] * system.n, [None] * system.n)
    if res is None:
        return None
    lo, hi = res
    if lo != hi:
        return None
    point = tuple(lo)
    return point if system.solves(point) else None


def is_provably_unsat(system: ESystem) -> bool:
    return propagate(system, [0] * system.n, [None] * system.n) is None


@dataclass
class SolveReport:
    bound: int
    n: int
    solutions: List[Tuple[int, ...]] = field(default_factory=list)
    count: int = 0
    stable: bool = False
    min_max_norm: Optional[int] = None
    truncated: bool = False

    @property
    def stability(self) -> str:
        return "conjectured-finite" if self.stable else "growing"


def search_box(system: ESystem, lo: Sequence[int], hi: Sequence[int],
               limit: Optional[int] = None,
               store_cap: int = DEFAULT_STORE_CAP) -> Tuple[int, List[Tuple[int, ...]], bool]:
    """Count (up to ``limit``) and collect solutions inside per-variable bounds.

    Returns ``(count, sorted_solutions, truncated)``; ``truncated`` means more
    solutions were counted than stored.
    """
    prop = Propagator(system)
    count = 0
    stored: List[Tuple[int, ...]] = []
    for sol in prop.iter_solutions(list(lo), list(hi)):
        count += 1
        if len(stored) < store_cap:
            stored.append(sol)
        if limit is not None and count >= limit:
            break
    stored.sort()
    return count, stored, count > len(stored)


def count_box(system: ESystem, bound: int, limit: Optional[int] = None) -> int:
    n = system.n
    return search_box(system, [0] * n, [bound] * n, limit=limit, store_cap=0)[0]


def has_solution_leq(system: ESystem, b: int) -> bool:
    return count_box(system, b, limit=1) > 0


def find_min_max_norm(system: ESystem, bound: int) -> Optional[int]:
    """Smallest max-coordinate over solutions in ``[0, bound]^n`` (``None`` if none)."""
    n = system.n
    prop = Propagator(system)
    best = None
    b = bound
    while b >= 0:
        sol = next(prop.iter_solutions([0] * n, [b] * n), None)
        if sol is None:
            break
        best = max(sol)
        b = best - 1
    return best


def has_solution_beyond(system: ESystem, inner: int, outer: int) -> bool:
    """Whether some solution in ``[0, outer]^n`` has a coordinate above ``inner``."""
    n = system.n
    if outer <= inner:
        return False
    prop = Propagator(system)
    for v in range(n):
        lo, hi = [0] * n, [outer] * n
        lo[v] = inner + 1
        if next(prop.iter_solutions(lo, hi), None) is not None:
            return True
    return False


def solve_box(system: ESystem, bound: int, store_cap: int = DEFAULT_STORE_CAP,
              count_only: bool = False) -> SolveReport:
    n = system.n
    cap = 0 if count_only else store_cap
    count, sols, truncated = search_box(system, [0] * n, [bound] * n, store_cap=cap)
    if truncated:
        half = search_box(system, [0] * n, [bound // 2] * n, store_cap=0)[0]
        mmn = find_min_max_norm(system, bound) if count else None
    else:
        half = sum(1 for s in sols if max(s, default=0) <= bound // 2)
        mmn = min((max(s, default=0) for s in sols), default=None)
    return SolveReport(bound=bound, n=n, solutions=sols, count=count,
                       stable=(count == half), min_max_norm=mmn, truncated=truncated)


def iter_box(p: int, bound: int) -> Iterator[Tuple[int, ...]]:
    return itertools.product(range(bound + 1), repeat=p)


def solve_poly_box(d: Polynomial, bound: int, store_cap: int = DEFAULT_STORE_CAP) -> SolveReport:
    """All roots of ``d`` in ``[0, bound]^p`` by direct evaluation."""
    p = d.var_count
    count = 0
    sols: List[Tuple[int, ...]] = []
    for point in iter_box(p, bound):
        if eval_poly(d, point) == 0:
            count += 1
            if len(sols) < store_cap:
                sols.append(point)
    truncated = count > len(sols)
    half = sum(1 for s in sols if max(s) <= bound // 2)
    if truncated:
        half = sum(1 for s in iter_box(p, bound // 2) if eval_poly(d, s) == 0)
    mmn = min((max(s) for s in sols), default=None)
    return SolveReport(bound=bound, n=p, solutions=sols, count=count,
                       stable=(count == half), min_max_norm=mmn, truncated=truncated)


def format_tuple(t: Sequence[int]) -> str:
    return "(" + ", ".join(str(v) for v in t) + ")"


def render_report(r: SolveReport) -> str:
    lines = [
        f"bound {r.bound}",
        f"count {r.count}",
        f"stability {r.stability}",
        f"min_max_norm {'none' if r.min_max_norm is None else r.min_max_norm}",
    ]
    if r.truncated:
        lines.append(f"stored {len(r.solutions)}")
    lines.append("solutions")
    lines.extend(format_tuple(s) for s in r.solutions)
    return "\n".join(lines) + "\n"


def report_to_dict(r: SolveReport) -> dict:
    return {
        "bound": r.bound,
        "n": r.n,
        "count": r.count,
        "stability": r.stability,
        "min_max_norm": r.min_max_norm,
        "truncated": r.truncated,
        "solutions": [list(s) for s in r.solutions],
    }
