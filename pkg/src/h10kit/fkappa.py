"""Experiments on f_kappa(n), the least bound b such that every solvable system
S within E_n with fewer than kappa solutions has a solution with all coordinates <= b.

Exhaustive search only reaches tiny n.  A returned value is an unconditional
lower bound when its witness certificate is ``verified`` and otherwise rests on
the box-stability heuristic (no solution appears between B and 2B).
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .cardinal import OMEGA, Cardinal, parse_cardinal
from .esystem import (Add, EEquation, ESystem, Mul, Unit, enumerate_en,
                      parse_system, render_system)
from .solver import (find_min_max_norm, format_tuple, has_solution_beyond,
                     pinned_solution, search_box, solve_box)

log = logging.getLogger(__name__)

DEFAULT_CAP = 3
LONG_RUN_SUBSETS = 2**20


def doubling_bound(n: int) -> int:
    if n < 2:
        raise ValueError("the doubling system needs n >= 2")
    return 2 ** (2 ** (n - 2))


def doubling_system(n: int) -> ESystem:
    """x1 = 1, x1 + x1 = x2, x2 * x2 = x3, ..., x_{n-1} * x_{n-1} = x_n."""
    if n < 2:
        raise ValueError("the doubling system needs n >= 2")
    eqs: List[EEquation] = [Unit(1), Add(1, 1, 2)]
    eqs.extend(Mul(k, k, k + 1) for k in range(2, n))
    return ESystem(n, frozenset(eqs))


def doubling_solution(n: int) -> Tuple[int, ...]:
    return (1,) + tuple(2 ** (2 ** (i - 2)) for i in range(2, n + 1))


@dataclass
class FKappaCertificate:
    n: int
    kappa: Cardinal
    witness: ESystem
    witness_solutions: List[Tuple[int, ...]]
    bound_established: int
    box_used: int
    status: str  # "verified" | "conjectured"


@dataclass
class CheckResult:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


@dataclass
class FKappaResult:
    n: int
    kappa: Cardinal
    bound: int
    value: int
    certificates: List[FKappaCertificate]
    subsets_scanned: int
    tallies: Dict[str, int] = field(default_factory=dict)
    norm_histogram: Dict[int, int] = field(default_factory=dict)
    mode: str = "exhaustive"

    @property
    def status(self) -> str:
        if self.certificates and all(c.status == "verified" for c in self.certificates):
            return "lower-bound-verified"
        return "conjectured"

    def __iter__(self):
        # allows ``value, certs = fkappa_search(...)``
        return iter((self.value, self.certificates))


def subset_system(n: int, universe: Sequence[EEquation], mask: int) -> ESystem:
    return ESystem(n, frozenset(e for bit, e in enumerate(universe) if mask >> bit & 1))


def classify(system: ESystem, kappa: Cardinal, bound: int):
    """Return ``(status, min_max_norm)``; status is one of
    ``unsat``, ``too-many``, ``unstable``, ``qualifying``."""
    n = system.n
    if kappa.kind == "omega1":
        norm = find_min_max_norm(system, bound)
        return ("unsat", None) if norm is None else ("qualifying", norm)
    limit = kappa.k if kappa.is_finite else 1
    count, sols, _ = search_box(system, [0] * n, [bound] * n, limit=limit)
    if count == 0:
        return "unsat", None
    if kappa.is_finite and count >= kappa.k:
        return "too-many", None
    if has_solution_beyond(system, bound, 2 * bound):
        return "unstable", None
    if not kappa.is_finite:
        sols = search_box(system, [0] * n, [bound] * n)[1]
    return "qualifying", min(max(s) for s in sols)


def _better(a, b) -> bool:
    """Candidate ``(norm, rendering)`` a beats b: larger norm, then smaller text."""
    if b is None:
        return True
    return a[0] > b[0] or (a[0] == b[0] and a[1] < b[1])


def _scan(n: int, kappa_text: str, bound: int, masks: Sequence[int]):
    kappa = parse_cardinal(kappa_text)
    universe = enumerate_en(n)
    tallies: Counter = Counter()
    hist: Counter = Counter()
    best = None
    for mask in masks:
        system = subset_system(n, universe, mask)
        status, norm = classify(system, kappa, bound)
        tallies[status] += 1
        if status != "qualifying":
            continue
        hist[norm] += 1
        if best is None or norm >= best[0]:
            cand = (norm, render_system(system))
            if _better(cand, best):
                best = cand
    return tallies, hist, best


def _chunks(seq: Sequence[int], parts: int):
    size = max(1, -(-len(seq) // parts))
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def make_certificate(n: int, kappa: Cardinal, witness: ESystem, bound: int) -> FKappaCertificate:
    box = bound if kappa.kind == "omega1" else 2 * bound
    report = solve_box(witness, box)
    sols = report.solutions
    pinned = pinned_solution(witness)
    status = "verified" if pinned is not None and sols == [pinned] else "conjectured"
    return FKappaCertificate(n=n, kappa=kappa, witness=witness, witness_solutions=sols,
                             bound_established=min(max(s) for s in sols), box_used=box,
                             status=status)


def fkappa_search(n: int, kappa: Cardinal, bound: int, *, cap: int = DEFAULT_CAP,
                  allow_long_run: bool = False, sample: Optional[int] = None,
                  seed: int = 0, jobs: int = 1) -> FKappaResult:
    """Scan subsets of canonical E_n and return the largest minimal max-norm among
    systems that are solvable, have fewer than ``kappa`` solutions in ``[0, bound]``,
    and gain no solutions between ``bound`` and ``2 * bound``.

    With ``sample`` set, only that many random subsets (seeded) are examined
    and the value is a lower bound from the sample.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise ValueError(f"n={n} exceeds the configured cap {cap}")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    universe = enumerate_en(n)
    total = 2 ** len(universe)
    if sample is not None:
        rng = random.Random(seed)
        masks = sorted({rng.randrange(total) for _ in range(sample)})
        mode = "sampled"
    else:
        if total > LONG_RUN_SUBSETS and not allow_long_run:
            raise ValueError(f"n={n} means {total} subsets (2^{len(universe)}); "
                             "pass allow_long_run=True or use sampling")
        if total > LONG_RUN_SUBSETS:
            log.warning("scanning 2^%d subsets; this will not finish at desk scale", len(universe))
        masks = range(total)
        mode = "exhaustive"

    if jobs > 1:
        parts = _chunks(list(masks), jobs * 4)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            partials = list(pool.map(_scan, [n] * len(parts), [str(kappa)] * len(parts),
                                     [bound] * len(parts), parts))
    else:
        partials = [_scan(n, str(kappa), bound, masks)]

    tallies: Counter = Counter()
    hist: Counter = Counter()
    best = None
    for t, h, b in partials:
        tallies.update(t)
        hist.update(h)
        if b is not None and _better(b, best):
            best = b

    certificates = []
    value = 0
    if best is not None:
        value = best[0]
        witness = parse_system(best[1])
        certificates.append(make_certificate(n, kappa, witness, bound))
    return FKappaResult(n=n, kappa=kappa, bound=bound, value=value, certificates=certificates,
                        subsets_scanned=len(masks), tallies=dict(tallies),
                        norm_histogram=dict(sorted(hist.items())), mode=mode)


def verify_certificate(c: FKappaCertificate) -> CheckResult:
    w = c.witness
    if w.n != c.n:
        return CheckResult(False, f"witness has {w.n} variables, certificate says n={c.n}")
    sols = [tuple(s) for s in c.witness_solutions]
    if not sols:
        return CheckResult(False, "no witness solutions")
    if len(set(sols)) != len(sols):
        return CheckResult(False, "duplicate witness solutions")
    for s in sols:
        if len(s) != w.n or not w.solves(s):
            return CheckResult(False, f"{format_tuple(s)} does not solve the witness")
        if max(s) > c.box_used:
            return CheckResult(False, f"{format_tuple(s)} lies outside box {c.box_used}")
    if c.kappa.is_finite and len(sols) >= c.kappa.k:
        return CheckResult(False, f"{len(sols)} solutions is not fewer than kappa={c.kappa}")
    norm = min(max(s) for s in sols)
    if norm != c.bound_established:
        return CheckResult(False, f"bound_established {c.bound_established} but minimal max-norm is {norm}")
    fresh = solve_box(w, c.box_used)
    if set(fresh.solutions) != set(sols) or fresh.count != len(sols):
        missing = sorted(set(fresh.solutions) - set(sols))
        detail = f"; missing {format_tuple(missing[0])}" if missing else ""
        return CheckResult(False, f"box {c.box_used} has {fresh.count} solutions, certificate lists {len(sols)}{detail}")
    if c.kappa == OMEGA and c.box_used >= 2:
        half = sum(1 for s in sols if max(s) <= c.box_used // 2)
        if half != len(sols):
            return CheckResult(False, "solution count not stable between box/2 and box")
    if c.status == "verified":
        pinned = pinned_solution(w)
        if pinned is None or [pinned] != sorted(sols):
            return CheckResult(False, "status 'verified' but propagation does not pin a unique solution")
    elif c.status != "conjectured":
        return CheckResult(False, f"unknown status {c.status!r}")
    return CheckResult(True)


def render_fkappa_certificate(c: FKappaCertificate) -> str:
    lines = [
        f"# n {c.n}",
        f"# kappa {c.kappa}",
        f"# bound_established {c.bound_established}",
        f"# box_used {c.box_used}",
        f"# status {c.status}",
    ]
    body = render_system(c.witness)
    sol_lines = ["solutions"] + [" ".join(str(v) for v in s) for s in c.witness_solutions]
    return "\n".join(lines) + "\n" + body + "\n".join(sol_lines) + "\n"


def parse_fkappa_certificate(text: str) -> FKappaCertificate:
    meta: Dict[str, str] = {}
    sys_lines: List[str] = []
    sols: List[Tuple[int, ...]] = []
    in_sols = False
    for raw in text.splitlines():
        s = raw.strip()
        if s.startswith("#"):
            parts = s[1:].split(None, 1)
            if len(parts) == 2:
                meta[parts[0]] = parts[1].strip()
            continue
        if not s:
            continue
        if s == "solutions":
            in_sols = True
            continue
        if in_sols:
            sols.append(tuple(int(v) for v in s.split()))
        else:
            sys_lines.append(s)
    witness = parse_system("\n".join(sys_lines))
    return FKappaCertificate(n=int(meta["n"]), kappa=parse_cardinal(meta["kappa"]),
                             witness=witness, witness_solutions=sols,
                             bound_established=int(meta["bound_established"]),
                             box_used=int(meta["box_used"]), status=meta["status"])


SUMMARY_HEADER = ("n", "kappa", "B", "value", "status")


def summary_row(r: FKappaResult) -> Tuple[str, ...]:
    return (str(r.n), str(r.kappa), str(r.bound), str(r.value), r.status)
