"""Oracle-driven solution printing and decision procedures.

A weak oracle is any callable ``oracle(D, excluded, budget) -> OracleAnswer``
answering whether ``D = 0`` has a root in N^p outside ``excluded``.  Its YES
is assumed sound; its NO is trusted only when the root set has fewer than
kappa elements, and it may stay silent (``NOT_YET``) otherwise.

Both procedures alternate a tranche of max-norm enumeration with one oracle
query, with budgets 1, 2, 4, ... by default.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .cardinal import Cardinal
from .dioph import dioph
from .esystem import ESystem, enumerate_en
from .poly import Polynomial, eval_poly
from .reducer import reduce
from .solver import Propagator, has_solution_leq, iter_box, solve_poly_box

DEFAULT_TRANCHE = 10_000


class OracleAnswer(enum.Enum):
    YES = "yes"
    NO = "no"
    NOT_YET = "not-yet"


WeakOracle = Callable[[Polynomial, Sequence[Tuple[int, ...]], int], OracleAnswer]


class OracleInconsistency(RuntimeError):
    pass


class QueryError(LookupError):
    pass


def norm_shell(p: int, m: int) -> Iterator[Tuple[int, ...]]:
    """Tuples in [0, m]^p with some coordinate equal to m, lexicographically."""

    def rec(k: int, hit: bool):
        if k == 0:
            yield ()
        elif k == 1 and not hit:
            yield (m,)
        else:
            for v in range(m + 1):
                for rest in rec(k - 1, hit or v == m):
                    yield (v,) + rest

    return rec(p, False)


def iter_by_max_norm(p: int, start: int = 0) -> Iterator[Tuple[int, ...]]:
    """N^p in increasing max-norm, lexicographic within each norm."""
    for m in itertools.count(start):
        yield from norm_shell(p, m)


def default_budgets() -> Iterator[int]:
    return (2**k for k in itertools.count())


class BoxOracle:
    """Answers by exhaustive search in ``[0, h(n)]``.

    Correct only if ``h`` really bounds the smallest solution, which the caller
    asserts by constructing it.  With ``via_reduction`` the equation is first
    lowered to a system over E_n and ``h`` is applied to that n; otherwise
    ``h`` is applied to the polynomial's own variable count.
    """

    def __init__(self, h: Union[Callable[[int], int], Mapping[int, int]], via_reduction: bool = False):
        self.h = h
        self.via_reduction = via_reduction

    def bound(self, n: int) -> int:
        if callable(self.h):
            return self.h(n)
        if n not in self.h:
            raise QueryError(f"bound function has no value for n={n}")
        return self.h[n]

    def roots(self, d: Polynomial) -> List[Tuple[int, ...]]:
        if d.is_zero() or d.is_constant() or not self.via_reduction:
            return solve_poly_box(d, self.bound(d.var_count)).solutions
        system = reduce(d).system
        b = self.bound(system.n)
        p = d.var_count
        sols = Propagator(system).iter_solutions([0] * system.n, [b] * system.n)
        return sorted({s[:p] for s in sols})

    def __call__(self, d: Polynomial, excluded, budget: int) -> OracleAnswer:
        skip = set(map(tuple, excluded))
        if any(r not in skip for r in self.roots(d)):
            return OracleAnswer.YES
        return OracleAnswer.NO


class BudgetOracle:
    """Looks at the first ``budget * steps`` tuples; never answers NO."""

    def __init__(self, steps: int = 100):
        self.steps = steps

    def __call__(self, d: Polynomial, excluded, budget: int) -> OracleAnswer:
        skip = set(map(tuple, excluded))
        for t in itertools.islice(iter_by_max_norm(d.var_count), budget * self.steps):
            if t not in skip and eval_poly(d, t) == 0:
                return OracleAnswer.YES
        return OracleAnswer.NOT_YET


def silent_oracle(d: Polynomial, excluded, budget: int) -> OracleAnswer:
    return OracleAnswer.NOT_YET


@dataclass
class EnumerationRun:
    solutions: List[Tuple[int, ...]] = field(default_factory=list)
    status: str = "budget-exhausted"  # complete | kappa-reached | budget-exhausted
    last_norm: int = 0
    queries: int = 0


def print_solutions(d: Polynomial, kappa: Cardinal, oracle: WeakOracle,
                    budgets: Optional[Iterable[int]] = None,
                    tranche: int = DEFAULT_TRANCHE,
                    emit: Optional[Callable[[Tuple[int, ...]], None]] = None,
                    spot_check: bool = True) -> EnumerationRun:
    """Print roots of ``d`` in max-norm order until the oracle reports no more.

    Stops with ``kappa-reached`` once kappa roots are printed (finite kappa):
    past that point the oracle owes no answer.  With ``spot_check`` a NO is
    cross-checked on the box of twice the last enumerated norm, and any root
    there that was not printed raises :class:`OracleInconsistency`.
    """
    run = EnumerationRun()
    gen = iter_by_max_norm(d.var_count)
    printed = set()
    for budget in (default_budgets() if budgets is None else budgets):
        for t in itertools.islice(gen, tranche):
            run.last_norm = max(t)
            if eval_poly(d, t) == 0 and t not in printed:
                printed.add(t)
                run.solutions.append(t)
                if emit is not None:
                    emit(t)
                if kappa.is_finite and len(printed) >= kappa.k:
                    run.status = "kappa-reached"
                    return run
        run.queries += 1
        answer = oracle(d, list(run.solutions), budget)
        if answer is OracleAnswer.NO:
            if spot_check:
                for t in iter_box(d.var_count, 2 * run.last_norm):
                    if t not in printed and eval_poly(d, t) == 0:
                        raise OracleInconsistency(f"oracle answered NO but {t} is an unprinted root")
            run.status = "complete"
            return run
    run.status = "budget-exhausted"
    return run


class Undecided(RuntimeError):
    pass


def strengthen_oracle(weak: WeakOracle, kappa: Cardinal,
                      tranche: int = DEFAULT_TRANCHE,
                      max_rounds: Optional[int] = None) -> Callable[[Polynomial], bool]:
    """Dovetail ``weak`` with a root search into a YES/NO decision procedure.

    A found root or a weak YES gives True; a weak NO gives False.  For finite
    kappa the search side guarantees an answer whenever there are at least kappa
    roots, and the weak side whenever there are fewer.  ``max_rounds`` only
    exists to keep misbehaving oracles from hanging callers.
    """

    def decide(d: Polynomial) -> bool:
        gen = iter_by_max_norm(d.var_count)
        budgets = default_budgets()
        if max_rounds is not None:
            budgets = itertools.islice(budgets, max_rounds)
        for budget in budgets:
            for t in itertools.islice(gen, tranche):
                if eval_poly(d, t) == 0:
                    return True
            answer = weak(d, [], budget)
            if answer is OracleAnswer.YES:
                return True
            if answer is OracleAnswer.NO:
                return False
        raise Undecided(f"no answer after {max_rounds} rounds")

    decide.kappa = kappa
    return decide


def decide_with_majorant(d: Polynomial, h: Callable[[int], int]) -> bool:
    """Lower ``d = 0`` to a system S over E_n, then look for a solution of S
    with every coordinate at most ``h(n)``.

    Exact whenever ``h`` majorizes f_kappa and ``d`` has fewer than kappa roots.
    """
    if d.is_zero():
        return True
    if d.is_constant():
        return False
    system = reduce(d).system
    return has_solution_leq(system, h(system.n))


def _smallest_root_norm(d: Polynomial) -> int:
    for t in iter_by_max_norm(d.var_count):
        if eval_poly(d, t) == 0:
            return max(t)
    raise AssertionError("unreachable")  # pragma: no cover


def majorant_from_decider(m: int, decide: Callable[[Polynomial], bool]) -> int:
    """max over non-empty S within E_m of the least b such that dioph(S) has a root <= b,
    taking 0 when ``decide`` answers NO.

    Loops forever if ``decide`` answers YES for a rootless equation.
    """
    universe = enumerate_en(m)
    best = 0
    for mask in range(1, 2 ** len(universe)):
        system = ESystem(m, frozenset(e for bit, e in enumerate(universe) if mask >> bit & 1))
        d = dioph(system)
        if decide(d):
            best = max(best, _smallest_root_norm(d))
    return best
