import pytest
from hypothesis import given, settings, strategies as st

from h10kit.esystem import Add, ESystem, Mul, Unit, enumerate_en
from h10kit.poly import parse_poly
from h10kit.solver import (count_box, find_min_max_norm, has_solution_leq, pinned_solution,
                           propagate, render_report, solve_box, solve_poly_box)

from oracles import naive_poly_roots, naive_system_solutions
from suites import DOUBLING3, random_systems


def test_doubling_system_unique_solution():
    r = solve_box(DOUBLING3, 16)
    assert r.solutions == [(1, 2, 4)] and r.count == 1
    assert r.min_max_norm == 4


def test_empty_system_counts_box():
    r = solve_box(ESystem(1), 3)
    assert r.solutions == [(0,), (1,), (2,), (3,)]
    assert r.min_max_norm == 0
    assert not r.stable


def test_self_addition_forces_zero():
    r = solve_box(ESystem(1, frozenset([Add(1, 1, 1)])), 5)
    assert r.solutions == [(0,)]


def test_bound_zero_tests_origin_only():
    assert solve_box(ESystem(2), 0).solutions == [(0, 0)]
    assert solve_box(ESystem(1, frozenset([Unit(1)])), 0).count == 0


def test_solve_poly_examples():
    assert solve_poly_box(parse_poly("x1^2 - 4"), 10).solutions == [(2,)]
    assert solve_poly_box(parse_poly("x1*x2 - 6"), 6).solutions == [(1, 6), (2, 3), (3, 2), (6, 1)]
    assert solve_poly_box(parse_poly("x1 + 1"), 10).count == 0


def test_has_solution_leq_examples():
    assert not has_solution_leq(DOUBLING3, 3)
    assert has_solution_leq(DOUBLING3, 4)
    assert not has_solution_leq(ESystem(1, frozenset([Unit(1)])), 0)


def test_store_cap_overflow_keeps_exact_count():
    r = solve_box(ESystem(2), 9, store_cap=10)
    assert r.count == 100 and len(r.solutions) == 10 and r.truncated
    assert r.min_max_norm == 0
    r = solve_box(ESystem(2), 9, count_only=True)
    assert r.count == 100 and r.solutions == []


def test_stability_flag():
    r = solve_box(DOUBLING3, 16)
    assert r.stable and r.stability == "conjectured-finite"
    r = solve_box(ESystem(1, frozenset([Mul(1, 1, 1)])), 8)
    assert r.solutions == [(0,), (1,)] and r.stable


def test_min_max_norm_search():
    s = ESystem(2, frozenset([Mul(1, 1, 2)]))
    assert find_min_max_norm(s, 10) == 0
    assert find_min_max_norm(DOUBLING3, 100) == 4
    assert find_min_max_norm(DOUBLING3, 3) is None


def test_pinned_solution_proves_uniqueness():
    assert pinned_solution(DOUBLING3) == (1, 2, 4)
    assert pinned_solution(ESystem(1, frozenset([Mul(1, 1, 1)]))) is None
    assert pinned_solution(ESystem(2, frozenset([Unit(1), Mul(1, 1, 2), Mul(2, 2, 2)]))) == (1, 1)


def test_propagate_unbounded_detects_contradiction():
    s = ESystem(2, frozenset([Unit(1), Add(1, 1, 1)]))
    assert propagate(s, [0, 0], [None, None]) is None


def test_large_values_stay_exact():
    s = ESystem(5, frozenset([Unit(1), Add(1, 1, 2), Mul(2, 2, 3), Mul(3, 3, 4), Mul(4, 4, 5)]))
    r = solve_box(s, 2**20)
    assert r.solutions == [(1, 2, 4, 16, 256)]


def test_report_rendering_is_sorted():
    s = ESystem(2, frozenset([Mul(1, 1, 2)]))
    text = render_report(solve_box(s, 4))
    assert text.splitlines()[-3:] == ["(0, 0)", "(1, 1)", "(2, 4)"]


# pruned search against full scan on the shared random suite
SUITE = random_systems()


@pytest.mark.parametrize("idx", range(0, len(SUITE), 7))
@pytest.mark.parametrize("bound", [0, 1, 5, 12])
def test_pruned_equals_naive(idx, bound):
    s = SUITE[idx]
    assert solve_box(s, bound).solutions == naive_system_solutions(s, bound)


@st.composite
def small_systems(draw):
    n = draw(st.integers(1, 3))
    eqs = draw(st.sets(st.sampled_from(enumerate_en(n)), max_size=5))
    return ESystem(n, frozenset(eqs))


@settings(max_examples=150, deadline=None)
@given(small_systems(), st.integers(0, 9))
def test_pruned_equals_naive_property(s, bound):
    assert solve_box(s, bound).solutions == naive_system_solutions(s, bound)


@settings(max_examples=60, deadline=None)
@given(small_systems(), st.integers(0, 8))
def test_count_monotone_in_bound(s, bound):
    assert count_box(s, bound) <= count_box(s, bound + 1)
    assert has_solution_leq(s, bound) <= has_solution_leq(s, bound + 1)


@settings(max_examples=60, deadline=None)
@given(small_systems(), st.integers(0, 8))
def test_has_solution_agrees_with_count(s, bound):
    assert has_solution_leq(s, bound) == (solve_box(s, bound).count >= 1)


def test_poly_solver_matches_naive_roots():
    d = parse_poly("x1^2 + x2^2 - 25")
    assert solve_poly_box(d, 6).solutions == naive_poly_roots(d, 6)
