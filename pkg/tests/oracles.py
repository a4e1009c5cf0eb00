"""Brute-force reference implementations; deliberately share no code with the solver."""

import itertools


def naive_system_solutions(system, bound):
    """Every tuple in [0, bound]^n satisfying all equations, by full scan."""
    out = []
    eqs = list(system.equations)
    for t in itertools.product(range(bound + 1), repeat=system.n):
        if all(_holds(e, t) for e in eqs):
            out.append(t)
    return out


def _holds(e, t):
    name = type(e).__name__
    if name == "Unit":
        return t[e.k - 1] == 1
    a, b, c = t[e.i - 1], t[e.j - 1], t[e.k - 1]
    return a + b == c if name == "Add" else a * b == c


def naive_poly_value(poly, point):
    total = 0
    for mono, coeff in poly.terms.items():
        term = coeff
        for var, exp in mono:
            for _ in range(exp):
                term *= point[var - 1]
        total += term
    return total


def naive_poly_roots(poly, bound, p=None):
    p = p or poly.var_count
    return [t for t in itertools.product(range(bound + 1), repeat=p)
            if naive_poly_value(poly, t) == 0]
