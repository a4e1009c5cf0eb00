"""Lowering Diophantine equations to systems of x=1, x+y=z, x*y=z equations,
bounded solvers for such systems, and f_kappa(n) experiments."""

__version__ = "0.1.0"

from .cardinal import OMEGA, OMEGA_ONE, Cardinal, Finite, parse_cardinal
from .dioph import dioph
from .esystem import (Add, ESystem, Mul, Unit, enumerate_en, eval_equation,
                      parse_system, render_system)
from .fkappa import doubling_system, fkappa_search, verify_certificate
from .poly import Polynomial, degree_in, eval_poly, parse_poly, split_nonneg
from .reducer import extend_solution, reduce, verify_conditions
from .solver import has_solution_leq, solve_box, solve_poly_box

__all__ = [
    "Add", "Cardinal", "ESystem", "Finite", "Mul", "OMEGA", "OMEGA_ONE", "Polynomial", "Unit",
    "degree_in", "dioph", "doubling_system", "enumerate_en", "eval_equation", "eval_poly",
    "extend_solution", "fkappa_search", "has_solution_leq", "parse_cardinal", "parse_poly",
    "parse_system", "reduce", "render_system", "solve_box", "solve_poly_box", "split_nonneg",
    "verify_certificate", "verify_conditions",
]
