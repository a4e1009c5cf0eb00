"""Single-equation encoding of a system: the sum of squared residuals."""

from __future__ import annotations

from .esystem import Add, EEquation, ESystem, Mul, Unit
from .poly import Polynomial


def residual(e: EEquation, n: int) -> Polynomial:
    """The polynomial that vanishes exactly where ``e`` holds."""
    var = lambda k: Polynomial.variable(k, n)  # noqa: E731
    if isinstance(e, Unit):
        return var(e.k) - 1
    if isinstance(e, Add):
        return var(e.i) + var(e.j) - var(e.k)
    if isinstance(e, Mul):
        return var(e.i) * var(e.j) - var(e.k)
    raise TypeError(f"not an atomic equation: {e!r}")


def dioph(system: ESystem) -> Polynomial:
    if not system.equations:
        raise ValueError("dioph needs a non-empty system")
    total = Polynomial({}, system.n)
    for e in system.sorted_equations():
        total = total + residual(e, system.n) ** 2
    return total
