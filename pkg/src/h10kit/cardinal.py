from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class Cardinal:
    """A bound on solution counts: ``Finite(k)`` (k >= 2), ``OMEGA`` or ``OMEGA_ONE``.

    "Fewer than omega" means finitely many; "fewer than omega_1" means
    countably many, i.e. no restriction on subsets of N^n.
    """

    kind: str  # "finite" | "omega" | "omega1"
    k: Optional[int] = None

    def __post_init__(self):
        if self.kind == "finite":
            if self.k is None or self.k < 2:
                raise ValueError("Finite(k) requires k >= 2")
        elif self.kind in ("omega", "omega1"):
            if self.k is not None:
                raise ValueError(f"{self.kind} takes no k")
        else:
            raise ValueError(f"unknown cardinal kind {self.kind!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def admits(self, count: int) -> bool:
        """Whether ``count`` (a finite number of solutions) is below this cardinal."""
        return count < self.k if self.is_finite else True

    def rank(self):
        return {"finite": (0, self.k or 0), "omega": (1, 0), "omega1": (2, 0)}[self.kind]

    def __le__(self, other: "Cardinal") -> bool:
        return self.rank() <= other.rank()

    def __lt__(self, other: "Cardinal") -> bool:
        return self.rank() < other.rank()

    def __str__(self):
        return str(self.k) if self.is_finite else self.kind


def Finite(k: int) -> Cardinal:  # noqa: N802
    return Cardinal("finite", k)


OMEGA = Cardinal("omega")
OMEGA_ONE = Cardinal("omega1")


def parse_cardinal(text: str) -> Cardinal:
    t = text.strip().lower()
    if t in ("omega", "w", "ω"):
        return OMEGA
    if t in ("omega1", "omega_1", "w1", "ω1", "ω₁"):
        return OMEGA_ONE
    try:
        return Finite(int(t))
    except ValueError:
        raise ValueError(f"cardinal must be an integer >= 2, 'omega' or 'omega1', got {text!r}") from None
