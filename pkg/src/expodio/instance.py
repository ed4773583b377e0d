"""Problem statement type for equations of the form a^x + b = c^y."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class EquationInstance:
    """The parameter triple (a, b, c) of the equation a^x + b = c^y.

    Solutions are sought over positive integers x, y.  The parameter
    domain is a >= 2, c >= 2, b >= 1; anything else is rejected at
    construction time.
    """

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        for name, value in (("a", self.a), ("b", self.b), ("c", self.c)):
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"parameter {name} must be an integer, got {value!r}")
        if self.a < 2:
            raise ValueError(f"parameter a must be >= 2, got {self.a}")
        if self.c < 2:
            raise ValueError(f"parameter c must be >= 2, got {self.c}")
        if self.b < 1:
            raise ValueError(f"parameter b must be >= 1, got {self.b}")

    def equation_text(self) -> str:
        """Spelled-out equation, e.g. ``5 ^ x + 3 = 2 ^ y``."""
        return f"{self.a} ^ x + {self.b} = {self.c} ^ y"

    def is_solution(self, x: int, y: int) -> bool:
        """Exact big-integer check of a^x + b = c^y for positive x, y."""
        return x >= 1 and y >= 1 and self.a**x + self.b == self.c**y
