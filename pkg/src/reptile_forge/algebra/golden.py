"""Exact arithmetic in the golden-ratio field Q(phi), phi^2 = phi + 1.

Elements are a + b*phi with rational a, b.  The determinant identities for
the two-angle path configuration live in this field, so all reductions of
1/phi and 1/phi^2 happen exactly (1/phi = phi - 1, 1/phi^2 = 2 - phi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import intpoly as ip
from .algebraic import AlgebraicReal

# Fibonacci-convergent bracket of phi (consecutive ratios alternate sides)
_PHI_LO = Fraction(4807526976, 2971215073)  # F(48)/F(47), below phi
_PHI_HI = Fraction(2971215073, 1836311903)  # F(47)/F(46), above phi


@dataclass(frozen=True)
class Golden:
    """a + b*phi with exact rational coordinates."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "Golden":
        if isinstance(x, Golden):
            return x
        return Golden(Fraction(x), Fraction(0))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __add__(self, other):
        o = Golden.of(other)
        return Golden(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Golden(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-Golden.of(other))

    def __rsub__(self, other):
        return Golden.of(other) + (-self)

    def __mul__(self, other):
        o = Golden.of(other)
        # (a + b phi)(c + d phi) = ac + (ad + bc) phi + bd (phi + 1)
        return Golden(self.a * o.a + self.b * o.b, self.a * o.b + self.b * o.a + self.b * o.b)

    __rmul__ = __mul__

    def inverse(self) -> "Golden":
        # conjugate is a + b(1 - phi); norm = a^2 + ab - b^2
        n = self.a * self.a + self.a * self.b - self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(phi)")
        return Golden((self.a + self.b) / n, -self.b / n)

    def __truediv__(self, other):
        return self * Golden.of(other).inverse()

    def __rtruediv__(self, other):
        return Golden.of(other) * self.inverse()

    def __eq__(self, other):
        o = Golden.of(other) if isinstance(other, (Golden, int, Fraction)) else None
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def sign(self) -> int:
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        lo = self.a + self.b * (_PHI_LO if self.b > 0 else _PHI_HI)
        hi = self.a + self.b * (_PHI_HI if self.b > 0 else _PHI_LO)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        # straddles the dyadic bracket: decide exactly via the conjugate norm
        # a + b phi = 0 is impossible unless a = b = 0, so compare a/b to -phi
        val = self.to_algebraic()
        return val.sign()

    def to_algebraic(self) -> AlgebraicReal:
        """The same value as an exact algebraic real."""
        if self.b == 0:
            return AlgebraicReal.from_rational(self.a)
        a, b = self.a, self.b
        # x = a + b phi  =>  x^2 - (2a + b) x + (a^2 + a b - b^2) = 0
        coeffs = [a * a + a * b - b * b, -(2 * a + b), Fraction(1)]
        den = math.lcm(*(c.denominator for c in coeffs))
        mp = ip.poly(int(c * den) for c in coeffs)
        lo = a + b * (_PHI_LO if b > 0 else _PHI_HI)
        hi = a + b * (_PHI_HI if b > 0 else _PHI_LO)
        return AlgebraicReal.from_root(mp, lo, hi)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * (1 + 5**0.5) / 2

    def __repr__(self) -> str:
        if self.b == 0:
            return f"Golden({self.a})"
        return f"Golden({self.a} + {self.b}*phi)"

    def to_json(self) -> str:
        return f"{self.a}+{self.b}*phi"

    @staticmethod
    def from_json(s: str) -> "Golden":
        head, _, tail = s.partition("+")
        if not tail.endswith("*phi"):
            raise ValueError(f"malformed golden literal: {s!r}")
        return Golden(Fraction(head), Fraction(tail[:-4]))


PHI = Golden(Fraction(0), Fraction(1))
INV_PHI = Golden(Fraction(-1), Fraction(1))  # 1/phi = phi - 1
INV_PHI2 = Golden(Fraction(2), Fraction(-1))  # 1/phi^2 = 2 - phi
