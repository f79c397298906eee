"""Exact arithmetic in a single real quadratic field Q(sqrt(r))."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, total_ordering

from .errors import MixedRadicand


@lru_cache(maxsize=4096)
def _split_square(m: int):
    """Write ``m = f*f*r`` with ``r`` square-free; return ``(f, r)``."""
    f, r = 1, m
    p = 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            f *= p
        p += 1
    return f, r


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class QuadraticNumber:
    """``a + c*sqrt(r)`` with rational ``a, c`` and square-free integer ``r > 1``.

    Values with ``c == 0`` are plain rationals and mix freely with any field;
    combining two genuinely irrational values over different radicands raises
    :class:`MixedRadicand`.
    """

    __slots__ = ("a", "c", "r")

    @classmethod
    def _make(cls, a: Fraction, c: Fraction, r: int) -> "QuadraticNumber":
        # r is already square-free (or 1); skips normalisation on hot paths
        self = object.__new__(cls)
        if c == 0:
            r = 1
        self.a, self.c, self.r = a, c, r
        return self

    def __init__(self, a=0, c=0, r=1):
        a, c, r = Fraction(a), Fraction(c), int(r)
        if r < 0:
            raise ValueError("negative radicand")
        f, r = _split_square(r) if r > 1 else (1, r)
        c *= f
        if r <= 1:
            a, c, r = a + c * r, Fraction(0), 1
        if c == 0:
            r = 1
        self.a, self.c, self.r = a, c, r

    @classmethod
    def sqrt(cls, value) -> "QuadraticNumber":
        """Exact square root of a nonnegative rational."""
        q = Fraction(value)
        if q < 0:
            raise ValueError("square root of a negative number")
        return cls(0, Fraction(1, q.denominator), q.numerator * q.denominator)

    @property
    def is_rational(self) -> bool:
        return self.c == 0

    def to_fraction(self) -> Fraction:
        if self.c != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def sign(self) -> int:
        sa, sc = _sgn(self.a), _sgn(self.c)
        if sc == 0:
            return sa
        if sa >= 0 and sc > 0:
            return 1
        if sa <= 0 and sc < 0:
            return -1
        return sa if self.a * self.a > self.c * self.c * self.r else sc

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber._make(self.a, -self.c, self.r)

    def norm(self) -> Fraction:
        return self.a * self.a - self.c * self.c * self.r

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, QuadraticNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber._make(Fraction(other), Fraction(0), 1)
        return NotImplemented

    def _radicand(self, other) -> int:
        if self.c == 0:
            return other.r
        if other.c != 0 and other.r != self.r:
            raise MixedRadicand(f"sqrt({self.r}) and sqrt({other.r}) in one expression")
        return self.r

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticNumber._make(self.a + other.a, self.c + other.c, self._radicand(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber._make(-self.a, -self.c, self.r)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        r = self._radicand(other)
        return QuadraticNumber._make(
            self.a * other.a + self.c * other.c * r,
            self.a * other.c + self.c * other.a,
            r,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadraticNumber._make(self.a / nrm, -self.c / nrm, self.r)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadraticNumber(1)
        for _ in range(k):
            out = out * self
        return out

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.a == other.a and self.c == other.c and (self.c == 0 or self.r == other.r)

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() < 0

    def __hash__(self):
        return hash(self.a) if self.c == 0 else hash((self.a, self.c, self.r))

    def __float__(self):
        return float(self.a) + float(self.c) * math.sqrt(self.r)

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.c}, {self.r})"

    def __str__(self):
        if self.c == 0:
            return str(self.a)
        sign = "+" if self.c > 0 else "-"
        coef = abs(self.c)
        rad = f"sqrt({self.r})" if coef == 1 else f"{coef}*sqrt({self.r})"
        return rad if self.a == 0 and sign == "+" else f"{self.a} {sign} {rad}"
