"""Exact move counts: recurrences, closed forms and Q(sqrt D) arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math
from math import isqrt

__all__ = [
    "QuadraticValue",
    "UnsupportedArity",
    "CountRow",
    "count_t",
    "count_fgh",
    "count_table",
    "count_f_closed",
    "quad_pow",
    "discriminant",
    "tau",
    "tau_hat",
]


class UnsupportedArity(ValueError):
    pass


def _frac(x: int | Fraction) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QuadraticValue:
    """The exact number ``a + b*sqrt(D)`` with rational ``a``, ``b``."""

    a: Fraction
    b: Fraction
    D: int

    def __init__(self, a: int | Fraction, b: int | Fraction, D: int) -> None:
        if D <= 0:
            raise ValueError(f"D must be positive, got {D}")
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))
        object.__setattr__(self, "D", D)

    def _coerce(self, other: object) -> QuadraticValue:
        if isinstance(other, QuadraticValue):
            if other.D != self.D:
                raise ValueError(f"mixing Q(sqrt {self.D}) and Q(sqrt {other.D})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticValue(other, 0, self.D)
        return NotImplemented

    def __add__(self, other: object) -> QuadraticValue:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadraticValue(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self) -> QuadraticValue:
        return QuadraticValue(-self.a, -self.b, self.D)

    def __sub__(self, other: object) -> QuadraticValue:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadraticValue(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other: object) -> QuadraticValue:
        return -self + other

    def __mul__(self, other: object) -> QuadraticValue:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadraticValue(
            self.a * o.a + self.D * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.D,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticValue:
        return QuadraticValue(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def __truediv__(self, other: object) -> QuadraticValue:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError(f"{o} has zero norm")
        num = self * o.conjugate()
        return QuadraticValue(num.a / n, num.b / n, self.D)

    def __pow__(self, n: int) -> QuadraticValue:
        return quad_pow(self, n)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadraticValue(other, 0, self.D)
        if not isinstance(other, QuadraticValue):
            return NotImplemented
        if _is_square(self.D) and _is_square(other.D):
            return self.rational_value() == other.rational_value()
        return (self.a, self.b, self.D) == (other.a, other.b, other.D)

    def __hash__(self) -> int:
        if _is_square(self.D):
            return hash(self.rational_value())
        return hash((self.a, self.b, self.D))

    def rational_value(self) -> Fraction:
        """The value when ``D`` is a perfect square."""
        root = isqrt(self.D)
        if root * root != self.D:
            raise ValueError(f"sqrt({self.D}) is irrational")
        return self.a + self.b * root

    def __floor__(self) -> int:
        # common denominator q: value = (x + y*sqrt(D)) / q with integers x, y
        q = self.a.denominator * self.b.denominator
        x = self.a.numerator * (q // self.a.denominator)
        y = self.b.numerator * (q // self.b.denominator)
        s = y * y * self.D
        r = isqrt(s)
        if y >= 0:
            fl = r
        else:
            fl = -r if r * r == s else -r - 1
        # x + y*sqrt(D) lies in [x + fl, x + fl + 1), so dividing by q > 0
        # cannot cross an integer boundary beyond the floor of (x + fl) / q
        return (x + fl) // q

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.D**0.5

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*sqrt({self.D})"


def _is_square(d: int) -> bool:
    r = isqrt(d)
    return r * r == d


def quad_pow(v: QuadraticValue, n: int) -> QuadraticValue:
    """``v**n`` by repeated squaring."""
    if n < 0:
        raise ValueError("negative exponent")
    result = QuadraticValue(1, 0, v.D)
    base = v
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def discriminant(m: int) -> int:
    return (m + 2) ** 2 - 8


def tau(m: int) -> QuadraticValue:
    """The dominant root (m + 2 + R) / 2, R = sqrt((m+2)^2 - 8)."""
    return QuadraticValue(Fraction(m + 2, 2), Fraction(1, 2), discriminant(m))


def tau_hat(m: int) -> QuadraticValue:
    return QuadraticValue(Fraction(m + 2, 2), Fraction(-1, 2), discriminant(m))


def count_t(n: int) -> int:
    """Moves made by the straightforward binary solver: (4**n - 1) / 3."""
    if n < 0:
        raise ValueError("height must be >= 0")
    return (4**n - 1) // 3


@dataclass(frozen=True)
class CountRow:
    n: int
    f: int
    g: int
    h: int
    t: int | None = None


@lru_cache(maxsize=None)
def _fgh_rows(m: int, n_max: int) -> tuple[tuple[int, int, int], ...]:
    rows = [(0, 0, 0)]
    for _ in range(n_max):
        _, g, h = rows[-1]
        rows.append((2 * g + 1, 2 * g + (m - 1) * h + m, 2 * g + m * h + m + 1))
    return tuple(rows)


def count_fgh(n: int, m: int = 2) -> tuple[int, int, int]:
    """``(f_n, g_n, h_n)`` from the three coupled recurrences."""
    if n < 0:
        raise ValueError("height must be >= 0")
    if m < 1:
        raise ValueError("arity must be >= 1")
    return _fgh_rows(m, n)[n]


def count_table(n_max: int, m: int = 2) -> list[CountRow]:
    rows = _fgh_rows(m, n_max)
    return [
        CountRow(n, f, g, h, count_t(n) if m == 2 else None)
        for n, (f, g, h) in enumerate(rows)
    ]


def count_f_closed(n: int, m: int = 2) -> int:
    """``f_n`` as the exact floor of (R - m + 2) * tau**n / (2R).

    The conjugate term decays only when tau_hat < 1, i.e. for ``m >= 2``.
    """
    if n < 0:
        raise ValueError("height must be >= 0")
    if m < 2:
        raise UnsupportedArity(
            f"closed form needs m >= 2 (tau_hat = 1 for m = {m}); use count_fgh"
        )
    D = discriminant(m)
    root = QuadraticValue(0, 1, D)
    coeff = (root - (m - 2)) / (2 * root)
    return math.floor(coeff * quad_pow(tau(m), n))
