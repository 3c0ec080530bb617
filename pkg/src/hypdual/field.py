"""Exact arithmetic over Q and Q(i).

Rationals are the stdlib :class:`fractions.Fraction`.  Gaussian rationals are
stored as ``(x + y*i) / d`` with integer ``x, y`` and ``d > 0`` reduced so that
``gcd(x, y, d) == 1``; this keeps multiplication down to a handful of bigint
operations and one gcd, which matters once series coefficients get long.

Text form: ``"p/q"`` for a rational, ``"re+im*i"`` / ``"re-im*i"`` for a
Gaussian rational with nonzero imaginary part, e.g. ``"1/2-3/4*i"``.
"""
from __future__ import annotations

import re as _re
from fractions import Fraction
from math import gcd
from numbers import Rational as _RationalABC

from .errors import DivisionByZero

Rational = Fraction

__all__ = ["Rational", "GaussianRational", "GR", "ZERO", "ONE", "I", "as_gaussian"]


def _ratio(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class GaussianRational:
    """Immutable element of Q(i)."""

    __slots__ = ("_x", "_y", "_d")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational) and im == 0:
            self._x, self._y, self._d = re._x, re._y, re._d
            return
        if isinstance(re, str) and im == 0:
            parsed = GaussianRational.parse(re)
            self._x, self._y, self._d = parsed._x, parsed._y, parsed._d
            return
        fr, fi = _ratio(re), _ratio(im)
        d = fr.denominator * fi.denominator // gcd(fr.denominator, fi.denominator)
        self._set(fr.numerator * (d // fr.denominator), fi.numerator * (d // fi.denominator), d)

    def _set(self, x: int, y: int, d: int) -> None:
        if d < 0:
            x, y, d = -x, -y, -d
        g = gcd(gcd(x, y), d)
        if g != 1:
            x //= g
            y //= g
            d //= g
        self._x, self._y, self._d = x, y, d

    @classmethod
    def _raw(cls, x: int, y: int, d: int) -> "GaussianRational":
        obj = cls.__new__(cls)
        obj._set(x, y, d)
        return obj

    # -- components ---------------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self._x, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._y, self._d)

    def is_zero(self) -> bool:
        return self._x == 0 and self._y == 0

    def is_real(self) -> bool:
        return self._y == 0

    def is_integer(self) -> bool:
        """True iff the value lies in Z (imaginary part 0, denominator 1)."""
        return self._y == 0 and self._d == 1

    def norm_squared(self) -> Fraction:
        return Fraction(self._x * self._x + self._y * self._y, self._d * self._d)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._x, -self._y, self._d)

    def inv(self) -> "GaussianRational":
        n = self._x * self._x + self._y * self._y
        if n == 0:
            raise DivisionByZero("inverse of zero")
        # d / (x + iy) = d (x - iy) / (x^2 + y^2)
        return GaussianRational._raw(self._d * self._x, -self._d * self._y, n)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self._d == o._d:
            return GaussianRational._raw(self._x + o._x, self._y + o._y, self._d)
        return GaussianRational._raw(
            self._x * o._d + o._x * self._d, self._y * o._d + o._y * self._d, self._d * o._d
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._x, -self._y, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self._y == 0 and o._y == 0:
            return GaussianRational._raw(self._x * o._x, 0, self._d * o._d)
        return GaussianRational._raw(
            self._x * o._x - self._y * o._y, self._x * o._y + self._y * o._x, self._d * o._d
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        if self._y == 0:
            return GaussianRational._raw(self._x**n, 0, self._d**n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / conversion -------------------------------------------

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self._x == o._x and self._y == o._y and self._d == o._d

    def __hash__(self):
        if self._y == 0:
            return hash(Fraction(self._x, self._d))
        return hash((Fraction(self._x, self._d), Fraction(self._y, self._d)))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"

    def __str__(self):
        if self._y == 0:
            return str(self.re)
        im = self.im
        sign = "-" if im < 0 else "+"
        return f"{self.re}{sign}{abs(im)}*i"

    _IMAG = _re.compile(r"^(?P<coef>[+-]?[^+-]*?)\*?i$")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"3"``, ``"-1/2"``, ``"1/2-3/4*i"``, ``"2*i"``, ``"-i"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty Gaussian rational")
        if not s.endswith("i"):
            return cls(_ratio(s))
        # split at the last sign that is not the leading one
        cut = max(s.rfind("+"), s.rfind("-"))
        if cut > 0:
            re_part, im_part = s[:cut], s[cut:]
        else:
            re_part, im_part = "0", s
        m = cls._IMAG.match(im_part)
        if m is None:
            raise ValueError(f"malformed Gaussian rational {text!r}")
        coef = m.group("coef")
        if coef in ("", "+"):
            coef = "1"
        elif coef == "-":
            coef = "-1"
        return cls(_ratio(re_part), _ratio(coef))


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        f = Fraction(value)
        return GaussianRational._raw(f.numerator, 0, f.denominator)
    return NotImplemented


def as_gaussian(value) -> GaussianRational:
    """Convert int, Fraction, string or GaussianRational to GaussianRational."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, str):
        return GaussianRational.parse(value)
    return GaussianRational(value)


GR = GaussianRational
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
