"""Exact scalar arithmetic: arbitrary-precision integers, rationals and
complex rationals.

Integers are plain Python ints and rationals are ``fractions.Fraction``
(always lowest terms, positive denominator), so the only new type here is
:class:`GaussianRational`, a complex number whose real and imaginary parts
are exact rationals.  Everything is immutable and no floating point is
used anywhere in this module.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotInvertible

__all__ = [
    "GaussianRational",
    "ZERO",
    "ONE",
    "I",
    "parse_integer",
    "parse_rational",
    "mod_inverse_class",
]

_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?")
_INTEGER_RE = re.compile(r"-?\d+")
# "re", "re+imi" or "re-imi" with no spaces, e.g. "1+4i", "-3/2-5i"
_COMPLEX_RE = re.compile(r"(?P<re>-?\d+(?:/\d+)?)(?:(?P<sign>[+-])(?P<im>\d+(?:/\d+)?)i)?")

Rationalish = "int | Fraction | GaussianRational"


def parse_integer(text: str) -> int:
    """Parse an optionally signed decimal integer, rejecting anything else."""
    if not _INTEGER_RE.fullmatch(text):
        raise ValueError(f"not a decimal integer: {text!r}")
    return int(text)


def parse_rational(text: str) -> Fraction:
    """Parse ``num`` or ``num/den`` into a Fraction in lowest terms."""
    if not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"not a rational: {text!r}")
    return Fraction(text)


def _format_rational(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number re + im*i with rational parts."""

    re: Fraction
    im: Fraction

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    # -- construction ----------------------------------------------------

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls.from_string(value)
        raise TypeError(f"cannot interpret {value!r} as a GaussianRational")

    @classmethod
    def from_string(cls, text: str) -> "GaussianRational":
        """Parse the textual forms "re", "re+imi" and "re-imi" (no spaces)."""
        m = _COMPLEX_RE.fullmatch(text)
        if m is None:
            raise ValueError(f"not a Gaussian rational: {text!r}")
        re_part = Fraction(m.group("re"))
        if m.group("im") is None:
            return cls(re_part)
        im_part = Fraction(m.group("im"))
        if m.group("sign") == "-":
            im_part = -im_part
        return cls(re_part, im_part)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError("exponent must be an int")
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = ONE
        for _ in range(exponent):
            result = result * base
        return result

    def inverse(self) -> "GaussianRational":
        """Multiplicative inverse, conjugate over norm."""
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("0 has no inverse")
        return GaussianRational(self.re / n, -self.im / n)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """re**2 + im**2, a nonnegative rational that is zero iff self is zero."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- formatting -------------------------------------------------------

    def __str__(self) -> str:
        if self.im == 0:
            return _format_rational(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{_format_rational(self.re)}{sign}{_format_rational(abs(self.im))}i"

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def mod_inverse_class(k: int, m: int, l: int) -> int:
    """Representative m*l + x0 of the inverse class of k modulo m.

    x0 is the unique solution of (k * x0) mod m == 1 with 0 < x0 < m, so the
    result satisfies (k * result) mod m == 1 for every shift l >= 0.
    """
    if m <= 1:
        raise ValueError("modulus must be greater than 1")
    if l < 0:
        raise ValueError("class shift must be nonnegative")
    if math.gcd(k, m) != 1:
        raise NotInvertible(f"{k} has no inverse modulo {m}")
    x0 = pow(k % m, -1, m)
    return m * l + x0
