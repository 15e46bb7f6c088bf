"""Gaussian rational numbers: the exact coefficient field for everything else.

A value is ``re + im*i`` with both parts ``fractions.Fraction``, so every
result is automatically reduced and has a positive denominator.  Values are
immutable and safe to share between threads.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

__all__ = ["GaussianRational", "GQ_ZERO", "GQ_ONE", "parse_gq", "format_gq"]


class GaussianRational:
    """An element a + b*i of Q(i), with a, b reduced rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        if not other:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b, c, d = self.re, self.im, other.re, other.im
        n = c * c + d * d
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm re**2 + im**2 (a nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    # -- comparisons and hashing -----------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_gq(self)

    # -- convenience -----------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "GaussianRational":
        return GaussianRational(n)

    def is_rational(self) -> bool:
        return self.im == 0


GQ_ZERO = GaussianRational(0)
GQ_ONE = GaussianRational(1)


_RAT = r"[+-]?\d+(?:/\d+)?"
_GQ_RE = _re.compile(
    rf"^\s*(?P<re>{_RAT})?\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)\s*\*\s*i)?\s*$"
)
_IM_ONLY_RE = _re.compile(rf"^\s*(?P<im>{_RAT})\s*\*\s*i\s*$")


def parse_gq(text: str) -> GaussianRational:
    """Parse "p/q", "p/q+r/s*i" or "p/q-r/s*i" (plain integers allowed)."""
    m = _IM_ONLY_RE.match(text)
    if m:
        return GaussianRational(0, Fraction(m.group("im")))
    m = _GQ_RE.match(text)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"not a Gaussian rational literal: {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") is not None else Fraction(0)
    im_part = Fraction(0)
    if m.group("im") is not None:
        im_part = Fraction(m.group("im"))
        if m.group("sign") == "-":
            im_part = -im_part
    return GaussianRational(re_part, im_part)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_gq(z: GaussianRational) -> str:
    """Canonical string form; inverse of parse_gq on its own output."""
    if z.im == 0:
        return _frac_str(z.re)
    sign = "+" if z.im > 0 else "-"
    return f"{_frac_str(z.re)}{sign}{_frac_str(abs(z.im))}*i"
