"""Exact Gaussian rationals: complex numbers with Fraction parts.

Möbius sums and Catalan identities must stay integer-exact, so every
coefficient in the algebra is one of these rather than a float complex.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Complex, Rational

_ZERO = Fraction(0)


class GaussQ:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, Rational):
            return cls(x)
        if isinstance(x, float):
            return cls(Fraction(x))
        if isinstance(x, Complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, str):
            return parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussQ")

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def __add__(self, other):
        o = GaussQ.coerce(other)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussQ.coerce(other)
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussQ.coerce(other) - self

    def __mul__(self, other):
        o = GaussQ.coerce(other)
        if not self.im and not o.im:
            return GaussQ(self.re * o.re, _ZERO)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussQ":
        return GaussQ(self.re, -self.im) if self.im else self

    def is_integer(self) -> bool:
        return not self.im and self.re.denominator == 1

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussQ({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self) -> dict:
        return {"re": _frac_str(self.re), "im": _frac_str(self.im)}


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse(text: str) -> GaussQ:
    """Parse a real rational like ``"3/2"`` or ``"-4"``."""
    try:
        return GaussQ(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {text!r}") from None


def from_json(doc: dict) -> GaussQ:
    return GaussQ(Fraction(doc.get("re", "0")), Fraction(doc.get("im", "0")))


ZERO = GaussQ(0)
ONE = GaussQ(1)
