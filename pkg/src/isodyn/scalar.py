"""Exact Gaussian-rational scalars.

Exact coefficients live in Q(i).  Each part is a ``gmpy2.mpq`` when gmpy2 is
importable and a :class:`fractions.Fraction` otherwise.  Float coefficients are
plain Python ``complex`` values; the two never mix.
"""
from __future__ import annotations

import numbers
from fractions import Fraction

from .errors import ModeMismatch

try:  # pragma: no cover - depends on environment
    from gmpy2 import mpq as Q

    _RATIONAL_TYPES = (type(Q(0)), Fraction, int)
except ImportError:  # pragma: no cover
    Q = Fraction
    _RATIONAL_TYPES = (Fraction, int)

EXACT = "exact"
FLOAT = "float"


def to_rational(x):
    """Convert an int, Fraction, mpq, finite float or ``"p/q"`` string to ``Q``."""
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, str):
        return Q(Fraction(x.strip()))
    if isinstance(x, float):
        return Q(Fraction(x))
    if isinstance(x, _RATIONAL_TYPES):
        return Q(x)
    if isinstance(x, numbers.Rational):
        return Q(x.numerator, x.denominator)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class GaussianRational:
    """Immutable element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_rational(re)
        self.im = to_rational(im)

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def from_complex(cls, z):
        """Exact binary value of a complex double."""
        z = complex(z)
        return cls(Fraction(z.real), Fraction(z.imag))

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (complex, float)) and not isinstance(x, numbers.Rational):
            raise ModeMismatch(f"float value {x!r} used where an exact scalar is required")
        return cls(x)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RATIONAL_TYPES):
            return self.im == 0 and self.re == other
        return NotImplemented

    def _other(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, _RATIONAL_TYPES):
            return GaussianRational._raw(Q(other), Q(0))
        if isinstance(other, (complex, float)):
            raise ModeMismatch("cannot combine an exact scalar with a float")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        c, d = o.re, o.im
        if not d:
            if not c:
                raise ZeroDivisionError("division by exact zero")
            return GaussianRational._raw(self.re / c, self.im / c)
        n = c * c + d * d
        a, b = self.re, self.im
        return GaussianRational._raw((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (GaussianRational._raw(Q(1), Q(0)) / self) ** (-k)
        result = GaussianRational._raw(Q(1), Q(0))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def norm2(self):
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def to_json(self):
        return [_rat_str(self.re), _rat_str(self.im)]


def _rat_str(q):
    q = Fraction(int(q.numerator), int(q.denominator))
    return str(q)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def is_exact_scalar(x):
    return isinstance(x, GaussianRational) or isinstance(x, _RATIONAL_TYPES)
