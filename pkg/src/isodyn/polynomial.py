"""Univariate polynomials over Q(i) (exact) or complex doubles (float)."""
from __future__ import annotations

import math

import numpy as np

from .errors import DegenerateInput, ModeMismatch
from .scalar import EXACT, FLOAT, GaussianRational, Q, is_exact_scalar

NEG_INF = float("-inf")

_EZERO = GaussianRational(0)
_EONE = GaussianRational(1)


def _coerce(c, mode):
    if mode == EXACT:
        return GaussianRational.coerce(c)
    if isinstance(c, GaussianRational):
        raise ModeMismatch("exact coefficient passed to a float polynomial")
    return complex(c)


def _infer_mode(coeffs):
    if all(is_exact_scalar(c) or isinstance(c, str) for c in coeffs):
        return EXACT
    if any(isinstance(c, GaussianRational) for c in coeffs):
        raise ModeMismatch("mixed exact and float coefficients")
    return FLOAT


class ComplexPoly:
    """Polynomial with ascending coefficients; ``coeffs[k]`` multiplies ``z**k``.

    Trailing zeros are trimmed on construction, so ``lc`` is nonzero unless the
    polynomial is identically zero.  Exact polynomials hold
    :class:`GaussianRational` coefficients, float ones hold ``complex``.
    """

    __slots__ = ("coeffs", "mode")

    def __init__(self, coeffs=(), mode=None):
        coeffs = coeffs.tolist() if isinstance(coeffs, np.ndarray) else list(coeffs)
        if mode is None:
            mode = _infer_mode(coeffs) if coeffs else EXACT
        if mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {mode!r}")
        cs = [_coerce(c, mode) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.mode = mode

    @classmethod
    def _raw(cls, coeffs, mode):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(cs)
        obj.mode = mode
        return obj

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, mode=EXACT):
        return cls._raw((), mode)

    @classmethod
    def constant(cls, c, mode=None):
        return cls([c], mode)

    @classmethod
    def z(cls, mode=EXACT):
        return cls([0, 1], mode)

    @classmethod
    def from_roots(cls, roots, mode=None, lead=1):
        roots = list(roots)
        if mode is None:
            mode = _infer_mode(roots + [lead])
        p = cls([lead], mode)
        for r in roots:
            p = p * cls([-_coerce(r, mode), 1], mode)
        return p

    @classmethod
    def from_descending(cls, coeffs, mode=None):
        return cls(list(coeffs)[::-1], mode)

    # basic properties --------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise DegenerateInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_exact(self):
        return self.mode == EXACT

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _EZERO if self.mode == EXACT else 0j

    def _zero(self):
        return _EZERO if self.mode == EXACT else 0j

    def _one(self):
        return _EONE if self.mode == EXACT else 1 + 0j

    def __repr__(self):
        return f"ComplexPoly({[str(c) if self.mode == EXACT else c for c in self.coeffs]}, mode={self.mode!r})"

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return self.mode == other.mode and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.mode, self.coeffs))

    # arithmetic -------------------------------------------------------
    def _check(self, other):
        if isinstance(other, ComplexPoly):
            if other.mode != self.mode:
                raise ModeMismatch(f"cannot combine {self.mode} and {other.mode} polynomials")
            return other
        return ComplexPoly([other], self.mode)

    def __add__(self, other):
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return ComplexPoly._raw(out, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return ComplexPoly._raw([-c for c in self.coeffs], self.mode)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, ComplexPoly):
            c = _coerce(other, self.mode)
            return ComplexPoly._raw([x * c for x in self.coeffs], self.mode)
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ComplexPoly._raw((), self.mode)
        if self.mode == FLOAT:
            return ComplexPoly._raw(np.convolve(np.array(a), np.array(b)).tolist(), FLOAT)
        out = [_EZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return ComplexPoly._raw(out, EXACT)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = ComplexPoly([1], self.mode)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        return self * c

    def shift_degree(self, k):
        """Multiply by ``z**k``."""
        if not self.coeffs:
            return self
        return ComplexPoly._raw([self._zero()] * k + list(self.coeffs), self.mode)

    def __call__(self, x):
        if self.mode == EXACT and not isinstance(x, (complex, float, np.ndarray)):
            x = GaussianRational.coerce(x)
            acc = _EZERO
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        cs = self.to_float().coeffs if self.mode == EXACT else self.coeffs
        if not cs:
            return np.zeros_like(x, dtype=complex) if isinstance(x, np.ndarray) else 0j
        return np.polyval(np.array(cs[::-1], dtype=complex), x)

    def derivative(self, k=1):
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [c * j for j, c in enumerate(cs)][1:]
        return ComplexPoly._raw(cs, self.mode)

    def divmod(self, other):
        """Long division; exact over Q(i), floating otherwise."""
        other = self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lcb = other.coeffs[-1]
        if len(rem) - 1 < db:
            return ComplexPoly._raw((), self.mode), self
        quot = [self._zero()] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lcb
            quot[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * y
            rem[k + db] = self._zero()
        return ComplexPoly._raw(quot, self.mode), ComplexPoly._raw(rem[:db], self.mode)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exquo(self, other):
        """Exact quotient; raises if the division leaves a remainder (exact mode)."""
        q, r = self.divmod(other)
        if self.mode == EXACT and not r.is_zero:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self):
        if self.is_zero:
            return self
        return self * (self._one() / self.lc)

    # conversions ----------------------------------------------------
    def to_float(self):
        if self.mode == FLOAT:
            return self
        return ComplexPoly._raw([complex(c) for c in self.coeffs], FLOAT)

    def to_exact(self):
        """Exact binary value of each float coefficient (no rounding)."""
        if self.mode == EXACT:
            return self
        return ComplexPoly._raw([GaussianRational.from_complex(c) for c in self.coeffs], EXACT)

    def to_numpy(self):
        """Ascending complex128 coefficient array."""
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def trim(self, rtol):
        """Float copy with leading coefficients below ``rtol * max|c|`` dropped."""
        f = self.to_float()
        cs = list(f.coeffs)
        if not cs:
            return f
        scale = max(abs(c) for c in cs)
        while cs and abs(cs[-1]) <= rtol * scale:
            cs.pop()
        return ComplexPoly._raw(cs, FLOAT)

    def conversion_error(self):
        """Max absolute rounding error of converting exact coefficients to float."""
        if self.mode == FLOAT:
            return 0.0
        err = 0.0
        for c in self.coeffs:
            f = complex(c)
            g = GaussianRational.from_complex(f) - c
            err = max(err, math.hypot(float(g.re), float(g.im)))
        return err

    def is_real(self):
        if self.mode == EXACT:
            return all(c.im == 0 for c in self.coeffs)
        return all(c.imag == 0 for c in self.coeffs)

    def compose_linear(self, a, b):
        """``P(a*z + b)``."""
        lin = ComplexPoly([b, a], self.mode)
        acc = ComplexPoly.zero(self.mode)
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc


def rational_poly(coeffs_ascending):
    """Exact polynomial from ints, Fractions or ``"p/q"`` strings."""
    return ComplexPoly([GaussianRational(c) if not isinstance(c, GaussianRational) else c
                        for c in coeffs_ascending], EXACT)


def gaussian(re, im=0):
    return GaussianRational(re, im)


__all__ = ["ComplexPoly", "NEG_INF", "rational_poly", "gaussian", "Q"]
