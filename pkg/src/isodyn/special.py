"""Legendre and Laguerre polynomials from their three-term recurrences.

Exact coefficients come from the recurrence over Q; float evaluation of
``P'/P`` runs the same recurrence on values with power-of-two rescaling,
which stays accurate at degrees where the monomial basis is useless.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import DegenerateInput
from .polynomial import ComplexPoly
from .scalar import EXACT

__all__ = ["gen_legendre", "gen_laguerre", "recurrence", "logderiv", "newton_step", "KINDS"]

KINDS = ("legendre", "laguerre")


def recurrence(kind, k):
    """``(a, b, c)`` with ``P_{k+1} = (a z + b) P_k - c P_{k-1}``."""
    if kind == "legendre":
        return Fraction(2 * k + 1, k + 1), Fraction(0), Fraction(k, k + 1)
    if kind == "laguerre":
        return Fraction(-1, k + 1), Fraction(2 * k + 1, k + 1), Fraction(k, k + 1)
    raise DegenerateInput(f"unknown family {kind!r}")


def _generate(kind, n, monic=False):
    if n < 0:
        raise DegenerateInput("n must be nonnegative")
    prev = [Fraction(0)]
    cur = [Fraction(1)]
    for k in range(n):
        a, b, c = recurrence(kind, k)
        nxt = [Fraction(0)] * (len(cur) + 1)
        for i, v in enumerate(cur):
            nxt[i + 1] += a * v
            nxt[i] += b * v
        for i, v in enumerate(prev):
            nxt[i] -= c * v
        prev, cur = cur, nxt
    if monic:
        lead = cur[-1]
        cur = [v / lead for v in cur]
    return ComplexPoly(cur, EXACT)


def gen_legendre(n: int, monic: bool = False) -> ComplexPoly:
    """Exact ``P_n`` with ``P_0 = 1``, ``P_1 = z``; ``monic=True`` rescales to leading coefficient 1."""
    return _generate("legendre", n, monic)


def gen_laguerre(n: int, monic: bool = False) -> ComplexPoly:
    """Exact ``L_n`` with ``L_0 = 1``, ``L_1 = 1 - z``."""
    return _generate("laguerre", n, monic)


def _values(kind, n, z):
    """Rescaled ``(P_n(z), P_n'(z))``; only their ratio is meaningful."""
    z = np.asarray(z, dtype=complex)
    p0 = np.zeros_like(z)
    p1 = np.ones_like(z)
    d0 = np.zeros_like(z)
    d1 = np.zeros_like(z)
    for k in range(n):
        a, b, c = (float(v) for v in recurrence(kind, k))
        lin = a * z + b
        p2 = lin * p1 - c * p0
        d2 = a * p1 + lin * d1 - c * d0
        p0, p1, d0, d1 = p1, p2, d1, d2
        # common power-of-two rescaling keeps the ratio and avoids overflow
        big = np.maximum(np.abs(p1), np.abs(d1))
        _, e = np.frexp(np.where(big > 0, big, 1.0))
        s = np.ldexp(1.0, -e)
        p0, p1, d0, d1 = p0 * s, p1 * s, d0 * s, d1 * s
    return p1, d1


def logderiv(kind, n, z):
    """``P_n'(z) / P_n(z)`` evaluated by the recurrence, vectorized over ``z``."""
    p, d = _values(kind, n, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        return d / p


def newton_step(kind, n, z):
    """``P_n(z) / P_n'(z)``; exactly zero at a computed root where ``P_n`` vanishes."""
    p, d = _values(kind, n, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        return p / d
