"""Simultaneous-iteration root finding with multiplicity clustering."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import DegenerateInput, SolverDiverged
from .polynomial import ComplexPoly

__all__ = ["RootSet", "find_roots", "ring_guesses", "cluster_roots", "aberth_logderiv"]


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicities; ``residual_bound`` bounds ``|f(root)|``."""

    roots: tuple
    residual_bound: float
    conversion_error: float = 0.0
    iterations: int = 0
    raw: tuple = field(default=(), repr=False)

    @property
    def degree(self):
        return sum(m for _, m in self.roots)

    def expanded(self):
        out = []
        for r, m in self.roots:
            out.extend([r] * m)
        return out

    def values(self):
        return np.array([r for r, _ in self.roots], dtype=complex)


def ring_guesses(n, center=0j, radius=1.0, offset=0.4):
    """``n`` points on a slightly perturbed ring; deterministic."""
    k = np.arange(n)
    angles = 2 * np.pi * k / n + offset
    radii = radius * (1.0 + 0.01 * np.cos(3.7 * k + 1.3))
    return center + radii * np.exp(1j * angles)


def _root_radius(c_asc):
    """Geometric-mean root modulus, a good ring radius for Aberth starts."""
    n = len(c_asc) - 1
    mags = np.abs(c_asc)
    nz = np.nonzero(mags)[0]
    if mags[0] > 0:
        r = (mags[0] / mags[-1]) ** (1.0 / n)
    else:
        r = 1.0
    # Fujiwara-type bound keeps the ring from collapsing on lopsided inputs
    bound = max((mags[k] / mags[-1]) ** (1.0 / (n - k)) for k in nz if k < n) if len(nz) > 1 else 1.0
    return float(min(max(r, 1e-3 * bound), bound) or 1.0)


def cluster_roots(values, tol, max_radius=1e-3):
    """Group approximations of multiple roots.

    A group of ``m`` approximations counts as one m-fold root when every
    member lies within ``min(tol**(1/m), max_radius) * (1 + |centre|)`` of
    the group centre; perturbing an m-fold root by ``tol`` spreads it over
    roughly ``tol**(1/m)``, and the cap keeps genuine clusters of distinct
    roots apart when ``m`` is large.
    Each seed takes the largest admissible group among its nearest
    neighbours.  Returns ``[(centre, m), ...]``.
    """
    pts = np.array([complex(v) for v in values], dtype=complex)
    n = len(pts)
    free = np.ones(n, dtype=bool)
    out = []
    for i in range(n):
        if not free[i]:
            continue
        idx = np.nonzero(free)[0]
        order = idx[np.argsort(np.abs(pts[idx] - pts[i]), kind="stable")]
        best = order[:1]
        for m in range(2, len(order) + 1):
            group = order[:m]
            centre = pts[group].mean()
            if np.max(np.abs(pts[group] - centre)) < min(tol ** (1.0 / m), max_radius) * (1.0 + abs(centre)):
                best = group
            elif abs(pts[order[m - 1]] - pts[i]) > 2.0 * max_radius * (1.0 + abs(pts[i])):
                break
        free[best] = False
        out.append((complex(pts[best].mean()), len(best)))
    return out


def _polish(c_desc, z, steps=2):
    dc = np.polyder(c_desc)
    for _ in range(steps):
        p = np.polyval(c_desc, z)
        dp = np.polyval(dc, z)
        ok = np.abs(dp) > 0
        step = np.zeros_like(z)
        step[ok] = p[ok] / dp[ok]
        # only accept steps that reduce the residual
        trial = z - step
        better = np.abs(np.polyval(c_desc, trial)) <= np.abs(p)
        z = np.where(better, trial, z)
    return z


def _polish_multiple(c_desc, centre, m, steps=3):
    """Newton on the (m-1)-th derivative, where an m-fold root is simple."""
    if m < 2:
        return centre
    g = np.polyder(c_desc, m - 1)
    dg = np.polyder(g)
    z = centre
    for _ in range(steps):
        gv = np.polyval(g, z)
        dv = np.polyval(dg, z)
        if dv == 0:
            break
        trial = z - gv / dv
        if abs(np.polyval(g, trial)) > abs(gv):
            break
        z = trial
    return complex(z)


def find_roots(f: ComplexPoly, tol=1e-12, maxiter=800, backend=None) -> RootSet:
    """Roots of ``f`` by Aberth iteration, Newton polishing and clustering.

    Exact inputs are rounded to complex doubles; the rounding error is
    recorded in ``conversion_error``.  ``tol`` sets both the convergence test
    and the clustering radius (``tol**(1/m)`` for an m-fold root).
    """
    if f.is_zero or f.degree < 1:
        raise DegenerateInput("find_roots needs degree >= 1")
    conv_err = f.conversion_error() if f.is_exact else 0.0
    c = f.to_numpy()
    # zero roots are split off exactly
    k0 = 0
    while c[k0] == 0:
        k0 += 1
    c = c[k0:]
    n = len(c) - 1
    found = []
    iterations = 0
    if n == 1:
        found = [complex(-c[0] / c[1])]
    elif n >= 2:
        kern = _backend.get_kernels(backend)
        c_desc = c[::-1].copy()
        centre = -c[n - 1] / (n * c[n])
        z0 = ring_guesses(n, 0j, _root_radius(c))
        z, iterations, ok = kern.aberth_coeffs(c_desc, z0, 1e-15, maxiter)
        if not ok or not np.all(np.isfinite(z)):
            # retry around the centroid with a wider ring before giving up
            z0 = ring_guesses(n, centre, 2.0 * _root_radius(c), offset=1.1)
            z, it2, ok = kern.aberth_coeffs(c_desc, z0, 1e-15, maxiter)
            iterations += it2
            if not ok or not np.all(np.isfinite(z)):
                raise SolverDiverged(f"Aberth iteration did not converge in {maxiter} steps",
                                     partial=tuple(z))
        z = _polish(c_desc, np.asarray(z))
        found = list(z)
    raw = [0j] * k0 + found
    clusters = cluster_roots(found, tol)
    c_desc_full = c[::-1]
    polished = [(_polish_multiple(c_desc_full, ctr, m), m) for ctr, m in clusters]
    if k0:
        polished = [(0j, k0)] + polished
    values = np.array([r for r, _ in polished], dtype=complex)
    full_desc = f.to_numpy()[::-1]
    resid = float(np.max(np.abs(np.polyval(full_desc, values)))) if len(values) else 0.0
    return RootSet(tuple(polished), resid, conv_err, iterations, tuple(raw))


def aberth_logderiv(logderiv, z0, tol=1e-15, maxiter=500):
    """Generic numpy Aberth driver given ``f'/f`` as a vectorized callable.

    Used for functions that are evaluated stably without a monomial
    coefficient vector (three-term recurrences, root-product forms).
    """
    from ._kernels_py import _aberth_sum

    z = np.array(z0, dtype=complex)
    active = np.ones(len(z), dtype=bool)
    for it in range(1, maxiter + 1):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            corr = 1.0 / (logderiv(z) - _aberth_sum(z))
        corr[~np.isfinite(corr)] = 0.0
        corr[~active] = 0.0
        z = z - corr
        active &= np.abs(corr) > tol * (1.0 + np.abs(z))
        if not active.any():
            return z, it, True
    return z, maxiter, False


def chordal(z, w):
    """Chordal distance on the Riemann sphere; ``inf`` is the north pole."""
    zi, wi = _isinf(z), _isinf(w)
    if zi and wi:
        return 0.0
    if zi:
        return 2.0 / math.hypot(1.0, abs(w))
    if wi:
        return 2.0 / math.hypot(1.0, abs(z))
    return 2.0 * abs(z - w) / (math.hypot(1.0, abs(z)) * math.hypot(1.0, abs(w)))


def _isinf(z):
    z = complex(z)
    return math.isinf(z.real) or math.isinf(z.imag)
