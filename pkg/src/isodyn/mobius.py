"""Möbius maps acting on sphere points, binary forms and divisors.

Direction convention: ``apply_form(M, P, n)`` substitutes ``(x, y) -> (a x + b y,
c x + d y)``, so the zeros of the result are the ``M^{-1}``-images of the
zeros of ``P``.  :func:`transform_rational` uses the adjugate so that roots
and poles of ``w`` move *forward* by ``M``, and the equivariance statement
checked here reads ``I(M . w) = M(I(w))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from ._parallel import map_samples
from .errors import DegenerateInput, DegreeMismatch, IsodynamicUndefined
from .isodyn_map import (INF, RationalMap, SphereDivisor, _is_inf, associated_rational,
                         critical_value_divisor, isodynamic_divisor, isodynamic_poly, validate)
from .polynomial import ComplexPoly
from .roots import chordal
from .scalar import EXACT, FLOAT, GaussianRational, is_exact_scalar

__all__ = [
    "MobiusMap",
    "DivisorMatch",
    "EquivarianceReport",
    "apply_point",
    "apply_form",
    "apply_divisor",
    "match_divisors",
    "transform_rational",
    "equivariance_check",
    "random_mobius",
    "random_conditioned_mobius",
    "random_rational_input",
    "equivariance_suite",
    "crosscheck_suite",
]


def _norm(x):
    if isinstance(x, GaussianRational):
        return x.norm2()
    return abs(complex(x)) ** 2


@dataclass(frozen=True)
class MobiusMap:
    """``z -> (a z + b) / (c z + d)``; scaled so the largest entry has modulus 1.

    Exact maps are scaled by an exact entry of maximal modulus, which makes
    that entry equal to 1.
    """

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        entries = [self.a, self.b, self.c, self.d]
        exact = all(is_exact_scalar(e) for e in entries)
        if exact:
            entries = [GaussianRational.coerce(e) for e in entries]
            big = max(entries, key=_norm)
            entries = [e / big for e in entries]
        else:
            entries = [complex(e) for e in entries]
            big = max(abs(e) for e in entries)
            if big == 0 or not math.isfinite(big):
                raise DegenerateInput("Möbius entries must be finite and not all zero")
            entries = [e / big for e in entries]
        for name, e in zip("abcd", entries):
            object.__setattr__(self, name, e)
        if not self.det:
            raise DegenerateInput("singular Möbius matrix")

    @property
    def mode(self):
        return EXACT if isinstance(self.a, GaussianRational) else FLOAT

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls, exact=True):
        one, zero = (GaussianRational(1), GaussianRational(0)) if exact else (1.0, 0.0)
        return cls(one, zero, zero, one)

    @classmethod
    def translation(cls, t):
        one = GaussianRational(1) if is_exact_scalar(t) else 1.0
        return cls(one, t, one * 0, one)

    @classmethod
    def inversion(cls, exact=True):
        one, zero = (GaussianRational(1), GaussianRational(0)) if exact else (1.0, 0.0)
        return cls(zero, one, one, zero)

    @classmethod
    def from_matrix(cls, m):
        return cls(m[0][0], m[0][1], m[1][0], m[1][1])

    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    def to_float(self):
        return MobiusMap(complex(self.a), complex(self.b), complex(self.c), complex(self.d))

    def adjugate(self):
        """The adjugate, which represents the inverse map."""
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    inverse = adjugate

    def compose(self, other):
        """``self o other`` (apply ``other`` first)."""
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return MobiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    __matmul__ = compose

    def __call__(self, z):
        return apply_point(self, z)

    def to_json(self):
        return {"m": [[complex(e).real, complex(e).imag] for e in (self.a, self.b, self.c, self.d)]}

    @classmethod
    def from_json(cls, obj):
        vals = [complex(re, im) for re, im in obj["m"]]
        return cls(*vals)


def random_mobius(rng, scale=1.0, min_det=0.1):
    """Random float map with entries ``N(0, scale)``; ``|det|`` bounded away from 0 after scaling."""
    while True:
        v = rng.standard_normal(8) * scale
        e = v[:4] + 1j * v[4:]
        M = MobiusMap(*e)
        if abs(complex(M.det)) >= min_det:
            return M


def apply_point(M: MobiusMap, z):
    """``(a z + b) / (c z + d)`` on the sphere, with ``INF`` for the point at infinity."""
    a, b, c, d = (complex(e) for e in (M.a, M.b, M.c, M.d))
    if _is_inf(z):
        return INF if c == 0 else a / c
    z = complex(z)
    num = a * z + b
    den = c * z + d
    if den == 0 or abs(num) > 1e15 * abs(den):
        return INF
    return num / den


def apply_form(M: MobiusMap, P: ComplexPoly, n=None) -> ComplexPoly:
    """Dehomogenized ``P(a x + b y, c x + d y)`` for ``P`` viewed as a form of degree ``n``.

    Zeros of the result are ``M^{-1}`` applied to zeros of ``P`` (on the sphere).
    """
    n = P.degree if n is None else int(n)
    if P.degree > n:
        raise DegenerateInput("form degree below the polynomial degree")
    mode = P.mode
    if mode == EXACT and M.mode != EXACT:
        P = P.to_float()
        mode = FLOAT
    cast = (lambda e: GaussianRational.coerce(e)) if mode == EXACT else complex
    a, b, c, d = (cast(e) for e in (M.a, M.b, M.c, M.d))
    X = ComplexPoly._raw([b, a], mode)  # a z + b
    Y = ComplexPoly._raw([d, c], mode)  # c z + d
    xp = [ComplexPoly([1], mode)]
    yp = [ComplexPoly([1], mode)]
    for _ in range(n):
        xp.append(xp[-1] * X)
        yp.append(yp[-1] * Y)
    acc = ComplexPoly.zero(mode)
    for k, ck in enumerate(P.coeffs):
        if ck:
            acc = acc + xp[k] * yp[n - k] * ck
    return acc


def apply_divisor(M: MobiusMap, D: SphereDivisor) -> SphereDivisor:
    pts = []
    for z, m in D.finite_points:
        pts.append((apply_point(M, z), m))
    if D.infinity_multiplicity:
        pts.append((apply_point(M, INF), D.infinity_multiplicity))
    fin = tuple((z, m) for z, m in pts if not _is_inf(z))
    n_inf = sum(m for z, m in pts if _is_inf(z))
    return SphereDivisor(fin, n_inf, D.total_degree)


@dataclass(frozen=True)
class DivisorMatch:
    assignment: tuple
    total_cost: float
    max_cost: float


def match_divisors(D1: SphereDivisor, D2: SphereDivisor) -> DivisorMatch:
    """Minimum total chordal cost over bijections of the expanded point lists."""
    if D1.total_degree != D2.total_degree:
        raise DegreeMismatch(f"divisor degrees differ: {D1.total_degree} vs {D2.total_degree}")
    x = D1.expanded()
    y = D2.expanded()
    if not x:
        return DivisorMatch((), 0.0, 0.0)
    cost = np.array([[chordal(u, v) for v in y] for u in x])
    rows, cols = linear_sum_assignment(cost)
    vals = cost[rows, cols]
    return DivisorMatch(tuple(zip(rows.tolist(), cols.tolist())), float(vals.sum()), float(vals.max()))


def transform_rational(w: RationalMap, M: MobiusMap) -> RationalMap:
    """Move zeros and poles of ``w`` forward by ``M``, keeping form degrees."""
    adj = M.adjugate()
    p = apply_form(adj, w.num, w.form_degree)
    q = apply_form(adj, w.den, w.pole_degree)
    if w.pole_degree == 0:
        q = ComplexPoly([1], p.mode)
    return RationalMap(p, q, w.d, w.pole_degree)


def _proportional(f: ComplexPoly, g: ComplexPoly) -> bool:
    if f.is_zero or g.is_zero:
        return f.is_zero and g.is_zero
    k = next(i for i, c in enumerate(f.coeffs) if c)
    if not g.coeff(k):
        return False
    return f * g.coeff(k) == g * f.coeff(k)


@dataclass(frozen=True)
class EquivarianceReport:
    cost: float
    passed: bool
    exact: object = None
    max_cost: float = 0.0

    def to_json(self):
        return {"cost": self.cost, "max_cost": self.max_cost, "pass": bool(self.passed), "exact": self.exact}


def equivariance_check(w: RationalMap, M: MobiusMap, tol=1e-7, exact_poly=True) -> EquivarianceReport:
    """Compare ``M`` applied to the isodynamic divisor of ``w`` with that of the transformed map.

    The transformed map is built in exact arithmetic from the binary values
    of ``w`` and ``M``.  When both are exact and ``exact_poly`` is set, the
    isodynamic polynomials are also compared exactly up to a scalar, and
    ``exact`` records the outcome.
    """
    # the transformed map is formed exactly so no rounding enters before
    # the divisor computation normalizes it
    Me = M if M.mode == EXACT else MobiusMap(*[GaussianRational.from_complex(complex(e)) for e in (M.a, M.b, M.c, M.d)])
    wt = transform_rational(w.to_exact(), Me)
    report = validate(wt)
    if not report.ok:
        raise IsodynamicUndefined(report)
    lhs = apply_divisor(M, isodynamic_divisor(w))
    rhs = isodynamic_divisor(wt, check=False)
    match = match_divisors(lhs, rhs)
    exact = None
    if w.mode == EXACT and M.mode == EXACT and exact_poly:
        moved = apply_form(M.adjugate(), isodynamic_poly(w), w.isodynamic_degree)
        exact = _proportional(moved, isodynamic_poly(wt))
    passed = match.total_cost < tol and exact is not False
    return EquivarianceReport(match.total_cost, passed, exact, match.max_cost)


def random_conditioned_mobius(rng, kappa=4.0):
    """Gaussian map whose 2x2 matrix has condition number at most ``kappa``."""
    while True:
        e = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        sv = np.linalg.svd(e.reshape(2, 2), compute_uv=False)
        if sv[0] <= kappa * sv[1]:
            return MobiusMap(*e)


def random_rational_input(rng, d, pole_degree=0, sep=0.15):
    """Float ``w = p/q`` with zeros and poles in the unit disk, pairwise at least ``sep`` apart."""
    pts = []
    while len(pts) < d + 2 * pole_degree:
        z = complex(*rng.uniform(-1, 1, 2))
        if abs(z) <= 1 and all(abs(z - w) >= sep for w in pts):
            pts.append(z)
    lead = complex(*rng.standard_normal(2))
    p = ComplexPoly.from_roots(pts[: d + pole_degree], FLOAT, lead=lead)
    q = ComplexPoly.from_roots(pts[d + pole_degree:], FLOAT)
    return RationalMap(p, q, d, pole_degree)


def _equivariance_trial(args):
    d, dd, seed, k, tol, kappa = args
    rng = np.random.default_rng([seed, d, dd, k])
    w = random_rational_input(rng, d, dd)
    M = random_conditioned_mobius(rng, kappa)
    rep = equivariance_check(w, M, tol)
    return {"d": d, "pole_degree": dd, "index": k, "cost": rep.cost, "pass": bool(rep.passed)}


def equivariance_suite(d, pole_degree=0, trials=200, seed=0, tol=1e-7, kappa=4.0, workers=None):
    """Run :func:`equivariance_check` on ``trials`` random ``(w, M)`` pairs.

    Trial ``k`` draws from ``default_rng([seed, d, pole_degree, k])``.
    Zeros and poles are well separated in the unit disk and ``M`` has a
    bounded condition number, so the float pipeline is well conditioned.
    """
    recs = map_samples(_equivariance_trial, [(d, pole_degree, seed, k, tol, kappa) for k in range(trials)], workers)
    costs = [r["cost"] for r in recs]
    return {"d": d, "pole_degree": pole_degree, "trials": trials, "seed": seed, "tol": tol, "kappa": kappa,
            "max_cost": max(costs), "median_cost": float(np.median(costs)),
            "failures": [r for r in recs if not r["pass"]], "pass": all(r["pass"] for r in recs)}


def _crosscheck_trial(args):
    d, dd, seed, k = args
    rng = np.random.default_rng([seed, d, dd, k, 1])
    w = random_rational_input(rng, d, dd)
    D1 = isodynamic_divisor(w)
    D2 = critical_value_divisor(associated_rational(w))
    return match_divisors(D1, D2).total_cost


def crosscheck_suite(configs, trials=200, seed=0, tol=1e-8, workers=None):
    """Compare the discriminant divisor with the critical values of ``R_w`` on random inputs.

    ``configs`` is a list of ``(d, pole_degree)``; trials are spread over it
    round-robin.
    """
    configs = list(configs)
    args = [(*configs[k % len(configs)], seed, k) for k in range(trials)]
    costs = map_samples(_crosscheck_trial, args, workers)
    worst = int(np.argmax(costs))
    return {"trials": trials, "seed": seed, "tol": tol, "max_cost": float(costs[worst]),
            "worst": {"d": args[worst][0], "pole_degree": args[worst][1], "index": worst},
            "pass": bool(max(costs) < tol)}
