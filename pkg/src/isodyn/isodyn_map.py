"""Isodynamic maps of polynomials and rational functions.

A rational input ``w = p/q`` carries its *form* degrees: ``p`` is a binary
form of degree ``d + pole_degree`` and ``q`` one of degree ``pole_degree``.
Actual univariate degrees may be lower, which means roots at infinity.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BinomialDegenerate, DegenerateInput, IsodynamicUndefined, ModeMismatch
from .poly_core import (PolarPencil, coprime_certificate, gcd_poly, pencil_discriminant,
                        refine_discriminant_roots, squarefree_certificate,
                        squarefree_decomposition)
from .polynomial import ComplexPoly
from .roots import find_roots
from .scalar import EXACT, FLOAT, GaussianRational

__all__ = [
    "RationalMap",
    "SphereDivisor",
    "Validity",
    "ValidityReport",
    "polar_pencil",
    "isodynamic_poly",
    "associated_rational",
    "wronskian",
    "critical_value_divisor",
    "isodynamic_divisor",
    "validate",
    "normalize_affine",
    "INF",
]

INF = complex(math.inf, 0.0)

# |value| above this is reported as the point at infinity
INFINITY_CUTOFF = 1e14


def _is_inf(z):
    z = complex(z)
    return math.isinf(z.real) or math.isinf(z.imag)


@dataclass(frozen=True)
class RationalMap:
    """``num/den`` viewed as a pair of binary forms of degrees ``d + pole_degree`` and ``pole_degree``.

    ``RationalMap.polynomial(P)`` and ``RationalMap.from_pq(p, q)`` infer the
    degrees from the polynomials.  The associated rational function is stored
    with ``d = 0`` and ``pole_degree`` equal to its formal degree.
    """

    num: ComplexPoly
    den: ComplexPoly
    d: int
    pole_degree: int = 0

    def __post_init__(self):
        if self.num.mode != self.den.mode:
            raise ModeMismatch("numerator and denominator must share a mode")
        if self.d < 0 or self.pole_degree < 0:
            raise DegenerateInput("degrees must be nonnegative")
        if self.num.is_zero or self.den.is_zero:
            raise DegenerateInput("numerator and denominator must be nonzero")
        if self.num.degree > self.d + self.pole_degree or self.den.degree > self.pole_degree:
            raise DegenerateInput(
                f"degrees ({self.num.degree}, {self.den.degree}) exceed the form degrees "
                f"({self.d + self.pole_degree}, {self.pole_degree})")
        if self.pole_degree == 0 and self.den != ComplexPoly([1], self.mode):
            # normalize a constant denominator to 1
            c = self.den.lc
            object.__setattr__(self, "num", self.num * ((1 / c) if self.mode == FLOAT else GaussianRational(1) / c))
            object.__setattr__(self, "den", ComplexPoly([1], self.mode))

    @classmethod
    def polynomial(cls, P: ComplexPoly, d=None):
        if P.is_zero:
            raise DegenerateInput("zero polynomial")
        return cls(P, ComplexPoly([1], P.mode), P.degree if d is None else int(d), 0)

    @classmethod
    def from_pq(cls, p: ComplexPoly, q: ComplexPoly):
        if p.is_zero or q.is_zero:
            raise DegenerateInput("zero numerator or denominator")
        d = p.degree - q.degree
        if d < 1:
            raise DegenerateInput("need deg p > deg q")
        return cls(p, q, d, q.degree)

    @property
    def mode(self):
        return self.num.mode

    @property
    def form_degree(self):
        """Degree of the numerator form, ``d + pole_degree``."""
        return self.d + self.pole_degree

    @property
    def is_polynomial(self):
        return self.pole_degree == 0

    @property
    def isodynamic_degree(self):
        """Projective degree ``2d + 4*pole_degree - 4`` of the isodynamic divisor."""
        return 2 * self.d + 4 * self.pole_degree - 4

    def to_float(self):
        return RationalMap(self.num.to_float(), self.den.to_float(), self.d, self.pole_degree)

    def to_exact(self):
        return RationalMap(self.num.to_exact(), self.den.to_exact(), self.d, self.pole_degree)

    def __call__(self, z):
        return evaluate_on_sphere(self.num, self.den, max(self.form_degree, self.pole_degree), z)


def evaluate_on_sphere(num, den, n, z):
    """Value of ``num/den`` (formal degree ``n``) at a sphere point; ``INF`` for poles."""
    a = num.to_numpy()
    b = den.to_numpy()
    if _is_inf(z):
        an = a[n] if len(a) > n else 0j
        bn = b[n] if len(b) > n else 0j
        num_v, den_v = an, bn
    else:
        z = complex(z)
        if abs(z) <= 1.0:
            num_v = np.polyval(a[::-1], z) if len(a) else 0j
            den_v = np.polyval(b[::-1], z) if len(b) else 0j
        else:
            # homogeneous evaluation at (1, 1/z) avoids overflow: the
            # coefficient of y**(n-k) is a_k, i.e. index k in descending order
            y = 1.0 / z
            pa = np.zeros(n + 1, dtype=complex)
            pb = np.zeros(n + 1, dtype=complex)
            pa[:len(a)] = a
            pb[:len(b)] = b
            num_v = np.polyval(pa, y)
            den_v = np.polyval(pb, y)
    if den_v == 0 or abs(num_v) > INFINITY_CUTOFF * abs(den_v):
        return INF
    return complex(num_v / den_v)


@dataclass(frozen=True)
class SphereDivisor:
    """Finite points with multiplicities plus a multiplicity at infinity."""

    finite_points: tuple
    infinity_multiplicity: int
    total_degree: int
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        s = sum(m for _, m in self.finite_points) + self.infinity_multiplicity
        if s != self.total_degree:
            raise ValueError(f"multiplicities sum to {s}, expected {self.total_degree}")
        if self.infinity_multiplicity < 0:
            raise ValueError("negative multiplicity at infinity")

    @classmethod
    def from_points(cls, points, total_degree=None):
        """Build from an iterable of sphere points (``INF`` allowed), merging exact repeats."""
        fin = {}
        n_inf = 0
        for p in points:
            if _is_inf(p):
                n_inf += 1
            else:
                p = complex(p)
                fin[p] = fin.get(p, 0) + 1
        total = sum(fin.values()) + n_inf
        return cls(tuple(fin.items()), n_inf, total if total_degree is None else total_degree)

    def expanded(self):
        """All points with repetition; infinity appears as ``INF``."""
        out = []
        for z, m in self.finite_points:
            out.extend([complex(z)] * m)
        out.extend([INF] * self.infinity_multiplicity)
        return out

    def to_json(self):
        return {
            "points": [[complex(z).real, complex(z).imag, int(m)] for z, m in self.finite_points],
            "infinity": int(self.infinity_multiplicity),
            "degree": int(self.total_degree),
        }

    @classmethod
    def from_json(cls, obj):
        pts = tuple((complex(re, im), int(m)) for re, im, m in obj["points"])
        return cls(pts, int(obj.get("infinity", 0)), int(obj["degree"]))


class Validity(enum.Enum):
    VALID = "Valid"
    NOT_COPRIME = "NotCoprime"
    MULTIPLICITY_TOO_HIGH = "MultiplicityTooHigh"
    BINOMIAL_DEGENERATE = "BinomialDegenerate"
    AMBIGUOUS = "Ambiguous"


@dataclass(frozen=True)
class ValidityReport:
    status: Validity
    witness: object = None
    detail: str = ""

    @property
    def ok(self):
        return self.status is Validity.VALID


# ---------------------------------------------------------------------------
# validation


def _witness(factor):
    if factor.degree == 1:
        return -factor.coeff(0) / factor.coeff(1)
    return factor


def _is_binomial_exact(P, d):
    # P == lc * (z + t)^d with t = a_{d-1} / (d * lc)
    if P.degree != d:
        return False
    t = P.coeff(d - 1) / (P.lc * d)
    return P == ComplexPoly([t, 1], EXACT) ** d * P.lc


def _validate_exact(w):
    p, q = w.num, w.den
    inf_p = w.form_degree - p.degree
    inf_q = w.pole_degree - q.degree
    if w.pole_degree > 0:
        if inf_p > 0 and inf_q > 0:
            return ValidityReport(Validity.NOT_COPRIME, INF, "common root at infinity")
        if q.degree >= 1 and p.degree >= 1 and not coprime_certificate(p, q):
            g = gcd_poly(p, q)
            if g.degree >= 1:
                return ValidityReport(Validity.NOT_COPRIME, _witness(g))
    elif p.degree == 0:
        return ValidityReport(Validity.BINOMIAL_DEGENERATE, INF)
    elif not squarefree_certificate(p) and _is_binomial_exact(p, w.d):
        return ValidityReport(Validity.BINOMIAL_DEGENERATE, p.coeff(w.d - 1) / (p.lc * w.d))
    if max(inf_p, inf_q) >= 3:
        return ValidityReport(Validity.MULTIPLICITY_TOO_HIGH, INF)
    for f in (p, q):
        if f.degree < 3 or squarefree_certificate(f):
            continue
        for factor, m in squarefree_decomposition(f):
            if m >= 3:
                return ValidityReport(Validity.MULTIPLICITY_TOO_HIGH, _witness(factor))
    return ValidityReport(Validity.VALID)


def _close(a, b, rtol):
    return abs(a - b) <= rtol * (1.0 + max(abs(a), abs(b)))


def _validate_float(w, tol, band):
    p, q = w.num, w.den
    inf_p = w.form_degree - p.degree
    inf_q = w.pole_degree - q.degree
    rp = list(find_roots(p, tol=tol).roots) if p.degree >= 1 else []
    rq = list(find_roots(q, tol=tol).roots) if q.degree >= 1 else []
    if inf_p:
        rp.append((INF, inf_p))
    if inf_q:
        rq.append((INF, inf_q))
    # common roots: a double root is only located to about sqrt(eps)
    common = math.sqrt(tol)
    ambiguous = None
    for a, _ in rp:
        for b, _ in rq:
            if _is_inf(a) and _is_inf(b):
                return ValidityReport(Validity.NOT_COPRIME, INF, "common root at infinity")
            if _is_inf(a) or _is_inf(b):
                continue
            if _close(a, b, common):
                return ValidityReport(Validity.NOT_COPRIME, a)
            if _close(a, b, band):
                ambiguous = ambiguous or ValidityReport(Validity.AMBIGUOUS, a, "nearly common root")
    if w.pole_degree == 0 and len(rp) == 1:
        r0 = rp[0][0]
        return ValidityReport(Validity.BINOMIAL_DEGENERATE, r0 if _is_inf(r0) else -r0)
    for roots in (rp, rq):
        for r, m in roots:
            if m >= 3:
                return ValidityReport(Validity.MULTIPLICITY_TOO_HIGH, r)
        for r, m in roots:
            if _is_inf(r):
                continue
            near = sum(m2 for r2, m2 in roots if not _is_inf(r2) and _close(r, r2, band))
            if near >= 3:
                ambiguous = ambiguous or ValidityReport(Validity.AMBIGUOUS, r, "nearly triple root")
        if w.pole_degree == 0 and len(roots) > 1:
            if all(_is_inf(r2) or _close(roots[0][0], r2, band) for r2, _ in roots):
                ambiguous = ambiguous or ValidityReport(Validity.AMBIGUOUS, roots[0][0], "nearly binomial")
    return ambiguous or ValidityReport(Validity.VALID)


def validate(w: RationalMap, tol=1e-10, band=1e-6) -> ValidityReport:
    """Check that the isodynamic map is defined at ``w``.

    Requires ``p`` and ``q`` coprime, no root of multiplicity 3 or more, and,
    for polynomials, ``P`` not of the form ``c (z + t)^d``.  The binomial
    test runs before the multiplicity test, so ``(z + t)^d`` with ``d >= 3``
    reports ``BinomialDegenerate``.  Float inputs are clustered with
    ``find_roots(tol)``; configurations that would change status under a
    relative perturbation of size ``band`` are reported as ``Ambiguous``.
    """
    if w.mode == EXACT:
        return _validate_exact(w)
    return _validate_float(w, tol, band)


# ---------------------------------------------------------------------------
# pencils and discriminants


def _phi(w):
    p, q = w.num, w.den
    return p.derivative() * q - p * q.derivative()


def polar_pencil(w: RationalMap) -> PolarPencil:
    """Numerator of the polar derivative as ``A(z) + u B(z)``.

    ``B = p'q - pq'`` and ``A = d p q - z B``; for a polynomial this is
    ``A = dP - zP'`` and ``B = P'``.
    """
    p, q = w.num, w.den
    B = _phi(w)
    A = p * q * w.d - B.shift_degree(1)
    if w.mode == FLOAT:
        # the top coefficient cancels exactly in theory
        n = w.d + 2 * w.pole_degree - 1
        A = ComplexPoly._raw(A.coeffs[: n + 1], FLOAT)
    return PolarPencil(A, B)


def _dyadic(x, bits=24):
    """Nearest dyadic rational with ``bits`` fractional bits, as an exact scalar."""
    x = complex(x)
    k = 2 ** bits
    return GaussianRational(Fraction(round(x.real * k), k), Fraction(round(x.imag * k), k))


def _frame(points):
    """Exact centre ``c`` and power-of-two scale ``s`` fitting the bulk of ``points`` into the unit disk.

    Outliers (farther than four median distances from the coordinate-wise
    median) are ignored; a single far root is harmless in the monomial basis,
    whereas a frame stretched to reach it squeezes the rest into a cluster.
    """
    pts = np.array([complex(z) for z in points if not _is_inf(z)], dtype=complex)
    if len(pts) == 0:
        return GaussianRational(0), GaussianRational(1)
    med = complex(np.median(pts.real), np.median(pts.imag))
    dist = np.abs(pts - med)
    spread = float(np.median(dist))
    inliers = pts[dist <= 4.0 * spread] if spread > 0 else pts
    centre = inliers.mean()
    radius = float(np.max(np.abs(inliers - centre)))
    if not math.isfinite(radius) or radius == 0.0:
        radius = max(1.0, abs(centre))
    scale = 2.0 ** round(math.log2(radius))
    bits = 24 + max(0, -round(math.log2(scale)))
    return _dyadic(centre, bits), GaussianRational(Fraction(scale))


def _finite_roots(*polys):
    out = []
    for f in polys:
        if f.degree >= 1:
            out.extend(find_roots(f.to_float(), tol=1e-8).expanded())
    return out


def normalize_affine(w: RationalMap):
    """``(w_c, c, s)`` with ``w_c(v) = w(s v + c)`` computed exactly.

    ``c`` and ``s`` are exact (dyadic) and place the zeros and poles of ``w``
    around the unit circle.  Isodynamic points transform as ``u = s v + c``.
    Monomial coefficients of polynomials whose roots sit far from the origin
    relative to their spread are badly conditioned; evaluating in the
    normalized frame avoids most of that loss.
    """
    c, s = _frame(_finite_roots(w.num, w.den))
    we = w.to_exact()
    return RationalMap(we.num.compose_linear(s, c), we.den.compose_linear(s, c), w.d, w.pole_degree), c, s


def isodynamic_poly(w: RationalMap, check=True, float_rtol=0.0) -> ComplexPoly:
    """``Discr_z`` of the polar-derivative numerator, a polynomial in ``u``.

    The z-degree is taken formally as ``d + 2*pole_degree - 1``, so the result
    has degree at most ``2d + 4*pole_degree - 4``.  With ``check=False`` the
    raw discriminant is returned even for invalid inputs (where it vanishes
    identically).
    """
    if check:
        report = validate(w)
        if not report.ok:
            raise IsodynamicUndefined(report)
    n = w.d + 2 * w.pole_degree - 1
    if n < 1:
        raise IsodynamicUndefined(ValidityReport(Validity.BINOMIAL_DEGENERATE, None, "degree too low"))
    return pencil_discriminant(polar_pencil(w), z_degree=n, float_rtol=float_rtol).poly


def associated_rational(w: RationalMap, reduce=True) -> RationalMap:
    """``R_w = z - d w / w'`` as ``(z B - d p q) / B`` with ``B = p'q - pq'``.

    The result has ``d = 0`` and formal degree ``d + 2*pole_degree - 1``.
    Exact inputs are reduced by the common factor when ``reduce`` is set,
    which lowers the formal degree accordingly.
    """
    B = _phi(w)
    n = w.d + 2 * w.pole_degree - 1
    if B.is_zero:
        raise BinomialDegenerate("w is constant")
    num = B.shift_degree(1) - w.num * w.den * w.d
    if w.mode == FLOAT:
        num = ComplexPoly._raw(num.coeffs[: n + 1], FLOAT)
    den = B
    if num.is_zero:
        # R = z * B / B ... only possible when d = 0
        raise BinomialDegenerate("associated rational function vanishes")
    if w.mode == EXACT:
        g = gcd_poly(num, den)
        if g.degree >= 1 and reduce:
            num = num.exquo(g)
            den = den.exquo(g)
            n -= g.degree
        if num.degree < 1 and den.degree < 1:
            raise BinomialDegenerate(f"R is the constant {num.lc / den.lc}")
        c = den.lc
        num = num * (GaussianRational(1) / c)
        den = den.monic()
    else:
        W = wronskian(num, den)
        scale = max(float(np.max(np.abs(num.to_numpy()))), 1e-300) * max(float(np.max(np.abs(den.to_numpy()))), 1e-300)
        if W.is_zero or float(np.max(np.abs(W.to_numpy()))) <= 1e-12 * scale * max(n, 1):
            raise BinomialDegenerate("R is numerically constant")
    return RationalMap(num, den, 0, n)


def wronskian(num: ComplexPoly, den: ComplexPoly) -> ComplexPoly:
    """``num' den - num den'``; its roots are the finite critical points of ``num/den``."""
    return num.derivative() * den - num * den.derivative()


def critical_value_divisor(R: RationalMap, tol=1e-10, trim_rtol=1e-13, normalize=True) -> SphereDivisor:
    """Divisor of critical values of the sphere map ``R`` of formal degree ``n``.

    Critical points are the roots of the Wronskian together with infinity,
    whose multiplicity is the degree deficit below ``2n - 2``.  Each critical
    point contributes its value with its own multiplicity, so values shared by
    several critical points are not collapsed.  With ``normalize`` set the
    computation runs in an affine frame around the zeros and poles of ``R``
    (conjugating by ``z = s v + c``), built in exact arithmetic.
    """
    n = max(R.form_degree, R.pole_degree)
    if n < 1:
        raise DegenerateInput("constant map")
    c = s = None
    if normalize:
        c, s = _frame(_finite_roots(R.num, R.den))
        re = R.to_exact()
        num_c = re.num.compose_linear(s, c)
        den_c = re.den.compose_linear(s, c)
        R = RationalMap((num_c - den_c * c).to_float(), (den_c * s).to_float(), R.d, R.pole_degree)
    num, den = R.num, R.den
    W = wronskian(num, den)
    if R.mode == FLOAT:
        W = W.trim(trim_rtol)
    if W.is_zero:
        raise DegenerateInput("constant map")
    total = 2 * n - 2
    crit = []
    if W.degree >= 1:
        crit = list(find_roots(W, tol=tol).roots)
    deficit = total - W.degree
    if deficit < 0:
        raise DegenerateInput("Wronskian degree exceeds 2n - 2; formal degree too small")
    points = []
    for z, m in crit:
        points.append((R(z), m))
    if deficit:
        points.append((R(INF), deficit))
    if normalize:
        cf, sf = complex(c), complex(s)
        points = [(v if _is_inf(v) else sf * v + cf, m) for v, m in points]
        crit = [(sf * z + cf, m) for z, m in crit]
    fin = tuple((v, m) for v, m in points if not _is_inf(v))
    n_inf = sum(m for v, m in points if _is_inf(v))
    return SphereDivisor(fin, n_inf, total, {"critical_points": crit, "infinity_critical": deficit})


def isodynamic_divisor(w: RationalMap, tol=1e-10, trim_rtol=1e-13, refine=True, check=True) -> SphereDivisor:
    """Isodynamic points of ``w`` on the sphere, padded with infinity to degree ``2d + 4*pole_degree - 4``.

    The discriminant is computed in an affine frame around the zeros and
    poles of ``w`` (see :func:`normalize_affine`), its roots are found from
    the monomial coefficients and, with ``refine`` set, simple roots are
    polished against the discriminant evaluated from the pencil roots.
    """
    if check:
        report = validate(w)
        if not report.ok:
            raise IsodynamicUndefined(report)
    total = w.isodynamic_degree
    wc, c, s = normalize_affine(w)
    wf = wc.to_float()
    ID = isodynamic_poly(wf, check=False)
    if ID.is_zero:
        raise IsodynamicUndefined(ValidityReport(Validity.AMBIGUOUS, None, "discriminant vanished"))
    f = ID.trim(trim_rtol)
    roots = list(find_roots(f, tol=tol).roots) if f.degree >= 1 else []
    if refine and roots:
        roots = refine_discriminant_roots(polar_pencil(wf), roots, n=w.d + 2 * w.pole_degree - 1)
    cf, sf = complex(c), complex(s)
    fin = []
    n_inf = total - f.degree
    for r, m in roots:
        if abs(r) > INFINITY_CUTOFF:
            n_inf += m
        else:
            fin.append((sf * r + cf, m))
    return SphereDivisor(tuple(fin), n_inf, total, {"poly": ID, "frame": (c, s)})
