"""Isodynamic points of triangles, the alpha-polar discriminant and its zero centroids."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateInput, Undefined
from .isodyn_map import INF, RationalMap, _is_inf, isodynamic_divisor
from .poly_core import PolarPencil, pencil_discriminant
from .polynomial import ComplexPoly
from .scalar import EXACT, FLOAT, GaussianRational, is_exact_scalar

__all__ = [
    "Triangle",
    "CentroidLine",
    "isodynamic_points_triangle",
    "apollonian_residual",
    "alpha_pencil",
    "alpha_discriminant",
    "alpha_centroid",
    "x26613",
    "x26613_from_discriminant",
    "centroid_line",
]


@dataclass(frozen=True)
class Triangle:
    z1: complex
    z2: complex
    z3: complex

    @classmethod
    def from_points(cls, pts):
        a, b, c = pts
        return cls(complex(a), complex(b), complex(c))

    @property
    def vertices(self):
        return (self.z1, self.z2, self.z3)

    @property
    def scale(self):
        return max(abs(self.z1 - self.z2), abs(self.z2 - self.z3), abs(self.z3 - self.z1))

    @property
    def signed_area2(self):
        """Twice the signed area, ``Im((z2 - z1) * conj(z3 - z1))`` up to sign."""
        return ((self.z2 - self.z1).conjugate() * (self.z3 - self.z1)).imag

    @property
    def is_collinear(self):
        return abs(self.signed_area2) <= 1e-12 * self.scale ** 2

    @property
    def centroid(self):
        return (self.z1 + self.z2 + self.z3) / 3

    def circumcenter(self):
        if self.is_collinear:
            return INF
        a, b, c = self.z1, self.z2 - self.z1, self.z3 - self.z1
        # |w|^2 = 2 Re(w conj(b)) and likewise for c, solved for w = centre - a
        d = 2j * (b.conjugate() * c).imag
        w = (abs(b) ** 2 * c - abs(c) ** 2 * b) / d
        return a + w

    def cubic(self) -> ComplexPoly:
        return ComplexPoly.from_roots(list(self.vertices), FLOAT)

    def to_json(self):
        return [[z.real, z.imag] for z in self.vertices]


def _check_distinct(T: Triangle):
    s = T.scale
    if s == 0 or min(abs(T.z1 - T.z2), abs(T.z2 - T.z3), abs(T.z3 - T.z1)) <= 1e-14 * s:
        raise DegenerateInput("triangle vertices must be distinct")


def isodynamic_points_triangle(T: Triangle):
    """``(S, S')``: the roots of the cubic's isodynamic polynomial.

    The two points are inverse to each other in the circumcircle; ``S`` is
    the one inside it.  For an equilateral triangle ``S`` is the centre and
    ``S'`` is ``INF``.
    """
    _check_distinct(T)
    D = isodynamic_divisor(RationalMap.polynomial(T.cubic(), 3))
    pts = D.expanded()
    fin = [p for p in pts if not _is_inf(p)]
    if len(fin) < 2:
        return (fin[0] if fin else INF), INF
    cc = T.circumcenter()
    if _is_inf(cc):
        fin.sort(key=lambda p: abs(p - T.centroid))
    else:
        fin.sort(key=lambda p: abs(p - cc))
    return fin[0], fin[1]


def apollonian_residual(T: Triangle, u) -> float:
    """Largest pairwise gap among ``|u - z_i| |z_k - z_j|`` over the three vertex labellings."""
    z1, z2, z3 = T.vertices
    u = complex(u)
    vals = [abs(u - z1) * abs(z3 - z2), abs(u - z2) * abs(z3 - z1), abs(u - z3) * abs(z2 - z1)]
    return float(max(vals) - min(vals))


def alpha_pencil(P: ComplexPoly, alpha) -> PolarPencil:
    """``alpha P(z) + (u - z) P'(z)`` as ``A + u B`` with ``A = alpha P - z P'`` and ``B = P'``."""
    if P.mode == EXACT:
        if not is_exact_scalar(alpha):
            alpha = Fraction(alpha)
        alpha = GaussianRational.coerce(alpha)
    else:
        alpha = complex(alpha)
    dP = P.derivative()
    return PolarPencil(P * alpha - dP.shift_degree(1), dP)


def alpha_discriminant(P: ComplexPoly, alpha) -> ComplexPoly:
    """``Discr_z(alpha P + (u - z) P')`` as a polynomial in ``u``.

    The z-degree is ``d`` unless ``alpha = d``, where the pencil drops to the
    polar derivative and the result is the isodynamic polynomial.
    """
    d = P.degree
    if d < 2:
        raise DegenerateInput("need degree >= 2")
    pencil = alpha_pencil(P, alpha)
    n = d - 1 if pencil.a_part.degree < d else d
    return pencil_discriminant(pencil, z_degree=n).poly


def alpha_centroid(P: ComplexPoly, alpha, exact=None):
    """Centroid ``m(alpha)`` of the zeros of :func:`alpha_discriminant`.

    With ``exact`` (the default for degree <= 6) the float coefficients of
    ``P`` and ``alpha`` are taken at their exact binary values, so only the
    final division rounds.
    """
    if exact is None:
        exact = P.degree <= 6
    if exact:
        P = P.to_exact()
        if not is_exact_scalar(alpha):
            alpha = Fraction(float(alpha))
    D = alpha_discriminant(P, alpha)
    k = D.degree
    if k < 1:
        raise Undefined("alpha discriminant has no zeros")
    return complex(-D.coeff(k - 1) / (D.coeff(k) * k))


def x26613(T: Triangle) -> complex:
    """``(2/3)^2 ((z1+z2+z3)^3 - 27 z1 z2 z3) / Discr(P')`` for the vertex cubic ``P``."""
    _check_distinct(T)
    z1, z2, z3 = T.vertices
    e1 = z1 + z2 + z3
    e2 = z1 * z2 + z2 * z3 + z3 * z1
    e3 = z1 * z2 * z3
    # P' = 3 z^2 - 2 e1 z + e2
    disc = 4 * e1 * e1 - 12 * e2
    if abs(disc) <= 1e-13 * T.scale ** 2:
        raise Undefined("equilateral triangle: Discr(P') vanishes")
    return (4.0 / 9.0) * (e1 ** 3 - 27 * e3) / disc


def x26613_from_discriminant(T: Triangle) -> complex:
    """Root of ``Discr_z(P + (u - z) P') / P(u)``, computed exactly on the binary vertex values."""
    _check_distinct(T)
    P = ComplexPoly.from_roots([GaussianRational.from_complex(z) for z in T.vertices], EXACT)
    D = alpha_discriminant(P, 1)
    Pu = P
    q, r = D.divmod(Pu)
    if not r.is_zero:
        raise Undefined("Discr(D^1) is not divisible by P(u)")
    if q.degree != 1:
        raise Undefined("equilateral triangle: quotient is constant")
    return complex(-q.coeff(0) / q.coeff(1))


@dataclass(frozen=True)
class CentroidLine:
    alphas: tuple
    points: tuple
    centre: complex
    direction: complex
    max_residual: float
    degenerate: bool

    def to_json(self):
        return {"alphas": [float(a) for a in self.alphas],
                "points": [[p.real, p.imag] for p in self.points],
                "centre": [self.centre.real, self.centre.imag],
                "direction": [self.direction.real, self.direction.imag],
                "max_residual": self.max_residual, "degenerate": self.degenerate}


def centroid_line(P: ComplexPoly, alphas, exact=None, point_tol=1e-10) -> CentroidLine:
    """Total-least-squares line through ``m(alpha)`` for the given ``alphas``.

    When all centroids lie within ``point_tol`` of each other the fit is
    reported as a point (``degenerate=True``, residual 0).  Values of
    ``alpha`` where the discriminant has no zeros are skipped.
    """
    used, pts = [], []
    for a in alphas:
        try:
            pts.append(alpha_centroid(P, a, exact))
            used.append(a)
        except Undefined:
            continue
    if len(pts) == 0:
        raise Undefined("no centroid could be formed")
    z = np.array(pts, dtype=complex)
    centre = complex(z.mean())
    diam = float(np.max(np.abs(z[:, None] - z[None, :]))) if len(z) > 1 else 0.0
    if diam <= point_tol * (1 + abs(centre)):
        return CentroidLine(tuple(used), tuple(pts), centre, 0j, 0.0, True)
    X = np.column_stack([(z - centre).real, (z - centre).imag])
    _, _, vt = np.linalg.svd(X, full_matrices=False)
    direction = complex(vt[0, 0], vt[0, 1])
    normal = np.array([vt[1, 0], vt[1, 1]])
    resid = float(np.max(np.abs(X @ normal)))
    return CentroidLine(tuple(used), tuple(pts), centre, direction, resid, False)
