"""Separation of finite point sets on the sphere by circles and lines.

Under stereographic projection generalized circles are the plane sections
of the unit sphere, so separating two point sets by a circle or line is a
linear feasibility problem on their lifts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from ._parallel import map_samples
from .errors import DegenerateInput, IsodynamicUndefined, NotDisjoint, SolverDiverged
from .isodyn_map import INF, RationalMap, _is_inf, isodynamic_divisor, validate
from .polynomial import ComplexPoly
from .roots import chordal

__all__ = [
    "LiftedPoint",
    "GeneralizedCircle",
    "SeparationCertificate",
    "stereographic_lift",
    "stereographic_drop",
    "plane_to_circle",
    "separable_by_circle",
    "weakly_separable",
    "conjecture_scan",
    "adversarial_control",
]

MARGIN_TOL = 1e-9


@dataclass(frozen=True)
class LiftedPoint:
    xyz: tuple

    def __post_init__(self):
        if abs(math.fsum(c * c for c in self.xyz) - 1.0) > 1e-12:
            raise DegenerateInput("lifted point is not on the unit sphere")

    def as_array(self):
        return np.array(self.xyz, dtype=float)


def stereographic_lift(z) -> LiftedPoint:
    """``(2 Re z, 2 Im z, |z|^2 - 1) / (|z|^2 + 1)``; ``INF`` goes to the north pole."""
    if _is_inf(z):
        return LiftedPoint((0.0, 0.0, 1.0))
    z = complex(z)
    r2 = abs(z) ** 2
    if r2 > 1e300:
        return LiftedPoint((0.0, 0.0, 1.0))
    s = 1.0 + r2
    x, y, h = 2 * z.real / s, 2 * z.imag / s, (r2 - 1.0) / s
    # renormalize away the last-bit drift so the sphere invariant holds exactly enough
    norm = math.sqrt(x * x + y * y + h * h)
    return LiftedPoint((x / norm, y / norm, h / norm))


def stereographic_drop(p: LiftedPoint):
    x, y, h = p.xyz
    if h >= 1.0 - 1e-300:
        return INF
    return complex(x, y) / (1.0 - h)


@dataclass(frozen=True)
class GeneralizedCircle:
    """``kind == "circle"``: ``|z - centre| = radius``; ``kind == "line"``: ``Re(conj(normal) z) = offset``."""

    kind: str
    centre: complex = 0j
    radius: float = 0.0
    normal: complex = 0j
    offset: float = 0.0

    def residual(self, z):
        """Signed distance-like defect of ``z`` from the curve."""
        z = complex(z)
        if self.kind == "circle":
            return abs(z - self.centre) - self.radius
        return ((self.normal.conjugate() * z).real - self.offset) / abs(self.normal)


def plane_to_circle(normal, offset) -> GeneralizedCircle:
    """Pull the plane ``normal . X = offset`` back to the plane of ``z``.

    With ``X`` the lift of ``z`` the plane equation reads
    ``(n3 - b)|z|^2 + 2 n1 x + 2 n2 y - (n3 + b) = 0``.
    """
    n1, n2, n3 = (float(v) for v in normal)
    b = float(offset)
    k = n3 - b
    if abs(k) <= 1e-14 * (abs(n3) + abs(b) + 1e-300):
        return GeneralizedCircle("line", normal=complex(2 * n1, 2 * n2), offset=n3 + b)
    centre = -complex(n1, n2) / k
    r2 = abs(centre) ** 2 + (n3 + b) / k
    if r2 < 0:
        raise DegenerateInput("plane misses the sphere")
    return GeneralizedCircle("circle", centre=centre, radius=math.sqrt(r2))


@dataclass(frozen=True)
class SeparationCertificate:
    """``normal . x > offset + margin`` on the first set and ``< offset - margin`` on the second."""

    normal: tuple
    offset: float
    margin: float

    def circle(self) -> GeneralizedCircle:
        return plane_to_circle(self.normal, self.offset)

    def verify(self, A, B):
        n = np.array(self.normal)
        ok_a = all(float(n @ stereographic_lift(a).as_array()) >= self.offset + 0.5 * self.margin for a in A)
        ok_b = all(float(n @ stereographic_lift(b).as_array()) <= self.offset - 0.5 * self.margin for b in B)
        return ok_a and ok_b

    def to_json(self):
        return {"normal": list(self.normal), "offset": self.offset, "margin": self.margin}


def _lift_all(points):
    return np.array([stereographic_lift(p).xyz for p in points], dtype=float)


def _check_disjoint(A, B, tol=1e-12):
    for a in A:
        for b in B:
            if chordal(a, b) <= tol:
                raise NotDisjoint(f"point {a} lies in both sets")


def _solve(c, A_ub, b_ub, bounds, A_eq=None, b_eq=None):
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs")
    if res.status not in (0, 2):
        raise SolverDiverged(f"linear program failed: {res.message}")
    return res


def separable_by_circle(A, B, tol=MARGIN_TOL):
    """Certificate of strict separation of ``A`` from ``B`` by a circle or line, or None.

    Maximizes ``eps`` subject to ``n . a >= b + eps``, ``n . b' <= b - eps``
    and ``|n|_inf <= 1`` over the lifted points.
    """
    A, B = list(A), list(B)
    if not A or not B:
        raise DegenerateInput("both point sets must be nonempty")
    _check_disjoint(A, B)
    LA, LB = _lift_all(A), _lift_all(B)
    # variables: n1, n2, n3, b, eps; maximize eps
    rows = [np.concatenate([-x, [1.0, 1.0]]) for x in LA]
    rows += [np.concatenate([x, [-1.0, 1.0]]) for x in LB]
    A_ub = np.array(rows)
    b_ub = np.zeros(len(rows))
    bounds = [(-1, 1)] * 3 + [(-2, 2), (None, 1)]
    res = _solve(np.array([0, 0, 0, 0, -1.0]), A_ub, b_ub, bounds)
    if res.status != 0:
        return None
    eps = float(res.x[4])
    if eps <= tol:
        return None
    return SeparationCertificate(tuple(float(v) for v in res.x[:3]), float(res.x[3]), eps)


def weakly_separable(A, B) -> bool:
    """True when a plane puts ``A`` and ``B`` in opposite closed half-spaces, not all on the plane.

    Total slack is normalized to at least 1 to exclude the zero solution.
    """
    A, B = list(A), list(B)
    if not A or not B:
        raise DegenerateInput("both point sets must be nonempty")
    _check_disjoint(A, B)
    LA, LB = _lift_all(A), _lift_all(B)
    rows = [np.concatenate([-x, [1.0]]) for x in LA]
    rows += [np.concatenate([x, [-1.0]]) for x in LB]
    # total slack at least 1, written as an upper-bound row
    slack = np.concatenate([-(LA.sum(axis=0)) + LB.sum(axis=0), [len(LA) - len(LB)]])
    rows.append(slack)
    A_ub = np.array(rows)
    b_ub = np.concatenate([np.zeros(len(LA) + len(LB)), [-1.0]])
    # a plane with sphere points on both closed sides meets the sphere, so no
    # extra constraint is needed for the section to be a genuine circle
    bounds = [(-1e3, 1e3)] * 4
    res = _solve(np.zeros(4), A_ub, b_ub, bounds)
    return res.status == 0


def _sample_roots(rng, d, rect):
    x0, x1, y0, y1 = rect
    return rng.uniform(x0, x1, d) + 1j * rng.uniform(y0, y1, d)


def _scan_one(args):
    d, rect, seed, index = args
    rng = np.random.default_rng([seed, index])
    draws = 0
    while True:
        draws += 1
        roots = _sample_roots(rng, d, rect)
        P = ComplexPoly.from_roots(list(roots))
        w = RationalMap.polynomial(P, d)
        if not validate(w).ok:
            continue
        try:
            D = isodynamic_divisor(w, check=False)
        except (IsodynamicUndefined, SolverDiverged):
            continue
        break
    iso = [p for p, _ in D.finite_points] + ([INF] if D.infinity_multiplicity else [])
    rec = {"index": index, "draws": draws, "roots": [[z.real, z.imag] for z in roots]}
    try:
        cert = separable_by_circle(list(roots), iso)
        weak = weakly_separable(list(roots), iso)
    except NotDisjoint:
        rec["status"] = "NotDisjoint"
        return rec
    rec["status"] = "Separable" if cert is not None else ("Tangent" if weak else "Inseparable")
    if cert is not None:
        rec["certificate"] = cert.to_json()
        rec["iso"] = [[complex(z).real, complex(z).imag] if not _is_inf(z) else "inf" for z in iso]
    return rec


def conjecture_scan(d, samples=1000, rect=(-1.0, 1.0, -1.0, 1.0), seed=0, workers=None):
    """Look for a circle or line separating the roots of ``P`` from its isodynamic points.

    Roots are i.i.d. uniform in ``rect = (xmin, xmax, ymin, ymax)``; sample
    ``k`` draws from ``default_rng([seed, k])`` so any hit is replayable.
    Returns counts of strict and weak separations plus the full records
    of strict hits.  A weak but not strict separation (the best circle
    touches a point) is recorded with status ``Tangent``.
    """
    if d < 3:
        raise DegenerateInput("scan needs d >= 3")
    recs = map_samples(_scan_one, [(d, tuple(rect), seed, k) for k in range(samples)], workers)
    hits = [r for r in recs if r["status"] == "Separable"]
    weak = sum(r["status"] in ("Separable", "Tangent") for r in recs)
    skipped = sum(r["status"] == "NotDisjoint" for r in recs)
    return {"d": d, "samples": samples, "seed": seed, "rect": list(rect), "margin_tol": MARGIN_TOL,
            "strict": len(hits), "weak": weak, "not_disjoint": skipped, "hits": hits}


def adversarial_control(d=4, seed=0, shift=100.0, rect=(-1.0, 1.0, -1.0, 1.0)):
    """Translate the isodynamic points far away; the decider must then find a certificate."""
    rng = np.random.default_rng([seed, 0])
    while True:
        roots = _sample_roots(rng, d, rect)
        w = RationalMap.polynomial(ComplexPoly.from_roots(list(roots)), d)
        if validate(w).ok:
            break
    D = isodynamic_divisor(w, check=False)
    moved = [p + shift for p, _ in D.finite_points]
    if not moved:
        moved = [complex(shift)]
    cert = separable_by_circle(list(roots), moved)
    return {"d": d, "seed": seed, "shift": shift, "separable": cert is not None,
            "certificate": cert.to_json() if cert is not None else None}
