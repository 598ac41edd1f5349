"""Isodynamic points of polynomials, binary forms and their ratios.

The isodynamic divisor of ``w = p/q`` is the zero set (on the Riemann sphere)
of the discriminant of its polar derivative, equivalently the critical
values of ``R_w = z - d w / w'``.
"""
__version__ = "0.1.0"

from ._backend import BACKEND
from .errors import (BinomialDegenerate, DegenerateInput, DegreeMismatch, IsodynamicUndefined, IsodynError,
                     ModeMismatch, NotDisjoint, SolverDiverged, Undefined)
from .isodyn_map import (INF, RationalMap, SphereDivisor, Validity, ValidityReport, associated_rational,
                         critical_value_divisor, isodynamic_divisor, isodynamic_poly, polar_pencil, validate)
from .mobius import MobiusMap, apply_divisor, apply_form, apply_point, equivariance_check, match_divisors
from .poly_core import PolarPencil, discriminant, pencil_discriminant, resultant
from .polynomial import ComplexPoly, rational_poly
from .roots import chordal, find_roots
from .scalar import GaussianRational
from .separation import conjecture_scan, separable_by_circle, stereographic_lift
from .special import gen_laguerre, gen_legendre
from .strata import classify, meta_discriminant
from .triangle import Triangle, centroid_line, isodynamic_points_triangle, x26613

__all__ = [
    "__version__", "BACKEND", "INF",
    "ComplexPoly", "GaussianRational", "RationalMap", "SphereDivisor", "PolarPencil", "MobiusMap", "Triangle",
    "Validity", "ValidityReport",
    "rational_poly", "resultant", "discriminant", "pencil_discriminant", "find_roots", "chordal",
    "polar_pencil", "isodynamic_poly", "isodynamic_divisor", "associated_rational", "critical_value_divisor",
    "validate", "apply_point", "apply_form", "apply_divisor", "match_divisors", "equivariance_check",
    "meta_discriminant", "classify", "isodynamic_points_triangle", "x26613", "centroid_line",
    "stereographic_lift", "separable_by_circle", "conjecture_scan", "gen_legendre", "gen_laguerre",
    "IsodynError", "DegenerateInput", "ModeMismatch", "SolverDiverged", "IsodynamicUndefined",
    "BinomialDegenerate", "DegreeMismatch", "NotDisjoint", "Undefined",
]
