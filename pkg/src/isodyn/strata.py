"""Discriminant strata of isodynamic families and checks of their factorizations.

Low-degree closed forms (isodynamic polynomials of reduced families, their
discriminants and the components of those discriminants) are stored in
``data/golden.json``.  Each formula keeps the transcribed expression and an
expanded monomial list; only the monomial list is read here.
"""
from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

import numpy as np

from .errors import DegenerateInput, IsodynamicUndefined, Undefined
from .isodyn_map import RationalMap, associated_rational, isodynamic_poly, validate
from .poly_core import discriminant
from .polynomial import ComplexPoly
from .roots import chordal, find_roots
from .scalar import EXACT, GaussianRational

__all__ = [
    "StratumTag",
    "StratumLabel",
    "FamilyPoint",
    "golden",
    "evaluate_formula",
    "formula_poly",
    "family_map",
    "wronskian_of_associated",
    "meta_discriminant",
    "component_values",
    "classify",
    "factorization_check",
    "rational_case_check",
    "scan_strata",
]

MAXWELL_VALUE_TOL = 1e-9
MAXWELL_POINT_SEP = 1e-6


@functools.lru_cache(maxsize=1)
def golden():
    """Parsed ``golden.json``: ``{"families", "products", "formulas"}``."""
    text = resources.files("isodyn").joinpath("data/golden.json").read_text()
    data = json.loads(text)
    for entry in data["formulas"].values():
        entry["_terms"] = [(Fraction(c), tuple(m)) for c, m in entry["terms"]]
    return data


def _exact(x):
    return GaussianRational.coerce(x)


def evaluate_formula(name, params):
    """Value of a golden formula (or product of formulas) at exact ``params``.

    ``params`` maps variable names to exact scalars; ``u`` must be present
    if the formula depends on it.
    """
    data = golden()
    if name in data["products"]:
        prod = data["products"][name]
        acc = _exact(Fraction(prod["constant"]))
        for fname, k in prod["factors"]:
            acc = acc * evaluate_formula(fname, params) ** int(k)
        return acc
    entry = data["formulas"][name]
    vals = [_exact(params[v]) for v in entry["vars"]]
    acc = GaussianRational(0)
    for coef, mono in entry["_terms"]:
        term = GaussianRational(coef)
        for v, k in zip(vals, mono):
            if k:
                term = term * v ** k
        acc = acc + term
    return acc


def formula_poly(name, params) -> ComplexPoly:
    """A golden formula in ``u`` as an exact polynomial, other variables fixed by ``params``."""
    entry = golden()["formulas"][name]
    names = entry["vars"]
    iu = names.index("u")
    vals = {v: _exact(params[v]) for v in names if v != "u"}
    coeffs = {}
    for coef, mono in entry["_terms"]:
        term = GaussianRational(coef)
        for v, k in zip(names, mono):
            if v != "u" and k:
                term = term * vals[v] ** k
        coeffs[mono[iu]] = coeffs.get(mono[iu], GaussianRational(0)) + term
    top = max(coeffs) if coeffs else 0
    return ComplexPoly([coeffs.get(k, GaussianRational(0)) for k in range(top + 1)], EXACT)


@dataclass(frozen=True)
class FamilyPoint:
    """A parameter point of one of the reduced families in the golden data.

    ``family`` is ``"3"``, ``"4"``, ``"5"`` (polynomials) or ``"1-1"``,
    ``"2-1"``, ``"1-2"`` (ratios ``p/q`` with ``d`` and ``pole_degree``).
    """

    family: str
    params: tuple

    def __post_init__(self):
        spec = golden()["families"].get(self.family)
        if spec is None:
            raise DegenerateInput(f"unknown family {self.family!r}")
        if len(self.params) != len(spec["params"]):
            raise DegenerateInput(f"family {self.family} takes {len(spec['params'])} parameters")
        object.__setattr__(self, "params", tuple(_exact(p) for p in self.params))

    @property
    def spec(self):
        return golden()["families"][self.family]

    def as_dict(self):
        return dict(zip(self.spec["params"], self.params))

    def to_json(self):
        return {"family": self.family, "params": [p.to_json() for p in self.params]}


def _family_poly(template, params):
    """Exact polynomial from a template such as ``"z^5+a z^3+b z^2+c z+e"``."""
    coeffs = {}
    for term in template.replace("-", "+-").split("+"):
        term = term.strip()
        if not term:
            continue
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("-").strip()
        parts = term.split()
        coef = GaussianRational(sign)
        power = 0
        for part in parts:
            if part.startswith("z"):
                power = int(part[2:]) if "^" in part else 1
            elif part.isdigit():
                coef = coef * int(part)
            else:
                coef = coef * params[part]
        coeffs[power] = coeffs.get(power, GaussianRational(0)) + coef
    top = max(coeffs)
    return ComplexPoly([coeffs.get(k, GaussianRational(0)) for k in range(top + 1)], EXACT)


def family_map(point: FamilyPoint) -> RationalMap:
    spec = point.spec
    vals = point.as_dict()
    p = _family_poly(spec["p"], vals)
    if spec["kind"] == "polynomial":
        return RationalMap.polynomial(p, spec["d"])
    q = _family_poly(spec["q"], vals)
    return RationalMap(p, q, spec["d"], spec["pole_degree"])


def wronskian_of_associated(P: ComplexPoly) -> ComplexPoly:
    """``(d-1) P'^2 - d P P''``; its roots are the critical points of ``R_P``."""
    d = P.degree
    if d < 2:
        raise DegenerateInput("need degree >= 2")
    P1 = P.derivative()
    P2 = P1.derivative()
    return P1 * P1 * (d - 1) - P * P2 * d


def meta_discriminant(w, d=None):
    """``Discr_u`` of the isodynamic polynomial of ``w`` (a RationalMap, ComplexPoly or FamilyPoint)."""
    if isinstance(w, FamilyPoint):
        w = family_map(w)
    elif isinstance(w, ComplexPoly):
        w = RationalMap.polynomial(w, d)
    try:
        ID = isodynamic_poly(w)
    except IsodynamicUndefined as exc:
        raise Undefined(f"isodynamic polynomial undefined: {exc.report.status.value}") from exc
    if ID.is_zero:
        raise Undefined("isodynamic polynomial vanishes identically")
    if ID.degree < 1:
        raise Undefined("isodynamic polynomial is constant")
    return discriminant(ID)


def component_values(point: FamilyPoint):
    """``{"D0", "DW", "DM"}`` components of the meta-discriminant at ``point`` (absent ones omitted)."""
    spec = point.spec
    vals = point.as_dict()
    return {k: evaluate_formula(name, vals) for k, name in spec.get("components", {}).items()}


class StratumTag(enum.Enum):
    GENERIC = "Generic"
    D0 = "D0"
    DW = "DW"
    DM = "DM"
    MIXED = "Mixed"


@dataclass(frozen=True)
class StratumLabel:
    tag: StratumTag
    witnesses: dict = field(default_factory=dict)
    members: tuple = ()

    def to_json(self):
        def enc(v):
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            z = complex(v)
            return [z.real, z.imag]

        return {"tag": self.tag.value, "members": [m.value for m in self.members],
                "witnesses": {k: enc(v) for k, v in self.witnesses.items()}}


def classify(P: ComplexPoly, tol=1e-9, root_tol=1e-10) -> StratumLabel:
    """Stratum membership of a polynomial of degree ``d >= 3``.

    D0: ``P`` has a multiple root.  DW: the Wronskian
    ``(d-1)P'^2 - dPP''`` has a double root that is not a root of ``P``.
    DM: two critical points of ``R_P`` separated by more than
    ``MAXWELL_POINT_SEP`` carry values within chordal distance ``tol``.
    Roots are clustered with ``root_tol`` (an m-fold root spreads to about
    ``root_tol**(1/m)``).
    """
    P = P.to_float()
    d = P.degree
    if d < 3:
        raise DegenerateInput("classification needs degree >= 3")
    members = []
    witnesses = {}
    proots = find_roots(P, tol=root_tol).roots
    multiple = [r for r, m in proots if m >= 2]
    if multiple:
        members.append(StratumTag.D0)
        witnesses["D0"] = multiple
    W = wronskian_of_associated(P).trim(1e-13)
    if W.degree >= 1:
        wroots = find_roots(W, tol=root_tol).roots
        sep = max(MAXWELL_POINT_SEP, root_tol ** 0.5)
        away = [r for r, m in wroots
                if m >= 2 and all(abs(r - s) > sep * (1 + abs(r)) for s, _ in proots)]
        if away:
            members.append(StratumTag.DW)
            witnesses["DW"] = away
        R = associated_rational(RationalMap.polynomial(P, d), reduce=False)
        crit = [r for r, _ in wroots
                if all(abs(r - s) > sep * (1 + abs(r)) for s, _ in proots)]
        vals = [R(z) for z in crit]
        pairs = []
        for i in range(len(crit)):
            for j in range(i + 1, len(crit)):
                if abs(crit[i] - crit[j]) > MAXWELL_POINT_SEP * (1 + abs(crit[i])) and chordal(vals[i], vals[j]) < tol:
                    pairs.append((crit[i], crit[j]))
        if pairs:
            members.append(StratumTag.DM)
            witnesses["DM"] = pairs[0]
    if not members:
        tag = StratumTag.GENERIC
    elif len(members) == 1:
        tag = members[0]
    else:
        tag = StratumTag.MIXED
    return StratumLabel(tag, witnesses, tuple(members))


def _random_rational(rng, size=9, den=6):
    return Fraction(int(rng.integers(-size, size + 1)), int(rng.integers(1, den + 1)))


def _sample_point(family, rng):
    k = len(golden()["families"][family]["params"])
    return FamilyPoint(family, tuple(_random_rational(rng) for _ in range(k)))


def _ratio_record(point, num, den):
    return {"params": [str(p) for p in point.params], "ratio": str(num / den)}


def _constant_ratio(records):
    return len({r["ratio"] for r in records}) == 1


def factorization_check(d, samples=10, seed=0, max_draws=None):
    """Check ``D_d = const * prod_k (component_k)**j_k`` on random rational points.

    Each sample uses its own generator seeded by ``(seed, index)``; draws
    where a component or the meta-discriminant vanishes are redrawn.
    Returns a JSON-ready report.
    """
    family = str(d)
    spec = golden()["families"].get(family)
    if spec is None or spec["kind"] != "polynomial":
        raise DegenerateInput(f"no golden factorization for d = {d}")
    exps = spec["exponents"]
    records = []
    draws = 0
    max_draws = max_draws or 20 * samples
    index = 0
    while len(records) < samples and draws < max_draws:
        rng = np.random.default_rng([seed, index])
        index += 1
        draws += 1
        pt = _sample_point(family, rng)
        comps = component_values(pt)
        if any(not v for v in comps.values()):
            continue
        try:
            D = meta_discriminant(pt)
        except Undefined:
            continue
        expected = GaussianRational(1)
        for k, j in exps.items():
            expected = expected * comps[k] ** j
        records.append(_ratio_record(pt, D, expected))
    passed = len(records) == samples and _constant_ratio(records)
    return {"d": d, "seed": seed, "exponents": exps, "samples": records, "draws": draws, "pass": passed}


def _proportionality_records(point, computed, closed):
    """Ratio ``computed / closed`` if the two polynomials are proportional, else None."""
    if computed.degree != closed.degree:
        return None
    k = computed.degree
    ratio = computed.coeff(k) / closed.coeff(k)
    if closed * ratio != computed:
        return None
    return {"params": [str(p) for p in point.params], "ratio": str(ratio)}


def rational_case_check(case, samples=5, seed=0, max_draws=None):
    """Compare the isodynamic polynomial and its discriminant with the golden closed forms.

    ``case`` is ``"1-1"``, ``"2-1"`` or ``"1-2"`` (or a tuple such as
    ``(2, 1)``).  Passes when both the polynomial ratio and the
    discriminant ratio are one constant across samples.
    """
    if isinstance(case, (tuple, list)):
        case = f"{case[0]}-{case[1]}"
    spec = golden()["families"].get(case)
    if spec is None or spec["kind"] != "rational":
        raise DegenerateInput(f"unknown rational case {case!r}")
    poly_records, disc_records = [], []
    failures = []
    draws = 0
    index = 0
    max_draws = max_draws or 20 * samples
    while len(poly_records) < samples and draws < max_draws:
        rng = np.random.default_rng([seed, index])
        index += 1
        draws += 1
        pt = _sample_point(case, rng)
        w = family_map(pt)
        if not validate(w).ok:
            continue
        computed = isodynamic_poly(w)
        closed = formula_poly(spec["ID"], pt.as_dict())
        if closed.is_zero or computed.is_zero or computed.degree < 1:
            continue
        D_closed = evaluate_formula(spec["D"], pt.as_dict())
        if not D_closed:
            continue
        rec = _proportionality_records(pt, computed, closed)
        if rec is None:
            failures.append([str(p) for p in pt.params])
            poly_records.append({"params": [str(p) for p in pt.params], "ratio": None})
            continue
        poly_records.append(rec)
        disc_records.append(_ratio_record(pt, discriminant(computed), D_closed))
    ok_poly = not failures and len(poly_records) == samples and _constant_ratio(poly_records)
    ok_disc = len(disc_records) == samples and _constant_ratio(disc_records)
    return {"case": case, "seed": seed, "poly": poly_records, "discriminant": disc_records,
            "poly_pass": ok_poly, "discriminant_pass": ok_disc, "pass": ok_poly and ok_disc}


def scan_strata(d, samples=10, seed=0):
    """Factorization report for ``d`` in ``{3, 4, 5}``; raw meta-discriminant data otherwise.

    For other degrees, random monic polynomials with rational coefficients
    are drawn and ``D_d``, ``Discr(P)`` and ``Discr(P')`` are reported
    without any verdict.
    """
    if str(d) in golden()["families"] and golden()["families"][str(d)]["kind"] == "polynomial":
        return factorization_check(d, samples, seed)
    records = []
    for index in range(samples):
        rng = np.random.default_rng([seed, index])
        coeffs = [GaussianRational(_random_rational(rng)) for _ in range(d)] + [GaussianRational(1)]
        P = ComplexPoly(coeffs, EXACT)
        try:
            D = meta_discriminant(P, d)
        except Undefined:
            continue
        records.append({"coeffs": [str(c) for c in coeffs], "meta_discriminant": str(D),
                        "discr_P": str(discriminant(P)), "discr_dP": str(discriminant(P.derivative()))})
    return {"d": d, "seed": seed, "samples": records, "pass": None}
