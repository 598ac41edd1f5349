"""JSON and inline-text formats for polynomials, rational maps, divisors and Möbius maps.

Polynomials serialize as ``{"mode": "exact"|"float", "coeffs": [[re, im], ...]}``
with ascending powers; exact entries are rational strings such as ``"3/7"``.
Inline coefficient lists on the command line are written in descending
order (``"1,0,0,-1"`` is ``z^3 - 1``).
"""
from __future__ import annotations

import json
from fractions import Fraction

from .errors import IsodynError
from .isodyn_map import RationalMap, SphereDivisor
from .mobius import MobiusMap
from .polynomial import ComplexPoly
from .scalar import EXACT, FLOAT, GaussianRational

__all__ = [
    "InputError",
    "parse_scalar",
    "parse_coeffs",
    "parse_vertices",
    "parse_rect",
    "parse_alphas",
    "poly_to_json",
    "poly_from_json",
    "rational_to_json",
    "rational_from_json",
    "divisor_to_json",
    "divisor_from_json",
    "mobius_from_json",
    "loads",
    "dumps",
]


class InputError(IsodynError, ValueError):
    """Malformed user input; the message names the offending position."""


def _frac(s):
    if "/" in s:
        num, den = s.split("/")
        return Fraction(num) / Fraction(den)
    return Fraction(s)


def _im_frac(s):
    s = s.rstrip("*")
    if s in ("", "+"):
        return Fraction(1)
    if s == "-":
        return Fraction(-1)
    return _frac(s)


def parse_scalar(text, exact=True):
    """``"3/7"``, ``"-2"``, ``"0.25"``, ``"1+2i"``, ``"-i"`` style entries.

    With ``exact`` the value is a :class:`GaussianRational` (decimals are
    read as the rationals they denote); otherwise a ``complex``.
    """
    s = text.strip().replace(" ", "").replace("j", "i")
    if not s:
        raise InputError("empty coefficient")
    try:
        if not s.endswith("i"):
            re_part, im_part = _frac(s), Fraction(0)
        else:
            body = s[:-1]
            cut = max((k for k in range(1, len(body)) if body[k] in "+-" and body[k - 1] not in "eE"), default=0)
            if cut:
                re_part, im_part = _frac(body[:cut]), _im_frac(body[cut:])
            else:
                re_part, im_part = Fraction(0), _im_frac(body)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse coefficient {text!r}") from None
    if exact:
        return GaussianRational(re_part, im_part)
    return complex(float(re_part), float(im_part))


def parse_coeffs(text, exact=True) -> ComplexPoly:
    """Comma-separated coefficients, highest power first."""
    parts = text.split(",")
    coeffs = []
    for k, p in enumerate(parts):
        try:
            coeffs.append(parse_scalar(p, exact))
        except InputError as exc:
            raise InputError(f"coefficient {k + 1} of {len(parts)}: {exc}") from None
    P = ComplexPoly(coeffs[::-1], EXACT if exact else FLOAT)
    if P.is_zero:
        raise InputError("zero polynomial")
    return P


def parse_vertices(text):
    """``"x1,y1 x2,y2 x3,y3"`` to three complex numbers."""
    pts = text.split()
    if len(pts) != 3:
        raise InputError(f"expected 3 vertices, got {len(pts)}")
    out = []
    for k, p in enumerate(pts):
        xy = p.split(",")
        if len(xy) != 2:
            raise InputError(f"vertex {k + 1}: expected 'x,y', got {p!r}")
        try:
            out.append(complex(float(xy[0]), float(xy[1])))
        except ValueError:
            raise InputError(f"vertex {k + 1}: cannot parse {p!r}") from None
    return out


def parse_rect(text):
    vals = text.split(",")
    if len(vals) != 4:
        raise InputError("rect must be xmin,xmax,ymin,ymax")
    try:
        x0, x1, y0, y1 = (float(v) for v in vals)
    except ValueError:
        raise InputError(f"cannot parse rect {text!r}") from None
    if not (x0 < x1 and y0 < y1):
        raise InputError("rect must have xmin < xmax and ymin < ymax")
    return (x0, x1, y0, y1)


def parse_alphas(text):
    """``"-5:5"`` (integer range, inclusive) or a comma list of rationals."""
    if ":" in text:
        lo, hi = text.split(":")
        try:
            return [Fraction(k) for k in range(int(lo), int(hi) + 1)]
        except ValueError:
            raise InputError(f"cannot parse range {text!r}") from None
    try:
        return [_frac(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse alphas {text!r}") from None


def _pair(c):
    if isinstance(c, GaussianRational):
        return c.to_json()
    c = complex(c)
    return [c.real, c.imag]


def poly_to_json(P: ComplexPoly):
    return {"mode": P.mode, "coeffs": [_pair(c) for c in P.coeffs]}


def poly_from_json(obj) -> ComplexPoly:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise InputError("polynomial must be an object with 'coeffs'")
    mode = obj.get("mode", EXACT)
    if mode not in (EXACT, FLOAT):
        raise InputError(f"unknown mode {mode!r}")
    coeffs = []
    for k, c in enumerate(obj["coeffs"]):
        if not isinstance(c, (list, tuple)) or len(c) != 2:
            raise InputError(f"coeffs[{k}] must be a [re, im] pair")
        try:
            if mode == EXACT:
                coeffs.append(GaussianRational(_frac(str(c[0])), _frac(str(c[1]))))
            else:
                coeffs.append(complex(float(c[0]), float(c[1])))
        except (ValueError, ZeroDivisionError, TypeError):
            raise InputError(f"coeffs[{k}]: cannot parse {c!r}") from None
    return ComplexPoly(coeffs, mode)


def rational_to_json(w: RationalMap):
    return {"p": poly_to_json(w.num), "q": poly_to_json(w.den), "d": w.d, "pole_degree": w.pole_degree}


def rational_from_json(obj) -> RationalMap:
    if not isinstance(obj, dict) or "p" not in obj:
        raise InputError("rational input must be an object with 'p' (and optionally 'q')")
    p = poly_from_json(obj["p"])
    if "q" in obj:
        q = poly_from_json(obj["q"])
        if q.mode != p.mode:
            p, q = p.to_float(), q.to_float()
        return RationalMap.from_pq(p, q)
    return RationalMap.polynomial(p, obj.get("d"))


def divisor_to_json(D: SphereDivisor):
    return D.to_json()


def divisor_from_json(obj) -> SphereDivisor:
    try:
        return SphereDivisor.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed divisor: {exc}") from None


def mobius_from_json(obj) -> MobiusMap:
    try:
        return MobiusMap.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed Möbius map: {exc}") from None


def loads(text, source="<input>"):
    """``json.loads`` with a diagnostic naming line and column on failure."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, shortest float repr, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True) + "\n"
