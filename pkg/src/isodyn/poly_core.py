"""Resultants, discriminants, polar pencils, gcds and multiplicity profiles."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateInput, ModeMismatch
from .polynomial import ComplexPoly
from .scalar import EXACT, FLOAT, GaussianRational

__all__ = [
    "PolarPencil",
    "PencilDiscriminant",
    "bareiss_det",
    "sylvester_matrix",
    "resultant",
    "discriminant",
    "pencil_discriminant",
    "pencil_always_singular",
    "gcd_poly",
    "coprime_certificate",
    "squarefree_certificate",
    "squarefree_decomposition",
    "multiplicity_profile",
    "discriminant_logderiv",
    "refine_discriminant_roots",
]


def bareiss_det(matrix, exquo):
    """Fraction-free determinant over an integral domain.

    ``matrix`` is a list of rows whose entries support ``+ - *`` and truth
    testing; ``exquo(a, b)`` must return the exact quotient ``a / b``.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return None
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] * 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                val = pivot * row_i[j] - mik * row_k[j]
                row_i[j] = val if prev is None else exquo(val, prev)
            row_i[k] = pivot * 0
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(f_desc, g_desc, zero):
    """Sylvester matrix from descending coefficient lists."""
    m = len(f_desc) - 1
    n = len(g_desc) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(f_desc) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(g_desc) + [zero] * (size - n - 1 - i))
    return rows


def _require_pair(f, g):
    if not isinstance(f, ComplexPoly) or not isinstance(g, ComplexPoly):
        raise TypeError("resultant expects ComplexPoly arguments")
    if f.mode != g.mode:
        raise ModeMismatch("resultant of exact and float polynomials")
    if f.is_zero or g.is_zero:
        raise DegenerateInput("resultant with the zero polynomial")


def resultant(f: ComplexPoly, g: ComplexPoly):
    """Sylvester resultant, ``lc(f)**deg(g) * prod g(alpha_i)`` over roots of ``f``."""
    _require_pair(f, g)
    m, n = f.degree, g.degree
    if m == 0 and n == 0:
        return GaussianRational(1) if f.mode == EXACT else 1 + 0j
    if m == 0:
        return f.lc ** n
    if n == 0:
        return g.lc ** m
    fd, gd = f.coeffs[::-1], g.coeffs[::-1]
    if f.mode == EXACT:
        return bareiss_det(sylvester_matrix(fd, gd, GaussianRational(0)), lambda a, b: a / b)
    mat = np.array(sylvester_matrix(fd, gd, 0j), dtype=complex)
    return complex(np.linalg.det(mat))


def _discr_sign(n):
    return -1 if (n * (n - 1) // 2) % 2 else 1


def discriminant(f: ComplexPoly):
    """``(-1)**(n(n-1)/2) / lc(f) * Res(f, f')``."""
    if not isinstance(f, ComplexPoly) or f.is_zero or f.degree < 1:
        raise DegenerateInput("discriminant needs a polynomial of degree >= 1")
    n = f.degree
    res = resultant(f, f.derivative())
    return res * _discr_sign(n) / f.lc


@dataclass(frozen=True)
class PolarPencil:
    """The pencil ``A(z) + u*B(z)``, linear in the polar variable ``u``."""

    a_part: ComplexPoly
    b_part: ComplexPoly

    def __post_init__(self):
        if self.a_part.mode != self.b_part.mode:
            raise ModeMismatch("pencil parts must share a mode")

    @property
    def mode(self):
        return self.a_part.mode

    @property
    def z_degree(self):
        return max(self.a_part.degree, self.b_part.degree)

    def at(self, u):
        """The polynomial ``A + u*B`` in ``z`` for a fixed ``u``."""
        return self.a_part + self.b_part * u

    def to_float(self):
        return PolarPencil(self.a_part.to_float(), self.b_part.to_float())


class PencilDiscriminant(NamedTuple):
    poly: ComplexPoly
    identically_singular: bool


def _pencil_entries(pencil, n):
    """Descending z-coefficients of the pencil and its z-derivative, as u-polynomials."""
    A, B = pencil.a_part, pencil.b_part
    mode = pencil.mode
    f = [ComplexPoly._raw([A.coeff(k), B.coeff(k)], mode) for k in range(n, -1, -1)]
    fp = [ComplexPoly._raw([A.coeff(k) * k, B.coeff(k) * k], mode) for k in range(n, 0, -1)]
    return f, fp


def pencil_discriminant(pencil: PolarPencil, z_degree=None, float_rtol=0.0) -> PencilDiscriminant:
    """``Discr_z(A(z) + u B(z))`` as a polynomial in ``u``.

    The z-degree is formal: ``n = z_degree`` if given, else ``max(deg A, deg B)``,
    with leading coefficient ``A_n + u B_n``.  A formal degree above the
    actual one treats the pencil as a binary form with roots at infinity
    (``Disc_n = a_{n-1}^2 Disc_{n-1}`` when ``a_n`` vanishes).  Exact pencils
    go through a fraction-free Sylvester determinant over Q(i)[u]; float
    pencils are sampled on the unit circle (then on circles matched to the
    Newton polygon of the result) and interpolated by FFT.
    """
    A, B = pencil.a_part, pencil.b_part
    if A.is_zero and B.is_zero:
        raise DegenerateInput("pencil with both parts zero")
    actual = pencil.z_degree
    n = actual if z_degree is None else int(z_degree)
    if n < actual:
        raise DegenerateInput("formal z-degree below the actual degree")
    mode = pencil.mode
    if n < 1:
        raise DegenerateInput("pencil is constant in z")
    one = ComplexPoly([1], mode)
    if n - actual >= 2:
        # double root at infinity for every u
        return PencilDiscriminant(ComplexPoly.zero(mode), True)
    if n - actual == 1:
        top = ComplexPoly._raw([A.coeff(actual), B.coeff(actual)], mode)
        inner = pencil_discriminant(pencil, actual, float_rtol) if actual >= 1 else PencilDiscriminant(one, False)
        poly = inner.poly * (top * top)
        return PencilDiscriminant(poly, inner.identically_singular or poly.is_zero)
    lead = ComplexPoly._raw([A.coeff(n), B.coeff(n)], mode)
    sign = _discr_sign(n)
    if n == 1:
        return PencilDiscriminant(one, False)
    if mode == EXACT:
        f, fp = _pencil_entries(pencil, n)
        zero = ComplexPoly.zero(EXACT)
        det = bareiss_det(sylvester_matrix(f, fp, zero), lambda a, b: a.exquo(b))
        disc = det.exquo(lead) * sign
        return PencilDiscriminant(disc, disc.is_zero)
    return _float_pencil_discriminant(pencil, float_rtol)


def _sample_discriminant(fd):
    """``lc**(2n-2) * prod_{i<j} (z_i - z_j)**2`` via ``np.roots``; fallback for kernel failures."""
    n = len(fd) - 1
    if n < 1 or fd[0] == 0:
        return 0j
    if n == 1:
        return 1 + 0j
    z = np.roots(fd)
    iu = np.triu_indices(n, 1)
    diff = (z[:, None] - z[None, :])[iu]
    return complex(fd[0] ** (2 * n - 2) * np.prod(diff * diff))


def _padded_desc(pencil):
    n = pencil.z_degree
    a = np.zeros(n + 1, dtype=complex)
    b = np.zeros(n + 1, dtype=complex)
    av, bv = pencil.a_part.to_numpy(), pencil.b_part.to_numpy()
    a[: len(av)] = av
    b[: len(bv)] = bv
    return np.ascontiguousarray(a[::-1]), np.ascontiguousarray(b[::-1])


def _float_pencil_samples(pencil, radius):
    """Discriminant samples on ``|u| = radius`` and the interpolated coefficients.

    Each sample is evaluated from the roots of the pencil member; the LU
    determinant of the Sylvester matrix loses many digits when the roots are
    spread over several scales.
    """
    from . import _backend

    kern = _backend.get_kernels()
    n = pencil.z_degree
    a_desc, b_desc = _padded_desc(pencil)
    # Discr has u-degree at most 2n-2; 2n+1 samples over-determine it.
    count = 2 * n + 1
    # the offset keeps samples away from the zero of the leading coefficient
    # for inputs with exactly placed symmetric data
    phase = np.exp(0.1234567j)
    us = radius * phase * np.exp(2j * np.pi * np.arange(count) / count)
    vals, ok = kern.disc_samples(a_desc, b_desc, us)
    if not ok or not np.all(np.isfinite(vals)):
        vals = np.array([_sample_discriminant(a_desc + u * b_desc) for u in us])
    coeffs = np.fft.fft(vals) / count
    coeffs = coeffs * (radius * phase) ** (-np.arange(count, dtype=float))
    return coeffs[: 2 * n - 1], float(np.max(np.abs(vals)))


def _newton_radii(mags, merge=1.5):
    """Radii matched to the edges of the upper Newton polygon of ``log|c_k|``.

    Returns ``(radii, owner)`` where ``owner[k]`` indexes the radius at which
    coefficient ``k`` is read off: on a circle of radius ``r`` the FFT error in
    ``c_k`` scales like ``max_j |c_j| r**(j-k)``, smallest when ``k`` sits on
    the edge whose slope is ``-log r``.
    """
    mags = np.asarray(mags, dtype=float)
    top = mags.max()
    idx = [k for k in range(len(mags)) if mags[k] > 1e-300 and mags[k] >= 1e-30 * top]
    if len(idx) < 2:
        return [1.0], np.zeros(len(mags), dtype=int)
    logs = np.log(mags[idx])
    hull = []
    for k, y in zip(idx, logs):
        while len(hull) >= 2:
            (k1, y1), (k2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (k - k1) <= (y - y1) * (k2 - k1):
                hull.pop()
            else:
                break
        hull.append((k, y))
    edges = []
    for (k1, y1), (k2, y2) in zip(hull, hull[1:]):
        r = float(np.exp(-(y2 - y1) / (k2 - k1)))
        edges.append((k1, k2, min(max(r, 1e-6), 1e6)))
    radii = []
    owner = np.zeros(len(mags), dtype=int)
    for k1, k2, r in edges:
        if radii and max(r, radii[-1]) / min(r, radii[-1]) < merge:
            pos = len(radii) - 1
        else:
            radii.append(r)
            pos = len(radii) - 1
        owner[k1:k2 + 1] = pos
    owner[hull[-1][0]:] = owner[hull[-1][0]]
    return radii, owner


def _float_pencil_discriminant(pencil, rtol):
    coeffs, vmax = _float_pencil_samples(pencil, 1.0)
    scale = float(np.max(np.abs(pencil.a_part.to_numpy()))) + float(np.max(np.abs(pencil.b_part.to_numpy())))
    if vmax == 0 or vmax <= rtol * scale ** (2 * pencil.z_degree - 2):
        return PencilDiscriminant(ComplexPoly.zero(FLOAT), True)
    # One circle only resolves coefficients near the dominant term; read each
    # coefficient off the circle matched to its Newton-polygon edge.  Two
    # rounds: the first refines the magnitudes used to place the radii.
    for _ in range(2):
        radii, owner = _newton_radii(np.abs(coeffs))
        if len(radii) == 1 and 0.7 < radii[0] < 1.4:
            break
        out = np.array(coeffs)
        for pos, r in enumerate(radii):
            c_r, _ = _float_pencil_samples(pencil, r)
            out[owner == pos] = c_r[owner == pos]
        coeffs = out
    return PencilDiscriminant(ComplexPoly._raw(coeffs.tolist(), FLOAT), False)


def discriminant_logderiv(pencil: PolarPencil, us, n=None):
    """``D'(u)/D(u)`` for ``D(u) = Discr_z(A + uB)`` (formal z-degree ``n``) at each ``u``.

    With ``z_i(u)`` the roots of the pencil member, ``D = lc**(2n-2) *
    prod_{i<j} (z_i - z_j)**2`` and ``z_i' = -B(z_i) / f'(z_i)``, so the
    logarithmic derivative is ``(2n-2) lc'/lc + 2 sum_i z_i' sum_{j!=i} 1/(z_i - z_j)``.
    """
    from . import _backend

    kern = _backend.get_kernels()
    n = pencil.z_degree if n is None else n
    a_desc, b_desc = _padded_desc(pencil)
    us = np.atleast_1d(np.asarray(us, dtype=complex))
    vals, _ = kern.disc_logderiv(a_desc, b_desc, us, int(n))
    return vals


def refine_discriminant_roots(pencil: PolarPencil, roots, n=None, maxiter=10, max_step=1e-2):
    """Polish simple roots of ``Discr_z(A + uB)`` by simultaneous Newton steps.

    ``roots`` is a list of ``(u, multiplicity)``.  Multiple roots are kept
    fixed and only enter the Aberth correction.  Each step is evaluated from
    the pencil roots via :func:`discriminant_logderiv`, which avoids the loss
    of accuracy in the monomial coefficients of the discriminant.  Steps
    larger than ``max_step * (1 + |u|)`` are rejected.
    """
    roots = [(complex(r), m) for r, m in roots]
    vals = np.array([r for r, _ in roots], dtype=complex)
    mult = np.array([m for _, m in roots], dtype=float)
    active = np.array([m == 1 for _, m in roots])
    for _ in range(maxiter):
        idx = np.nonzero(active)[0]
        if not len(idx):
            break
        L = discriminant_logderiv(pencil, vals[idx], n)
        new = vals.copy()
        for i, Li in zip(idx, L):
            others = np.delete(np.arange(len(vals)), i)
            s = np.sum(mult[others] / (vals[i] - vals[others])) if len(others) else 0.0
            denom = Li - s
            step = 1.0 / denom if denom != 0 and np.isfinite(denom) else 0.0
            if not np.isfinite(step) or abs(step) > max_step * (1 + abs(vals[i])):
                active[i] = False
                continue
            new[i] = vals[i] - step
            if abs(step) <= 4e-16 * (1 + abs(vals[i])):
                active[i] = False
        vals = new
    return [(complex(v), int(m)) for v, m in zip(vals, mult)]


def _pencil_gcd(*polys):
    g = None
    for p in polys:
        if p.is_zero:
            continue
        g = p if g is None else gcd_poly(g, p)
    return g


def pencil_always_singular(pencil: PolarPencil, tol=1e-10) -> bool:
    """True iff every member of the pencil has a multiple root in ``z``.

    This happens when ``A`` and ``B`` share a root that is at least double in
    both, i.e. ``gcd(A, A', B, B')`` is nonconstant.  Exact pencils use the
    gcd; float pencils compare clustered roots found with ``tol``.
    """
    A, B = pencil.a_part, pencil.b_part
    if A.is_zero and B.is_zero:
        raise DegenerateInput("pencil with both parts zero")
    if pencil.mode == EXACT:
        g = _pencil_gcd(A, A.derivative(), B, B.derivative())
        return g is not None and g.degree >= 1
    if pencil.z_degree < 2:
        return False
    # float: a common root that is at least double in both parts
    from .roots import find_roots

    def multiple_roots(f):
        if f.is_zero:
            return None
        if f.degree < 2:
            return []
        return [r for r, m in find_roots(f, tol=tol).roots if m >= 2]

    ra, rb = multiple_roots(A), multiple_roots(B)
    if ra is None or rb is None:
        return bool(ra or rb)
    return any(abs(x - y) <= math.sqrt(tol) * (1 + abs(x)) for x in ra for y in rb)


def gcd_poly(f: ComplexPoly, g: ComplexPoly) -> ComplexPoly:
    """Monic gcd over Q(i) by the Euclidean algorithm."""
    if f.mode != g.mode:
        raise ModeMismatch("gcd of exact and float polynomials")
    if f.mode != EXACT:
        raise ModeMismatch("gcd_poly is defined for exact polynomials only")
    if f.is_zero and g.is_zero:
        raise DegenerateInput("gcd of two zero polynomials")
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
        if not b.is_zero:
            b = b.monic()
    return a.monic()


# Reduction modulo the prime ideal (P, i - SQRT_M1) of Z[i].  If the
# reduction of f and g keeps their degrees, deg gcd only grows under it, so a
# constant gcd mod P certifies a constant gcd over Q(i).
_P = 2305843009213693973  # prime, 1 mod 4
_SQRT_M1 = 1035093963448091331  # square root of -1 mod _P


def _reduce_mod_p(f: ComplexPoly):
    """Descending coefficients of ``f`` mod the prime ideal, or None when a denominator vanishes."""
    out = []
    for c in reversed(f.coeffs):
        c = GaussianRational.coerce(c)
        val = 0
        for part, mult in ((c.re, 1), (c.im, _SQRT_M1)):
            den = int(part.denominator) % _P
            if den == 0:
                return None
            val += int(part.numerator) * mult * pow(den, -1, _P)
        out.append(val % _P)
    return out


def _gcd_degree_mod_p(a, b):
    """Degree of ``gcd(a, b)`` over F_P for descending coefficient lists without leading zeros."""
    def strip(v):
        k = 0
        while k < len(v) and v[k] == 0:
            k += 1
        return v[k:]

    a, b = strip(a), strip(b)
    while b:
        inv = pow(b[0], -1, _P)
        r = list(a)
        while len(r) >= len(b):
            q = r[0] * inv % _P
            for k in range(len(b)):
                r[k] = (r[k] - q * b[k]) % _P
            r = strip(r[1:])
        a, b = b, r
    return len(a) - 1


def coprime_certificate(f: ComplexPoly, g: ComplexPoly) -> bool:
    """True when a modular reduction proves ``gcd(f, g) = 1`` for exact ``f, g``.

    False is inconclusive.
    """
    fm, gm = _reduce_mod_p(f), _reduce_mod_p(g)
    if fm is None or gm is None or not fm or not gm or fm[0] == 0 or gm[0] == 0:
        return False
    return _gcd_degree_mod_p(fm, gm) == 0


def squarefree_certificate(f: ComplexPoly) -> bool:
    """True when a modular reduction proves that exact ``f`` has no repeated root."""
    if f.degree < 2:
        return True
    return coprime_certificate(f, f.derivative())


def squarefree_decomposition(f: ComplexPoly):
    """Yun's algorithm: ``[(factor, multiplicity), ...]`` with monic squarefree factors."""
    if f.mode != EXACT:
        raise ModeMismatch("squarefree decomposition needs exact coefficients")
    if f.is_zero:
        raise DegenerateInput("zero polynomial")
    if f.degree == 0:
        return []
    f = f.monic()
    fp = f.derivative()
    a = gcd_poly(f, fp)
    b = f.exquo(a)
    c = fp.exquo(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree >= 1:
        a = gcd_poly(b, d) if not d.is_zero else b
        if a.degree >= 1:
            out.append((a, i))
        b = b.exquo(a)
        c = d.exquo(a)
        d = c - b.derivative()
        i += 1
    return out


def multiplicity_profile(f: ComplexPoly, tol=1e-10):
    """Roots (or irreducible-over-Q(i)-unknown factors) with multiplicities.

    Exact mode returns ``(root, m)`` when the squarefree factor is linear and
    ``(factor, m)`` otherwise.  Float mode clusters the output of
    :func:`isodyn.roots.find_roots`.
    """
    if f.is_zero:
        raise DegenerateInput("zero polynomial")
    if f.mode == EXACT:
        out = []
        for factor, m in squarefree_decomposition(f):
            if factor.degree == 1:
                out.append((-factor.coeff(0) / factor.coeff(1), m))
            else:
                out.append((factor, m))
        return out
    from .roots import find_roots

    return list(find_roots(f, tol=tol).roots)


def max_multiplicity(f: ComplexPoly, tol=1e-10) -> int:
    if f.degree < 1:
        return 0
    if f.mode == EXACT:
        return max((m for _, m in squarefree_decomposition(f)), default=0)
    return max(m for _, m in multiplicity_profile(f, tol))


def float_scale(f: ComplexPoly) -> float:
    cs = f.to_numpy()
    return float(np.max(np.abs(cs))) if len(cs) else 0.0


def normalized_abs(x) -> float:
    return math.hypot(float(complex(x).real), float(complex(x).imag))
