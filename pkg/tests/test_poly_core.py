import numpy as np
import pytest
from hypothesis import given, strategies as st

from isodyn.errors import DegenerateInput, ModeMismatch, SolverDiverged
from isodyn.poly_core import (PolarPencil, coprime_certificate, discriminant, discriminant_logderiv, gcd_poly,
                              multiplicity_profile, pencil_always_singular, pencil_discriminant, resultant,
                              squarefree_certificate, squarefree_decomposition)
from isodyn.polynomial import ComplexPoly, rational_poly
from isodyn.roots import chordal, cluster_roots, find_roots
from isodyn.scalar import EXACT, FLOAT, GaussianRational

Z = rational_poly([0, 1])
small_int = st.integers(min_value=-6, max_value=6)


def poly_from_seed(seed, deg, den=5):
    rng = np.random.default_rng(seed)
    cs = [GaussianRational(int(rng.integers(-9, 10)), int(rng.integers(-9, 10))) / int(rng.integers(1, den + 1))
          for _ in range(deg)]
    return ComplexPoly(cs + [GaussianRational(1)], EXACT)


# -- resultant and discriminant ------------------------------------------------

def test_resultant_examples():
    assert resultant(Z - 1, Z + 1) == 2
    assert resultant(Z * Z - 1, Z - 1) == 0
    # independent value: sympy.resultant(z**2 + 1, z - 2) == 5
    assert resultant(Z * Z + 1, Z - 2) == 5


def test_resultant_rejects_bad_input():
    with pytest.raises(DegenerateInput):
        resultant(ComplexPoly.zero(), Z)
    with pytest.raises(ModeMismatch):
        resultant(Z, ComplexPoly([0.0, 1.0], FLOAT))


@given(st.integers(0, 10_000), st.integers(1, 5), st.integers(1, 5))
def test_resultant_swap_sign(seed, m, n):
    f, g = poly_from_seed(seed, m), poly_from_seed(seed + 1, n)
    assert resultant(f, g) == resultant(g, f) * (-1) ** (m * n)


@given(small_int, small_int)
def test_quadratic_discriminant(b, c):
    assert discriminant(Z * Z + Z * b + c) == b * b - 4 * c


@given(small_int, small_int)
def test_depressed_cubic_discriminant(p, q):
    assert discriminant(Z ** 3 + Z * p + q) == -4 * p ** 3 - 27 * q ** 2


def test_discriminant_double_root_and_errors():
    assert discriminant((Z - 1) ** 2) == 0
    with pytest.raises(DegenerateInput):
        discriminant(rational_poly([3]))


@given(st.integers(0, 10_000), st.integers(2, 6), st.booleans())
def test_discriminant_zero_iff_repeated(seed, deg, plant):
    f = poly_from_seed(seed, deg)
    if plant:
        f = f * (Z - GaussianRational(seed % 7 - 3, 1)) ** 2
    has_multiple = any(m >= 2 for _, m in multiplicity_profile(f))
    assert (discriminant(f) == 0) == has_multiple


def test_float_resultant_matches_exact():
    f, g = poly_from_seed(3, 4), poly_from_seed(4, 3)
    exact = complex(resultant(f, g))
    approx = complex(resultant(f.to_float(), g.to_float()))
    assert abs(approx - exact) <= 1e-10 * abs(exact)


# -- pencils -------------------------------------------------------------------

def polar(P):
    d = P.degree
    return PolarPencil(P * d - P.derivative().shift_degree(1), P.derivative())


def test_pencil_of_z3_minus_1_is_linear():
    D = pencil_discriminant(polar(Z ** 3 - 1))
    assert not D.identically_singular
    assert D.poly == rational_poly([0, 36])


def test_pencil_with_triple_root_is_identically_singular():
    P = (Z - 1) ** 3 * (Z + 2)
    D = pencil_discriminant(polar(P))
    assert D.poly.is_zero and D.identically_singular
    assert pencil_always_singular(polar(P))


def test_simple_pencil():
    D = pencil_discriminant(PolarPencil(Z * Z, rational_poly([1])))
    assert D.poly == rational_poly([0, -4])


def test_always_singular_examples():
    assert pencil_always_singular(PolarPencil((Z - 1) ** 2 * (Z + 3), (Z - 1) ** 2 * 5))
    assert not pencil_always_singular(PolarPencil(Z * Z, Z + 1))


def test_always_singular_float_matches_exact():
    A, B = (Z - 1) ** 2 * (Z + 3), (Z - 1) ** 2 * 5
    assert pencil_always_singular(PolarPencil(A.to_float(), B.to_float()))
    assert not pencil_always_singular(PolarPencil((Z * Z).to_float(), (Z + 1).to_float()))


def test_triple_root_members_have_multiple_roots(rng):
    P = (Z - 1) ** 3 * (Z + 2)
    pen = polar(P)
    for _ in range(20):
        u = GaussianRational(int(rng.integers(-50, 50)), int(rng.integers(-50, 50))) / 7
        assert discriminant(pen.at(u)) == 0


@given(st.integers(0, 100_000), st.integers(2, 8))
def test_exact_and_float_pencil_discriminants_agree(seed, n):
    A = poly_from_seed(seed, n)
    B = poly_from_seed(seed + 17, n - 1)
    ex = pencil_discriminant(PolarPencil(A, B)).poly
    fl = pencil_discriminant(PolarPencil(A.to_float(), B.to_float())).poly
    ce = ex.to_float().to_numpy()
    cf = np.zeros(len(ce), dtype=complex)
    cf[: min(len(ce), len(fl.coeffs))] = fl.to_numpy()[: len(ce)]
    assert np.max(np.abs(cf - ce)) <= 1e-9 * np.max(np.abs(ce))


def test_discriminant_logderiv_matches_finite_difference(backend):
    P = poly_from_seed(5, 5).to_float()
    pen = polar(P)
    D = pencil_discriminant(pen).poly
    us = np.array([0.3 + 0.2j, -1.1 + 0.7j, 2.0 - 0.5j])
    L = discriminant_logderiv(pen, us)
    expect = np.array([D.derivative()(u) / D(u) for u in us])
    assert np.allclose(L, expect, rtol=1e-9)


# -- gcd, squarefree parts and modular certificates ---------------------------

def test_gcd_examples():
    assert gcd_poly(Z * Z - 1, Z * Z - 2 * Z + 1) == Z - 1
    f = (Z - 1) * (Z - 2) * (Z - 3)
    g = (Z + 1) * (Z + 2) * (Z + 5)
    assert gcd_poly(f, g) == rational_poly([1])
    with pytest.raises(DegenerateInput):
        gcd_poly(ComplexPoly.zero(), ComplexPoly.zero())


def test_multiplicity_profile_examples():
    prof = multiplicity_profile((Z - 2) ** 2 * (Z + 1))
    assert sorted((complex(r).real, m) for r, m in prof) == [(-1.0, 1), (2.0, 2)]
    fprof = multiplicity_profile(((Z - 2) ** 2 * (Z + 1)).to_float())
    assert sorted(m for _, m in fprof) == [1, 2]
    assert sum(m for _, m in fprof) == 3


@given(st.integers(0, 10_000), st.integers(1, 4))
def test_squarefree_decomposition_reconstructs(seed, k):
    base = poly_from_seed(seed, 2)
    f = base * (Z - 3) ** k
    parts = squarefree_decomposition(f)
    prod = rational_poly([1])
    for factor, m in parts:
        prod = prod * factor ** m
    assert prod == f.monic()


def test_certificates():
    f = (Z - 1) * (Z - 2)
    assert coprime_certificate(f, Z + 3)
    assert not coprime_certificate(f, Z - 2)
    assert squarefree_certificate(f)
    assert not squarefree_certificate(f * (Z - 1))


@given(st.integers(0, 10_000), st.integers(1, 5), st.integers(1, 5))
def test_certificate_never_contradicts_gcd(seed, m, n):
    f, g = poly_from_seed(seed, m), poly_from_seed(seed + 3, n)
    if coprime_certificate(f, g):
        assert gcd_poly(f, g).degree == 0


# -- root finder ----------------------------------------------------------------

def test_find_roots_basic(backend):
    rs = find_roots(rational_poly([1, 0, 1]), backend=backend)
    assert sorted(round(r.imag, 12) for r in rs.values()) == [-1.0, 1.0]
    rs = find_roots(rational_poly([-1, 0, 0, 1]), backend=backend)
    cube = np.exp(2j * np.pi * np.arange(3) / 3)
    assert max(min(abs(r - c) for c in cube) for r in rs.values()) < 1e-14


def test_find_roots_degree10_known_roots(backend, rng):
    roots = rng.uniform(-2, 2, 10) + 1j * rng.uniform(-2, 2, 10)
    P = ComplexPoly.from_roots(list(roots), FLOAT)
    got = find_roots(P, backend=backend).values()
    assert max(min(abs(g - r) for g in got) for r in roots) < 1e-10


@given(st.integers(0, 10_000), st.integers(1, 9))
def test_find_roots_reconstruction(seed, deg):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    P = ComplexPoly(c, FLOAT)
    rs = find_roots(P)
    assert rs.degree == deg
    rebuilt = ComplexPoly.from_roots(rs.expanded(), FLOAT, lead=P.lc).to_numpy()
    assert np.max(np.abs(rebuilt - P.to_numpy())) <= 1e-8 * np.max(np.abs(P.to_numpy()))
    assert rs.residual_bound >= 0


def test_find_roots_clusters_multiple_root():
    P = ((Z - 1) ** 2 * (Z + 2)).to_float()
    rs = find_roots(P, tol=1e-10)
    assert sorted(m for _, m in rs.roots) == [1, 2]


def test_cluster_roots_cap():
    pts = np.array([0.0, 1e-3, 2e-3]) + 0j
    assert [m for _, m in cluster_roots(pts, 1e-10)] == [1, 1, 1]


def test_chordal_metric():
    assert chordal(0, float("inf")) == pytest.approx(2.0)
    assert chordal(1j, 1j) == 0.0
    assert chordal(1, -1) == pytest.approx(2.0)


def test_solver_reports_divergence():
    P = ComplexPoly(np.random.default_rng(0).standard_normal(30), FLOAT)
    with pytest.raises(SolverDiverged):
        find_roots(P, maxiter=1)
