import cmath

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import Z
from isodyn.errors import DegenerateInput, Undefined
from isodyn.isodyn_map import RationalMap, isodynamic_poly, validate
from isodyn.polynomial import ComplexPoly
from isodyn.scalar import FLOAT, GaussianRational
from isodyn.triangle import (Triangle, alpha_centroid, alpha_discriminant, apollonian_residual, centroid_line,
                             isodynamic_points_triangle, x26613, x26613_from_discriminant)

CUBE_ROOTS = [cmath.exp(2j * cmath.pi * k / 3) for k in range(3)]


def random_triangle(rng, spread=10.0):
    while True:
        T = Triangle.from_points(rng.uniform(-spread, spread, 3) + 1j * rng.uniform(-spread, spread, 3))
        if abs(T.signed_area2) > 1e-3 * T.scale ** 2:
            return T


def test_equilateral_has_one_finite_point():
    S, S2 = isodynamic_points_triangle(Triangle.from_points(CUBE_ROOTS))
    assert abs(S) < 1e-12 and np.isinf(S2.real)


def test_right_isoceles_example():
    T = Triangle.from_points([0, 1, 1j])
    S, S2 = isodynamic_points_triangle(T)
    # independent: roots of the cubic closed form for z^3 - (1+i) z^2 + i z
    a, b, c = -(1 + 1j), 1j, 0
    ref = np.roots([a * a - 3 * b, a * b - 9 * c, b * b - 3 * a * c])
    assert min(abs(S - r) for r in ref) < 1e-12 and min(abs(S2 - r) for r in ref) < 1e-12


@pytest.mark.parametrize("rho", [1j, 0.3 + 1.2j, -0.7 + 0.4j, 2.5 + 0.1j])
def test_closed_forms_for_unit_base(rho):
    s = cmath.sqrt(-3 * (rho * (rho - 1)) ** 2)
    den = 2 + 2 * rho * (rho - 1)
    expect = [(rho * (rho + 1) - s) / den, (rho * (rho + 1) + s) / den]
    got = isodynamic_points_triangle(Triangle.from_points([0, 1, rho]))
    for g in got:
        assert min(abs(g - e) for e in expect) < 1e-10 * (1 + abs(g))


def test_repeated_vertices_rejected():
    with pytest.raises(DegenerateInput):
        isodynamic_points_triangle(Triangle.from_points([0, 0, 1]))


def test_apollonian_residual_examples():
    T = Triangle.from_points(CUBE_ROOTS)
    assert apollonian_residual(T, T.centroid) < 1e-15
    assert apollonian_residual(Triangle.from_points([0, 1, 1j]), 100 + 100j) > 1.0


@given(st.integers(0, 10 ** 6))
def test_apollonian_property(seed):
    T = random_triangle(np.random.default_rng(seed))
    for p in isodynamic_points_triangle(T):
        if not np.isinf(complex(p).real):
            assert apollonian_residual(T, p) < 1e-9 * max(1.0, T.scale ** 2)


@given(st.integers(0, 10 ** 6))
def test_isodynamic_points_inverse_in_circumcircle(seed):
    T = random_triangle(np.random.default_rng(seed), spread=2.0)
    S, S2 = isodynamic_points_triangle(T)
    O = T.circumcenter()
    R = abs(T.z1 - O)
    w = O + R * R / (S - O).conjugate()
    assert abs(w - S2) < 1e-8 * (1 + abs(S2))


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20), st.booleans())
def test_equilateral_criterion_exact(a_num, c_num, b_shift, force):
    a = GaussianRational(a_num, 1) / 3
    b = a * a / 3 if force else a * a / 3 + GaussianRational(b_shift or 1, 0) / 7
    c = GaussianRational(c_num)
    P = Z ** 3 + Z * Z * a + Z * b + c
    w = RationalMap.polynomial(P)
    if not validate(w).ok:
        return
    assert (isodynamic_poly(w).degree == 1) == (a * a == b * 3)


# -- alpha discriminant -----------------------------------------------------------

def test_alpha_equals_degree_is_isodynamic_poly():
    P = Z ** 4 + Z * 2 - GaussianRational(1, 3)
    assert alpha_discriminant(P, 4) == isodynamic_poly(RationalMap.polynomial(P))


def test_alpha_zero_centroid_is_vertex_centroid(rng):
    for _ in range(5):
        T = random_triangle(rng, 3.0)
        P = T.cubic()
        assert abs(alpha_centroid(P, 0) - T.centroid) < 1e-10


def test_alpha_one_quotient_gives_x26613():
    T = Triangle.from_points([0, 1, 1j])
    P = ComplexPoly.from_roots([GaussianRational(0), GaussianRational(1), GaussianRational(0, 1)])
    D = alpha_discriminant(P, 1)
    q, r = D.divmod(P)
    assert r.is_zero and q.degree == 1
    assert abs(complex(-q.coeff(0) / q.coeff(1)) - x26613(T)) < 1e-15


def test_x26613_example_and_errors():
    T = Triangle.from_points([0, 1, 1j])
    assert abs(x26613(T) - (-2 * (1 + 1j) / 9)) < 1e-15
    with pytest.raises(Undefined):
        x26613(Triangle.from_points(CUBE_ROOTS))


@given(st.integers(0, 10 ** 6))
def test_x26613_both_routes_and_mean(seed):
    T = random_triangle(np.random.default_rng(seed), 3.0)
    u1 = x26613(T)
    assert abs(u1 - x26613_from_discriminant(T)) <= 1e-10 * max(1.0, abs(u1))
    S, S2 = isodynamic_points_triangle(T)
    assert abs(u1 - (S + S2 + T.centroid) / 3) < 1e-9 * max(1.0, T.scale)


# -- centroid line -----------------------------------------------------------------

def test_centroid_line_degenerates_to_point_for_z3_minus_1():
    L = centroid_line((Z ** 3 - 1).to_float(), range(-5, 6))
    assert L.degenerate and abs(L.centre) < 1e-12


def test_centroid_line_example_cubic():
    L = centroid_line((Z ** 3 + Z * Z + 2).to_float(), range(-5, 6))
    assert not L.degenerate and L.max_residual < 1e-8


def test_centroid_line_random_quartic():
    rng = np.random.default_rng(8)
    P = ComplexPoly.from_roots(list(rng.standard_normal(4) + 1j * rng.standard_normal(4)), FLOAT)
    assert centroid_line(P, range(-5, 6)).max_residual < 1e-8


def test_centroids_at_three_and_six_recorded(rng):
    # m(3) comes from a quadratic and m(6) from a quartic in u, yet the
    # centroids coincide on every triangle tried; recorded, not explained
    for _ in range(10):
        T = random_triangle(rng, 3.0)
        P = T.cubic()
        m3, m6 = alpha_centroid(P, 3), alpha_centroid(P, 6)
        for alpha, m, deg in ((3, m3, 2), (6, m6, 4)):
            D = alpha_discriminant(P.to_exact(), alpha)
            assert D.degree == deg
            assert abs(np.mean(np.roots(D.to_float().to_numpy()[::-1])) - m) < 1e-9 * max(1.0, abs(m))
        assert abs(m3 - m6) < 1e-12 * max(1.0, abs(m3))
