import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import Z, gr, proportional
from isodyn.errors import DegenerateInput, DegreeMismatch
from isodyn.io import mobius_from_json
from isodyn.isodyn_map import INF, RationalMap, SphereDivisor, isodynamic_divisor, validate
from isodyn.mobius import (MobiusMap, apply_divisor, apply_form, apply_point, equivariance_check, match_divisors,
                           random_conditioned_mobius, random_rational_input)
from isodyn.polynomial import ComplexPoly
from isodyn.roots import chordal
from isodyn.scalar import GaussianRational


def is_inf(z):
    return np.isinf(complex(z).real) or np.isinf(complex(z).imag)


def test_apply_point_examples():
    assert apply_point(MobiusMap.identity(False), 7) == 7
    assert is_inf(apply_point(MobiusMap.inversion(False), 0))
    assert apply_point(MobiusMap(1.0, 1.0, 0.0, 1.0), 1j) == 1 + 1j
    M = MobiusMap(2.0, 1.0, 1.0, 3.0)
    assert apply_point(M, INF) == pytest.approx(2.0)
    assert is_inf(apply_point(M, -3.0))


def test_singular_map_rejected():
    with pytest.raises(DegenerateInput):
        MobiusMap(1.0, 2.0, 2.0, 4.0)


@given(st.integers(0, 10 ** 6))
def test_inverse_roundtrip(seed):
    rng = np.random.default_rng(seed)
    M = random_conditioned_mobius(rng)
    z = complex(*rng.standard_normal(2) * 3)
    back = apply_point(M.inverse(), apply_point(M, z))
    assert chordal(back, z) < 1e-12


def test_inverse_roundtrip_at_infinity():
    M = random_conditioned_mobius(np.random.default_rng(1))
    assert chordal(apply_point(M.inverse(), apply_point(M, INF)), INF) < 1e-12


def test_composition_matches_sequential_application(rng):
    for _ in range(20):
        A, B = random_conditioned_mobius(rng), random_conditioned_mobius(rng)
        z = complex(*rng.standard_normal(2))
        assert chordal(apply_point(A @ B, z), apply_point(A, apply_point(B, z))) < 1e-12


def test_apply_form_examples():
    P = Z ** 3 - 1
    assert apply_form(MobiusMap.identity(), P, 3) == P
    t = GaussianRational(2, 1)
    moved = apply_form(MobiusMap(GaussianRational(1), -t, GaussianRational(0), GaussianRational(1)), P)
    assert proportional(moved, (Z - t) ** 3 - 1) is not None
    assert proportional(apply_form(MobiusMap.inversion(), Z * Z + 1, 2), Z * Z + 1) is not None


def test_apply_form_degree_deficit_tracks_infinity():
    # z - 1 as a quadratic form has a root at infinity; inversion sends it to 0
    moved = apply_form(MobiusMap.inversion(), Z - 1, 2)
    assert moved.coeff(0) == 0 and moved.degree == 2


def test_apply_divisor_examples():
    D = SphereDivisor.from_points([0, INF])
    assert apply_divisor(MobiusMap.identity(False), D) == D
    moved = apply_divisor(MobiusMap.translation(3.0), D)
    assert match_divisors(moved, SphereDivisor.from_points([3, INF])).total_cost < 1e-15
    D2 = SphereDivisor(((0j, 2),), 2, 4)
    inv = apply_divisor(MobiusMap.inversion(False), D2)
    assert inv.infinity_multiplicity == 2 and inv.total_degree == 4


def test_match_divisors_examples():
    D = SphereDivisor.from_points([1j, -1j, 0.5])
    assert match_divisors(D, D).total_cost == 0.0
    assert match_divisors(SphereDivisor.from_points([0]), SphereDivisor.from_points([INF])).total_cost == pytest.approx(2)
    assert match_divisors(SphereDivisor.from_points([1j, -1j]), SphereDivisor.from_points([-1j, 1j])).total_cost == 0
    with pytest.raises(DegreeMismatch):
        match_divisors(SphereDivisor.from_points([0]), SphereDivisor.from_points([0, 1]))


def test_matching_is_optimal_not_greedy():
    # greedy would pair 0 with 0.1 first and leave a long edge
    A = SphereDivisor.from_points([0.0, 0.2])
    B = SphereDivisor.from_points([0.1, -0.1])
    greedy = chordal(0.0, 0.1) + chordal(0.2, -0.1)
    assert match_divisors(A, B).total_cost < greedy


def test_equivariance_identity_is_exact():
    w = RationalMap.polynomial(Z ** 3 + Z * 2 - 1)
    rep = equivariance_check(w, MobiusMap.identity())
    assert rep.cost < 1e-14 and rep.passed and rep.exact


def test_equivariance_translation_of_equilateral_cubic():
    t = GaussianRational(1, -2)
    w = RationalMap.polynomial(Z ** 3 - 1)
    rep = equivariance_check(w, MobiusMap.translation(t))
    assert rep.passed and rep.exact
    D = isodynamic_divisor(RationalMap.polynomial((Z - t) ** 3 - 1))
    assert D.infinity_multiplicity == 1 and abs(D.finite_points[0][0] - complex(t)) < 1e-12


def test_equivariance_inversion_random_quartic(rng):
    for _ in range(5):
        w = random_rational_input(rng, 4)
        rep = equivariance_check(w, MobiusMap.inversion(False))
        assert rep.cost < 1e-8


def test_equivariance_exact_rational_map():
    rng = np.random.default_rng(11)
    roots = [gr(rng) for _ in range(4)]
    P = ComplexPoly.from_roots(roots)
    w = RationalMap.polynomial(P)
    assert validate(w).ok
    M = MobiusMap(GaussianRational(1), GaussianRational(2, 1), GaussianRational(0, 1), GaussianRational(3))
    rep = equivariance_check(w, M)
    assert rep.exact is True and rep.passed


@pytest.mark.parametrize("d,dd", [(3, 0), (5, 0), (3, 1), (4, 2)])
def test_equivariance_random(d, dd):
    rng = np.random.default_rng([5, d, dd])
    for _ in range(5):
        w = random_rational_input(rng, d, dd)
        M = random_conditioned_mobius(rng)
        assert equivariance_check(w, M).cost < 1e-7


def test_group_action_on_compositions(rng):
    w = random_rational_input(rng, 4)
    A, B = random_conditioned_mobius(rng), random_conditioned_mobius(rng)
    assert equivariance_check(w, A).passed and equivariance_check(w, B).passed
    assert equivariance_check(w, A @ B).passed


def test_mobius_json_roundtrip():
    M = MobiusMap(1 + 2j, 0.5, -1j, 3.0)
    again = mobius_from_json(M.to_json())
    for e, f in zip(M.matrix()[0] + M.matrix()[1], again.matrix()[0] + again.matrix()[1]):
        assert abs(complex(e) - complex(f)) < 1e-15


def test_conditioned_maps_respect_kappa(rng):
    for _ in range(50):
        M = random_conditioned_mobius(rng, kappa=4.0)
        sv = np.linalg.svd(np.array(M.matrix(), dtype=complex), compute_uv=False)
        assert sv[0] <= 4.0 * sv[1] * (1 + 1e-12)
