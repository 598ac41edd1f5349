import cmath
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from isodyn.errors import DegenerateInput, NotDisjoint
from isodyn.isodyn_map import INF
from isodyn.separation import (LiftedPoint, adversarial_control, conjecture_scan, plane_to_circle,
                               separable_by_circle, stereographic_drop, stereographic_lift, weakly_separable)
from isodyn.separation import _scan_one

CUBE_ROOTS = [cmath.exp(2j * cmath.pi * k / 3) for k in range(3)]


def test_lift_examples():
    assert stereographic_lift(0).xyz == (0.0, 0.0, -1.0)
    assert stereographic_lift(INF).xyz == (0.0, 0.0, 1.0)
    assert np.allclose(stereographic_lift(1).xyz, (1.0, 0.0, 0.0), atol=1e-16)


def test_lifted_point_invariant():
    with pytest.raises(DegenerateInput):
        LiftedPoint((1.0, 1.0, 0.0))


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_lift_on_sphere_and_drop_inverts(x, y):
    z = complex(x, y)
    p = stereographic_lift(z)
    assert abs(sum(c * c for c in p.xyz) - 1) <= 1e-12
    if abs(z) < 1e3:
        assert abs(stereographic_drop(p) - z) <= 1e-9 * (1 + abs(z))


@given(st.integers(0, 10 ** 6))
def test_plane_circle_dictionary(seed):
    rng = np.random.default_rng(seed)
    n = rng.standard_normal(3)
    n /= np.linalg.norm(n)
    b = float(rng.uniform(-0.95, 0.95))
    C = plane_to_circle(n, b)
    # points on the plane section of the sphere
    e1 = np.cross(n, [1.0, 0.0, 0.0] if abs(n[0]) < 0.9 else [0.0, 1.0, 0.0])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    r = np.sqrt(1 - b * b)
    for t in rng.uniform(0, 2 * np.pi, 8):
        X = b * n + r * (np.cos(t) * e1 + np.sin(t) * e2)
        if X[2] > 1 - 1e-6:
            continue
        z = complex(X[0], X[1]) / (1 - X[2])
        assert abs(C.residual(z)) <= 1e-9 * (1 + abs(z))


def test_line_when_plane_passes_north_pole():
    C = plane_to_circle((1.0, 0.0, 0.0), 0.0)
    assert C.kind == "line"
    assert abs(C.residual(5j)) < 1e-15


def test_separation_examples():
    cert = separable_by_circle([0], [3])
    assert cert is not None and cert.margin > 1e-9 and cert.verify([0], [3])
    assert separable_by_circle([1, -1], [1j, -1j]) is None
    assert not weakly_separable([1, -1], [1j, -1j])
    assert separable_by_circle(CUBE_ROOTS, [0, INF]) is None
    assert not weakly_separable(CUBE_ROOTS, [0, INF])


def test_certificate_circle_separates_in_the_plane():
    A = [0, 0.1 + 0.1j]
    B = [3, -2j, INF]
    cert = separable_by_circle(A, B)
    C = cert.circle()
    sa = {np.sign(C.residual(a)) for a in A}
    sb = {np.sign(C.residual(b)) for b in B if b is not INF}
    assert len(sa) == 1 and len(sb) == 1 and sa != sb


def test_tangent_configuration_is_weak_only():
    # +-1 and +-i alternate on the unit circle; adding 0 to B lets that circle
    # separate weakly, with all four circle points touching it
    A, B = [1, -1], [1j, -1j, 0]
    assert separable_by_circle(A, B) is None
    assert weakly_separable(A, B)
    assert not weakly_separable(A, B[:2])
    # adjacent pairs on a circle are strictly separable by a chord
    assert separable_by_circle([1, 1j], [-1, -1j]) is not None


def test_errors():
    with pytest.raises(NotDisjoint):
        separable_by_circle([0, 1], [1, 2])
    with pytest.raises(DegenerateInput):
        separable_by_circle([], [1])


@given(st.integers(0, 10 ** 6))
def test_symmetric_in_the_two_sets(seed):
    rng = np.random.default_rng(seed)
    A = list(rng.standard_normal(3) + 1j * rng.standard_normal(3))
    B = list(rng.standard_normal(3) + 1j * rng.standard_normal(3) + rng.uniform(0, 4))
    c1, c2 = separable_by_circle(A, B), separable_by_circle(B, A)
    assert (c1 is None) == (c2 is None)
    if c1 is not None:
        assert c2.verify(B, A) and c1.verify(A, B)
    assert weakly_separable(A, B) == weakly_separable(B, A)


def test_scan_records_replay_exactly():
    rep = conjecture_scan(4, samples=20, seed=7)
    assert rep["strict"] == 0
    again = conjecture_scan(4, samples=20, seed=7)
    assert json.dumps(rep, sort_keys=True) == json.dumps(again, sort_keys=True)
    one = _scan_one((4, (-1.0, 1.0, -1.0, 1.0), 7, 5))
    assert one == _scan_one((4, (-1.0, 1.0, -1.0, 1.0), 7, 5))


def test_scan_on_wide_rectangle():
    rep = conjecture_scan(3, samples=30, rect=(-5.0, 5.0, -5.0, 5.0), seed=1)
    assert rep["strict"] == 0 and rep["samples"] == 30


def test_adversarial_control_finds_certificate():
    ctrl = adversarial_control(4, seed=3)
    assert ctrl["separable"] and ctrl["certificate"]["margin"] > 1e-9


def test_scan_rejects_low_degree():
    with pytest.raises(DegenerateInput):
        conjecture_scan(2, samples=1)
