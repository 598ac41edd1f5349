from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from isodyn.errors import DegenerateInput, ModeMismatch
from isodyn.polynomial import ComplexPoly, rational_poly
from isodyn.scalar import EXACT, FLOAT, GaussianRational

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gauss = st.builds(GaussianRational, small, small)


def test_gaussian_arithmetic_exact():
    a = GaussianRational(1, 2)
    b = GaussianRational(Fraction(1, 3), -1)
    assert a * b == GaussianRational(Fraction(1, 3) + 2, Fraction(2, 3) - 1)
    assert (a / b) * b == a
    assert a - a == GaussianRational(0)
    assert complex(a) == 1 + 2j


def test_from_complex_is_exact_binary_value():
    g = GaussianRational.from_complex(0.1 + 0.3j)
    assert Fraction(g.re) == Fraction(0.1)
    assert complex(g) == 0.1 + 0.3j


@given(gauss, gauss, gauss)
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    if b:
        assert (a / b) * b == a


def test_trim_and_degree():
    p = ComplexPoly([1, 2, 0, 0])
    assert p.degree == 1
    assert ComplexPoly([]).degree == float("-inf")
    assert ComplexPoly([0, 0]).is_zero
    with pytest.raises(DegenerateInput):
        ComplexPoly([]).lc


def test_mixed_modes_rejected():
    e = rational_poly([1, 2])
    f = ComplexPoly([1.0, 2.0], FLOAT)
    with pytest.raises(ModeMismatch):
        e + f
    with pytest.raises(ModeMismatch):
        ComplexPoly([GaussianRational(1)], FLOAT)


def test_divmod_and_derivative():
    f = rational_poly([-1, 0, 0, 1])        # z^3 - 1
    g = rational_poly([-1, 1])              # z - 1
    q, r = f.divmod(g)
    assert r.is_zero
    assert q == rational_poly([1, 1, 1])
    assert f.derivative() == rational_poly([0, 0, 3])


@given(st.lists(gauss, min_size=1, max_size=6), gauss)
def test_evaluation_matches_float(coeffs, x):
    p = ComplexPoly(coeffs, EXACT)
    v = p(x)
    pf = p.to_float()
    expect = complex(v)
    got = pf(complex(x))
    scale = sum(abs(complex(c)) * max(1, abs(complex(x))) ** k for k, c in enumerate(coeffs)) + 1
    assert abs(got - expect) <= 1e-12 * scale


def test_compose_linear():
    p = rational_poly([0, 0, 1])            # z^2
    assert p.compose_linear(2, 1) == rational_poly([1, 4, 4])


def test_from_roots_roundtrip():
    roots = [1, -2, GaussianRational(0, 1)]
    p = ComplexPoly.from_roots(roots, EXACT)
    for r in roots:
        assert not p(r)
    assert np.allclose(sorted(np.roots(p.to_numpy()[::-1]), key=lambda z: (z.real, z.imag)),
                       sorted([1, -2, 1j], key=lambda z: (z.real, z.imag)))
