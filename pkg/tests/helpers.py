"""Small shared helpers for the test suite."""
from isodyn.polynomial import ComplexPoly, rational_poly
from isodyn.scalar import GaussianRational

Z = rational_poly([0, 1])


def gr(rng, size=9, den=6):
    """Random Gaussian rational with bounded numerators and denominators."""
    return GaussianRational(int(rng.integers(-size, size + 1)), int(rng.integers(-size, size + 1))) / int(
        rng.integers(1, den + 1))


def proportional(f: ComplexPoly, g: ComplexPoly):
    """The exact constant ``k`` with ``f = k g``, or None when no such constant exists."""
    if g.is_zero:
        return None
    k = next(i for i, c in enumerate(g.coeffs) if c)
    ratio = f.coeff(k) / g.coeff(k)
    return ratio if f == g * ratio else None


def sorted_points(D):
    """Finite points of a divisor, with repetition, in a stable order."""
    return sorted((z for z, m in D.finite_points for _ in range(m)), key=lambda z: (round(z.real, 9), round(z.imag, 9)))
