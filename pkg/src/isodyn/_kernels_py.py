"""Pure numpy fallback for the compiled kernels in ``_kernels.pyx``.

Both implementations share one contract: simultaneous (Jacobi) Aberth
updates, a root is frozen once its correction drops below
``tol * (1 + |z|)``, and the return value is ``(z, iterations, converged)``.
"""
import numpy as np


EPS = np.finfo(float).eps


def _newton_ratio_coeffs(c, z):
    """``p(z) / p'(z)`` with reversed Horner outside the unit disk.

    ``c`` holds descending coefficients.  The second return value flags
    points where ``|p|`` is already at the rounding-noise level.
    """
    n = len(c) - 1
    ac = np.abs(c)
    out = np.empty_like(z)
    noisy = np.zeros(z.shape, dtype=bool)
    inside = np.abs(z) <= 1.0
    if inside.any():
        zi = z[inside]
        azi = np.abs(zi)
        p = np.full(zi.shape, c[0], dtype=complex)
        dp = np.zeros(zi.shape, dtype=complex)
        bound = np.full(zi.shape, ac[0])
        for k in range(1, n + 1):
            dp = dp * zi + p
            p = p * zi + c[k]
            bound = bound * azi + ac[k]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[inside] = p / dp
        noisy[inside] = np.abs(p) <= 8.0 * n * EPS * bound
    if (~inside).any():
        y = 1.0 / z[~inside]
        ay = np.abs(y)
        # q(y) = sum_k c[k] y^k with c descending in z == ascending in y
        q = np.full(y.shape, c[n], dtype=complex)
        dq = np.zeros(y.shape, dtype=complex)
        bound = np.full(y.shape, ac[n])
        for k in range(n - 1, -1, -1):
            dq = dq * y + q
            q = q * y + c[k]
            bound = bound * ay + ac[k]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[~inside] = q / (y * (n * q - y * dq))
        noisy[~inside] = np.abs(q) <= 8.0 * n * EPS * bound
    return out, noisy


def _aberth_sum(z):
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    inv = 1.0 / diff
    np.fill_diagonal(inv, 0.0)
    return inv.sum(axis=1)


def aberth_coeffs(c, z, tol, maxiter):
    c = np.ascontiguousarray(c, dtype=complex)
    z = np.array(z, dtype=complex)
    active = np.ones(len(z), dtype=bool)
    for it in range(1, maxiter + 1):
        ratio, noisy = _newton_ratio_coeffs(c, z)
        s = _aberth_sum(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            corr = ratio / (1.0 - ratio * s)
        corr[~np.isfinite(corr)] = 0.0
        corr[~active] = 0.0
        z = z - corr
        active &= (np.abs(corr) > tol * (1.0 + np.abs(z))) & ~noisy
        if not active.any():
            return z, it, True
    return z, maxiter, False


def critical_logderiv(roots, z):
    """``W'/W`` for ``W = (d-1)P'^2 - d P P''`` with ``P = prod(z - roots)``."""
    d = float(len(roots))
    inv = 1.0 / (z[:, None] - roots[None, :])
    s1 = inv.sum(axis=1)
    inv2 = inv * inv
    s2 = inv2.sum(axis=1)
    s3 = (inv2 * inv).sum(axis=1)
    f = d * s2 - s1 * s1
    fp = 2.0 * s1 * s2 - 2.0 * d * s3
    return 2.0 * s1 + fp / f


def aberth_critical(roots, z, tol, maxiter):
    roots = np.ascontiguousarray(roots, dtype=complex)
    z = np.array(z, dtype=complex)
    active = np.ones(len(z), dtype=bool)
    for it in range(1, maxiter + 1):
        with np.errstate(divide="ignore", invalid="ignore"):
            ld = critical_logderiv(roots, z)
            corr = 1.0 / (ld - _aberth_sum(z))
        corr[~np.isfinite(corr)] = 0.0
        corr[~active] = 0.0
        z = z - corr
        active &= np.abs(corr) > tol * (1.0 + np.abs(z))
        if not active.any():
            return z, it, True
    return z, maxiter, False


def _ring_radius(f):
    n = len(f) - 1
    mags = np.abs(f)
    k = np.arange(1, n + 1)
    bound = float(np.max((mags[1:] / mags[0]) ** (1.0 / k)))
    if bound == 0.0:
        return 1.0
    r = (mags[n] / mags[0]) ** (1.0 / n) if mags[n] > 0 else bound
    return float(min(max(r, 1e-3 * bound), bound))


def _member_roots(f, z0, tol, maxiter):
    n = len(f) - 1
    if z0 is None:
        i = np.arange(n)
        r = _ring_radius(f)
        z0 = r * (1.0 + 0.01 * np.cos(3.7 * i + 1.3)) * np.exp(1j * (2 * np.pi * i / n + 0.4))
    z, _, ok = aberth_coeffs(f, z0, tol, maxiter)
    # two Newton steps, accepted only when they reduce the residual
    df = np.polyder(f)
    for _ in range(2):
        p = np.polyval(f, z)
        dp = np.polyval(df, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            trial = z - p / dp
        better = np.isfinite(trial) & (np.abs(np.polyval(f, trial)) <= np.abs(p))
        z = np.where(better, trial, z)
    return z, ok


def disc_samples(a, b, us, tol=1e-15, maxiter=500):
    """``Discr_z(A + u B)`` at each ``u``; see the compiled kernel."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    n = len(a) - 1
    out = np.zeros(len(us), dtype=complex)
    ok = True
    z = None
    for k, u in enumerate(us):
        f = a + u * b
        shift = 0
        while shift <= n and f[shift] == 0:
            shift += 1
        if shift >= 2 or shift > n:
            z = None
            continue
        f = f[shift:]
        deg = n - shift
        lc = f[0]
        prod = 1.0 + 0j
        if deg >= 2:
            z, good = _member_roots(f, z if shift == 0 else None, tol, maxiter)
            ok = ok and good
            iu = np.triu_indices(deg, 1)
            diff = (z[:, None] - z[None, :])[iu]
            prod = np.prod(diff * diff)
            if shift:
                z = None
        prod = prod * lc ** (2 * deg - 2)
        if shift == 1:
            prod = prod * lc * lc
        out[k] = prod
    return out, ok


def disc_logderiv(a, b, us, n_formal, tol=1e-15, maxiter=500):
    """``D'(u)/D(u)`` for ``D(u) = Discr_z(A + u B)``; see the compiled kernel."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    n = len(a) - 1
    out = np.zeros(len(us), dtype=complex)
    ok = True
    for k, u in enumerate(us):
        f = a + u * b
        shift = 0
        while shift < n and f[shift] == 0:
            shift += 1
        f = f[shift:]
        deg = n - shift
        acc = (2 * n_formal - 2) * b[shift] / f[0]
        if deg >= 2:
            z, good = _member_roots(f, None, tol, maxiter)
            ok = ok and good
            zp = -np.polyval(b[shift:], z) / np.polyval(np.polyder(f), z)
            acc = acc + 2.0 * np.sum(zp * _aberth_sum(z))
        out[k] = acc
    return out, ok
