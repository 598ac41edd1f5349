# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Aberth kernels; semantics match ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, isfinite, cos, sin, M_PI as PI

cnp.import_array()

ctypedef double complex cplx


cdef inline double cabs2(cplx x) nogil:
    return x.real * x.real + x.imag * x.imag


cdef inline double cabs(cplx x) nogil:
    return cabs2(x) ** 0.5


cdef inline bint cfinite(cplx x) nogil:
    return isfinite(x.real) and isfinite(x.imag)


cdef double EPS = 2.220446049250313e-16


cdef cplx newton_ratio(const cplx[::1] c, cplx z, bint *noisy) nogil:
    cdef Py_ssize_t n = c.shape[0] - 1
    cdef Py_ssize_t k
    cdef cplx p, dp, y, q, dq
    cdef double az, bound
    if cabs2(z) <= 1.0:
        az = cabs(z)
        p = c[0]
        dp = 0
        bound = cabs(c[0])
        for k in range(1, n + 1):
            dp = dp * z + p
            p = p * z + c[k]
            bound = bound * az + cabs(c[k])
        noisy[0] = cabs(p) <= 8.0 * n * EPS * bound
        return p / dp
    y = 1.0 / z
    az = cabs(y)
    q = c[n]
    dq = 0
    bound = cabs(c[n])
    for k in range(n - 1, -1, -1):
        dq = dq * y + q
        q = q * y + c[k]
        bound = bound * az + cabs(c[k])
    noisy[0] = cabs(q) <= 8.0 * n * EPS * bound
    return q / (y * (n * q - y * dq))


def aberth_coeffs(c_in, z_in, double tol, int maxiter):
    cdef cplx[::1] c = np.ascontiguousarray(c_in, dtype=np.complex128)
    z_arr = np.array(z_in, dtype=np.complex128)
    cdef cplx[::1] z = z_arr
    cdef Py_ssize_t m = z.shape[0]
    cdef cplx[::1] corr = np.zeros(m, dtype=np.complex128)
    cdef unsigned char[::1] active = np.ones(m, dtype=np.uint8)
    cdef Py_ssize_t i, j
    cdef int it
    cdef unsigned char[::1] noisy_flags = np.zeros(m, dtype=np.uint8)
    cdef cplx ratio, s, w
    cdef bint any_active = True
    cdef bint noisy
    it = 0
    with nogil:
        for it in range(1, maxiter + 1):
            for i in range(m):
                if not active[i]:
                    corr[i] = 0
                    continue
                ratio = newton_ratio(c, z[i], &noisy)
                noisy_flags[i] = noisy
                s = 0
                for j in range(m):
                    if j != i:
                        s = s + 1.0 / (z[i] - z[j])
                w = ratio / (1.0 - ratio * s)
                corr[i] = w if cfinite(w) else 0
            any_active = False
            for i in range(m):
                z[i] = z[i] - corr[i]
                if active[i] and (noisy_flags[i] or cabs(corr[i]) <= tol * (1.0 + cabs(z[i]))):
                    active[i] = 0
                if active[i]:
                    any_active = True
            if not any_active:
                break
    if any_active:
        return z_arr, maxiter, False
    return z_arr, it, True


def aberth_critical(roots_in, z_in, double tol, int maxiter):
    cdef cplx[::1] r = np.ascontiguousarray(roots_in, dtype=np.complex128)
    z_arr = np.array(z_in, dtype=np.complex128)
    cdef cplx[::1] z = z_arr
    cdef Py_ssize_t m = z.shape[0]
    cdef Py_ssize_t nr = r.shape[0]
    cdef double d = <double> nr
    cdef cplx[::1] corr = np.zeros(m, dtype=np.complex128)
    cdef unsigned char[::1] active = np.ones(m, dtype=np.uint8)
    cdef Py_ssize_t i, j
    cdef int it
    cdef cplx s1, s2, s3, inv, inv2, f, fp, ld, s, w
    cdef bint any_active = True
    it = 0
    with nogil:
        for it in range(1, maxiter + 1):
            for i in range(m):
                if not active[i]:
                    corr[i] = 0
                    continue
                s1 = 0
                s2 = 0
                s3 = 0
                for j in range(nr):
                    inv = 1.0 / (z[i] - r[j])
                    inv2 = inv * inv
                    s1 = s1 + inv
                    s2 = s2 + inv2
                    s3 = s3 + inv2 * inv
                f = d * s2 - s1 * s1
                fp = 2.0 * s1 * s2 - 2.0 * d * s3
                ld = 2.0 * s1 + fp / f
                s = 0
                for j in range(m):
                    if j != i:
                        s = s + 1.0 / (z[i] - z[j])
                w = 1.0 / (ld - s)
                corr[i] = w if cfinite(w) else 0
            any_active = False
            for i in range(m):
                z[i] = z[i] - corr[i]
                if active[i] and cabs(corr[i]) <= tol * (1.0 + cabs(z[i])):
                    active[i] = 0
                if active[i]:
                    any_active = True
            if not any_active:
                break
    if any_active:
        return z_arr, maxiter, False
    return z_arr, it, True


cdef double ring_radius(const cplx[::1] f, Py_ssize_t n) nogil:
    # geometric mean of root moduli, clamped by a Fujiwara-type bound
    cdef double lead = cabs(f[0])
    cdef double bound = 0.0, t, r
    cdef Py_ssize_t k
    for k in range(1, n + 1):
        t = (cabs(f[k]) / lead) ** (1.0 / k)
        if t > bound:
            bound = t
    if bound == 0.0:
        return 1.0
    if cabs(f[n]) > 0:
        r = (cabs(f[n]) / lead) ** (1.0 / n)
    else:
        r = bound
    if r < 1e-3 * bound:
        r = 1e-3 * bound
    if r > bound:
        r = bound
    return r


cdef int member_roots(const cplx[::1] f, Py_ssize_t n, cplx[::1] z, bint warm,
                      double tol, int maxiter) nogil:
    """Aberth roots of the degree-n polynomial ``f`` (descending) into ``z``; returns 1 on success."""
    cdef Py_ssize_t i, j, it, step
    cdef double r
    cdef cplx ratio, s, w, p, dp, trial, ptrial
    cdef bint noisy, any_active
    cdef unsigned char active[64]
    cdef cplx corr[64]
    cdef unsigned char flags[64]
    if n > 64:
        return 0
    if not warm:
        r = ring_radius(f, n)
        for i in range(n):
            z[i] = r * (1.0 + 0.01 * cos(3.7 * i + 1.3)) * (cos(2 * PI * i / n + 0.4) + 1j * sin(2 * PI * i / n + 0.4))
    for i in range(n):
        active[i] = 1
    any_active = True
    for it in range(maxiter):
        for i in range(n):
            if not active[i]:
                corr[i] = 0
                continue
            ratio = newton_ratio(f[:n + 1], z[i], &noisy)
            flags[i] = noisy
            s = 0
            for j in range(n):
                if j != i:
                    s = s + 1.0 / (z[i] - z[j])
            w = ratio / (1.0 - ratio * s)
            corr[i] = w if cfinite(w) else 0
        any_active = False
        for i in range(n):
            z[i] = z[i] - corr[i]
            if active[i] and (flags[i] or cabs(corr[i]) <= tol * (1.0 + cabs(z[i]))):
                active[i] = 0
            if active[i]:
                any_active = True
        if not any_active:
            break
    # two Newton steps, accepted only when they reduce the residual
    for i in range(n):
        for step in range(2):
            p = f[0]
            dp = 0
            for j in range(1, n + 1):
                dp = dp * z[i] + p
                p = p * z[i] + f[j]
            if dp == 0:
                break
            trial = z[i] - p / dp
            ptrial = f[0]
            for j in range(1, n + 1):
                ptrial = ptrial * trial + f[j]
            if cabs(ptrial) <= cabs(p):
                z[i] = trial
            else:
                break
    return 0 if any_active else 1


def disc_samples(a_in, b_in, us_in, double tol=1e-15, int maxiter=500):
    """``Discr_z(A + u B)`` at each ``u`` from the roots of the pencil member.

    ``a_in``/``b_in`` are descending coefficients of the formal degree ``n``.
    A vanishing top coefficient is handled as a root at infinity.  Returns
    ``(values, ok)``; ``ok`` is False when some member failed to converge.
    """
    cdef cplx[::1] a = np.ascontiguousarray(a_in, dtype=np.complex128)
    cdef cplx[::1] b = np.ascontiguousarray(b_in, dtype=np.complex128)
    cdef cplx[::1] us = np.ascontiguousarray(us_in, dtype=np.complex128)
    cdef Py_ssize_t n = a.shape[0] - 1
    cdef Py_ssize_t m = us.shape[0]
    out_arr = np.zeros(m, dtype=np.complex128)
    cdef cplx[::1] out = out_arr
    cdef cplx[::1] f = np.zeros(n + 1, dtype=np.complex128)
    cdef cplx[::1] z = np.zeros(max(n, 1), dtype=np.complex128)
    cdef Py_ssize_t k, i, j, shift, deg
    cdef cplx u, prod, diff, lc
    cdef bint ok = True, warm = False
    for k in range(m):
        u = us[k]
        shift = 0
        while shift <= n and a[shift] + u * b[shift] == 0:
            shift += 1
        if shift >= 2 or shift > n:
            out[k] = 0
            warm = False
            continue
        deg = n - shift
        for i in range(deg + 1):
            f[i] = a[i + shift] + u * b[i + shift]
        lc = f[0]
        if deg < 2:
            prod = 1
        else:
            if not member_roots(f, deg, z, warm, tol, maxiter):
                ok = False
            warm = shift == 0
            prod = 1
            for i in range(deg):
                for j in range(i + 1, deg):
                    diff = z[i] - z[j]
                    prod = prod * diff * diff
        # lc**(2 deg - 2) * prod; with one root at infinity the formal
        # discriminant gains the factor lc**2 of the new top coefficient
        for i in range(2 * deg - 2):
            prod = prod * lc
        if shift == 1:
            prod = prod * lc * lc
        out[k] = prod
    return out_arr, ok


def disc_logderiv(a_in, b_in, us_in, int n_formal, double tol=1e-15, int maxiter=500):
    """``D'(u)/D(u)`` for ``D(u) = Discr_z(A + u B)`` with formal z-degree ``n_formal``."""
    cdef cplx[::1] a = np.ascontiguousarray(a_in, dtype=np.complex128)
    cdef cplx[::1] b = np.ascontiguousarray(b_in, dtype=np.complex128)
    cdef cplx[::1] us = np.ascontiguousarray(us_in, dtype=np.complex128)
    cdef Py_ssize_t n = a.shape[0] - 1
    cdef Py_ssize_t m = us.shape[0]
    out_arr = np.zeros(m, dtype=np.complex128)
    cdef cplx[::1] out = out_arr
    cdef cplx[::1] f = np.zeros(n + 1, dtype=np.complex128)
    cdef cplx[::1] z = np.zeros(max(n, 1), dtype=np.complex128)
    cdef Py_ssize_t k, i, j, shift, deg
    cdef cplx u, lc, lc_u, acc, bz, fpz, zp, s
    cdef bint ok = True
    for k in range(m):
        u = us[k]
        shift = 0
        while shift < n and a[shift] + u * b[shift] == 0:
            shift += 1
        deg = n - shift
        for i in range(deg + 1):
            f[i] = a[i + shift] + u * b[i + shift]
        lc = f[0]
        lc_u = b[shift]
        acc = (2 * n_formal - 2) * lc_u / lc
        if deg >= 2:
            if not member_roots(f, deg, z, False, tol, maxiter):
                ok = False
            for i in range(deg):
                bz = 0
                fpz = 0
                for j in range(deg + 1):
                    bz = bz * z[i] + b[j + shift]
                for j in range(deg):
                    fpz = fpz * z[i] + (deg - j) * f[j]
                zp = -bz / fpz
                s = 0
                for j in range(deg):
                    if j != i:
                        s = s + 1.0 / (z[i] - z[j])
                acc = acc + 2.0 * zp * s
        out[k] = acc
    return out_arr, ok
