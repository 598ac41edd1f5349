"""Compare the compiled and numpy kernels on the hot loops.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel with the best-of-N wall time of each backend,
the speedup and the largest disagreement between the two outputs.
"""
import argparse
import time

import numpy as np

from isodyn import _backend
from isodyn.roots import ring_guesses


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def cases(rng):
    n = 40
    c = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    z0 = ring_guesses(n, radius=1.0)
    yield "aberth_coeffs(n=40)", lambda k: k.aberth_coeffs(c, z0, 1e-15, 500)[0]

    roots = rng.standard_normal(60) + 1j * rng.standard_normal(60)
    m = 2 * 60 - 4
    zc = ring_guesses(m, radius=2.0)
    yield "aberth_critical(d=60)", lambda k: k.aberth_critical(roots, zc, 1e-15, 500)[0]

    a = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    b = np.concatenate([[0], rng.standard_normal(8) + 1j * rng.standard_normal(8)])
    us = np.exp(1j * (2 * np.pi * np.arange(64) / 64 + 0.1234567))
    yield "disc_samples(n=8, 64 pts)", lambda k: k.disc_samples(a, b, us)[0]
    yield "disc_logderiv(n=8, 64 pts)", lambda k: k.disc_logderiv(a, b, us, 8)[0]


def _sorted(x):
    x = np.asarray(x)
    return x[np.lexsort((x.imag, x.real))]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    py = _backend.get_kernels("python")
    try:
        cy = _backend.get_kernels("cython")
    except ImportError:
        print("compiled kernels not built; run `python3 setup.py build_ext --inplace`")
        return 1
    rng = np.random.default_rng(0)
    print(f"{'kernel':28s} {'cython [ms]':>12s} {'python [ms]':>12s} {'speedup':>8s} {'max diff':>10s}")
    for name, fn in cases(rng):
        tc, oc = best_time(lambda: fn(cy), args.repeat)
        tp, op = best_time(lambda: fn(py), args.repeat)
        if name.startswith("aberth"):
            oc, op = _sorted(oc), _sorted(op)
        diff = float(np.max(np.abs(np.asarray(oc) - np.asarray(op)) / (1 + np.abs(np.asarray(op)))))
        print(f"{name:28s} {tc * 1e3:12.3f} {tp * 1e3:12.3f} {tp / tc:8.1f} {diff:10.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
