"""Root and isodynamic-point figures for high-degree special polynomials.

The isodynamic points are computed as critical values of ``R = z - d P/P'``:
the critical points solve ``d sum 1/(z-r)^2 = (sum 1/(z-r))^2`` over the
roots ``r`` of ``P``, and each is mapped through ``R``.  Nothing here forms
monomial coefficients of ``P`` in floating point.
"""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field

import numpy as np

from . import _backend, special
from .errors import DegenerateInput, SolverDiverged
from .roots import aberth_logderiv, cluster_roots

__all__ = ["FigureData", "figure_data", "emit_figure", "to_csv", "to_svg"]

ROOT_COLOR = "#1f4e9c"
ISO_COLOR = "#c0392b"


@dataclass
class FigureData:
    kind: str
    n: int
    roots: np.ndarray
    critical_points: np.ndarray
    iso_points: np.ndarray
    root_residual: float
    critical_residual: float
    converged: bool
    notes: list = field(default_factory=list)

    def rows(self, tol=1e-9):
        """CSV rows ``(re, im, role, mult)``; clustered points are merged with their multiplicity."""
        out = []
        for role, pts in (("root", self.roots), ("iso", self.iso_points)):
            for z, m in cluster_roots(pts, tol, max_radius=tol) if len(pts) else []:
                out.append((float(z.real), float(z.imag), role, int(m)))
        return out

    def summary(self):
        rows = self.rows()
        return {"kind": self.kind, "n": self.n,
                "roots": sum(m for *_, r, m in rows if r == "root"),
                "iso_points": sum(m for *_, r, m in rows if r == "iso"),
                "root_residual": self.root_residual, "critical_residual": self.critical_residual,
                "converged": self.converged, "notes": list(self.notes)}


def _root_guesses(kind, n):
    k = np.arange(n)
    if kind == "legendre":
        # Chebyshev-like real starts, nudged off the axis so Aberth can move freely
        x = np.cos(np.pi * (k + 0.75) / (n + 0.5))
    else:
        # the zeros of L_n fill (0, 4n) with a square-root density near 0
        x = 4.0 * n * ((k + 0.75) / (n + 0.5)) ** 2
    return x + 1e-3j * (1 + np.abs(x)) * np.where(k % 2, 1.0, -1.0)


def _newton_polish(kind, n, z, steps=2):
    for _ in range(steps):
        step = special.newton_step(kind, n, z)
        step[~np.isfinite(step)] = 0.0
        z = z - step
    return z


def figure_data(kind, n, tol=1e-15, maxiter=2000, backend=None) -> FigureData:
    """Roots of the degree-``n`` family member and its ``2n - 4`` isodynamic points."""
    if kind not in special.KINDS:
        raise DegenerateInput(f"unknown family {kind!r}")
    if n < 3:
        raise DegenerateInput("need n >= 3 for isodynamic points")
    notes = []
    roots, _, ok_r = aberth_logderiv(lambda z: special.logderiv(kind, n, z), _root_guesses(kind, n), tol, maxiter)
    roots = _newton_polish(kind, n, roots)
    # the zeros are real; drop the rounding-level imaginary parts
    imag = float(np.max(np.abs(roots.imag)))
    if imag <= 1e-10 * (1 + float(np.max(np.abs(roots)))):
        roots = roots.real + 0j
    else:
        notes.append(f"roots off the real axis by {imag:.3e}")
    roots = np.sort_complex(roots)
    root_res = float(np.max(np.abs(special.newton_step(kind, n, roots))))

    kern = _backend.get_kernels(backend)
    m = 2 * n - 4
    centre = roots.mean()
    spread = float(np.max(np.abs(roots - centre)))
    j = np.arange(m)
    z0 = centre + 0.9 * spread * (1 + 0.01 * np.cos(3.7 * j + 1.3)) * np.exp(1j * (2 * np.pi * j / m + 0.4))
    crit, _, ok_c = kern.aberth_critical(roots, z0, tol, maxiter)
    crit = np.asarray(crit)
    with np.errstate(divide="ignore", invalid="ignore"):
        from ._kernels_py import critical_logderiv
        crit_res = float(np.max(np.abs(1.0 / critical_logderiv(roots, crit))))
        s1 = (1.0 / (crit[:, None] - roots[None, :])).sum(axis=1)
        iso = crit - n / s1
    if not (ok_r and ok_c):
        notes.append("Aberth iteration hit maxiter")
    order = np.lexsort((iso.imag, iso.real))
    return FigureData(kind, n, roots, crit[order], iso[order], root_res, crit_res, bool(ok_r and ok_c), notes)


def _fmt(x):
    return repr(float(x))


def to_csv(data: FigureData) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["re", "im", "role", "mult"])
    for re, im, role, m in data.rows():
        w.writerow([_fmt(re), _fmt(im), role, m])
    return buf.getvalue()


def to_svg(data: FigureData, size=800) -> str:
    """Static scatter; the viewport is the bounding box padded by 5% on each side."""
    rows = data.rows()
    xs = np.array([r[0] for r in rows])
    ys = np.array([r[1] for r in rows])
    x0, x1, y0, y1 = xs.min(), xs.max(), ys.min(), ys.max()
    w = max(x1 - x0, y1 - y0, 1e-12)
    pad = 0.05 * w
    x0, x1 = x0 - pad, x1 + pad
    y0, y1 = y0 - pad, y1 + pad
    span = max(x1 - x0, y1 - y0)
    rad = span / 300
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(span)} {_fmt(span)}">',
        f'<title>{data.kind} n={data.n}</title>',
    ]
    for re, im, role, m in rows:
        color = ROOT_COLOR if role == "root" else ISO_COLOR
        lines.append(f'<circle class="{role}" cx="{_fmt(re)}" cy="{_fmt(-im)}" r="{_fmt(rad)}" fill="{color}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_figure(kind, n, out, backend=None):
    """Write ``<out>.csv`` and ``<out>.svg``; returns the summary dict.

    A solver that stops at ``maxiter`` still writes its partial output and
    raises :class:`SolverDiverged` afterwards.
    """
    data = figure_data(kind, n, backend=backend)
    base = os.fspath(out)
    if base.endswith((".csv", ".svg")):
        base = base[:-4]
    with open(base + ".csv", "w", newline="") as fh:
        fh.write(to_csv(data))
    with open(base + ".svg", "w") as fh:
        fh.write(to_svg(data))
    summary = data.summary()
    summary["files"] = [base + ".csv", base + ".svg"]
    if not data.converged:
        raise SolverDiverged(f"{kind} n={n}: partial output written to {base}.*")
    return summary
