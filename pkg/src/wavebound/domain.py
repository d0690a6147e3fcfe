"""Quadrature grids over the truncated water domain.

The water domain (half-plane minus body) truncated to the box
{|x1| <= R, 0 <= x2 <= R} is decomposed exactly into

* a boundary-fitted shell between the body boundary S and an axis-aligned
  square around the body, parametrized in polar coordinates about the body
  center (all supported shapes are star-shaped about their center, and so
  is the square boundary), with angular panels split at the square-corner
  directions;
* four rectangles covering the box minus the square.

Rectangles use tensor Gauss-Legendre panels: the horizontal panels resolve
the wave oscillation (with breakpoints at the cutoff transition abscissas
+-tau and +-3 tau where integrands are only C^2), the vertical panels are
geometrically graded from the surface.  Separate, finer grids cover the
two transition strips tau < |x1| < 3 tau (where the wave-mode Laplacian
lives) and the truncated free surface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .geometry import BodyCurve
from .quadrature import gauss_panels, geometric_breaks, uniform_breaks

REGION_SHELL = 0
REGION_RECT = 1


@dataclass
class DomainGrid:
    points: np.ndarray   # (M, 2)
    weights: np.ndarray  # (M,)
    region: np.ndarray   # (M,) region codes
    R: float
    square_half: float


def _insert_breaks(breaks: np.ndarray, extra) -> np.ndarray:
    lo, hi = breaks[0], breaks[-1]
    extra = [b for b in extra if lo + 1e-12 < b < hi - 1e-12]
    return np.unique(np.concatenate([breaks, np.asarray(extra)]))


def build_domain_grid(
    curve: BodyCurve,
    R: float,
    nu: float,
    tau: float,
    factor: float = 1.0,
) -> DomainGrid:
    """Tensor quadrature over the truncated water domain."""
    c1, c2 = curve.center
    alpha_probe = np.linspace(0.0, 2.0 * np.pi, 2048, endpoint=False)
    max_rho = float(np.max(curve.polar_radius(alpha_probe)))
    if c2 <= max_rho:
        raise ParameterError("body not star-shaped-submerged about its center")
    sq = max_rho + 0.4 * (c2 - max_rho)
    if R < abs(c1) + sq or R < c2 + sq:
        raise ParameterError(f"truncation R={R} too small for the body box")

    pts = []
    wts = []
    regions = []

    # --- boundary-fitted shell ------------------------------------------
    n_alpha_panels = max(4, int(round(6 * factor)))
    n_alpha = 8
    n_rad = max(10, int(round(14 * factor)))
    corners = np.array([0.25, 0.75, 1.25, 1.75]) * np.pi
    for q in range(4):
        seg = np.linspace(corners[q], corners[(q + 1) % 4] if q < 3 else 2.25 * np.pi,
                          n_alpha_panels + 1)
        a_nodes, a_w = gauss_panels(seg, n_alpha)
        a_nodes = np.mod(a_nodes, 2.0 * np.pi)
        rho_in = curve.polar_radius(a_nodes)
        rho_out = sq / np.maximum(np.abs(np.cos(a_nodes)), np.abs(np.sin(a_nodes)))
        x_gl, w_gl = np.polynomial.legendre.leggauss(n_rad)
        half = 0.5 * (rho_out - rho_in)
        mid = 0.5 * (rho_out + rho_in)
        rho = mid[:, None] + half[:, None] * x_gl[None, :]          # (A, nr)
        w_r = half[:, None] * w_gl[None, :]
        x1 = c1 + rho * np.cos(a_nodes)[:, None]
        x2 = c2 + rho * np.sin(a_nodes)[:, None]
        w = a_w[:, None] * w_r * rho                                 # polar Jacobian
        pts.append(np.stack([x1.ravel(), x2.ravel()], axis=-1))
        wts.append(w.ravel())
        regions.append(np.full(w.size, REGION_SHELL))

    # --- rectangles -------------------------------------------------------
    lam = 2.0 * np.pi / nu
    dx_target = lam / (1.5 * factor)
    npts = 10
    # panel boundaries at the cutoff transitions (integrands are only C^2
    # there) and graded toward the origin, where direction-dependent
    # factors of the identity integrands vary on the scale of |x|
    scale0 = min(1.0 / nu, 1.0)
    origin_breaks = [s * f * scale0 for s in (-1.0, 1.0) for f in (0.04, 0.12, 0.35, 1.0)]
    extra_breaks = [-3.0 * tau, -tau, tau, 3.0 * tau] + origin_breaks + [0.0]

    def rect(x1_lo, x1_hi, x2_lo, x2_hi):
        if x1_hi - x1_lo < 1e-12 or x2_hi - x2_lo < 1e-12:
            return
        bx = _insert_breaks(uniform_breaks(x1_lo, x1_hi, dx_target), extra_breaks)
        x1n, w1 = gauss_panels(bx, npts)
        first = min(0.1 / nu / factor, 0.5 * (x2_hi - x2_lo))
        by = geometric_breaks(x2_lo, x2_hi, first, ratio=1.7 ** (1.0 / factor))
        x2n, w2 = gauss_panels(by, npts)
        xx1, xx2 = np.meshgrid(x1n, x2n, indexing="ij")
        ww = np.outer(w1, w2)
        pts.append(np.stack([xx1.ravel(), xx2.ravel()], axis=-1))
        wts.append(ww.ravel())
        regions.append(np.full(ww.size, REGION_RECT))

    rect(-R, c1 - sq, 0.0, R)
    rect(c1 + sq, R, 0.0, R)
    rect(c1 - sq, c1 + sq, 0.0, c2 - sq)
    rect(c1 - sq, c1 + sq, c2 + sq, R)

    return DomainGrid(
        points=np.concatenate(pts),
        weights=np.concatenate(wts),
        region=np.concatenate(regions),
        R=R,
        square_half=sq,
    )


def build_strip_grid(nu: float, tau: float, factor: float = 1.0, depth: float = None):
    """Fine grids over the two cutoff-transition strips tau < |x1| < 3 tau."""
    if depth is None:
        depth = 24.0 / nu
    n_x1_panels = max(6, int(round(8 * factor)))
    npts = 10
    x1p, w1 = gauss_panels(np.linspace(tau, 3.0 * tau, n_x1_panels + 1), npts)
    by = geometric_breaks(0.0, depth, 0.3 / nu / factor, ratio=1.6)
    x2n, w2 = gauss_panels(by, max(8, int(round(8 * factor))))
    out_pts = []
    out_w = []
    for sgn in (+1.0, -1.0):
        xx1, xx2 = np.meshgrid(sgn * x1p, x2n, indexing="ij")
        ww = np.outer(w1, w2)
        out_pts.append(np.stack([xx1.ravel(), xx2.ravel()], axis=-1))
        out_w.append(ww.ravel())
    return np.concatenate(out_pts), np.concatenate(out_w)


def build_surface_grid(
    R: float, nu: float, tau: float, refine_windows=(), factor: float = 1.0
):
    """Panel rule on the truncated free surface [-R, R] (x1 nodes, weights)."""
    lam = 2.0 * np.pi / nu
    breaks = uniform_breaks(-R, R, lam / (1.5 * factor))
    breaks = _insert_breaks(breaks, [-3.0 * tau, -tau, 0.0, tau, 3.0 * tau])
    for lo, hi in refine_windows:
        breaks = _insert_breaks(breaks, np.linspace(lo, hi, 9))
    return gauss_panels(breaks, 10)
