"""Submerged body boundaries as smooth closed parametric curves.

Coordinates: x2 points down into the water, the free surface is the line
{x2 = 0}, and a submerged body B occupies a bounded region strictly inside
{x2 > 0}.  The water domain is the half-plane minus the closed body.

Curves are parametrized counterclockwise by t in [0, 2pi).  The normal
reported by :func:`boundary_frame` points *into* the body, i.e. it is the
exterior normal of the water domain.  Curves are assumed twice continuously
differentiable; the supported shape families (circle, ellipse,
Fourier-perturbed circle) are analytic, which gives closed-form oracles
for the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import GeometryError, ParameterError

DEFAULT_SAMPLES = 4096


@dataclass(frozen=True)
class BodyCurve:
    """Closed C^2 boundary of a submerged body.

    Attributes
    ----------
    kind : str
        One of ``"circle"``, ``"ellipse"``, ``"fourier"``.
    center : np.ndarray, shape (2,)
        Body center (c1, c2); c2 > 0 is the center depth.
    params : dict
        Shape parameters: ``radius`` for circle/fourier, ``semiaxes``
        for ellipse, ``coeffs`` (list of (cos_k, sin_k) pairs) for fourier.
    samples : int
        Default sample count for discrete queries.
    """

    kind: str
    center: np.ndarray
    params: dict
    samples: int = DEFAULT_SAMPLES

    def point(self, t):
        """Position x(t) on the curve; t may be an array."""
        t = np.asarray(t, dtype=float)
        c1, c2 = self.center
        if self.kind == "circle":
            a = self.params["radius"]
            return np.stack([c1 + a * np.cos(t), c2 + a * np.sin(t)], axis=-1)
        if self.kind == "ellipse":
            a, b = self.params["semiaxes"]
            return np.stack([c1 + a * np.cos(t), c2 + b * np.sin(t)], axis=-1)
        r = self._fourier_radius(t)
        return np.stack([c1 + r * np.cos(t), c2 + r * np.sin(t)], axis=-1)

    def velocity(self, t):
        """First derivative x'(t)."""
        t = np.asarray(t, dtype=float)
        if self.kind == "circle":
            a = self.params["radius"]
            return np.stack([-a * np.sin(t), a * np.cos(t)], axis=-1)
        if self.kind == "ellipse":
            a, b = self.params["semiaxes"]
            return np.stack([-a * np.sin(t), b * np.cos(t)], axis=-1)
        r = self._fourier_radius(t)
        dr = self._fourier_radius(t, order=1)
        return np.stack(
            [dr * np.cos(t) - r * np.sin(t), dr * np.sin(t) + r * np.cos(t)],
            axis=-1,
        )

    def acceleration(self, t):
        """Second derivative x''(t)."""
        t = np.asarray(t, dtype=float)
        if self.kind == "circle":
            a = self.params["radius"]
            return np.stack([-a * np.cos(t), -a * np.sin(t)], axis=-1)
        if self.kind == "ellipse":
            a, b = self.params["semiaxes"]
            return np.stack([-a * np.cos(t), -b * np.sin(t)], axis=-1)
        r = self._fourier_radius(t)
        dr = self._fourier_radius(t, order=1)
        d2r = self._fourier_radius(t, order=2)
        cos_t, sin_t = np.cos(t), np.sin(t)
        return np.stack(
            [
                (d2r - r) * cos_t - 2.0 * dr * sin_t,
                (d2r - r) * sin_t + 2.0 * dr * cos_t,
            ],
            axis=-1,
        )

    def polar_radius(self, alpha):
        """Distance from the center to the boundary in direction alpha.

        All supported shapes are star-shaped about their center, so this is
        single-valued; used by the domain quadrature and point-in-body tests.
        """
        alpha = np.asarray(alpha, dtype=float)
        if self.kind == "circle":
            return np.full_like(alpha, self.params["radius"])
        if self.kind == "ellipse":
            a, b = self.params["semiaxes"]
            return a * b / np.hypot(b * np.cos(alpha), a * np.sin(alpha))
        return self._fourier_radius(alpha)

    def contains(self, x) -> np.ndarray:
        """True for points strictly inside the body."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        d = x - self.center
        rho = np.hypot(d[:, 0], d[:, 1])
        alpha = np.arctan2(d[:, 1], d[:, 0])
        return rho < self.polar_radius(alpha)

    def cache_key(self):
        """Hashable value identity, used to memoize derived quantities."""
        items = []
        for k in sorted(self.params):
            v = self.params[k]
            items.append((k, tuple(map(tuple, v)) if k == "coeffs" else v))
        return (self.kind, tuple(self.center), tuple(items), self.samples)

    def _fourier_radius(self, t, order: int = 0):
        a = self.params["radius"]
        coeffs = self.params.get("coeffs", [])
        t = np.asarray(t, dtype=float)
        out = np.full_like(t, a if order == 0 else 0.0)
        for k, (ck, sk) in enumerate(coeffs, start=1):
            if order == 0:
                out = out + a * (ck * np.cos(k * t) + sk * np.sin(k * t))
            elif order == 1:
                out = out + a * k * (-ck * np.sin(k * t) + sk * np.cos(k * t))
            else:
                out = out - a * k * k * (ck * np.cos(k * t) + sk * np.sin(k * t))
        return out


@dataclass
class GeometryBox:
    """Bounding parameters of a submerged body.

    L is the horizontal half-extent, h the distance from the free surface
    to the body, H the maximal depth, kappa the curvature bound, and eps
    the admissibility parameter of the second uniqueness condition
    (0 < eps <= h when set).
    """

    L: float
    h: float
    H: float
    kappa: float
    eps: Optional[float] = None

    def __post_init__(self):
        if not (0.0 < self.h <= self.H):
            raise ParameterError(f"require 0 < h <= H, got h={self.h}, H={self.H}")
        if self.L <= 0.0 or self.kappa < 0.0:
            raise ParameterError("require L > 0 and kappa >= 0")
        if self.eps is not None and not (0.0 < self.eps <= self.h):
            raise ParameterError(
                f"eps must lie in (0, h]; got eps={self.eps}, h={self.h}"
            )


@dataclass(frozen=True)
class Frame:
    """Differential-geometric data at curve points."""

    point: np.ndarray      # (..., 2)
    normal: np.ndarray     # (..., 2), unit, exterior to the water domain
    tangent: np.ndarray    # (..., 2), unit, counterclockwise
    curvature: np.ndarray  # signed (positive where the body is convex)
    speed: np.ndarray      # |x'(t)| > 0


def build_body(shape_spec: dict) -> BodyCurve:
    """Build a :class:`BodyCurve` from a JSON-style shape description.

    Parameters
    ----------
    shape_spec : dict
        ``{"kind": "circle"|"ellipse"|"fourier", "center": [c1, c2],
        "radius": a | "semiaxes": [a, b] | "coeffs": [[ck, sk], ...],
        "samples": n}``.

    Raises
    ------
    GeometryError
        "not submerged" if the curve touches or crosses the free surface,
        "not simple" if a Fourier perturbation self-intersects.
    ParameterError
        for malformed or non-positive shape parameters.
    """
    kind = shape_spec.get("kind")
    if kind not in ("circle", "ellipse", "fourier"):
        raise ParameterError(f"unknown shape kind: {kind!r}")
    center = np.asarray(shape_spec.get("center", (0.0, 0.0)), dtype=float)
    if center.shape != (2,):
        raise ParameterError("center must be a pair [c1, c2]")
    samples = int(shape_spec.get("samples", DEFAULT_SAMPLES))
    if samples < 64:
        raise ParameterError("samples must be at least 64")

    params: dict = {}
    if kind == "circle":
        a = float(shape_spec["radius"])
        if a <= 0.0:
            raise ParameterError("radius must be positive")
        params["radius"] = a
    elif kind == "ellipse":
        a, b = (float(v) for v in shape_spec["semiaxes"])
        if a <= 0.0 or b <= 0.0:
            raise ParameterError("semiaxes must be positive")
        params["semiaxes"] = (a, b)
    else:
        a = float(shape_spec["radius"])
        if a <= 0.0:
            raise ParameterError("radius must be positive")
        coeffs = [tuple(float(v) for v in pair) for pair in shape_spec.get("coeffs", [])]
        if any(len(pair) != 2 for pair in coeffs):
            raise ParameterError("coeffs must be pairs [cos_k, sin_k]")
        params["radius"] = a
        params["coeffs"] = coeffs

    curve = BodyCurve(kind=kind, center=center, params=params, samples=samples)

    if kind == "fourier":
        # Positive polar radius about the center keeps the curve simple
        # (star-shaped); a sign change would mean self-intersection.
        t = np.linspace(0.0, 2.0 * np.pi, 4 * samples, endpoint=False)
        if np.min(curve._fourier_radius(t)) <= 0.0:
            raise GeometryError("not simple")

    # Submersion: the whole curve must stay strictly below the surface.
    min_x2 = _refined_extremum(lambda t: curve.point(t)[..., 1], curve, minimize=True)
    if min_x2 <= 0.0:
        raise GeometryError("not submerged")
    return curve


def boundary_frame(curve: BodyCurve, t) -> Frame:
    """Point, exterior normal, unit tangent, curvature and arclength speed.

    The normal points from the water into the body (exterior to the water
    domain); the tangent follows the counterclockwise parametrization; the
    curvature is signed with the usual counterclockwise convention.
    """
    t = np.asarray(t, dtype=float)
    x = curve.point(t)
    v = curve.velocity(t)
    a = curve.acceleration(t)
    speed = np.hypot(v[..., 0], v[..., 1])
    tangent = v / speed[..., None]
    normal = np.stack([-tangent[..., 1], tangent[..., 0]], axis=-1)
    curvature = (v[..., 0] * a[..., 1] - v[..., 1] * a[..., 0]) / speed**3
    return Frame(point=x, normal=normal, tangent=tangent, curvature=curvature, speed=speed)


_EXTREMES_CACHE: dict = {}


def _box_extremes(curve: BodyCurve):
    key = curve.cache_key()
    if key not in _EXTREMES_CACHE:
        L = _refined_extremum(
            lambda t: np.abs(curve.point(t)[..., 0]), curve, minimize=False
        )
        h = _refined_extremum(lambda t: curve.point(t)[..., 1], curve, minimize=True)
        H = _refined_extremum(lambda t: curve.point(t)[..., 1], curve, minimize=False)
        kappa = _refined_extremum(
            lambda t: np.abs(boundary_frame(curve, t).curvature), curve, minimize=False
        )
        _EXTREMES_CACHE[key] = (L, h, H, kappa)
    return _EXTREMES_CACHE[key]


def geometry_box(curve: BodyCurve, epsilon_policy="max-feasible") -> GeometryBox:
    """Tight bounding parameters (L, h, H, kappa) plus the chosen eps.

    Extremes are found by dense sampling at ``curve.samples`` points refined
    by bounded scalar minimization around the best samples, so the reported
    values are approximate at the refinement tolerance (~1e-12 for analytic
    shapes); they are memoized per curve.

    ``epsilon_policy`` is either an explicit value in (0, h] or the string
    ``"max-feasible"``, which delegates to ``conditions.max_epsilon``.
    """
    L, h, H, kappa = _box_extremes(curve)
    box = GeometryBox(L=L, h=h, H=H, kappa=kappa, eps=None)

    if epsilon_policy == "max-feasible":
        from .conditions import max_epsilon

        eps = max_epsilon(curve)
        if eps is None:
            raise ParameterError(
                "second uniqueness condition holds for no eps in (0, h]"
            )
        box.eps = eps
    elif epsilon_policy is not None:
        eps = float(epsilon_policy)
        if not (0.0 < eps <= h * (1.0 + 1e-12)):
            raise ParameterError(f"eps must lie in (0, h]; got {eps} with h={h}")
        box.eps = min(eps, h)
    return box


def _refined_extremum(fn: Callable, curve: BodyCurve, minimize: bool) -> float:
    """Dense scan over the parameter followed by local bounded refinement."""
    n = max(curve.samples, 512)
    t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    vals = fn(t)
    sign = 1.0 if minimize else -1.0
    best = float(np.min(sign * vals))
    dt = 2.0 * np.pi / n
    # Refine around every near-optimal sample; extrema may be attained at
    # several symmetric points.
    idx = np.nonzero(sign * vals <= best + 1e-9 * (1.0 + abs(best)))[0]
    for i in idx[:8]:
        res = minimize_scalar(
            lambda s: float(sign * fn(np.asarray(s))),
            bounds=(t[i] - dt, t[i] + dt),
            method="bounded",
            options={"xatol": 1e-13},
        )
        best = min(best, float(res.fun))
    return sign * best
