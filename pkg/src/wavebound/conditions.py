"""Geometric and parametric uniqueness conditions on a body boundary.

Each check evaluates a pointwise inequality on the boundary curve and
reports the minimal slack, arranged so that slack >= 0 means the condition
holds at that point:

* condition 1:   -x1*n1 >= 0
* condition 2:   x1*(x1^2 - (x2-eps)^2)*n1 + 2*x1^2*(x2-eps)*n2 >= 0
* Mazya:         x1*(x1^2 - x2^2)*n1 + 2*x1^2*x2*n2 >= 0   (condition 2 at eps=0)
* domination:    (H/eps)*(W.n) + x1*n1 >= 0

with n the exterior normal of the water domain (pointing into the body)
and W the circle-family vector field

    W(x) = ( x1*(x1^2 - x2^2)/|x|^2 ,  2*x1^2*x2/|x|^2 ),

so that the Mazya inequality is exactly |x|^2 * (W.n) >= 0.

Conditions 1 and 2 together imply the Mazya inequality; that implication
is exercised as a property test over the shape families.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ParameterError
from .geometry import BodyCurve, boundary_frame, geometry_box

#: relative condition tolerance; scaled by the characteristic slack L*H^2
REL_TOLERANCE = 1e-9


@dataclass
class ConditionReport:
    """Outcome of one pointwise condition check over the boundary."""

    name: str
    min_slack: float
    argmin: np.ndarray
    samples: int
    tolerance: float
    convergence_estimate: float
    holds: bool
    warning: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "holds": bool(self.holds),
                "min_slack": float(self.min_slack),
                "argmin": [float(self.argmin[0]), float(self.argmin[1])],
                "samples": int(self.samples),
                "tolerance": float(self.tolerance),
            }
        )


def condition1_slack(curve: BodyCurve, t):
    f = boundary_frame(curve, t)
    return -f.point[..., 0] * f.normal[..., 0]


def condition2_slack(curve: BodyCurve, t, eps: float):
    f = boundary_frame(curve, t)
    x1, x2 = f.point[..., 0], f.point[..., 1]
    n1, n2 = f.normal[..., 0], f.normal[..., 1]
    y = x2 - eps
    return x1 * (x1**2 - y**2) * n1 + 2.0 * x1**2 * y * n2


def mazya_slack(curve: BodyCurve, t):
    return condition2_slack(curve, t, 0.0)


def w_dot_n(curve: BodyCurve, t):
    """W.n on the curve: the Mazya slack divided by |x|^2."""
    f = boundary_frame(curve, t)
    r2 = f.point[..., 0] ** 2 + f.point[..., 1] ** 2
    return mazya_slack(curve, t) / r2


def check_condition1(curve: BodyCurve, samples: int = 0) -> ConditionReport:
    """Pointwise check of x1*n1 <= 0 on the boundary."""
    return _check(curve, "condition1", lambda t: condition1_slack(curve, t), samples)


def check_condition2(curve: BodyCurve, eps: float, samples: int = 0) -> ConditionReport:
    """Pointwise check of the eps-shifted circle-family inequality."""
    h = geometry_box(curve, epsilon_policy=None).h
    if not (0.0 < eps <= h * (1.0 + 1e-12)):
        raise ParameterError(f"eps must lie in (0, h]; got {eps} with h={h}")
    return _check(
        curve, "condition2", lambda t: condition2_slack(curve, t, eps), samples
    )


def check_mazya(curve: BodyCurve, samples: int = 0) -> ConditionReport:
    """Pointwise check of the circle-family (origin) inequality."""
    return _check(curve, "mazya", lambda t: mazya_slack(curve, t), samples)


def check_domination(
    curve: BodyCurve, eps: float, samples: int = 0, verify_preconditions: bool = True
) -> ConditionReport:
    """Check -x1*n1 <= (H/eps) * (W.n) on the boundary.

    The inequality is a consequence of conditions 1 and 2; if those are not
    verified first a warning is recorded on the report and the slack is
    evaluated regardless.
    """
    box = geometry_box(curve, epsilon_policy=None)
    if not (0.0 < eps <= box.h * (1.0 + 1e-12)):
        raise ParameterError(f"eps must lie in (0, h]; got {eps} with h={box.h}")
    warning = None
    if verify_preconditions:
        ok1 = check_condition1(curve, samples).holds
        ok2 = check_condition2(curve, eps, samples).holds
        if not (ok1 and ok2):
            warning = "conditions 1-2 not verified; slack evaluated anyway"
    else:
        warning = "precondition check skipped"

    ratio = box.H / eps

    def slack(t):
        f = boundary_frame(curve, t)
        return ratio * w_dot_n(curve, t) + f.point[..., 0] * f.normal[..., 0]

    report = _check(curve, "domination", slack, samples, scale=max(1.0, ratio))
    report.warning = warning
    return report


def max_epsilon(
    curve: BodyCurve, samples: int = 0, rel_tol: float = 1e-6
) -> Optional[float]:
    """Largest eps in (0, h] for which condition 2 holds.

    A coarse scan (32 points) records every feasible interval; feasibility
    is not assumed to be monotone in eps.  The supremum of the detected
    feasible set is refined by bisection to ``rel_tol`` relative accuracy.
    Returns None when no scanned eps is feasible.
    """
    h = geometry_box(curve, epsilon_policy=None).h

    def feasible(eps: float) -> bool:
        return _check(
            curve, "condition2", lambda t: condition2_slack(curve, t, eps), samples
        ).holds

    grid = np.linspace(h / 32.0, h, 32)
    flags = [feasible(e) for e in grid]
    if not any(flags):
        return None
    # Supremum of the detected feasible set: the largest feasible scan point,
    # pushed up by bisection against the nearest infeasible point above it.
    i_top = max(i for i, ok in enumerate(flags) if ok)
    if i_top == len(grid) - 1:
        return float(h)
    lo, hi = grid[i_top], grid[i_top + 1]
    while hi - lo > rel_tol * h:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return float(lo)


def uniqueness_criterion(nu: float, L: float, h: float):
    """Smallness criterion 24*nu*L^2*(1+nu*h)^3/h and whether it is < 1.

    A sufficient condition for unique solvability that needs no geometric
    conditions: it holds for bodies narrow in the horizontal direction or
    for small wavenumbers.
    """
    if nu <= 0.0 or L <= 0.0 or h <= 0.0:
        raise ParameterError("nu, L, h must all be positive")
    value = 24.0 * nu * L**2 / h * (1.0 + nu * h) ** 3
    return value, bool(value < 1.0)


def _check(curve, name, slack_fn, samples, scale: float = 1.0) -> ConditionReport:
    """Dense sampling of a slack field plus local refinement of the minimum."""
    n = samples if samples else curve.samples
    n = max(n, 128)
    box = geometry_box(curve, epsilon_policy=None)
    tol = REL_TOLERANCE * box.L * box.H**2 * scale

    def min_on_grid(m):
        t = np.linspace(0.0, 2.0 * np.pi, m, endpoint=False)
        vals = slack_fn(t)
        i = int(np.argmin(vals))
        return t[i], float(vals[i])

    t_prev, min_prev = min_on_grid(n // 2)
    t_best, min_best = min_on_grid(n)
    convergence = abs(min_best - min_prev)

    dt = 2.0 * np.pi / n
    res = minimize_scalar(
        lambda s: float(slack_fn(np.asarray(s))),
        bounds=(t_best - dt, t_best + dt),
        method="bounded",
        options={"xatol": 1e-13},
    )
    if res.fun < min_best:
        min_best, t_best = float(res.fun), float(res.x)

    point = curve.point(np.asarray(t_best))
    return ConditionReport(
        name=name,
        min_slack=min_best,
        argmin=np.asarray(point, dtype=float),
        samples=n,
        tolerance=tol,
        convergence_estimate=convergence,
        holds=bool(min_best >= -tol),
    )
