"""Vector fields, cutoff and wave modes used by the integral identities.

The circle-family field

    W(x) = ( x1 (x1^2 - x2^2) / |x|^2 ,  2 x1^2 x2 / |x|^2 )

generates the family of circles through the origin centered on the x2
axis; its horizontal analogue is V(x) = (x1, 0).  For a field Z and a
constant T the identity machinery uses the matrix

    Q_ij = (div Z - 2T) delta_ij - (d_i Z_j + d_j Z_i).

For Z = W, T = 1/2 the closed form is the rank-one matrix

    Q = -2 u u^T,   u = (q, -p),  p = (x1^2 - x2^2)/|x|^2,  q = 2 x1 x2/|x|^2,

so (Q xi).xi = -2 (q xi1 - p xi2)^2 <= 0 everywhere off the origin.  For
Z = V, T = 1/2 one gets the constant matrix diag(-2, 0).

The radiation decomposition uses a cutoff chi in C^2(R) with chi = 0 for
t < 1 and chi = 1 for t > 3, realized as the quintic smoothstep on [1, 3]
(max |chi'| = 15/16, max |chi''| ~ 1.44; no C^2 function on a length-2
transition can keep |chi''| < 1, so the smoothstep is the practical
choice and the amplitude bounds that depend on it are verified
numerically).  The outgoing wave modes are

    U+(x) = chi(+x1 g1sq) e^{-i nu x1 - nu x2},
    U-(x) = chi(-x1 g1sq) e^{+i nu x1 - nu x2},      g1sq = 1/tau,

with gradients and Laplacians in closed form (the exponential factors are
harmonic, so Delta U± is supported on the transition strips).
"""

from __future__ import annotations

import numpy as np


# ---------------------------------------------------------------------------
# Geometric vector fields and their Q matrices
# ---------------------------------------------------------------------------
def field_w(x):
    """W(x); x has shape (..., 2), points off the origin."""
    x = np.asarray(x, dtype=float)
    x1, x2 = x[..., 0], x[..., 1]
    r2 = x1**2 + x2**2
    return np.stack(
        [x1 * (x1**2 - x2**2) / r2, 2.0 * x1**2 * x2 / r2], axis=-1
    )


def field_v(x):
    """V(x) = (x1, 0)."""
    x = np.asarray(x, dtype=float)
    return np.stack([x[..., 0], np.zeros_like(x[..., 1])], axis=-1)


def field_w_jacobian(x):
    """Partial derivatives d_i W_j, shape (..., 2, 2); [i, j] = d_i W_j."""
    x = np.asarray(x, dtype=float)
    x1, x2 = x[..., 0], x[..., 1]
    r2 = x1**2 + x2**2
    r4 = r2**2
    d1w1 = 1.0 - 2.0 * x2**2 * (x2**2 - x1**2) / r4
    d2w1 = -4.0 * x1**3 * x2 / r4
    d1w2 = 4.0 * x1 * x2**3 / r4
    d2w2 = 2.0 * x1**2 * (x1**2 - x2**2) / r4
    jac = np.empty(x.shape[:-1] + (2, 2))
    jac[..., 0, 0] = d1w1
    jac[..., 0, 1] = d1w2
    jac[..., 1, 0] = d2w1
    jac[..., 1, 1] = d2w2
    return jac


def q_matrix(z_tag: str, x, T: float = 0.5):
    """Q_ij = (div Z - 2T) delta_ij - (d_i Z_j + d_j Z_i) at points x.

    ``z_tag`` selects the field: "W" or "V".  Entries come from exact
    differentiation of the closed-form fields.
    """
    x = np.asarray(x, dtype=float)
    base = x.shape[:-1]
    if z_tag == "V":
        q = np.zeros(base + (2, 2))
        q[..., 0, 0] = 1.0 - 2.0 * T - 2.0
        q[..., 1, 1] = 1.0 - 2.0 * T
        return q
    if z_tag != "W":
        raise ValueError(f"unknown field tag {z_tag!r}")
    jac = field_w_jacobian(x)
    div = jac[..., 0, 0] + jac[..., 1, 1]
    q = -(jac + np.swapaxes(jac, -1, -2))
    q[..., 0, 0] += div - 2.0 * T
    q[..., 1, 1] += div - 2.0 * T
    return q


def q_form(z_tag: str, x, vec, T: float = 0.5):
    """Quadratic form (Q vec).vec at points x with direction vec."""
    q = q_matrix(z_tag, x, T)
    vec = np.asarray(vec, dtype=float)
    return np.einsum("...ij,...i,...j->...", q, vec, vec)


# ---------------------------------------------------------------------------
# Cutoff function (quintic smoothstep on the transition [1, 3])
# ---------------------------------------------------------------------------
def cutoff(t, order: int = 0):
    """chi(t) and its first two derivatives: 0 below 1, 1 above 3."""
    t = np.asarray(t, dtype=float)
    s = np.clip((t - 1.0) / 2.0, 0.0, 1.0)
    if order == 0:
        return s**3 * (10.0 - 15.0 * s + 6.0 * s**2)
    inside = (t > 1.0) & (t < 3.0)
    if order == 1:
        return np.where(inside, 15.0 * s**2 * (1.0 - s) ** 2, 0.0)
    if order == 2:
        return np.where(inside, 15.0 * s * (1.0 - s) * (1.0 - 2.0 * s), 0.0)
    raise ValueError("order must be 0, 1 or 2")


# ---------------------------------------------------------------------------
# Outgoing wave modes
# ---------------------------------------------------------------------------
class WaveModes:
    """U+/U- with gradients and Laplacians for given nu and tau = 1/g1sq."""

    def __init__(self, nu: float, tau: float):
        self.nu = nu
        self.tau = tau
        self.g1sq = 1.0 / tau
        #: the cutoff argument reaches 1 at |x1| = tau and 3 at |x1| = 3 tau
        self.transition = (tau, 3.0 * tau)

    def _mode(self, x, sign: int):
        x = np.asarray(x, dtype=float)
        return np.exp(-1j * sign * self.nu * x[..., 0] - self.nu * x[..., 1])

    def value(self, x, sign: int):
        """U+ for sign=+1, U- for sign=-1."""
        x = np.asarray(x, dtype=float)
        chi = cutoff(sign * x[..., 0] * self.g1sq)
        return chi * self._mode(x, sign)

    def gradient(self, x, sign: int):
        x = np.asarray(x, dtype=float)
        arg = sign * x[..., 0] * self.g1sq
        chi = cutoff(arg)
        dchi = cutoff(arg, 1) * sign * self.g1sq
        m = self._mode(x, sign)
        gx1 = (dchi - 1j * sign * self.nu * chi) * m
        gx2 = -self.nu * chi * m
        return np.stack([gx1, gx2], axis=-1)

    def laplacian(self, x, sign: int):
        """Delta U(sign); nonzero only on the transition strip."""
        x = np.asarray(x, dtype=float)
        arg = sign * x[..., 0] * self.g1sq
        d1 = cutoff(arg, 1) * sign * self.g1sq
        d2 = cutoff(arg, 2) * self.g1sq**2
        return (d2 - 2j * sign * self.nu * d1) * self._mode(x, sign)

    def combination(self, x, dplus: complex, dminus: complex):
        """d+ U+ + d- U-."""
        return dplus * self.value(x, +1) + dminus * self.value(x, -1)

    def combination_gradient(self, x, dplus: complex, dminus: complex):
        return dplus * self.gradient(x, +1) + dminus * self.gradient(x, -1)

    def combination_laplacian(self, x, dplus: complex, dminus: complex):
        return dplus * self.laplacian(x, +1) + dminus * self.laplacian(x, -1)
