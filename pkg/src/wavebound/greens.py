"""Deep-water free-surface source potential in two dimensions.

Coordinates: x2 increases downward into the water, the free surface is
{x2 = 0}, and the exterior normal of the water domain on the surface is
(0, -1).  For wavenumber nu > 0 the source potential G(x; xi) satisfies

* Delta_x G = 0 away from the source point xi,
* (-d/dx2 - nu) G = 0 on the free surface,
* G ~ (1/2pi) ln|x - xi| + smooth near x = xi,
* outgoing far fields:  G -> i e^{-nu(x2+xi2)} e^{-i nu (x1-xi1)} for
  x1 -> +inf and the mirror phase for x1 -> -inf.

Closed form.  With a = x1-xi1, b = x2+xi2, w = b + i a, z = nu*w
(Re z > 0) and r, r' the distances to the source and to its mirror image
above the surface:

    G = (1/2pi) ln(r/r') - (1/pi) Re F(z) + i e^{-nu b} cos(nu a),

    F(z) = e^{-z} * E1c(-z),

where E1c is the exponential integral E1 continued analytically across its
branch cut onto the negative real axis (E1c(-x) = -Ei(x) for x > 0).  F
satisfies F'(z) = -F(z) - 1/z, which gives the gradient in closed form.
Re F(z) equals the principal-value integral

    PV int_0^inf e^{-k b} cos(k a) / (k - nu) dk,

which is kept as an independent quadrature oracle for the closed form.

F is evaluated by a power series for |z| <= 12, through the exponential
integral for 12 < |z| <= 23, and by the truncated asymptotic series plus
the exponentially small branch term -i pi sign(Im z) e^{-z} beyond;
absolute accuracy is about 1e-10 away from the source point.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad
from scipy.special import exp1

from .errors import EvaluationError

EULER_GAMMA = 0.5772156649015328606
_SERIES_CUT = 12.0
_RING_CUT = 23.0
_ASYM_SPLIT = 45.0
_SERIES_TERMS = 58


def _asymptotic(z: np.ndarray, k_max: int) -> np.ndarray:
    # F ~ -sum_{k=0}^{K} k!/z^{k+1} plus the branch term, which is
    # exponentially small except near the imaginary axis.
    inv = 1.0 / z
    term = inv.copy()
    acc = term.copy()
    for k in range(1, k_max + 1):
        term = term * (k * inv)
        acc = acc + term
    return -acc - 1j * np.pi * np.sign(z.imag) * np.exp(-z)


def _wave_fn(z: np.ndarray) -> np.ndarray:
    """F(z) = e^{-z} E1c(-z) for Re z > 0, vectorized.

    E1c is continued across the cut: the branch side follows the signed
    zero of Im z, and Im z == 0 gives the real value -e^{-z} Ei(Re z).
    """
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty(z.shape, dtype=np.complex128)
    az = np.abs(z)

    small = az <= _SERIES_CUT
    if np.any(small):
        # F = e^{-z} (-gamma - Log z - sum_{n>=1} z^n/(n n!)), principal Log.
        zs = z[small]
        acc = np.zeros_like(zs)
        term = np.ones_like(zs)
        for n in range(1, _SERIES_TERMS + 1):
            term = term * zs * (1.0 / n)
            acc = acc + term * (1.0 / n)
        out[small] = np.exp(-zs) * (-(EULER_GAMMA + np.log(zs)) - acc)

    ring = (az > _SERIES_CUT) & (az <= _RING_CUT)
    if np.any(ring):
        zr = z[ring]
        # exp1's principal branch follows the signed zero of the imaginary
        # part; the matching continuation constant does too.
        side = np.copysign(1.0, zr.imag)
        out[ring] = np.exp(-zr) * (exp1(-zr) - 1j * np.pi * side)

    mid = (az > _RING_CUT) & (az <= _ASYM_SPLIT)
    if np.any(mid):
        out[mid] = _asymptotic(z[mid], 22)
    far = az > _ASYM_SPLIT
    if np.any(far):
        out[far] = _asymptotic(z[far], 12)
    return out


def _split_terms(x, xi, nu):
    """Common geometric quantities, broadcasting targets against sources.

    Returns (a, b, dy, r2, rp2, z) with shapes broadcast from x (..., 2)
    and xi (..., 2); z = nu ((x2+xi2) + i (x1-xi1)) keeps the signed zero
    of its imaginary part, which selects the branch side in the kernel.
    """
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    a = x[..., 0] - xi[..., 0]
    b = x[..., 1] + xi[..., 1]
    dy = x[..., 1] - xi[..., 1]
    r2 = a**2 + dy**2
    rp2 = a**2 + b**2
    z = nu * (b + 1j * a)
    return a, b, dy, r2, rp2, z


def green_value(x, xi, nu: float):
    """Source potential G(x; xi), complex, vectorized with broadcasting.

    Parameters
    ----------
    x : array_like (..., 2)
        Field points with x2 >= 0.
    xi : array_like (..., 2)
        Source points with xi2 > 0.
    nu : float
        Wavenumber of the surface wave mode.

    Raises
    ------
    EvaluationError
        if any field point coincides with its source point.
    """
    a, b, _, r2, rp2, z = _split_terms(x, xi, nu)
    if np.any(r2 == 0.0):
        raise EvaluationError("singular evaluation: field point equals source point")
    F = _wave_fn(z)
    return (
        0.25 / np.pi * np.log(r2 / rp2)
        - F.real / np.pi
        + 1j * np.exp(-nu * b) * np.cos(nu * a)
    )


def green_gradient(x, xi, nu: float):
    """Gradient of G with respect to the field point; shape (..., 2)."""
    a, b, dy, r2, rp2, z = _split_terms(x, xi, nu)
    if np.any(r2 == 0.0):
        raise EvaluationError("singular evaluation: field point equals source point")
    F = _wave_fn(z)
    # d/dw of F(nu w) = -nu F - 1/w; w = b + i a.
    dF = -nu * F - nu / z
    decay = np.exp(-nu * b)
    gx1 = (
        0.5 / np.pi * (a / r2 - a / rp2)
        + dF.imag / np.pi
        - 1j * nu * decay * np.sin(nu * a)
    )
    gx2 = (
        0.5 / np.pi * (dy / r2 - b / rp2)
        - dF.real / np.pi
        - 1j * nu * decay * np.cos(nu * a)
    )
    return np.stack([gx1, gx2], axis=-1)


def green_regular(x, xi, nu: float):
    """G minus its logarithmic part (1/2pi) ln|x - xi|.

    Smooth across x = xi; used for near-source evaluation and for volume
    potentials whose logarithmic part is integrated in closed form.
    """
    a, b, _, _, rp2, z = _split_terms(x, xi, nu)
    F = _wave_fn(z)
    return (
        -0.25 / np.pi * np.log(rp2)
        - F.real / np.pi
        + 1j * np.exp(-nu * b) * np.cos(nu * a)
    )


def green_regular_gradient(x, xi, nu: float):
    """Gradient of :func:`green_regular` with respect to the field point."""
    a, b, _, _, rp2, z = _split_terms(x, xi, nu)
    F = _wave_fn(z)
    dF = -nu * F - nu / z
    decay = np.exp(-nu * b)
    gx1 = -0.5 / np.pi * a / rp2 + dF.imag / np.pi - 1j * nu * decay * np.sin(nu * a)
    gx2 = -0.5 / np.pi * b / rp2 - dF.real / np.pi - 1j * nu * decay * np.cos(nu * a)
    return np.stack([gx1, gx2], axis=-1)


def green_regular_with_gradient(x, xi, nu: float):
    """(green_regular, its gradient) sharing one special-function pass."""
    a, b, _, _, rp2, z = _split_terms(x, xi, nu)
    F = _wave_fn(z)
    dF = -nu * F - nu / z
    decay = np.exp(-nu * b)
    cos_a = np.cos(nu * a)
    sin_a = np.sin(nu * a)
    val = -0.25 / np.pi * np.log(rp2) - F.real / np.pi + 1j * decay * cos_a
    gx1 = -0.5 / np.pi * a / rp2 + dF.imag / np.pi - 1j * nu * decay * sin_a
    gx2 = -0.5 / np.pi * b / rp2 - dF.real / np.pi - 1j * nu * decay * cos_a
    return val, np.stack([gx1, gx2], axis=-1)


# ---------------------------------------------------------------------------
# Bulk pair evaluation (targets x sources), the solver's hot path
# ---------------------------------------------------------------------------
def _pair_fields_numpy(X, XI, nu):
    val, grad = green_regular_with_gradient(X[:, None, :], XI[None, :, :], nu)
    return val, grad[..., 0], grad[..., 1]


try:
    import numba

    @numba.njit(cache=True, fastmath=False)
    def _pair_kernel_jit(X, XI, nu):  # pragma: no cover - exercised via wrapper
        M = X.shape[0]
        N = XI.shape[0]
        val = np.empty((M, N), np.complex128)
        gx1 = np.empty((M, N), np.complex128)
        gx2 = np.empty((M, N), np.complex128)
        for i in range(M):
            for j in range(N):
                a = X[i, 0] - XI[j, 0]
                b = X[i, 1] + XI[j, 1]
                z = complex(nu * b, nu * a)
                az = abs(z)
                if az <= _RING_CUT:
                    # power series with early termination; the roundoff
                    # amplification e^{|z|} eps is damped by e^{-Re z}
                    term = 1.0 + 0.0j
                    acc = 0.0 + 0.0j
                    for n in range(1, 85):
                        rn = 1.0 / n
                        term = term * z * rn
                        acc = acc + term * rn
                        if (term.real * term.real + term.imag * term.imag) < 1e-34 * n * n:
                            break
                    F = np.exp(-z) * (-(EULER_GAMMA + np.log(z)) - acc)
                else:
                    K = 22 if az <= _ASYM_SPLIT else 12
                    inv = 1.0 / z
                    term = inv
                    acc = inv
                    for k in range(1, K + 1):
                        term = term * (k * inv)
                        acc = acc + term
                    sgn = 0.0
                    if a > 0.0:
                        sgn = 1.0
                    elif a < 0.0:
                        sgn = -1.0
                    F = -acc - 1j * np.pi * sgn * np.exp(-z)
                dF = -nu * F - nu / z
                rp2 = a * a + b * b
                decay = np.exp(-nu * b)
                ca = np.cos(nu * a)
                sa = np.sin(nu * a)
                val[i, j] = -0.25 / np.pi * np.log(rp2) - (F.real) / np.pi + 1j * decay * ca
                gx1[i, j] = -0.5 / np.pi * a / rp2 + (dF.imag) / np.pi - 1j * nu * decay * sa
                gx2[i, j] = -0.5 / np.pi * b / rp2 - (dF.real) / np.pi - 1j * nu * decay * ca
        return val, gx1, gx2

    def pair_fields(X, XI, nu):
        """green_regular and its gradient on all (target, source) pairs.

        Returns (val, gx1, gx2), each of shape (len(X), len(XI)).  Absolute
        accuracy ~3e-9 (the series crossover band trades a little accuracy
        for a branch-free compiled loop); the scalar entry points of this
        module stay at ~1e-10.
        """
        X = np.ascontiguousarray(np.atleast_2d(X), dtype=float)
        XI = np.ascontiguousarray(np.atleast_2d(XI), dtype=float)
        return _pair_kernel_jit(X, XI, float(nu))

except ImportError:  # pragma: no cover
    pair_fields = _pair_fields_numpy


def source_far_field(xi, nu: float):
    """Far-field amplitudes (d+, d-) of the source potential.

    G(x; xi) -> d+ e^{-i nu x1 - nu x2} as x1 -> +inf and
    d- e^{+i nu x1 - nu x2} as x1 -> -inf, with

        d+ = i e^{-nu xi2 + i nu xi1},   d- = i e^{-nu xi2 - i nu xi1}.
    """
    xi = np.asarray(xi, dtype=float)
    phase = np.exp(1j * nu * xi[..., 0])
    decay = np.exp(-nu * xi[..., 1])
    return 1j * decay * phase, 1j * decay / phase


def green_value_pv(x, xi, nu: float, accuracy: float = 5e-9):
    """Principal-value quadrature evaluation of G (independent oracle).

    Computes the wave correction -(1/pi) PV int_0^inf e^{-k b} cos(k a)
    / (k - nu) dk by subtracting the pole value on [0, A] (the remaining
    integrand is smooth) and adding an oscillatory-weight tail.  Scalar
    points only; slow.

    Raises
    ------
    EvaluationError
        when the quadrature error estimate exceeds ``accuracy``.
    """
    x = np.asarray(x, dtype=float).reshape(2)
    xi = np.asarray(xi, dtype=float).reshape(2)
    a = float(x[0] - xi[0])
    b = float(x[1] + xi[1])
    if b <= 0.0:
        raise EvaluationError("principal-value route requires x2 + xi2 > 0")
    r = np.hypot(a, x[1] - xi[1])
    rp = np.hypot(a, b)
    if r == 0.0:
        raise EvaluationError("singular evaluation: field point equals source point")

    def f(k):
        return np.exp(-k * b) * np.cos(k * a)

    f_pole = f(nu)
    df_pole = np.exp(-nu * b) * (-b * np.cos(nu * a) - a * np.sin(nu * a))

    def smooth(k):
        if abs(k - nu) < 1e-7:
            return df_pole
        return (f(k) - f_pole) / (k - nu)

    cut = 2.0 * nu + 4.0 / b
    part, err1 = quad(smooth, 0.0, cut, epsabs=1e-13, epsrel=1e-12, limit=400)
    pole_part = f_pole * np.log((cut - nu) / nu)
    # Oscillatory tail; integrand decays like e^{-k b} past the pole.
    upper = cut + max(40.0 / b, 10.0)
    tail, err2 = quad(
        lambda k: np.exp(-k * b) / (k - nu),
        cut,
        upper,
        weight="cos",
        wvar=a,
        epsabs=1e-13,
        limit=400,
    )
    est = err1 + err2
    if est > accuracy:
        raise EvaluationError(
            f"principal-value quadrature reached {est:.2e} > target {accuracy:.2e}"
        )
    wave = -(part + pole_part + tail) / np.pi
    return (
        0.5 / np.pi * np.log(r / rp)
        + wave
        + 1j * np.exp(-nu * b) * np.cos(nu * a)
    )
