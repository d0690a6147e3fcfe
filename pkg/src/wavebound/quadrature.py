"""Quadrature building blocks: panel rules and the periodic log rule.

The boundary-integral layer uses the periodic trapezoid rule (spectrally
accurate for smooth 2pi-periodic integrands) and the classical product
rule for the periodic logarithmic kernel

    int_0^{2pi} ln(4 sin^2((t - tau)/2)) f(tau) dtau
        ~ sum_j R_{ij} f(t_j),

    R_{ij} = -(4pi/N) sum_{m=1}^{N/2-1} cos(m theta_ij)/m
             - (4pi/N^2) cos((N/2) theta_ij),     theta_ij = 2pi(i-j)/N,

on an even number N of equispaced nodes.  Domain integrals use composite
Gauss-Legendre panels.
"""

from __future__ import annotations

import numpy as np


def gauss_panels(breaks, n: int):
    """Composite Gauss-Legendre rule over consecutive intervals.

    Parameters
    ----------
    breaks : array_like
        Increasing panel breakpoints (at least two).
    n : int
        Nodes per panel.

    Returns
    -------
    nodes, weights : np.ndarray
    """
    breaks = np.asarray(breaks, dtype=float)
    x, w = np.polynomial.legendre.leggauss(n)
    a = breaks[:-1]
    half = 0.5 * (breaks[1:] - a)
    nodes = (a[:, None] + half[:, None] * (x[None, :] + 1.0)).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def geometric_breaks(a: float, b: float, first: float, ratio: float = 1.6):
    """Breakpoints from a to b whose spacing grows geometrically."""
    breaks = [a]
    step = first
    while breaks[-1] + step < b:
        breaks.append(breaks[-1] + step)
        step *= ratio
    breaks.append(b)
    return np.asarray(breaks)


def uniform_breaks(a: float, b: float, target: float):
    """Breakpoints with spacing at most ``target``."""
    n = max(1, int(np.ceil((b - a) / target)))
    return np.linspace(a, b, n + 1)


def trapezoid_nodes(n: int):
    """Equispaced parameter nodes and weights of the periodic trapezoid rule."""
    t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    return t, np.full(n, 2.0 * np.pi / n)


def kress_log_matrix(n: int) -> np.ndarray:
    """Weights R_{ij} of the periodic logarithmic product rule; n even."""
    if n % 2:
        raise ValueError("the log rule needs an even node count")
    j = np.arange(n)
    theta = 2.0 * np.pi * j / n
    m = np.arange(1, n // 2)
    row = -(4.0 * np.pi / n) * (np.cos(np.outer(theta, m)) / m).sum(axis=1)
    row -= (4.0 * np.pi / n**2) * np.cos(0.5 * n * theta)
    idx = (j[:, None] - j[None, :]) % n
    return row[idx]


def fft_interpolate(values: np.ndarray, factor: int) -> np.ndarray:
    """Trigonometric interpolation of periodic samples onto a finer grid."""
    n = len(values)
    spec = np.fft.fft(values)
    m = n * factor
    out = np.zeros(m, dtype=complex)
    half = n // 2
    out[:half] = spec[:half]
    out[m - half :] = spec[n - half :]
    # split the Nyquist mode symmetrically to keep real inputs real
    if n % 2 == 0:
        out[half] = 0.5 * spec[half]
        out[m - half] = 0.5 * spec[half]
    vals = np.fft.ifft(out) * factor
    if np.isrealobj(values):
        return vals.real
    return vals


def fft_derivative(values: np.ndarray) -> np.ndarray:
    """Spectral derivative of 2pi-periodic samples with respect to t."""
    n = len(values)
    k = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        k = k.copy()
        k[n // 2] = 0.0
    out = np.fft.ifft(1j * k * np.fft.fft(values))
    if np.isrealobj(values):
        return out.real
    return out
