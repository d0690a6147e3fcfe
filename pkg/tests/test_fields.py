import numpy as np
import pytest

from wavebound.fields import (
    WaveModes,
    cutoff,
    field_v,
    field_w,
    field_w_jacobian,
    q_form,
    q_matrix,
)


def test_w_field_values():
    x = np.array([[1.0, 1.0]])
    # W = (x1(x1^2-x2^2)/r^2, 2 x1^2 x2 / r^2)
    assert np.allclose(field_w(x)[0], [0.0, 1.0])
    x = np.array([[2.0, 1.0]])
    assert np.allclose(field_w(x)[0], [2.0 * 3.0 / 5.0, 8.0 / 5.0])
    # vanishes on the vertical axis
    assert np.allclose(field_w(np.array([[0.0, 3.0]]))[0], [0.0, 0.0])
    # restriction to the surface is (x1, 0)
    assert np.allclose(field_w(np.array([[2.5, 0.0]]))[0], [2.5, 0.0])


def test_w_jacobian_against_sympy():
    sympy = pytest.importorskip("sympy")
    x1, x2 = sympy.symbols("x1 x2", real=True)
    r2 = x1**2 + x2**2
    W1 = x1 * (x1**2 - x2**2) / r2
    W2 = 2 * x1**2 * x2 / r2
    jac_sym = [[sympy.diff(W1, x1), sympy.diff(W2, x1)],
               [sympy.diff(W1, x2), sympy.diff(W2, x2)]]
    rng = np.random.default_rng(0)
    pts = rng.uniform(-3, 3, size=(20, 2))
    pts = pts[np.hypot(pts[:, 0], pts[:, 1]) > 0.1]
    jac = field_w_jacobian(pts)
    for k, (a, b) in enumerate(pts):
        for i in range(2):
            for j in range(2):
                exact = float(jac_sym[i][j].subs({x1: a, x2: b}))
                assert jac[k, i, j] == pytest.approx(exact, abs=1e-12)


def test_w_jacobian_against_finite_differences():
    rng = np.random.default_rng(1)
    pts = rng.uniform(0.5, 4.0, size=(30, 2))
    jac = field_w_jacobian(pts)
    h = 1e-6
    for i in range(2):
        dx = np.zeros((len(pts), 2))
        dx[:, i] = h
        fd = (field_w(pts + dx) - field_w(pts - dx)) / (2 * h)
        assert np.max(np.abs(fd - jac[:, i, :])) < 1e-8


def test_q_matrix_v_is_constant_diagonal():
    pts = np.array([[1.0, 2.0], [-3.0, 0.5]])
    q = q_matrix("V", pts, T=0.5)
    assert np.allclose(q[:, 0, 0], -2.0)
    assert np.allclose(q[:, 0, 1], 0.0)
    assert np.allclose(q[:, 1, 1], 0.0)
    # quadratic form is -2 xi_1^2
    vec = np.array([[0.3, -0.8], [1.0, 0.0]])
    assert np.allclose(q_form("V", pts, vec), -2.0 * vec[:, 0] ** 2)


def test_q_matrix_w_closed_form():
    # Q(W, 1/2) = -2 u u^T with u = (q, -p), p = (x1^2-x2^2)/r^2, q = 2x1x2/r^2
    rng = np.random.default_rng(2)
    pts = rng.uniform(-4, 4, size=(50, 2))
    pts = pts[np.hypot(pts[:, 0], pts[:, 1]) > 1e-3]
    x1, x2 = pts[:, 0], pts[:, 1]
    r2 = x1**2 + x2**2
    p = (x1**2 - x2**2) / r2
    q_ = 2 * x1 * x2 / r2
    u = np.stack([q_, -p], axis=-1)
    expected = -2.0 * np.einsum("mi,mj->mij", u, u)
    assert np.allclose(q_matrix("W", pts), expected, atol=1e-12)
    # eigenvalues are {0, -2}
    eig = np.linalg.eigvalsh(q_matrix("W", pts))
    assert np.max(eig) < 1e-12
    assert np.allclose(np.min(eig, axis=1), -2.0, atol=1e-12)


def test_q_form_nonpositive_on_axis():
    pts = np.array([[0.0, 1.0], [0.0, 5.0]])
    vec = np.array([[1.0, 1.0], [0.2, -0.7]])
    assert np.all(q_form("W", pts, vec) <= 1e-14)


def test_pointwise_divergence_identity_sympy():
    # the flux identity behind the variational machinery:
    # 2 (Z.grad v + T v) Lap v = 2 div[(Z.grad v + T v) grad v]
    #   + (Q grad v).grad v - div(|grad v|^2 Z)
    sympy = pytest.importorskip("sympy")
    x1, x2 = sympy.symbols("x1 x2", real=True)
    r2 = x1**2 + x2**2
    Z = sympy.Matrix([x1 * (x1**2 - x2**2) / r2, 2 * x1**2 * x2 / r2])
    T = sympy.Rational(1, 2)
    v = x1**3 * x2 - 2 * x1 * x2**2 + x2  # generic polynomial probe
    grad = sympy.Matrix([sympy.diff(v, x1), sympy.diff(v, x2)])
    lap = sympy.diff(v, x1, 2) + sympy.diff(v, x2, 2)
    divZ = sympy.diff(Z[0], x1) + sympy.diff(Z[1], x2)
    Q = sympy.zeros(2, 2)
    vars_ = (x1, x2)
    for i in range(2):
        for j in range(2):
            Q[i, j] = -(sympy.diff(Z[j], vars_[i]) + sympy.diff(Z[i], vars_[j]))
            if i == j:
                Q[i, j] += divZ - 2 * T
    zgrad = (Z.T * grad)[0]
    flux = sympy.Matrix([(zgrad + T * v) * grad[0], (zgrad + T * v) * grad[1]])
    div_flux = sympy.diff(flux[0], x1) + sympy.diff(flux[1], x2)
    g2 = grad[0] ** 2 + grad[1] ** 2
    div_zg2 = sympy.diff(g2 * Z[0], x1) + sympy.diff(g2 * Z[1], x2)
    qform = (grad.T * Q * grad)[0]
    lhs = 2 * (zgrad + T * v) * lap
    rhs = 2 * div_flux + qform - div_zg2
    assert sympy.simplify(lhs - rhs) == 0


def test_cutoff_shape_and_bounds():
    t = np.linspace(-1.0, 5.0, 4001)
    chi = cutoff(t)
    assert np.all(chi[t <= 1.0] == 0.0)
    assert np.all(chi[t >= 3.0] == 1.0)
    assert np.all((chi >= 0.0) & (chi <= 1.0))
    d1 = cutoff(t, 1)
    d2 = cutoff(t, 2)
    assert np.max(np.abs(d1)) == pytest.approx(15.0 / 16.0, abs=1e-6)
    assert np.max(np.abs(d1)) < 1.0
    assert np.max(np.abs(d2)) == pytest.approx(1.443, abs=2e-3)


def test_cutoff_derivative_consistency():
    t = np.linspace(0.5, 3.5, 101)
    h = 1e-6
    fd1 = (cutoff(t + h) - cutoff(t - h)) / (2 * h)
    assert np.max(np.abs(fd1 - cutoff(t, 1))) < 1e-8
    fd2 = (cutoff(t + h, 1) - cutoff(t - h, 1)) / (2 * h)
    assert np.max(np.abs(fd2 - cutoff(t, 2))) < 1e-8


def test_wave_modes_surface_condition_and_support():
    modes = WaveModes(nu=1.0, tau=5.0)
    x = np.stack([np.linspace(-40, 40, 81), np.zeros(81)], axis=-1)
    u = modes.value(x, +1)
    g = modes.gradient(x, +1)
    assert np.max(np.abs(-g[:, 1] - 1.0 * u)) < 1e-13
    # vanishes left of the transition
    inner = np.abs(x[:, 0]) < 5.0
    assert np.allclose(modes.value(x[inner], +1), 0.0)
    assert np.allclose(modes.value(x[inner], -1), 0.0)


def test_wave_modes_derivatives_match_finite_differences():
    modes = WaveModes(nu=0.7, tau=4.0)
    rng = np.random.default_rng(3)
    pts = np.stack([rng.uniform(4.0, 12.0, 40), rng.uniform(0.0, 3.0, 40)], axis=-1)
    h = 1e-5

    def val(p):
        return modes.value(p, +1)

    for i in range(2):
        dx = np.zeros_like(pts)
        dx[:, i] = h
        fd = (val(pts + dx) - val(pts - dx)) / (2 * h)
        assert np.max(np.abs(fd - modes.gradient(pts, +1)[:, i])) < 1e-8

    lap_fd = np.zeros(len(pts), dtype=complex)
    for i in range(2):
        dx = np.zeros_like(pts)
        dx[:, i] = h
        lap_fd += (val(pts + dx) - 2 * val(pts) + val(pts - dx)) / h**2
    assert np.max(np.abs(lap_fd - modes.laplacian(pts, +1))) < 2e-5


def test_wave_mode_laplacian_supported_on_strip():
    modes = WaveModes(nu=1.0, tau=5.0)
    pts = np.array([[4.0, 1.0], [16.0, 1.0], [-4.0, 0.5], [-16.0, 0.5]])
    assert np.allclose(modes.laplacian(pts, +1), 0.0)
    assert np.allclose(modes.laplacian(pts, -1), 0.0)
    strip = np.array([[7.0, 0.5], [10.0, 1.0]])
    assert np.all(np.abs(modes.laplacian(strip, +1)) > 0.0)


def test_v_field():
    pts = np.array([[1.5, 2.0], [-0.3, 0.1]])
    v = field_v(pts)
    assert np.allclose(v[:, 0], pts[:, 0])
    assert np.allclose(v[:, 1], 0.0)
