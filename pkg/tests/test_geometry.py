import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavebound.errors import GeometryError, ParameterError
from wavebound.geometry import boundary_frame, build_body, geometry_box


def ellipse_curvature(a, b, t):
    # analytic oracle: k(t) = a b / (a^2 sin^2 t + b^2 cos^2 t)^{3/2}
    return a * b / (a**2 * np.sin(t) ** 2 + b**2 * np.cos(t) ** 2) ** 1.5


def test_circle_is_valid_and_submerged():
    c = build_body({"kind": "circle", "center": [0.0, 2.0], "radius": 1.0})
    t = np.linspace(0, 2 * np.pi, 512, endpoint=False)
    assert np.min(c.point(t)[:, 1]) == pytest.approx(1.0, abs=1e-12)


def test_touching_circle_rejected():
    with pytest.raises(GeometryError, match="not submerged"):
        build_body({"kind": "circle", "center": [0.0, 1.0], "radius": 1.0})


def test_crossing_ellipse_rejected():
    with pytest.raises(GeometryError, match="not submerged"):
        build_body({"kind": "ellipse", "center": [0.0, 0.5], "semiaxes": [2.0, 1.0]})


def test_ellipse_extent():
    c = build_body({"kind": "ellipse", "center": [0.0, 3.0], "semiaxes": [2.0, 1.0]})
    t = np.linspace(0, 2 * np.pi, 1024, endpoint=False)
    x2 = c.point(t)[:, 1]
    assert np.min(x2) == pytest.approx(2.0, abs=1e-10)
    assert np.max(x2) == pytest.approx(4.0, abs=1e-10)


def test_self_intersecting_fourier_rejected():
    with pytest.raises(GeometryError, match="not simple"):
        build_body(
            {"kind": "fourier", "center": [0.0, 3.0], "radius": 1.0,
             "coeffs": [[1.2, 0.0]]}
        )


def test_bad_parameters():
    with pytest.raises(ParameterError):
        build_body({"kind": "circle", "center": [0.0, 2.0], "radius": -1.0})
    with pytest.raises(ParameterError):
        build_body({"kind": "blob", "center": [0.0, 2.0], "radius": 1.0})


def test_circle_frame_normals():
    c = build_body({"kind": "circle", "center": [0.0, 2.0], "radius": 1.0})
    f = boundary_frame(c, np.array([0.0]))           # point (1, 2)
    assert np.allclose(f.point[0], [1.0, 2.0])
    assert np.allclose(f.normal[0], [-1.0, 0.0], atol=1e-14)
    f = boundary_frame(c, np.array([1.5 * np.pi]))   # point (0, 1), nearest surface
    assert np.allclose(f.point[0], [0.0, 1.0], atol=1e-12)
    assert np.allclose(f.normal[0], [0.0, 1.0], atol=1e-14)


def test_ellipse_vertex_frame_and_curvature():
    a, b = 2.0, 1.0
    c = build_body({"kind": "ellipse", "center": [0.0, 3.0], "semiaxes": [a, b]})
    f = boundary_frame(c, np.array([0.0]))           # point (2, 3)
    assert np.allclose(f.point[0], [2.0, 3.0])
    assert np.allclose(f.normal[0], [-1.0, 0.0], atol=1e-14)
    assert f.curvature[0] == pytest.approx(ellipse_curvature(a, b, 0.0), rel=1e-12)
    assert f.curvature[0] == pytest.approx(a / b**2, rel=1e-12)


@given(t=st.floats(0.0, 2.0 * np.pi, exclude_max=True))
@settings(max_examples=60, deadline=None)
def test_frame_orthonormal(t):
    c = build_body({"kind": "ellipse", "center": [0.5, 2.5], "semiaxes": [1.2, 0.7]})
    f = boundary_frame(c, np.array([t]))
    assert np.hypot(*f.normal[0]) == pytest.approx(1.0, abs=1e-12)
    assert np.hypot(*f.tangent[0]) == pytest.approx(1.0, abs=1e-12)
    assert abs(np.dot(f.normal[0], f.tangent[0])) < 1e-12
    assert f.speed[0] > 0.0


def test_normal_points_into_convex_body():
    for spec in (
        {"kind": "circle", "center": [0.3, 2.0], "radius": 0.8},
        {"kind": "ellipse", "center": [0.0, 3.0], "semiaxes": [2.0, 1.0]},
    ):
        c = build_body(spec)
        t = np.linspace(0, 2 * np.pi, 256, endpoint=False)
        f = boundary_frame(c, t)
        outward = f.point - np.asarray(spec["center"])
        assert np.all(np.einsum("ij,ij->i", f.normal, outward) < 0.0)


def test_frame_closure():
    c = build_body(
        {"kind": "fourier", "center": [0.0, 2.5], "radius": 1.0,
         "coeffs": [[0.05, 0.02], [0.0, 0.03]]}
    )
    f0 = boundary_frame(c, np.array([0.0]))
    f1 = boundary_frame(c, np.array([2.0 * np.pi - 1e-14]))
    assert np.allclose(f0.point, f1.point, atol=1e-12)
    assert np.allclose(f0.normal, f1.normal, atol=1e-12)


def test_geometry_box_circle():
    c = build_body({"kind": "circle", "center": [0.0, 2.0], "radius": 1.0})
    box = geometry_box(c, epsilon_policy=None)
    assert box.L == pytest.approx(1.0, abs=1e-10)
    assert box.h == pytest.approx(1.0, abs=1e-10)
    assert box.H == pytest.approx(3.0, abs=1e-10)
    assert box.kappa == pytest.approx(1.0, rel=1e-9)


def test_geometry_box_ellipse_curvature_extremes():
    a, b = 2.0, 1.0
    c = build_body({"kind": "ellipse", "center": [0.0, 3.0], "semiaxes": [a, b]})
    box = geometry_box(c, epsilon_policy=None)
    assert box.L == pytest.approx(2.0, abs=1e-10)
    assert box.h == pytest.approx(2.0, abs=1e-10)
    assert box.H == pytest.approx(4.0, abs=1e-10)
    # curvature range of an ellipse: [b/a^2, a/b^2]
    assert box.kappa == pytest.approx(a / b**2, rel=1e-9)


def test_geometry_box_max_feasible_eps():
    c = build_body({"kind": "circle", "center": [0.0, 2.0], "radius": 1.0})
    box = geometry_box(c, epsilon_policy="max-feasible")
    assert box.eps == pytest.approx(1.0, rel=1e-6)


def test_geometry_box_explicit_eps_validation():
    c = build_body({"kind": "circle", "center": [0.0, 2.0], "radius": 1.0})
    box = geometry_box(c, epsilon_policy=0.5)
    assert box.eps == 0.5
    with pytest.raises(ParameterError):
        geometry_box(c, epsilon_policy=1.5)


def test_box_stable_under_sampling_refinement():
    spec = {"kind": "fourier", "center": [0.0, 2.5], "radius": 1.0,
            "coeffs": [[0.06, 0.0], [0.0, 0.04]]}
    coarse = geometry_box(build_body({**spec, "samples": 1024}), epsilon_policy=None)
    fine = geometry_box(build_body({**spec, "samples": 4096}), epsilon_policy=None)
    assert fine.h <= coarse.h + 1e-9
    assert fine.L >= coarse.L - 1e-9
    assert fine.H >= coarse.H - 1e-9
    assert fine.kappa >= coarse.kappa - 1e-9
    assert abs(fine.kappa - coarse.kappa) < 1e-6


def test_arclength_quadrature_sanity():
    c = build_body({"kind": "circle", "center": [0.0, 2.0], "radius": 0.75})
    t = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    speed = boundary_frame(c, t).speed
    length = np.sum(speed) * 2 * np.pi / len(t)
    assert length == pytest.approx(2 * np.pi * 0.75, abs=1e-10)


def test_polar_radius_and_contains():
    c = build_body({"kind": "ellipse", "center": [0.5, 3.0], "semiaxes": [2.0, 1.0]})
    assert c.polar_radius(np.array([0.0]))[0] == pytest.approx(2.0)
    assert c.polar_radius(np.array([np.pi / 2]))[0] == pytest.approx(1.0)
    assert c.contains(np.array([[0.5, 3.0]]))[0]
    assert not c.contains(np.array([[0.5, 0.5]]))[0]
