import numpy as np
import pytest

from wavebound.geometry import build_body
from wavebound.solver import BoundaryData, G1Profile, assemble_and_solve

CIRCLE_SPEC = {"kind": "circle", "center": [0.0, 2.0], "radius": 1.0}

#: geometries satisfying both uniqueness conditions (checked in tests)
FAMILY_SHAPES = {
    "circle-2": {"kind": "circle", "center": [0.0, 2.0], "radius": 1.0},
    "circle-3": {"kind": "circle", "center": [0.0, 3.0], "radius": 1.0},
    "ellipse-mild": {"kind": "ellipse", "center": [0.0, 3.0], "semiaxes": [1.3, 1.0]},
    "ellipse-tall": {"kind": "ellipse", "center": [0.0, 2.5], "semiaxes": [1.0, 1.5]},
    "fourier": {
        "kind": "fourier",
        "center": [0.0, 2.2],
        "radius": 1.0,
        "coeffs": [[0.0, 0.0], [0.08, 0.0]],
    },
}
FAMILY_NUS = (0.5, 1.0, 2.0)


def family_source(spec):
    """Interior source position for the manufactured data of one shape."""
    c = np.asarray(spec["center"], dtype=float)
    return c + np.array([0.3, 0.15])


def manufactured_data(spec, coeff=1.0 + 0.0j):
    return BoundaryData(
        g1=G1Profile.source_trace([(family_source(spec), coeff)])
    )


@pytest.fixture(scope="session")
def circle_curve():
    return build_body(CIRCLE_SPEC)


@pytest.fixture(scope="session")
def circle_case(circle_curve):
    """Manufactured single-source case on the unit circle at depth 2."""
    zeta = np.array([0.5, 2.5])
    data = BoundaryData(g1=G1Profile.source_trace([(zeta, 1.0 + 0.0j)]))
    solution = assemble_and_solve(circle_curve, 1.0, data, 256)
    return zeta, solution


@pytest.fixture(scope="session")
def circle_run(circle_case):
    from wavebound.validation import CaseRun

    _, solution = circle_case
    return CaseRun(solution, R=60.0)
