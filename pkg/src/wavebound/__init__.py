"""2D deep-water wave-body solver with uniqueness checks and bound validation.

The package solves the linear water-wave boundary-value problem for a
submerged body in deep water (radiation and scattering), checks the
geometric uniqueness conditions of the boundary, evaluates the explicit
constants of the weighted resolvent-type solution bound, and validates
the integral identities and the bound numerically.
"""

from .conditions import (
    check_condition1,
    check_condition2,
    check_mazya,
    check_domination,
    max_epsilon,
    uniqueness_criterion,
)
from .constants import ConstantLedger, WeightSet, bound_rhs, ledger, weights
from .errors import (
    EvaluationError,
    ExtractionError,
    GeometryError,
    ParameterError,
    SolverError,
    WaveboundError,
)
from .geometry import BodyCurve, GeometryBox, boundary_frame, build_body, geometry_box
from .greens import green_gradient, green_value, green_value_pv, source_far_field
from .solver import (
    BoundaryData,
    G1Profile,
    ScatteringResult,
    SolutionField,
    SurfaceBump,
    VolumeBump,
    assemble_and_solve,
    scattering_coefficients,
)
from .validation import (
    BoundReport,
    CaseRun,
    NormReport,
    amplitude_bounds,
    bound_report,
    compute_norms,
    identity_residuals,
    q_form_check,
)

__version__ = "0.1.0"
