"""Acceptance suite: one criterion per test, one printed pass/fail line each.

The regression family (5 geometries x 3 wavenumbers, manufactured interior
sources) is solved once at base resolution and shared; the stability
criterion re-runs it once at one refinement step (panel count x2,
quadrature factor x1.5, truncation x1.25).
"""

import math
import time

import numpy as np
import pytest

from conftest import FAMILY_NUS, FAMILY_SHAPES, manufactured_data
from wavebound.conditions import (
    check_condition1,
    max_epsilon,
    uniqueness_criterion,
    w_dot_n,
)
from wavebound.constants import ledger
from wavebound.geometry import build_body, geometry_box
from wavebound.greens import green_gradient, green_value
from wavebound.solver import BoundaryData, G1Profile, assemble_and_solve
from wavebound.validation import RECORDED_RHO_BOUND, CaseRun, amplitude_bounds, q_form_check

NU = 1.0


def report(criterion, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    print(line, flush=True)
    assert ok, line


@pytest.fixture(scope="session")
def regression_family():
    """Base-resolution solves and case runs for 5 shapes x 3 wavenumbers."""
    cases = {}
    for name, spec in FAMILY_SHAPES.items():
        curve = build_body(spec)
        box = geometry_box(curve, epsilon_policy="max-feasible")
        for nu in FAMILY_NUS:
            sol = assemble_and_solve(curve, nu, manufactured_data(spec), 96)
            run = CaseRun(sol, box=box, factor=1.0)
            cases[(name, nu)] = (box, run)
    return cases


def test_criterion_1_green_kernel_properties():
    t0 = time.monotonic()
    rng = np.random.default_rng(0)
    fs_worst = 0.0
    for _ in range(50):
        x = np.array([rng.uniform(-20, 20), 0.0])
        xi = np.array([rng.uniform(-3, 3), rng.uniform(0.3, 4.0)])
        g = green_value(x, xi, NU)
        gr = green_gradient(x, xi, NU)
        fs_worst = max(fs_worst, abs(-gr[1] - NU * g))
    sym_worst = 0.0
    for _ in range(100):
        x = np.array([rng.uniform(-6, 6), rng.uniform(0.05, 5)])
        s = np.array([rng.uniform(-6, 6), rng.uniform(0.05, 5)])
        if np.hypot(*(x - s)) < 1e-3:
            continue
        sym_worst = max(sym_worst, abs(green_value(x, s, NU) - green_value(s, x, NU)))
    x0, xi0 = np.array([1.2, 1.1]), np.array([0.0, 2.0])
    lap = []
    for h in (1e-2, 5e-3, 2.5e-3):
        pts = np.array(
            [[x0[0] + h, x0[1]], [x0[0] - h, x0[1]],
             [x0[0], x0[1] + h], [x0[0], x0[1] - h], x0]
        )
        v = green_value(pts, xi0, NU)
        lap.append(abs(v[0] + v[1] + v[2] + v[3] - 4 * v[4]) / h**2)
    second_order = lap[0] / lap[1] > 3.0 and lap[1] / lap[2] > 3.0
    elapsed = time.monotonic() - t0
    ok = fs_worst <= 1e-8 and sym_worst <= 1e-10 and second_order and elapsed <= 10.0
    report(
        1,
        ok,
        f"surface residual {fs_worst:.2e} <= 1e-8, symmetry {sym_worst:.2e} <= 1e-10, "
        f"Laplacian ratios {lap[0]/lap[1]:.2f}/{lap[1]/lap[2]:.2f} ~ 4, {elapsed:.1f}s <= 10s",
    )


def test_criterion_2_manufactured_convergence():
    t0 = time.monotonic()
    curve = build_body({"kind": "circle", "center": [0.0, 2.0], "radius": 1.0})
    zeta = np.array([0.5, 2.5])
    data = BoundaryData(g1=G1Profile.source_trace([(zeta, 1.0 + 0.0j)]))
    errs = {}
    for N in (64, 128, 256):
        sol = assemble_and_solve(curve, NU, data, N)
        trace = sol.trace_on_body()
        exact = green_value(sol.nodes, zeta, NU)
        errs[N] = float(np.max(np.abs(trace - exact)) / np.max(np.abs(exact)))
    elapsed = time.monotonic() - t0
    ok = (
        errs[256] <= 1e-6
        and errs[128] < errs[64]
        and errs[256] <= errs[128]
        and elapsed <= 60.0
    )
    report(
        2,
        ok,
        f"trace errors {errs[64]:.2e} -> {errs[128]:.2e} -> {errs[256]:.2e} "
        f"(<= 1e-6 at N=256), {elapsed:.1f}s <= 60s",
    )


def test_criterion_3_scattering_and_energy_identities():
    t0 = time.monotonic()
    curve = build_body({"kind": "circle", "center": [0.0, 2.0], "radius": 1.0})
    sources = [(0.0, 2.0), (0.5, 2.5), (-0.4, 1.7), (0.3, 2.3), (-0.2, 2.6)]
    worst_green = worst_energy = 0.0
    for src in sources:
        data = BoundaryData(g1=G1Profile.source_trace([(np.asarray(src), 1.0 + 0.0j)]))
        sol = assemble_and_solve(curve, NU, data, 160)
        run = CaseRun(sol, R=60.0)
        ids = run.identities()
        worst_green = max(worst_green, ids["green"])
        worst_energy = max(worst_energy, ids["energy"])
    elapsed = time.monotonic() - t0
    ok = worst_green <= 1e-4 and worst_energy <= 1e-3 and elapsed <= 300.0
    report(
        3,
        ok,
        f"scattering identity {worst_green:.2e} <= 1e-4, "
        f"energy identity {worst_energy:.2e} <= 1e-3 at R=60, {elapsed:.0f}s <= 300s",
    )


def test_criterion_4_amplitude_bounds():
    t0 = time.monotonic()
    results = []
    for nu, L, H in ((1.0, 1.0, 3.0), (0.5, 1.0, 3.0), (2.0, 2.0, 4.0)):
        out = amplitude_bounds(nu, L, H)
        results.append(
            f"(nu={nu},L={L},H={H}): A={out['A']:.3f}<=3, "
            f"B={out['B']:.3f}<={out['B_bound']:.3f}"
        )
        assert out["holds"], results[-1]
    elapsed = time.monotonic() - t0
    ok = elapsed <= 60.0
    report(4, ok, "; ".join(results) + f", {elapsed:.1f}s <= 60s")


def test_criterion_5_q_form_nonpositive():
    out = q_form_check("W", n=10000, seed=0)
    ok = out["max"] <= 1e-12
    report(
        5,
        ok,
        f"max (Q xi).xi / |xi|^2 = {out['max']:.2e} <= 1e-12 over "
        f"{out['samples']} seeded samples",
    )


def test_criterion_6_condition_oracles():
    c, a = 2.0, 1.0
    curve = build_body({"kind": "circle", "center": [0.0, c], "radius": a})
    rep = check_condition1(curve)
    eps = max_epsilon(curve, rel_tol=1e-6)
    t = np.linspace(0.0, 2.0 * np.pi, 256, endpoint=False)
    pts = curve.point(t)
    r2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
    analytic = pts[:, 0] ** 2 * (c**2 - a**2) / (a * r2)
    wn_err = float(np.max(np.abs(w_dot_n(curve, t) - analytic)))
    ok = (
        rep.holds
        and abs(rep.min_slack) <= 1e-12
        and eps == pytest.approx(c - a, rel=1e-6)
        and wn_err <= 1e-10
    )
    report(
        6,
        ok,
        f"condition-1 min slack {rep.min_slack:.1e} = 0, eps* = {eps:.8f} = c-a = h, "
        f"circle-family slack matches analytic form to {wn_err:.1e} <= 1e-10",
    )


def test_criterion_7_inequality_chain_on_family(regression_family):
    failures = []
    for (name, nu), (box, run) in regression_family.items():
        led = ledger(nu, box)
        checks = run.inequality_chain(led)
        for key, entry in checks.items():
            if not entry["holds"]:
                failures.append(f"{name}@nu={nu}: {key} lhs={entry['lhs']:.3e} rhs={entry['rhs']:.3e}")
    ok = not failures
    report(
        7,
        ok,
        f"tangential/horizontal/norm/coefficient inequalities hold on all "
        f"{len(regression_family)} cases"
        + ("" if ok else "; failures: " + "; ".join(failures)),
    )


def test_criterion_8_bound_ratio_stability(regression_family):
    t0 = time.monotonic()
    base_u, base_d = 0.0, 0.0
    for (name, nu), (box, run) in regression_family.items():
        rep = run.bound_report(ledger(nu, box), case=name, include_identities=False)
        base_u = max(base_u, rep.rho_u)
        base_d = max(base_d, rep.rho_d)
    fine_u, fine_d = 0.0, 0.0
    for name, spec in FAMILY_SHAPES.items():
        curve = build_body(spec)
        box = geometry_box(curve, epsilon_policy="max-feasible")
        for nu in FAMILY_NUS:
            sol = assemble_and_solve(curve, nu, manufactured_data(spec), 192)
            _, base_run = regression_family[(name, nu)]
            run = CaseRun(sol, box=box, factor=1.5, R=base_run.R * 1.25)
            rep = run.bound_report(ledger(nu, box), case=name, include_identities=False)
            fine_u = max(fine_u, rep.rho_u)
            fine_d = max(fine_d, rep.rho_d)
    du = abs(fine_u - base_u) / base_u
    dd = abs(fine_d - base_d) / base_d
    elapsed = time.monotonic() - t0
    ok = (
        math.isfinite(base_u)
        and math.isfinite(base_d)
        and du < 0.05
        and dd < 0.05
        and max(base_u, fine_u) <= RECORDED_RHO_BOUND
        and max(base_d, fine_d) <= RECORDED_RHO_BOUND
        and elapsed <= 1200.0
    )
    report(
        8,
        ok,
        f"max rho_u {base_u:.3e} -> {fine_u:.3e} ({100*du:.2f}% < 5%), "
        f"max rho_d {base_d:.3e} -> {fine_d:.3e} ({100*dd:.2f}% < 5%), "
        f"{elapsed:.0f}s <= 1200s",
    )


def test_criterion_9_uniqueness_arithmetic_and_homogeneous_solves():
    value, holds = uniqueness_criterion(0.01, 1.0, 1.0)
    arithmetic_ok = abs(value - 0.24 * 1.01**3) <= 1e-12 and holds
    worst = 0.0
    for name, spec in FAMILY_SHAPES.items():
        curve = build_body(spec)
        assert max_epsilon(curve) is not None  # conditions hold
        sol = assemble_and_solve(curve, NU, BoundaryData(), 64)
        worst = max(worst, float(np.linalg.norm(sol.density)))
    small_nu = assemble_and_solve(
        build_body(FAMILY_SHAPES["circle-2"]), 0.01, BoundaryData(), 64
    )
    worst = max(worst, float(np.linalg.norm(small_nu.density)))
    ok = arithmetic_ok and worst <= 1e-8
    report(
        9,
        ok,
        f"criterion value {value:.12f} = 0.24*1.01^3 to 1e-12; "
        f"homogeneous density norms <= {worst:.1e} <= 1e-8",
    )
