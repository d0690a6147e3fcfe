"""Batch command-line front end.

Subcommands:

* ``check-geometry``  condition checks, maximal eps and the smallness
  criterion; exit 0 when every geometric condition holds, 2 otherwise.
* ``solve``           one boundary-value solve; writes densities, far-field
  amplitudes and probe values; exit 3 on extraction disagreement.
* ``validate``        full pipeline per sweep point; one CSV row each;
  exit 4 when an identity residual exceeds its threshold.
* ``green-dump``      source-potential values on a grid, as CSV.

Exit codes: 0 ok, 1 usage or config error, 2 condition failed,
3 extraction disagreement, 4 residual threshold breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import conditions
from .config import ScenarioConfig
from .constants import ledger
from .errors import ExtractionError, ParameterError, WaveboundError
from .geometry import geometry_box
from .greens import green_value
from .solver import assemble_and_solve
from .validation import CSV_HEADER, CaseRun

DEFAULT_THRESHOLDS = {"green": 1e-4, "energy": 1e-3, "variational": 5e-3}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise SystemExit(1)


def _write(out_dir, name, text):
    if out_dir is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / name).write_text(text if text.endswith("\n") else text + "\n")


def cmd_check_geometry(config: ScenarioConfig, out_dir=None) -> int:
    curve = config.build_curve()
    box = geometry_box(curve, epsilon_policy=None)
    reports = [
        conditions.check_condition1(curve),
        conditions.check_mazya(curve),
    ]
    eps_star = conditions.max_epsilon(curve)
    if eps_star is not None:
        reports.append(conditions.check_condition2(curve, eps_star))
        reports.append(conditions.check_domination(curve, eps_star))
    value, holds = conditions.uniqueness_criterion(config.nu, box.L, box.h)
    payload = {
        "box": {"L": box.L, "h": box.h, "H": box.H, "kappa": box.kappa},
        "max_epsilon": eps_star,
        "conditions": [json.loads(r.to_json()) for r in reports],
        "smallness_criterion": {"value": value, "holds": holds},
    }
    _write(out_dir, "geometry.json", json.dumps(payload, indent=2, sort_keys=True))
    geometric_ok = (
        eps_star is not None
        and all(r.holds for r in reports)
    )
    return 0 if geometric_ok else 2


def cmd_solve(config: ScenarioConfig, out_dir=None) -> int:
    curve = config.build_curve()
    data = config.build_data()
    solution = assemble_and_solve(curve, config.nu, data, config.panels)
    try:
        sc = solution.scattering()
    except ExtractionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    probes = []
    for p in config.probes:
        val = complex(solution.evaluate(np.asarray(p, dtype=float)))
        probes.append({"point": list(p), "value": [val.real, val.imag]})
    payload = {
        "nu": config.nu,
        "panels": config.panels,
        "condition_number": solution.cond,
        "density": {
            "re": [float(v) for v in solution.density.real],
            "im": [float(v) for v in solution.density.imag],
        },
        "d_plus": [sc.dplus.real, sc.dplus.imag],
        "d_minus": [sc.dminus.real, sc.dminus.imag],
        "extraction": {"methods": list(sc.methods), "discrepancy": sc.discrepancy},
        "probes": probes,
        "accuracy_note": solution.accuracy_note,
    }
    _write(out_dir, "solution.json", json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _validate_point(config: ScenarioConfig, nu: float, scale: float):
    curve = config.build_curve(scale)
    data = config.build_data()
    eps_star = conditions.max_epsilon(curve)
    label = f"nu={nu:g} scale={scale:g}"
    if eps_star is None:
        return label, None, None
    box = geometry_box(curve, epsilon_policy=eps_star)
    solution = assemble_and_solve(curve, nu, data, config.panels)
    run = CaseRun(
        solution, box=box, R=config.truncation_radius, factor=config.quadrature_factor
    )
    report = run.bound_report(ledger(nu, box), case=label)
    return label, run, report


def cmd_validate(config: ScenarioConfig, out_dir=None, threads: int = 1) -> int:
    thresholds = {**DEFAULT_THRESHOLDS, **config.thresholds}
    points = config.sweep_points()
    rows = []
    breaches = []
    if threads > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda p: _validate_point(config, *p), points))
    else:
        results = [_validate_point(config, *p) for p in points]
    for label, run, report in results:
        if report is None:
            rows.append(f"{label},not-applicable,,,,,,,,,,")
            continue
        rows.append(report.csv_row())
        for key, res in report.residuals.items():
            thr = thresholds.get(key, thresholds.get("variational"))
            if key.startswith("variational"):
                thr = thresholds["variational"]
            if res > thr:
                breaches.append(f"{label}: {key} residual {res:.3e} > {thr:.1e}")
    text = CSV_HEADER + "\n" + "\n".join(rows) + ("\n" if rows else "\n")
    _write(out_dir, "validation.csv", text)
    if breaches:
        sys.stderr.write("\n".join(breaches) + "\n")
        return 4
    return 0


def cmd_green_dump(config: ScenarioConfig, out_dir=None) -> int:
    if config.grid is None:
        raise ParameterError("green-dump needs a 'grid' section in the config")
    g = config.grid
    x1 = np.linspace(g["x1"][0], g["x1"][1], int(g["x1"][2]))
    x2 = np.linspace(g["x2"][0], g["x2"][1], int(g["x2"][2]))
    src = np.asarray(g.get("source", [0.0, 1.0]), dtype=float)
    lines = ["# wavebound-green v1", "x1,x2,re,im"]
    for b in x2:
        pts = np.stack([x1, np.full_like(x1, b)], axis=-1)
        vals = green_value(pts, src, config.nu)
        for a, v in zip(x1, vals):
            lines.append(
                f"{float(a)!r},{float(b)!r},{float(v.real)!r},{float(v.imag)!r}"
            )
    _write(out_dir, "green.csv", "\n".join(lines))
    return 0


def main(argv=None) -> int:
    parser = _Parser(prog="wavebound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("check-geometry", "solve", "validate", "green-dump"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="scenario JSON path")
        p.add_argument("--out", default=None, help="output directory (default: stdout)")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=None, help="override config seed")
    args = parser.parse_args(argv)

    try:
        config = ScenarioConfig.from_file(args.config)
        if args.seed is not None:
            config.seed = args.seed
        if args.command == "check-geometry":
            return cmd_check_geometry(config, args.out)
        if args.command == "solve":
            return cmd_solve(config, args.out)
        if args.command == "validate":
            return cmd_validate(config, args.out, threads=args.threads)
        return cmd_green_dump(config, args.out)
    except (WaveboundError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
