"""Scenario configuration: JSON schema validation and object construction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import List, Optional, Tuple

import jsonschema

from .errors import ParameterError
from .geometry import BodyCurve, build_body
from .solver import BoundaryData, G1Profile, SurfaceBump, VolumeBump

_NAMED_PROFILES = {
    "cos_t": dict(cos=(1.0,)),
    "sin_t": dict(sin=(1.0,)),
    "uniform": dict(a0=1.0),
}


def _schema() -> dict:
    with resources.files("wavebound").joinpath("scenario_schema.json").open() as fh:
        return json.load(fh)


@dataclass
class ScenarioConfig:
    """Validated scenario: body, wavenumber, data, numerics and sweeps."""

    body_spec: dict
    nu: float
    epsilon: object = "max-feasible"
    data_spec: dict = field(default_factory=dict)
    panels: int = 256
    truncation_radius: Optional[float] = None
    quadrature_factor: float = 1.0
    probes: List[Tuple[float, float]] = field(default_factory=list)
    sweep: dict = field(default_factory=dict)
    thresholds: dict = field(default_factory=dict)
    grid: Optional[dict] = None
    seed: int = 0

    @classmethod
    def from_dict(cls, raw: dict) -> "ScenarioConfig":
        try:
            jsonschema.validate(raw, _schema())
        except jsonschema.ValidationError as exc:
            raise ParameterError(f"scenario config invalid: {exc.message}") from exc
        return cls(
            body_spec=raw["body"],
            nu=float(raw["nu"]),
            epsilon=raw.get("epsilon", "max-feasible"),
            data_spec=raw.get("data", {}),
            panels=int(raw.get("panels", 256)),
            truncation_radius=raw.get("truncation_radius"),
            quadrature_factor=float(raw.get("quadrature_factor", 1.0)),
            probes=[tuple(p) for p in raw.get("probes", [])],
            sweep=raw.get("sweep", {}),
            thresholds=raw.get("thresholds", {}),
            grid=raw.get("grid"),
            seed=int(raw.get("seed", 0)),
        )

    @classmethod
    def from_file(cls, path) -> "ScenarioConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def build_curve(self, scale: float = 1.0) -> BodyCurve:
        spec = dict(self.body_spec)
        if scale != 1.0:
            spec["center"] = [scale * c for c in spec["center"]]
            if "radius" in spec:
                spec["radius"] = scale * spec["radius"]
            if "semiaxes" in spec:
                spec["semiaxes"] = [scale * s for s in spec["semiaxes"]]
        return build_body(spec)

    def build_data(self) -> BoundaryData:
        f_bumps = [
            VolumeBump(tuple(b["center"]), float(b["sigma"]), complex(*b["coeff"]))
            for b in self.data_spec.get("f", [])
        ]
        g2_bumps = [
            SurfaceBump(float(b["center"]), float(b["sigma"]), complex(*b["coeff"]))
            for b in self.data_spec.get("g2", [])
        ]
        g1 = self._build_g1(self.data_spec.get("g1", {"type": "zero"}))
        return BoundaryData(f_bumps=f_bumps, g1=g1, g2_bumps=g2_bumps)

    @staticmethod
    def _build_g1(spec: dict) -> G1Profile:
        kind = spec.get("type", "zero")
        if kind == "zero":
            return G1Profile.zero()
        if kind == "fourier":
            return G1Profile.fourier(
                a0=spec.get("a0", 0.0), cos=spec.get("cos", ()), sin=spec.get("sin", ())
            )
        if kind == "named":
            return G1Profile.fourier(**_NAMED_PROFILES[spec["name"]])
        sources = [(s["point"], complex(*s["coeff"])) for s in spec["sources"]]
        return G1Profile.source_trace(sources)

    def sweep_points(self):
        """Cross product of the sweep lists; [(nu, scale)] with defaults."""
        nus = self.sweep.get("nu", [self.nu])
        scales = self.sweep.get("body_scale", [1.0])
        return [(float(n), float(s)) for n in nus for s in scales]
