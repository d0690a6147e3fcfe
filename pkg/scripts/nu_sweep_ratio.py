#!/usr/bin/env python3
"""Sweep the wavenumber for one geometry and write (nu, rho_u, rho_d) columns.

Plot-data output: whitespace-separated columns suitable for any plotting
front end.
"""

import argparse
import sys

import numpy as np

from wavebound.constants import ledger
from wavebound.geometry import build_body, geometry_box
from wavebound.solver import BoundaryData, G1Profile, assemble_and_solve
from wavebound.validation import CaseRun


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="nu_sweep.dat")
    ap.add_argument("--nu-min", type=float, default=0.3)
    ap.add_argument("--nu-max", type=float, default=2.5)
    ap.add_argument("--points", type=int, default=9)
    ap.add_argument("--panels", type=int, default=128)
    args = ap.parse_args()

    curve = build_body({"kind": "circle", "center": [0.0, 2.0], "radius": 1.0})
    box = geometry_box(curve, epsilon_policy="max-feasible")
    zeta = np.array([0.3, 2.15])

    lines = ["# nu rho_u rho_d norm_u norm_F"]
    for nu in np.geomspace(args.nu_min, args.nu_max, args.points):
        data = BoundaryData(g1=G1Profile.source_trace([(zeta, 1.0 + 0.0j)]))
        sol = assemble_and_solve(curve, float(nu), data, args.panels)
        run = CaseRun(sol, box=box)
        rep = run.bound_report(ledger(float(nu), box), case=f"nu={nu:g}",
                               include_identities=False)
        lines.append(
            f"{float(nu)!r} {rep.rho_u!r} {rep.rho_d!r} {rep.norm_u!r} {rep.norm_F!r}"
        )
        print(lines[-1], flush=True)

    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
