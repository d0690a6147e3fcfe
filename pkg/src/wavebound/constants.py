"""Weight functions and the explicit constant ledger of the solution bound.

The solution norm uses three weights built from the wavenumber nu and the
bounding parameters (L, h, H):

    gamma0(x)^2 = nu^2 / (L^2 nu^2 + 1 + nu^2 x1^2 + nu^2 x2^2)   on the domain
    gamma1^2    = 1 / tau,   tau = L + 1/nu + H                   on the body
    gamma2(x1)^2 = nu / (1 + nu^2 x1^2)                            on the surface

The ledger collects every explicit constant of the estimate chain.  Where
the source expressions are stated as upper bounds, the ledger stores the
stated bound (the tightest printed form); downstream validation therefore
tests sufficient right-hand sides, not sharp values.  The absolute
constant multiplying the final bound is not specified anywhere; reports
set it to 1 and flag results as "modulo absolute constant".
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .geometry import GeometryBox


@dataclass(frozen=True)
class WeightSet:
    """Evaluators for the three norm weights."""

    nu: float
    L: float
    H: float

    @property
    def tau(self) -> float:
        return self.L + 1.0 / self.nu + self.H

    @property
    def gamma1_sq(self) -> float:
        return 1.0 / self.tau

    @property
    def gamma1(self) -> float:
        return math.sqrt(self.gamma1_sq)

    def gamma0_sq(self, x1, x2):
        nu = self.nu
        return nu**2 / (self.L**2 * nu**2 + 1.0 + nu**2 * (np.asarray(x1) ** 2 + np.asarray(x2) ** 2))

    def gamma0(self, x1, x2):
        return np.sqrt(self.gamma0_sq(x1, x2))

    def gamma2_sq(self, x1):
        return self.nu / (1.0 + self.nu**2 * np.asarray(x1) ** 2)

    def gamma2(self, x1):
        return np.sqrt(self.gamma2_sq(x1))


@dataclass
class ConstantLedger:
    """Explicit constants of the resolvent-type estimate, with formulas."""

    nu: float
    L: float
    h: float
    H: float
    kappa: float
    eps: float
    tau: float
    C3: float
    C4: float
    C5: float
    C6: float
    C7: float
    C8: float
    C0: float
    C1: float
    C2: float
    C: float
    amplitude_A_bound: float = 3.0
    amplitude_B_bound: float = 0.0
    formulas: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "inputs": {
                "nu": self.nu, "L": self.L, "h": self.h, "H": self.H,
                "kappa": self.kappa, "eps": self.eps,
            },
            "tau": self.tau,
            "constants": {
                "C0": self.C0, "C1": self.C1, "C2": self.C2, "C3": self.C3,
                "C4": self.C4, "C5": self.C5, "C6": self.C6, "C7": self.C7,
                "C8": self.C8, "C": self.C,
            },
            "amplitude_bounds": {
                "A": self.amplitude_A_bound, "B": self.amplitude_B_bound,
            },
            "formulas": self.formulas,
            "note": "absolute constant set to 1; all values modulo absolute constant",
        }
        return json.dumps(payload, sort_keys=True)


FORMULAS = {
    "tau": "L + 1/nu + H",
    "C3": "3 + 2*(kappa*L + 10)",
    "C4": "sqrt(2) + kappa*L",
    "C5": "C4 + H*C3/(2*eps)",
    "C6": "H/(2*eps) + 1/2",
    "C7": "72*nu*L^2/h*(1 + nu*h)^3",
    "C8": "24 + 18*kappa*tau",
    "C0": "2^30*(H/eps)*(1 + kappa*L)*(1 + kappa*tau)*(1 + nu*L^2/h*(1 + nu*h)^3)",
    "C1": "1 + nu*tau*C0^2",
    "C2": "sqrt(1 + nu*tau*C0^2)",
    "C": "h^-2*eps^-2*(1 + kappa*tau)^4*(1 + nu*h)^6*nu^3*tau^7",
    "A": "3",
    "B": "2^5*sqrt(nu*tau)",
}


def weights(nu: float, box: GeometryBox) -> WeightSet:
    """Weight evaluators for wavenumber nu and bounding box."""
    if nu <= 0.0:
        raise ParameterError("nu must be positive")
    return WeightSet(nu=nu, L=box.L, H=box.H)


def ledger(nu: float, box: GeometryBox) -> ConstantLedger:
    """Evaluate the full constant ledger for (nu, box).

    Requires box.eps to be set (the estimate chain is parametrized by eps).
    """
    if nu <= 0.0:
        raise ParameterError("nu must be positive")
    if box.eps is None:
        raise ParameterError("geometry box has no eps set")
    L, h, H, kappa, eps = box.L, box.h, box.H, box.kappa, box.eps
    tau = L + 1.0 / nu + H

    C3 = 3.0 + 2.0 * (kappa * L + 10.0)
    C4 = math.sqrt(2.0) + kappa * L
    C5 = C4 + H * C3 / (2.0 * eps)
    C6 = H / (2.0 * eps) + 0.5
    C7 = 72.0 * nu * L**2 / h * (1.0 + nu * h) ** 3
    C8 = 24.0 + 18.0 * kappa * tau
    C0 = (
        2.0**30
        * (H / eps)
        * (1.0 + kappa * L)
        * (1.0 + kappa * tau)
        * (1.0 + nu * L**2 / h * (1.0 + nu * h) ** 3)
    )
    C1 = 1.0 + nu * tau * C0**2
    C2 = math.sqrt(C1)
    C = h**-2 * eps**-2 * (1.0 + kappa * tau) ** 4 * (1.0 + nu * h) ** 6 * nu**3 * tau**7

    return ConstantLedger(
        nu=nu, L=L, h=h, H=H, kappa=kappa, eps=eps, tau=tau,
        C3=C3, C4=C4, C5=C5, C6=C6, C7=C7, C8=C8,
        C0=C0, C1=C1, C2=C2, C=C,
        amplitude_A_bound=3.0,
        amplitude_B_bound=2.0**5 * math.sqrt(nu * tau),
        formulas=dict(FORMULAS),
    )


def bound_rhs(ledger_: ConstantLedger, norm_F: float):
    """Right-hand sides (1+C)*|||F||| and sqrt(1+C)*|||F|||.

    The returned bounds are modulo the unspecified absolute constant
    (set to 1 here); acceptance checks are ratio-boundedness, not equality.
    """
    if norm_F < 0.0:
        raise ParameterError("norm_F must be nonnegative")
    bound_u = (1.0 + ledger_.C) * norm_F
    bound_d = math.sqrt(1.0 + ledger_.C) * norm_F
    return bound_u, bound_d
