"""Few-body problems feeding the analysis engines."""

from liouville.celestial.e3bp import euler_points, kappa_curves, omega_potential
from liouville.celestial.families import (
    build_rlde_kappa,
    build_rlde_omega,
    hypergeometric_forms,
    variational_e3bp,
    variational_homdeg,
)
from liouville.celestial.homogeneous import (
    TrigPotential,
    critical_angle,
    homothetic,
    mcgehee_rhs,
    omega_squared,
)
from liouville.celestial.problems import anisotropic, e3bp, rect4bp, uncoupled

__all__ = [
    "TrigPotential",
    "anisotropic",
    "build_rlde_kappa",
    "build_rlde_omega",
    "critical_angle",
    "e3bp",
    "euler_points",
    "homothetic",
    "hypergeometric_forms",
    "kappa_curves",
    "mcgehee_rhs",
    "omega_potential",
    "omega_squared",
    "rect4bp",
    "uncoupled",
    "variational_e3bp",
    "variational_homdeg",
]
