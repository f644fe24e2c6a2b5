"""Variational equations of the two problem families and their algebraic forms.

kappa family: collinear points of the elliptic restricted three-body problem,
    xi'' + sin E/(1 - cos E) xi' - kappa/(1 - cos E) xi = 0, algebrized by tau = cos E.
omega family: homothetic orbits of degree -1 potentials,
    z'' - tanh(s) z' - omega^2 z = 0, algebrized by tau = cosh s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from liouville.algebra.numbers import render_number
from liouville.algebra.poly import Poly
from liouville.algebra.ratfunc import RatFunc
from liouville.errors import ZeroKappa, ZeroOmega
from liouville.odeforms import (
    NormalFormODE,
    RiemannExponents,
    SecondOrderODE,
    algebrize,
    riemann_scheme,
    to_normal_form,
)

F = Fraction


def _is_zero(x) -> bool:
    return not x


def kappa_family_r(kappa) -> RatFunc:
    """r(tau) = (4 kappa tau + 4 kappa - 3) / (4 (1-tau)^2 (1+tau)^2), any kappa."""
    num = Poly((4 * kappa - 3, 4 * kappa))
    den = Poly((4,)) * Poly((1, -1)) ** 2 * Poly((1, 1)) ** 2
    return RatFunc(num, den)


def omega_family_r(omega2) -> RatFunc:
    """r(tau) = (4 w2 tau^4 - (6 + 4 w2) tau^2 + 3) / (4 tau^2 (tau-1)^2 (tau+1)^2), any w2."""
    num = Poly((3, 0, -(6 + 4 * omega2), 0, 4 * omega2))
    den = Poly((0, 0, 4)) * Poly((-1, 1)) ** 2 * Poly((1, 1)) ** 2
    return RatFunc(num, den)


def build_rlde_kappa(kappa) -> NormalFormODE:
    if _is_zero(kappa):
        raise ZeroKappa("kappa must be nonzero")
    return NormalFormODE(kappa_family_r(kappa))


def build_rlde_omega(omega2) -> NormalFormODE:
    if _is_zero(omega2):
        raise ZeroOmega("omega^2 must be nonzero")
    return NormalFormODE(omega_family_r(omega2))


@dataclass(frozen=True)
class TranscendentalODE:
    """u'' + p(t) u' + q(t) u = 0 with elementary p, q, for numeric checks."""

    text: str
    variable: str
    p: Callable[[float], float]
    q: Callable[[float], float]


@dataclass(frozen=True)
class AlgebrizationRoute:
    """Original equation, its y'' = phi y form, the change tau(t), (f, alpha) and results."""

    original: TranscendentalODE
    phi_text: str
    phi: Callable[[float], float]
    multiplier_text: str
    change: str
    f: RatFunc
    alpha: RatFunc
    algebrized: SecondOrderODE
    rlde: NormalFormODE

    def as_dict(self) -> dict:
        return {
            "original": self.original.text,
            "phi": self.phi_text,
            "multiplier": self.multiplier_text,
            "change": self.change,
            "f": self.f.render("tau"),
            "alpha": self.alpha.render("tau"),
            "algebrized": self.algebrized.render("tau"),
            "rlde": self.rlde.render("tau"),
        }


def variational_e3bp(kappa) -> AlgebrizationRoute:
    if _is_zero(kappa):
        raise ZeroKappa("kappa must be nonzero")
    k = complex(kappa).real if not isinstance(kappa, (int, Fraction)) else float(kappa)
    kt = render_number(kappa)
    original = TranscendentalODE(
        f"xi'' + sin(E)/(1 - cos(E)) xi' - ({kt})/(1 - cos(E)) xi = 0",
        "E",
        lambda E: math.sin(E) / (1 - math.cos(E)),
        lambda E: -k / (1 - math.cos(E)),
    )
    tau = RatFunc.x()
    f = (tau - 1 + 4 * kappa) / ((1 - tau) * 4)
    alpha = 1 - tau * tau
    alg = algebrize(f, alpha)
    rlde, _ = to_normal_form(alg)
    return AlgebrizationRoute(
        original,
        f"phi(E) = (cos(E) - 1 + 4*({kt}))/(4*(1 - cos(E)))",
        lambda E: (math.cos(E) - 1 + 4 * k) / (4 * (1 - math.cos(E))),
        "xi(E) = y(E)/sqrt(1 - cos(E)); y(tau) = eta/(1 - tau^2)^(1/4)",
        "tau = cos(E), (dtau/dE)^2 = 1 - tau^2",
        f,
        alpha,
        alg,
        rlde,
    )


def variational_homdeg(omega2) -> AlgebrizationRoute:
    if _is_zero(omega2):
        raise ZeroOmega("omega^2 must be nonzero")
    w = complex(omega2).real if not isinstance(omega2, (int, Fraction)) else float(omega2)
    wt = render_number(omega2)
    original = TranscendentalODE(
        f"z'' - tanh(s) z' - ({wt}) z = 0",
        "s",
        lambda s: -math.tanh(s),
        lambda s: -w,
    )
    tau = RatFunc.x()
    f = ((1 + 4 * omega2) * tau * tau - 3) / (tau * tau * 4)
    alpha = tau * tau - 1
    alg = algebrize(f, alpha)
    rlde, _ = to_normal_form(alg)
    return AlgebrizationRoute(
        original,
        f"phi(s) = ((1 + 4*({wt}))*cosh(s)^2 - 3)/(4*cosh(s)^2)",
        lambda s: ((1 + 4 * w) * math.cosh(s) ** 2 - 3) / (4 * math.cosh(s) ** 2),
        "z(s) = y(s)*sqrt(cosh(s)); y(tau) = eta/(1 - tau^2)^(1/4)",
        "tau = cosh(s), (dtau/ds)^2 = tau^2 - 1",
        f,
        alpha,
        alg,
        rlde,
    )


def kappa_hypergeometric_ode(kappa) -> SecondOrderODE:
    """z = (cos E + 1)/2 form of the kappa family: singular at 0, 1, infinity."""
    z = RatFunc.x()
    a1 = F(3, 2) / z + F(1, 2) / (z - 1)
    a0 = (1 / (z * (z - 1)) - 1 / ((z - 1) * (z - 1))) * (kappa * F(1, 2))
    return SecondOrderODE(a1, a0)


def omega_hypergeometric_ode(omega2) -> SecondOrderODE:
    """z = sech^2(s) form of the omega family: singular at 0, 1, infinity."""
    z = RatFunc.x()
    a1 = 1 / z + F(1, 2) / (z - 1)
    a0 = (F(-1, 16) - omega2 * F(1, 4)) / (z * z) + (F(-1, 8) + omega2 * F(1, 4)) / (z * (z - 1))
    return SecondOrderODE(a1, a0)


@dataclass(frozen=True)
class HypergeometricForm:
    ode: SecondOrderODE
    scheme: RiemannExponents

    def as_dict(self) -> dict:
        return {"ode": self.ode.render("z"), "exponents": self.scheme.as_dict()}


def hypergeometric_forms(kappa=None, omega2=None) -> HypergeometricForm:
    """Riemann equation and exponents for one of the families (pass exactly one parameter)."""
    if (kappa is None) == (omega2 is None):
        raise ValueError("pass exactly one of kappa, omega2")
    if kappa is not None:
        if _is_zero(kappa):
            raise ZeroKappa("kappa must be nonzero")
        ode = kappa_hypergeometric_ode(kappa)
    else:
        if _is_zero(omega2):
            raise ZeroOmega("omega^2 must be nonzero")
        ode = omega_hypergeometric_ode(omega2)
    return HypergeometricForm(ode, riemann_scheme(ode))
