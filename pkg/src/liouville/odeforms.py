"""Second-order ODE objects and the reductions between them.

Conventions used throughout the package:

* ``SecondOrderODE``: xi'' + a1 xi' + a0 xi = 0
* ``NormalFormODE``:  y'' = r y, with xi = y * exp(-∫ a1/2)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from liouville.algebra.numbers import (
    NestedSurd,
    RadicalPool,
    real_compare,
    render_number,
    to_complex,
)
from liouville.algebra.poly import Poly
from liouville.algebra.ratfunc import RatFunc, infinity_site, laurent_at, ordinary_site, pole_sites
from liouville.errors import DegenerateSystem, NotFuchsian, WrongSingularSet, ZeroAlpha

ORDINARY = "ordinary"
REGULAR_SINGULAR = "regular-singular"
IRREGULAR_SINGULAR = "irregular-singular"


@dataclass(frozen=True)
class SecondOrderODE:
    a1: RatFunc
    a0: RatFunc

    def render(self, var: str = "x") -> str:
        return f"xi'' + ({self.a1.render(var)})*xi' + ({self.a0.render(var)})*xi = 0"


@dataclass(frozen=True)
class NormalFormODE:
    r: RatFunc

    def render(self, var: str = "x") -> str:
        return f"y'' = ({self.r.render(var)})*y"


@dataclass(frozen=True)
class Multiplier:
    """xi = y * exp(-∫ half_a1)."""

    half_a1: RatFunc

    def render(self, var: str = "x") -> str:
        return f"xi = y*exp(-integral({self.half_a1.render(var)}))"


@dataclass(frozen=True)
class RiemannExponents:
    """Exponent pairs at 0 (alpha), infinity (beta) and 1 (gamma)."""

    alpha: Any
    alpha_p: Any
    beta: Any
    beta_p: Any
    gamma: Any
    gamma_p: Any

    def fuchs_sum(self):
        return self.alpha + self.alpha_p + self.beta + self.beta_p + self.gamma + self.gamma_p

    def as_dict(self) -> dict[str, str]:
        return {k: render_number(getattr(self, k)) for k in ("alpha", "alpha_p", "beta", "beta_p", "gamma", "gamma_p")}


def _order_at_infinity(f: RatFunc) -> float:
    if f.is_zero():
        return float("inf")
    return f.den.degree - f.num.degree


def system_to_second_order(a: RatFunc, b: RatFunc, c: RatFunc, d: RatFunc) -> SecondOrderODE:
    """Eliminate xi2 from (xi1, xi2)' = [[a, b], [c, d]] (xi1, xi2)."""
    if b.is_zero():
        raise DegenerateSystem("b vanishes identically; the system does not couple xi1 to xi2")
    lb = b.derivative() / b
    a1 = -(a + d + lb)
    a0 = -(a.derivative() + b * c - a * d - a * lb)
    return SecondOrderODE(a1, a0)


def to_normal_form(ode: SecondOrderODE) -> tuple[NormalFormODE, Multiplier]:
    half = ode.a1 * Fraction(1, 2)
    r = half * half + half.derivative() - ode.a0
    return NormalFormODE(r), Multiplier(half)


def algebrize(f: RatFunc, alpha: RatFunc) -> SecondOrderODE:
    """Rational form of x'' = f(tau(t)) x under a change with (dtau/dt)^2 = alpha(tau)."""
    if alpha.is_zero():
        raise ZeroAlpha("alpha vanishes identically")
    a1 = alpha.derivative() / (alpha * 2)
    a0 = -(f / alpha)
    return SecondOrderODE(a1, a0)


def classify_infinity(ode: SecondOrderODE) -> str:
    a1, a0 = ode.a1, ode.a0
    o1 = _order_at_infinity(a1)
    o0 = _order_at_infinity(a0)
    # the transformed first-order coefficient is 2/eta - a1(1/eta)/eta^2
    shifted = a1 - RatFunc(Poly((2,)), Poly.x())
    if _order_at_infinity(shifted) >= 2 and o0 >= 4:
        return ORDINARY
    if o1 >= 1 and o0 >= 2:
        return REGULAR_SINGULAR
    return IRREGULAR_SINGULAR


def _local_pq(ode: SecondOrderODE, point):
    """(p, q) = leading coefficients of (x-c) a1 and (x-c)^2 a0 at a finite point."""
    site = ordinary_site(point)
    la1 = laurent_at(ode.a1, site, 1)
    la0 = laurent_at(ode.a0, site, 1)
    return la1.coeff(-1), la0.coeff(-2)


def _indicial_roots(p, q, pool: RadicalPool, at_infinity: bool):
    # finite: rho^2 + (p-1) rho + q ; infinity: rho^2 + (1-p) rho + q
    lin = (1 - p) if at_infinity else (p - 1)
    center = -lin / 2
    disc = lin * lin - 4 * q
    root = pool.sqrt(disc)
    half = root * Fraction(1, 2)
    return center + half, center - half


def _is_larger(a, b) -> bool:
    c = real_compare(a, b)
    if c:
        return c > 0
    return to_complex(a).imag >= to_complex(b).imag


KAPPA_FORM_A1 = RatFunc(Poly((Fraction(-3, 2), 2)), Poly((0, -1, 1)))
OMEGA_FORM_A1 = RatFunc(Poly((-1, Fraction(3, 2))), Poly((0, -1, 1)))

# sign choice per point: +1 puts the root with "+ sqrt" first
_TEMPLATES = {
    "kappa-form": {"alpha": -1, "beta": -1, "gamma": +1},
    "omega-form": {"alpha": -1, "beta": +1, "gamma": +1},
}


def _template_for(ode: SecondOrderODE) -> str | None:
    if ode.a1 == KAPPA_FORM_A1:
        return "kappa-form"
    if ode.a1 == OMEGA_FORM_A1:
        return "omega-form"
    return None


def check_fuchsian(ode: SecondOrderODE) -> None:
    for coeff, limit, name in ((ode.a1, 1, "a1"), (ode.a0, 2, "a0")):
        for site in pole_sites(coeff):
            if site.order > limit:
                raise NotFuchsian(f"{name} has a pole of order {site.order} at {site.label()}")
    if _order_at_infinity(ode.a1) < 1 or _order_at_infinity(ode.a0) < 2:
        raise NotFuchsian("infinity is an irregular singular point")


def riemann_scheme(ode: SecondOrderODE, labeling: str = "auto") -> RiemannExponents:
    """Exponents at 0, infinity and 1 of a Fuchsian equation singular only there.

    ``labeling`` is "auto" (known hypergeometric templates, else larger real
    part first), "larger-first", or a template name.
    """
    check_fuchsian(ode)
    for coeff in (ode.a1, ode.a0):
        for site in pole_sites(coeff):
            if site.point not in (0, 1):
                raise WrongSingularSet(f"singular point at {site.label()} outside {{0, 1, infinity}}")
    pool = RadicalPool()
    p0, q0 = _local_pq(ode, Fraction(0))
    p1, q1 = _local_pq(ode, Fraction(1))
    la1 = laurent_at(ode.a1, infinity_site(ode.a1), 2)
    la0 = laurent_at(ode.a0, infinity_site(ode.a0), 3)
    pinf, qinf = la1.coeff(1), la0.coeff(2)
    pairs = {
        "alpha": _indicial_roots(p0, q0, pool, False),
        "gamma": _indicial_roots(p1, q1, pool, False),
        "beta": _indicial_roots(pinf, qinf, pool, True),
    }
    template = _template_for(ode) if labeling == "auto" else (labeling if labeling in _TEMPLATES else None)
    out = {}
    for name, (plus, minus) in pairs.items():
        if template is not None:
            first, second = (plus, minus) if _TEMPLATES[template][name] > 0 else (minus, plus)
        else:
            first, second = (plus, minus) if _is_larger(plus, minus) else (minus, plus)
        out[name], out[name + "_p"] = first, second
    scheme = RiemannExponents(**out)
    total = scheme.fuchs_sum()
    if isinstance(total, NestedSurd):
        total = total.reduce()
    if total != 1:
        raise NotFuchsian(f"exponents sum to {render_number(total)}, expected 1")
    return scheme


def hypergeometric_ode(scheme: RiemannExponents) -> SecondOrderODE:
    """The Riemann equation with the given exponents at 0, 1 and infinity."""
    a, ap, b, bp, g, gp = (scheme.alpha, scheme.alpha_p, scheme.beta, scheme.beta_p, scheme.gamma, scheme.gamma_p)
    x = RatFunc.x()
    a1 = (1 - a - ap) / x + (1 - g - gp) / (x - 1)
    a0 = a * ap / x**2 + g * gp / (x - 1) ** 2 + (b * bp - a * ap - g * gp) / (x * (x - 1))
    return SecondOrderODE(a1, a0)
