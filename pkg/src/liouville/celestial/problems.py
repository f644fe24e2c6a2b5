"""End-to-end pipelines for the four few-body problems."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from liouville import kimura
from liouville.celestial.e3bp import DEFAULT_WIDTH, euler_points, kappa_curves
from liouville.celestial.families import hypergeometric_forms, variational_homdeg
from liouville.celestial.homogeneous import DEFAULT_WIDTH as ANGLE_WIDTH
from liouville.celestial.homogeneous import (
    AngleEnclosure,
    OmegaSquared,
    TrigPotential,
    anisotropic_kepler,
    critical_angle,
    omega_squared,
    rectangular_four_body,
    uncoupled_keplers,
)
from liouville.kovacic import analyze, identify_group
from liouville.odeforms import REGULAR_SINGULAR, classify_infinity
from liouville.verdict import (
    NO_OBSTRUCTION,
    NOT_INTEGRABLE,
    IntegrabilityVerdict,
    assemble,
    assemble_spectral,
    kappa_condition_enclosure,
    omega_condition,
    omega_condition_enclosure,
)


@dataclass
class HomogeneousReport:
    problem: str
    potential: TrigPotential
    theta: AngleEnclosure
    omega2: OmegaSquared
    spectral_n: int | None
    verdict: IntegrabilityVerdict
    group: Any = None
    kovacic: Any = None
    kimura: Any = None
    route: Any = None
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        d = {
            "problem": self.problem,
            "potential": self.potential.describe(),
            "theta_c": self.theta.as_dict(),
            "omega2": self.omega2.as_dict(),
            "omega_condition_n": self.spectral_n,
            "verdict": self.verdict.as_dict(),
        }
        if self.group is not None:
            d["galois_group"] = self.group.as_dict()
        if self.kovacic is not None:
            o = self.kovacic
            d["kovacic"] = {"case": o.case_used, "degree": o.degree}
        if self.kimura is not None:
            d["kimura"] = self.kimura.as_dict()
        if self.route is not None:
            d["reduction"] = self.route.as_dict()
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def _homogeneous(problem: str, U: TrigPotential, bracket, use_kovacic: bool, width=ANGLE_WIDTH) -> HomogeneousReport:
    theta = critical_angle(U, bracket, width)
    w2 = omega_squared(U, theta)
    notes = []
    if not w2.is_exact:
        enc = omega_condition_enclosure(w2.lo, w2.hi)
        verdict = assemble_spectral("omega^2", None, None, enc)
        notes.append("critical angle is not a recognized exact angle: omega^2 is a certified enclosure")
        return HomogeneousReport(problem, U, theta, w2, None, verdict, notes=notes)
    n = omega_condition(w2.exact)
    if not w2.exact:
        verdict = assemble_spectral("omega^2", w2.exact, n)
        notes.append("omega^2 = 0: the variational equation z'' - tanh(s) z' = 0 is solved by quadrature")
        return HomogeneousReport(problem, U, theta, w2, n, verdict, notes=notes)
    route = variational_homdeg(w2.exact)
    infinity = classify_infinity(route.algebrized)
    kim = kimura.solvable(hypergeometric_forms(omega2=w2.exact).scheme)
    if use_kovacic:
        outcome = analyze(route.rlde.r)
        group = identify_group(outcome)
        verdict = assemble(group, infinity, n)
        if (group.tag != "SL2") != kim.solvable:
            notes.append("Kovacic and Kimura disagree on solvability")
        return HomogeneousReport(problem, U, theta, w2, n, verdict, group, outcome, kim, route, notes)
    verdict = assemble_spectral("omega^2", w2.exact, n, infinity_class=infinity)
    if (n is None) == kim.solvable:
        notes.append("omega condition and Kimura disagree")
    return HomogeneousReport(problem, U, theta, w2, n, verdict, None, None, kim, route, notes)


def rect4bp(use_kovacic: bool = True, width=ANGLE_WIDTH) -> HomogeneousReport:
    return _homogeneous("rect4bp", rectangular_four_body(), (Fraction(1, 10), Fraction(3, 2)), use_kovacic, width)


def anisotropic(mu, use_kovacic: bool = True, width=ANGLE_WIDTH) -> HomogeneousReport:
    mu = Fraction(mu)
    if not 0 <= mu <= 1:
        raise ValueError(f"anisotropy parameter must lie in [0, 1], got {mu}")
    return _homogeneous("anisotropic", anisotropic_kepler(mu), (Fraction(-1, 2), Fraction(1, 2)), use_kovacic, width)


def uncoupled(mu, use_kovacic: bool = True, width=ANGLE_WIDTH) -> HomogeneousReport:
    mu = Fraction(mu)
    if mu <= 0:
        raise ValueError(f"mass must be positive, got {mu}")
    return _homogeneous("uncoupled", uncoupled_keplers(mu), (Fraction(1, 10**6), Fraction(157, 100)), use_kovacic, width)


@dataclass
class E3BPReport:
    mu: Fraction
    points: tuple
    verdicts: list  # (branch, "kappa1"/"kappa2", IntegrabilityVerdict)
    conclusion: str
    rows: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "problem": "e3bp",
            "mu": str(self.mu),
            "points": [p.as_dict() for p in self.points],
            "verdicts": [{"branch": b, "coefficient": k, **v.as_dict()} for b, k, v in self.verdicts],
            "conclusion": self.conclusion,
            "conclusion_text": (
                "some collinear orbit has a non-abelian identity component: no meromorphic integral "
                "in a neighborhood of that orbit" if self.conclusion == NOT_INTEGRABLE
                else "every coefficient enclosure meets a family value: no obstruction certified"
            ),
        }


def e3bp(mu, precision=DEFAULT_WIDTH, grid: int | None = None) -> E3BPReport:
    points = euler_points(mu, precision)
    verdicts = []
    for p in points:
        for name, enc in (("kappa1", p.kappa1), ("kappa2", p.kappa2)):
            check = kappa_condition_enclosure(enc.lo, enc.hi)
            verdicts.append((p.branch, name, assemble_spectral(name, None, None, check, REGULAR_SINGULAR)))
    conclusion = NOT_INTEGRABLE if any(v.conclusion == NOT_INTEGRABLE for _, _, v in verdicts) else NO_OBSTRUCTION
    rows = []
    if grid:
        rows = kappa_curves([Fraction(k, grid + 1) for k in range(1, grid + 1)], precision)
    return E3BPReport(Fraction(mu), points, verdicts, conclusion, rows)
