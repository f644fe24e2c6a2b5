"""Collinear points of the elliptic restricted three-body problem.

Primaries of mass 1-mu and mu sit at xi = -mu and xi = 1-mu on the axis of
the rotating-pulsating frame.  On that axis every quantity below is a rational
function of rational inputs, so root enclosures are found by exact bisection
and the Hessian entries are bounded term by term.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from liouville.algebra.numbers import sqrt_rational
from liouville.errors import CollisionSingularity, LiouvilleError

DEFAULT_WIDTH = Fraction(1, 10**12)


@dataclass(frozen=True)
class Elliptic3BPConfig:
    mu: Fraction

    def __post_init__(self):
        mu = Fraction(self.mu)
        object.__setattr__(self, "mu", mu)
        if not 0 < mu < 1:
            raise ValueError(f"mass parameter must lie in (0, 1), got {mu}")


@dataclass(frozen=True)
class OmegaDerivatives:
    value: object
    gradient: tuple
    hessian: tuple  # ((O11, O12), (O21, O22))


def omega_potential(mu, xi) -> OmegaDerivatives:
    """Omega(xi) = |xi|^2/2 + (1-mu)/|xi+mu| + mu/|xi-1+mu| with exact partials.

    Rational input gives values in the surd field (exactly rational on the axis).
    """
    mu = Fraction(mu)
    x, y = Fraction(xi[0]), Fraction(xi[1])
    total = (x * x + y * y) / 2
    g1, g2 = x, y
    h11, h12, h22 = Fraction(1), Fraction(0), Fraction(1)
    for m, c in ((1 - mu, -mu), (mu, 1 - mu)):
        dx = x - c
        d2 = dx * dx + y * y
        if d2 == 0:
            raise CollisionSingularity(f"xi coincides with the primary at {c}")
        rho = sqrt_rational(d2)
        inv1 = 1 / rho
        inv3 = inv1 / d2
        inv5 = inv3 / d2
        total = total + m * inv1
        g1 = g1 - m * dx * inv3
        g2 = g2 - m * y * inv3
        h11 = h11 - m * inv3 + 3 * m * dx * dx * inv5
        h12 = h12 + 3 * m * dx * y * inv5
        h22 = h22 - m * inv3 + 3 * m * y * y * inv5
    return OmegaDerivatives(total, (g1, g2), ((h11, h12), (h12, h22)))


def axis_gradient(mu: Fraction, x: Fraction) -> Fraction:
    """d Omega / d xi_1 on the axis, exactly."""
    r1 = x + mu
    r2 = x - 1 + mu
    if r1 == 0 or r2 == 0:
        raise CollisionSingularity(f"xi_1 = {x} is a primary")
    return x - (1 - mu) * r1 / abs(r1) ** 3 - mu * r2 / abs(r2) ** 3


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, v) -> bool:
        return self.lo <= v <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __float__(self):
        return float(self.mid)

    def as_dict(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "approx": float(self.mid)}


@dataclass(frozen=True)
class CollinearPoint:
    mu: Fraction
    branch: int
    xi1: Enclosure
    kappa1: Enclosure
    kappa2: Enclosure

    def as_dict(self) -> dict:
        return {"branch": self.branch, "xi1": self.xi1.as_dict(), "kappa1": self.kappa1.as_dict(),
                "kappa2": self.kappa2.as_dict()}


def _bracket(mu: Fraction, branch: int) -> tuple[Fraction, Fraction]:
    """Rational bracket with a certified sign change (negative at lo, positive at hi)."""
    if branch == 1:
        lo, edge = Fraction(-2), -mu
        step = Fraction(1, 2)
        while axis_gradient(mu, edge - step) <= 0:
            step /= 2
        hi = edge - step
        return lo, hi
    if branch == 3:
        hi = Fraction(2)
        step = Fraction(1, 2)
        while axis_gradient(mu, 1 - mu + step) >= 0:
            step /= 2
        return 1 - mu + step, hi
    step = Fraction(1, 4)
    while axis_gradient(mu, -mu + step) >= 0 or axis_gradient(mu, 1 - mu - step) <= 0:
        step /= 2
    return -mu + step, 1 - mu - step


def _bisect_root(mu: Fraction, lo: Fraction, hi: Fraction, width: Fraction) -> Enclosure:
    """The axis gradient increases through its root on each branch interval."""
    f_lo = axis_gradient(mu, lo)
    f_hi = axis_gradient(mu, hi)
    if (f_lo > 0) == (f_hi > 0) or f_lo == 0 or f_hi == 0:
        if f_lo == 0:
            return Enclosure(lo, lo)
        if f_hi == 0:
            return Enclosure(hi, hi)
        raise LiouvilleError(f"no sign change of the axis gradient on [{lo}, {hi}]")
    while hi - lo > width:
        mid = (lo + hi) / 2
        # keep denominators small: snap the midpoint to a dyadic rational in (lo, hi)
        mid = _dyadic_between(lo, hi, mid)
        f = axis_gradient(mu, mid)
        if f == 0:
            return Enclosure(mid, mid)
        if f > 0:
            hi = mid
        else:
            lo = mid
    return Enclosure(lo, hi)


def _dyadic_between(lo: Fraction, hi: Fraction, target: Fraction) -> Fraction:
    k = 1
    while True:
        scale = 1 << k
        cand = Fraction(round(target * scale), scale)
        if lo < cand < hi:
            return cand
        k += 1


def _term_bounds(m: Fraction, rho_lo: Fraction, rho_hi: Fraction) -> tuple[Fraction, Fraction]:
    # m / rho^3 is decreasing in rho > 0
    return m / rho_hi**3, m / rho_lo**3


def kappa_enclosures(mu: Fraction, xi: Enclosure) -> tuple[Enclosure, Enclosure]:
    """Bounds on Omega_11 and Omega_22 for xi_1 anywhere in the enclosure.

    On the axis Omega_11 = 1 + 2A + 2B and Omega_22 = 1 - A - B with
    A = (1-mu)/rho1^3, B = mu/rho2^3.
    """
    rho1 = sorted((abs(xi.lo + mu), abs(xi.hi + mu)))
    rho2 = sorted((abs(xi.lo - 1 + mu), abs(xi.hi - 1 + mu)))
    a_lo, a_hi = _term_bounds(1 - mu, *rho1)
    b_lo, b_hi = _term_bounds(mu, *rho2)
    k1 = Enclosure(1 + 2 * a_lo + 2 * b_lo, 1 + 2 * a_hi + 2 * b_hi)
    k2 = Enclosure(1 - a_hi - b_hi, 1 - a_lo - b_lo)
    return k1, k2


def euler_points(mu, precision=DEFAULT_WIDTH) -> tuple[CollinearPoint, ...]:
    """The three collinear critical points of Omega, one per axis interval."""
    mu = Elliptic3BPConfig(mu).mu
    width = Fraction(precision)
    points = []
    for branch in (1, 2, 3):
        lo, hi = _bracket(mu, branch)
        xi = _bisect_root(mu, lo, hi, width)
        k1, k2 = kappa_enclosures(mu, xi)
        points.append(CollinearPoint(mu, branch, xi, k1, k2))
    return tuple(points)


@dataclass(frozen=True)
class KappaRow:
    mu: Fraction
    branch: int
    kappa1: Enclosure
    kappa2: Enclosure
    symmetric: bool  # branch-1 and branch-3 swap under mu -> 1 - mu


def kappa_curves(mu_grid, precision=DEFAULT_WIDTH) -> list[KappaRow]:
    rows = []
    for mu in mu_grid:
        mu = Fraction(mu)
        pts = euler_points(mu, precision)
        mirror = euler_points(1 - mu, precision)
        for p in pts:
            partner = mirror[3 - p.branch]
            sym = p.kappa1.overlaps(partner.kappa1) and p.kappa2.overlaps(partner.kappa2)
            rows.append(KappaRow(mu, p.branch, p.kappa1, p.kappa2, sym))
    return rows


def _sig(x: Fraction) -> str:
    return f"{float(x):.15g}"


def kappa_curves_csv(rows, handle=None) -> str:
    buf = handle if handle is not None else io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["mu", "branch", "kappa1", "kappa2", "kappa1_lo", "kappa1_hi", "kappa2_lo", "kappa2_hi", "symmetric"])
    for r in rows:
        w.writerow([_sig(r.mu), r.branch, _sig(r.kappa1.mid), _sig(r.kappa2.mid), _sig(r.kappa1.lo),
                    _sig(r.kappa1.hi), _sig(r.kappa2.lo), _sig(r.kappa2.hi), str(r.symmetric).lower()])
    return buf.getvalue() if handle is None else ""
