"""Homogeneous degree -1 potentials on the circle and McGehee's blow-up.

A potential is a weighted sum of terms in (cos t, sin t).  At a recognized
angle cos and sin are known exactly in the surd field and every derived
quantity is exact; elsewhere values are certified ``mpmath.iv`` enclosures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath
from mpmath import iv
from mpmath.libmp import to_rational

from liouville.algebra.numbers import ksqrt, render_number, sqrt_rational, to_complex
from liouville.errors import NonNegativeEnergy, NoSignChange, NotCritical

DEFAULT_WIDTH = Fraction(1, 10**12)


# -------------------------------------------------------------------------
# interval helpers
# -------------------------------------------------------------------------
def iv_fraction(q) -> Any:
    q = Fraction(q)
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def _raw_to_fraction(raw) -> Fraction:
    num, den = to_rational(raw)
    return Fraction(int(num), int(den))


def mpf_to_fraction(x) -> Fraction:
    """Exact value of an mpf (or of a degenerate interval endpoint), no rounding."""
    if hasattr(x, "_mpi_"):
        return _raw_to_fraction(x._mpi_[0])
    return _raw_to_fraction(mpmath.mpf(x)._mpf_)


def iv_bounds(x) -> tuple[Fraction, Fraction]:
    a, b = x._mpi_
    return _raw_to_fraction(a), _raw_to_fraction(b)


def _iv_sign(x) -> int:
    """Certified sign of an interval, 0 when it straddles zero."""
    if x.a > 0:
        return 1
    if x.b < 0:
        return -1
    return 0


# -------------------------------------------------------------------------
# potentials
# -------------------------------------------------------------------------
@dataclass(frozen=True)
class TrigTerm:
    """weight * f(t) with f one of: const, sec, csc, invsqrt.

    invsqrt is 1/sqrt(a cos^2 + b sin^2 + c sin cos).
    """

    kind: str
    weight: Fraction
    quad: tuple = (0, 0, 0)


def _term_derivatives(term: TrigTerm, c, s, sqrt):
    """(f, f', f'') at an angle with cos = c, sin = s, in any ring with sqrt."""
    w = term.weight
    if term.kind == "const":
        return w, 0 * w, 0 * w
    if term.kind == "sec":
        return w / c, w * s / (c * c), w * (s * s + 1) / (c * c * c)
    if term.kind == "csc":
        return w / s, -w * c / (s * s), w * (c * c + 1) / (s * s * s)
    if term.kind == "invsqrt":
        a, b, e = term.quad
        g = a * c * c + b * s * s + e * s * c
        g1 = 2 * (b - a) * s * c + e * (c * c - s * s)
        g2 = 2 * (b - a) * (c * c - s * s) - 4 * e * s * c
        root = sqrt(g)
        inv = 1 / root
        inv3 = inv / g
        inv5 = inv3 / g
        f0 = w * inv
        f1 = -w * g1 * inv3 / 2
        f2 = w * (Fraction(3, 4) * g1 * g1 * inv5 - g2 * inv3 / 2)
        return f0, f1, f2
    raise ValueError(f"unknown term kind {term.kind}")


@dataclass(frozen=True)
class ExactAngle:
    """An angle whose cosine and sine lie in the surd field."""

    label: str
    cos: Any
    sin: Any
    approx: float

    def as_dict(self) -> dict:
        return {"label": self.label, "cos": render_number(self.cos), "sin": render_number(self.sin),
                "approx": self.approx}


@dataclass(frozen=True)
class TrigPotential:
    name: str
    terms: tuple
    exact_angles: tuple = field(default=())

    def describe(self) -> str:
        parts = []
        for t in self.terms:
            if t.kind == "const":
                body = "1"
            elif t.kind in ("sec", "csc"):
                body = f"{t.kind}(t)"
            else:
                a, b, e = t.quad
                body = f"1/sqrt({a}*cos(t)^2 + {b}*sin(t)^2 + {e}*sin(t)*cos(t))"
            parts.append(body if t.weight == 1 else f"{t.weight}*{body}")
        return " + ".join(parts)

    def exact(self, angle: ExactAngle):
        """(U, U', U'') exactly at a recognized angle; None if a root leaves the surd field."""
        def sqrt(g):
            r = ksqrt(g)
            if r is None:
                raise ArithmeticError
            return r

        tot = [Fraction(0), Fraction(0), Fraction(0)]
        try:
            for t in self.terms:
                d = _term_derivatives(t, angle.cos, angle.sin, sqrt)
                tot = [x + y for x, y in zip(tot, d)]
        except (ArithmeticError, ZeroDivisionError):
            return None
        return tuple(tot)

    def interval(self, theta):
        """(U, U', U'') as iv intervals for an iv angle."""
        c, s = iv.cos(theta), iv.sin(theta)
        tot = [iv.mpf(0), iv.mpf(0), iv.mpf(0)]
        for t in self.terms:
            d = _term_derivatives(_iv_term(t), c, s, iv.sqrt)
            tot = [x + y for x, y in zip(tot, d)]
        return tuple(tot)

    def values(self, theta: float) -> tuple[float, float, float]:
        c, s = math.cos(theta), math.sin(theta)
        tot = [0.0, 0.0, 0.0]
        for t in self.terms:
            ft = TrigTerm(t.kind, float(t.weight), tuple(float(q) for q in t.quad))
            d = _term_derivatives(ft, c, s, math.sqrt)
            tot = [x + y for x, y in zip(tot, d)]
        return tuple(tot)

    def U(self, theta: float) -> float:
        return self.values(theta)[0]

    def dU(self, theta: float) -> float:
        return self.values(theta)[1]


def _iv_term(t: TrigTerm) -> TrigTerm:
    return TrigTerm(t.kind, iv_fraction(t.weight), tuple(iv_fraction(q) for q in t.quad))


def _angle_from_tan(t: Fraction, label: str) -> ExactAngle:
    """Angle in (0, pi/2] with tangent t (t > 0)."""
    hyp = sqrt_rational(1 + t * t)
    cos = 1 / hyp
    sin = t / hyp
    return ExactAngle(label, cos, sin, math.atan(float(t)))


ZERO_ANGLE = ExactAngle("0", Fraction(1), Fraction(0), 0.0)
QUARTER_PI = ExactAngle("pi/4", sqrt_rational(Fraction(1, 2)), sqrt_rational(Fraction(1, 2)), math.pi / 4)


def rational_cube_root(q: Fraction) -> Fraction | None:
    q = Fraction(q)
    if q <= 0:
        return None

    def icbrt(n: int) -> int | None:
        r = round(n ** (1 / 3))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c**3 == n:
                return c
        lo, hi = 0, n + 1
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**3 < n:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo**3 == n else None

    a, b = icbrt(q.numerator), icbrt(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def rectangular_four_body() -> TrigPotential:
    terms = (TrigTerm("sec", Fraction(1)), TrigTerm("csc", Fraction(1)), TrigTerm("const", Fraction(1)))
    return TrigPotential("rectangular four-body", terms, (QUARTER_PI,))


def anisotropic_kepler(mu) -> TrigPotential:
    mu = Fraction(mu)
    terms = (TrigTerm("invsqrt", Fraction(1), (Fraction(1), mu, Fraction(0))),)
    return TrigPotential(f"anisotropic Kepler mu={mu}", terms, (ZERO_ANGLE,))


def uncoupled_keplers(mu) -> TrigPotential:
    mu = Fraction(mu)
    terms = (TrigTerm("sec", Fraction(1)), TrigTerm("csc", mu))
    angles = ()
    t = rational_cube_root(mu)
    if t is not None:
        angles = (_angle_from_tan(t, f"arctan({t})"),)
    return TrigPotential(f"uncoupled Keplers mu={mu}", terms, angles)


# -------------------------------------------------------------------------
# critical angle and omega^2
# -------------------------------------------------------------------------
@dataclass(frozen=True)
class AngleEnclosure:
    lo: Fraction
    hi: Fraction
    exact: ExactAngle | None = None
    kind: str = "unknown"  # minimum / maximum / degenerate

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def as_dict(self) -> dict:
        d = {"lo": str(self.lo), "hi": str(self.hi), "approx": float(self.mid), "kind": self.kind}
        if self.exact is not None:
            d["exact"] = self.exact.as_dict()
        return d


def _exact_to_bounds(angle: ExactAngle) -> tuple[Fraction, Fraction]:
    iv.dps = 40
    if angle.label == "0":
        return Fraction(0), Fraction(0)
    if angle.label == "pi/4":
        b = iv.pi / 4
    else:
        # tangent is rational; bracket atan by bisection on tan
        t = Fraction(angle.label[len("arctan("):-1])
        lo, hi = Fraction(0), Fraction(16, 10)
        while hi - lo > Fraction(1, 10**30):
            mid = (lo + hi) / 2
            if _iv_sign(iv.tan(iv_fraction(mid)) - iv_fraction(t)) > 0:
                hi = mid
            else:
                lo = mid
        return lo, hi
    return iv_bounds(b)


def critical_angle(U: TrigPotential, bracket, width=DEFAULT_WIDTH, dps: int = 50) -> AngleEnclosure:
    """Enclosure of a zero of U' inside ``bracket`` (rational endpoints).

    A recognized exact angle inside the bracket with U' = 0 exactly is
    returned as such.  Otherwise bisection on the certified sign of U'.
    """
    lo, hi = Fraction(bracket[0]), Fraction(bracket[1])
    for angle in U.exact_angles:
        if not lo <= Fraction(angle.approx) <= hi:
            continue
        vals = U.exact(angle)
        if vals is not None and vals[1] == 0:
            a, b = _exact_to_bounds(angle)
            curv = to_complex(vals[2]).real
            kind = "minimum" if curv > 0 else ("maximum" if curv < 0 else "degenerate")
            return AngleEnclosure(a, b, angle, kind)
    iv.dps = dps
    s_lo = _iv_sign(U.interval(iv_fraction(lo))[1])
    s_hi = _iv_sign(U.interval(iv_fraction(hi))[1])
    if s_lo == 0 or s_hi == 0 or s_lo == s_hi:
        raise NoSignChange(f"U' has no certified sign change on [{lo}, {hi}]")
    width = Fraction(width)
    while hi - lo > width:
        mid = (lo + hi) / 2
        k = 1
        while True:
            cand = Fraction(round(mid * (1 << k)), 1 << k)
            if lo < cand < hi:
                break
            k += 1
        s = _iv_sign(U.interval(iv_fraction(cand))[1])
        if s == 0:
            break  # the sign is not certifiable this close to the root
        if s == s_lo:
            lo = cand
        else:
            hi = cand
    kind = "minimum" if s_lo < 0 else "maximum"
    return AngleEnclosure(lo, hi, None, kind)


@dataclass(frozen=True)
class OmegaSquared:
    exact: Any = None
    lo: Fraction | None = None
    hi: Fraction | None = None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def approx(self) -> float:
        if self.exact is not None:
            return to_complex(self.exact).real
        return float((self.lo + self.hi) / 2)

    @property
    def width(self) -> Fraction:
        return Fraction(0) if self.is_exact else self.hi - self.lo

    def contains(self, v) -> bool:
        if self.is_exact:
            return self.exact == v
        return self.lo <= v <= self.hi

    def as_dict(self) -> dict:
        if self.is_exact:
            return {"exact": render_number(self.exact), "approx": self.approx}
        return {"lo": str(self.lo), "hi": str(self.hi), "approx": self.approx, "width": float(self.width)}


def omega_squared(U: TrigPotential, theta: AngleEnclosure, dps: int = 50) -> OmegaSquared:
    """omega^2 = 2 U''(theta_c) / U(theta_c)."""
    if theta.exact is not None:
        vals = U.exact(theta.exact)
        if vals is not None:
            if vals[1] != 0:
                raise NotCritical(f"U'({theta.exact.label}) = {render_number(vals[1])} is not zero")
            return OmegaSquared(exact=2 * vals[2] / vals[0])
    iv.dps = dps
    th = iv.mpf([iv_fraction(theta.lo).a, iv_fraction(theta.hi).b])
    u0, u1, u2 = U.interval(th)
    if _iv_sign(u1) != 0:
        raise NotCritical("U' is bounded away from zero on the angle enclosure")
    w = 2 * u2 / u0
    lo, hi = iv_bounds(w)
    return OmegaSquared(lo=lo, hi=hi)


# -------------------------------------------------------------------------
# McGehee coordinates
# -------------------------------------------------------------------------
def mcgehee_rhs(state, U: TrigPotential):
    """(r', v', theta', u') for the blown-up flow."""
    r, v, th, u = state
    u0, u1, _ = U.values(th)
    return (r * v, 0.5 * v * v + u * u - u0, u, -0.5 * v * u + u1)


def mcgehee_energy(state, U: TrigPotential) -> float:
    """(u^2 + v^2)/2 - U(theta) = r h along the flow."""
    r, v, th, u = state
    return 0.5 * (u * u + v * v) - U.U(th)


@dataclass(frozen=True)
class HomotheticOrbit:
    theta_c: AngleEnclosure
    h: Fraction
    v_c_squared: Any  # exact when theta_c is exact, else float
    v_c: float

    def r(self, tau: float) -> float:
        return -self.v_c**2 / (2 * float(self.h)) / math.cosh(self.v_c * tau / 2) ** 2

    def v(self, tau: float) -> float:
        return -self.v_c * math.tanh(self.v_c * tau / 2)

    def state(self, tau: float) -> tuple[float, float, float, float]:
        return (self.r(tau), self.v(tau), float(self.theta_c.mid) if self.theta_c.exact is None
                else self.theta_c.exact.approx, 0.0)

    @property
    def r_max_exact(self):
        """r_h(0) = -v_c^2 / (2h), exact when v_c^2 is."""
        return self.v_c_squared / (-2 * self.h)


def homothetic(h, U: TrigPotential, theta: AngleEnclosure) -> HomotheticOrbit:
    """Ejection-collision orbit at the critical angle, with v_c^2 = 2 U(theta_c)."""
    h = Fraction(h)
    if h >= 0:
        raise NonNegativeEnergy(f"energy must be negative, got {h}")
    if theta.exact is not None:
        vals = U.exact(theta.exact)
        if vals is not None:
            if vals[1] != 0:
                raise NotCritical(f"U'({theta.exact.label}) is not zero")
            vc2 = 2 * vals[0]
            return HomotheticOrbit(theta, h, vc2, math.sqrt(to_complex(vc2).real))
    u0, u1, _ = U.values(float(theta.mid))
    if abs(u1) > 1e-8:
        raise NotCritical(f"U'({float(theta.mid)}) = {u1} is not zero")
    return HomotheticOrbit(theta, h, 2 * u0, math.sqrt(2 * u0))
