"""Numeric flows of the anisotropic Kepler problem and Poincare sections.

H = (px^2 + py^2)/2 - 1/sqrt(x^2 + mu y^2).  Two coordinate systems:

* Cartesian (x, y, px, py) in physical time, refused within 1e-6 of collision;
* McGehee (r, v, theta, u) in the rescaled time dt = r^(3/2) dtau, where
  v = (q.p)/sqrt(r), u = (q x p)/sqrt(r).  The flow is regular at r = 0.

Floating point lives here only; nothing computed in this module feeds an
exact verdict.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterator, Sequence

from liouville.errors import EscapeDetected, StepUnderflow

CARTESIAN_MIN_RADIUS = 1e-6
SECTION_TOLERANCE = 1e-10
ESCAPE_RADIUS = 1e6

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_E = (  # 5th minus 4th order weights
    35 / 384 - 5179 / 57600,
    0.0,
    500 / 1113 - 7571 / 16695,
    125 / 192 - 393 / 640,
    -2187 / 6784 + 92097 / 339200,
    11 / 84 - 187 / 2100,
    -1 / 40,
)


def dp5_step(rhs, t: float, y: Sequence[float], h: float):
    """One Dormand-Prince step: (y_new, error_vector)."""
    a = _A
    k1 = rhs(t, y)
    k2 = rhs(t + _C[1] * h, [yj + h * a[1][0] * q1 for yj, q1 in zip(y, k1)])
    r = a[2]
    k3 = rhs(t + _C[2] * h, [yj + h * (r[0] * q1 + r[1] * q2) for yj, q1, q2 in zip(y, k1, k2)])
    r = a[3]
    k4 = rhs(t + _C[3] * h, [yj + h * (r[0] * q1 + r[1] * q2 + r[2] * q3)
                             for yj, q1, q2, q3 in zip(y, k1, k2, k3)])
    r = a[4]
    k5 = rhs(t + _C[4] * h, [yj + h * (r[0] * q1 + r[1] * q2 + r[2] * q3 + r[3] * q4)
                             for yj, q1, q2, q3, q4 in zip(y, k1, k2, k3, k4)])
    r = a[5]
    k6 = rhs(t + h, [yj + h * (r[0] * q1 + r[1] * q2 + r[2] * q3 + r[3] * q4 + r[4] * q5)
                     for yj, q1, q2, q3, q4, q5 in zip(y, k1, k2, k3, k4, k5)])
    b = _B
    y_new = [yj + h * (b[0] * q1 + b[2] * q3 + b[3] * q4 + b[4] * q5 + b[5] * q6)
             for yj, q1, q3, q4, q5, q6 in zip(y, k1, k3, k4, k5, k6)]
    k7 = rhs(t + h, y_new)
    e = _E
    err = [h * (e[0] * q1 + e[2] * q3 + e[3] * q4 + e[4] * q5 + e[5] * q6 + e[6] * q7)
           for q1, q3, q4, q5, q6, q7 in zip(k1, k3, k4, k5, k6, k7)]
    return y_new, err


@dataclass
class Step:
    t0: float
    y0: list
    t1: float
    y1: list


@dataclass
class Trajectory:
    t: list = field(default_factory=list)
    y: list = field(default_factory=list)
    energy_residual: list = field(default_factory=list)

    @property
    def final(self):
        return self.t[-1], self.y[-1]


def _steps(rhs, y, t_span, tol, energy=None, guard=None, h0=None, min_step=1e-14,
           energy_scale=None, project=None) -> Iterator[Step]:
    """Accepted adaptive steps from t_span[0] to t_span[1].

    A step is rejected when the local error exceeds ``tol`` or when the
    monitored ``energy`` moves by more than 10 tol per unit time, on top of a
    rounding allowance of 64 ulp of ``energy_scale(y)`` (default max(1, |E|)).
    ``project`` maps each accepted state back onto the energy level.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    t, t_end = float(t_span[0]), float(t_span[1])
    direction = 1.0 if t_end >= t else -1.0
    y = [float(c) for c in y]
    h = direction * (h0 if h0 else min(1e-2, abs(t_end - t) or 1e-2))
    e0 = energy(y) if energy else 0.0
    while direction * (t_end - t) > 0:
        if direction * (t + h - t_end) > 0:
            h = t_end - t
        if guard:
            guard(y)
        y_new, err = dp5_step(rhs, t, y, h)
        scale = [tol + tol * max(abs(a), abs(b)) for a, b in zip(y, y_new)]
        ratio = max(abs(e) / s for e, s in zip(err, scale))
        ok = ratio <= 1.0 and all(math.isfinite(c) for c in y_new)
        if ok and energy:
            e1 = energy(y_new)
            mag = energy_scale(y_new) if energy_scale else max(1.0, abs(e0))
            floor = 64 * 2.2e-16 * mag
            ok = abs(e1 - e0) <= 10 * tol * abs(h) + floor
        if ok:
            if project:
                y_new = project(y_new)
                e1 = energy(y_new) if energy else e1
            yield Step(t, y, t + h, y_new)
            t, y = t + h, y_new
            if energy:
                e0 = e1
        factor = 5.0 if ratio == 0 else min(5.0, max(0.2, 0.9 * ratio ** -0.2))
        if not ok:
            factor = min(factor, 0.5)
        h *= factor
        if abs(h) < min_step * max(1.0, abs(t)):
            raise StepUnderflow(f"step size fell below {min_step} at t = {t}")


def integrate(rhs: Callable, state, t_span, tolerance: float = 1e-10,
              energy: Callable | None = None, guard: Callable | None = None) -> Trajectory:
    """Adaptive DP5(4) integration of y' = rhs(t, y); every accepted step is kept."""
    traj = Trajectory()
    e_ref = energy(state) if energy else None
    traj.t.append(float(t_span[0]))
    traj.y.append([float(c) for c in state])
    traj.energy_residual.append(0.0)
    for st in _steps(rhs, state, t_span, tolerance, energy, guard):
        traj.t.append(st.t1)
        traj.y.append(st.y1)
        traj.energy_residual.append(abs(energy(st.y1) - e_ref) if energy else 0.0)
    return traj


# -------------------------------------------------------------------------
# anisotropic Kepler
# -------------------------------------------------------------------------
def angular_potential(mu: float, theta: float) -> tuple[float, float]:
    """U(theta) = (cos^2 + mu sin^2)^(-1/2) and U'(theta)."""
    c, s = math.cos(theta), math.sin(theta)
    g = c * c + mu * s * s
    root = math.sqrt(g)
    return 1 / root, (1 - mu) * s * c / (g * root)


def cartesian_hamiltonian(mu: float, state) -> float:
    x, y, px, py = state[:4]
    return 0.5 * (px * px + py * py) - 1 / math.sqrt(x * x + mu * y * y)


def cartesian_rhs(mu: float):
    def rhs(t, s):
        x, y, px, py = s
        rho2 = x * x + mu * y * y
        inv3 = rho2 ** -1.5
        return [px, py, -x * inv3, -mu * y * inv3]
    return rhs


def cartesian_guard(mu: float):
    def guard(s):
        if math.sqrt(s[0] ** 2 + mu * s[1] ** 2) < CARTESIAN_MIN_RADIUS:
            raise StepUnderflow("Cartesian integration too close to collision; use McGehee variables")
    return guard


def mcgehee_rhs(mu: float):
    """Flow in (r, v, theta, u, t) with the physical time t carried along."""
    def rhs(tau, s):
        r, v, th, u, _ = s
        U, dU = angular_potential(mu, th)
        return [r * v, 0.5 * v * v + u * u - U, u, -0.5 * v * u + dU, abs(r) ** 1.5]
    return rhs


def mcgehee_hamiltonian(mu: float, state) -> float:
    """H = ((u^2 + v^2)/2 - U(theta)) / r, a first integral of the blown-up flow."""
    r, v, th, u = state[:4]
    return (0.5 * (u * u + v * v) - angular_potential(mu, th)[0]) / r


def mcgehee_rounding_scale(mu: float):
    """Size of the terms summed in H, which sets its rounding error."""
    def scale(s):
        r, v, th, u = s[:4]
        return max(1.0, (0.5 * (u * u + v * v) + angular_potential(mu, th)[0]) / abs(r))
    return scale


def mcgehee_projection(mu: float, h: float):
    """Rescale (v, u) so that (u^2 + v^2)/2 = U(theta) + r h holds exactly."""
    def project(s):
        r, v, th, u = s[:4]
        target = 2 * (angular_potential(mu, th)[0] + r * h)
        norm = u * u + v * v
        if target <= 0 or norm == 0:
            return s
        k = math.sqrt(target / norm)
        return [r, v * k, th, u * k, *s[4:]]
    return project


def to_mcgehee(state) -> list[float]:
    x, y, px, py = state
    r = math.hypot(x, y)
    sq = math.sqrt(r)
    return [r, (x * px + y * py) / sq, math.atan2(y, x), (x * py - y * px) / sq]


def to_cartesian(state) -> list[float]:
    r, v, th, u = state[:4]
    c, s = math.cos(th), math.sin(th)
    sq = math.sqrt(r)
    rdot, thdot = v / sq, u / (r * sq)
    return [r * c, r * s, rdot * c - r * thdot * s, rdot * s + r * thdot * c]


def section_state(mu: float, h: float, v: float, u: float) -> list[float]:
    """McGehee state on theta = 0 with energy h; r follows from the energy relation."""
    U0 = angular_potential(mu, 0.0)[0]
    r = (0.5 * (u * u + v * v) - U0) / h
    if r <= 0:
        raise ValueError(f"(v, u) = ({v}, {u}) is not on the energy level h = {h}")
    return [r, v, 0.0, u, 0.0]


@dataclass(frozen=True)
class Crossing:
    index: int
    v: float
    u: float
    t: float
    energy_residual: float
    theta_error: float


@dataclass
class SectionOrbit:
    orbit_id: int
    initial: tuple
    crossings: list


def _refine(rhs, st: Step, g0: float, g1: float, tol: float):
    """Illinois regula falsi in the step length for sin(theta) = 0."""
    a, b = 0.0, st.t1 - st.t0
    ga, gb = g0, g1
    y = st.y1
    side = 0
    for _ in range(60):
        s = b - gb * (b - a) / (gb - ga)
        y, _ = dp5_step(rhs, st.t0, st.y0, s)
        gs = math.sin(y[2])
        if abs(gs) <= SECTION_TOLERANCE or abs(b - a) < 1e-15:
            return st.t0 + s, y
        if (gs > 0) == (gb > 0):
            b, gb = s, gs
            if side == 1:
                ga /= 2
            side = 1
        else:
            a, ga = s, gs
            if side == -1:
                gb /= 2
            side = -1
    return st.t0 + s, y


def _section_orbit(args) -> SectionOrbit:
    orbit_id, mu, h, (v0, u0), n_crossings, tol, max_tau = args
    rhs = mcgehee_rhs(mu)
    energy = partial(mcgehee_hamiltonian, mu)
    crossings: list[Crossing] = []
    if n_crossings == 0:
        return SectionOrbit(orbit_id, (v0, u0), crossings)
    y0 = section_state(mu, h, v0, u0)
    for st in _steps(rhs, y0, (0.0, max_tau), tol, energy,
                     energy_scale=mcgehee_rounding_scale(mu), project=mcgehee_projection(mu, h)):
        if st.y1[0] > ESCAPE_RADIUS:
            raise EscapeDetected(f"orbit {orbit_id} left r < {ESCAPE_RADIUS}")
        g0, g1 = math.sin(st.y0[2]), math.sin(st.y1[2])
        if g0 < 0 <= g1 and math.cos(st.y1[2]) > 0:
            _, y = _refine(rhs, st, g0, g1, tol)
            if y[3] > 0:
                res = abs(mcgehee_hamiltonian(mu, y) - h)
                theta_err = abs(math.remainder(y[2], 2 * math.pi))
                crossings.append(Crossing(len(crossings), y[1], y[3], y[4], res, theta_err))
                if len(crossings) >= n_crossings:
                    break
    return SectionOrbit(orbit_id, (v0, u0), crossings)


DEFAULT_SEEDS = ((0.0, 0.3), (0.0, 0.6), (0.0, 0.85), (0.3, 0.7), (-0.4, 0.5), (0.6, 0.3))


def poincare_section(mu, h, n_crossings: int, seeds=DEFAULT_SEEDS, tolerance: float = 1e-12,
                     workers: int = 1, max_tau: float = 1e7) -> list[SectionOrbit]:
    """Section theta = 0, u > 0 of the anisotropic Kepler flow at energy h < 0.

    Each seed (v, u) starts an orbit on the section.  Orbits are independent;
    with ``workers > 1`` they run in separate processes and come back in
    seed order.
    """
    mu, h = float(mu), float(h)
    if not 0 <= mu <= 1:
        raise ValueError(f"anisotropy parameter must lie in [0, 1], got {mu}")
    if h >= 0:
        raise ValueError("energy must be negative")
    if n_crossings < 0:
        raise ValueError("n_crossings must be non-negative")
    jobs = [(i, mu, h, tuple(map(float, s)), n_crossings, tolerance, max_tau) for i, s in enumerate(seeds)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_section_orbit, jobs))
    return [_section_orbit(j) for j in jobs]


def section_csv(orbits: Sequence[SectionOrbit], handle=None) -> str:
    buf = handle if handle is not None else io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["orbit_id", "crossing_index", "v", "u", "t", "energy_residual"])
    for o in orbits:
        for c in o.crossings:
            w.writerow([o.orbit_id, c.index, repr(c.v), repr(c.u), repr(c.t), f"{c.energy_residual:.3e}"])
    return buf.getvalue() if handle is None else ""


def kepler_angular_momentum(crossing: Crossing, h: float) -> float:
    """x py - y px = u sqrt(r) at a section point of the mu = 1 flow (U(0) = 1)."""
    r = (0.5 * (crossing.u ** 2 + crossing.v ** 2) - 1.0) / h
    return crossing.u * math.sqrt(r)


def invariant_curve_deviation(orbit: SectionOrbit, h: float) -> float:
    """Largest distance from an orbit's section points to its fitted invariant curve.

    For mu = 1 the invariant curves are level sets L(v, u) = L0 of the angular
    momentum; L0 is fitted as the mean and the distance is |L - L0| / |grad L|.
    """
    if not orbit.crossings:
        return 0.0
    Ls = [kepler_angular_momentum(c, h) for c in orbit.crossings]
    L0 = sum(Ls) / len(Ls)
    worst = 0.0
    for c, L in zip(orbit.crossings, Ls):
        r = (0.5 * (c.u ** 2 + c.v ** 2) - 1.0) / h
        sq = math.sqrt(r)
        # dr/dv = v/h, dr/du = u/h
        dLdv = c.u * (c.v / h) / (2 * sq)
        dLdu = sq + c.u * (c.u / h) / (2 * sq)
        worst = max(worst, abs(L - L0) / math.hypot(dLdv, dLdu))
    return worst
