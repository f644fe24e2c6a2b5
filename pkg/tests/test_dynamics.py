import io
import math

import pytest

from liouville import dynamics
from liouville.errors import StepUnderflow


def test_circular_kepler_keeps_radius():
    traj = dynamics.integrate(dynamics.cartesian_rhs(1.0), [1.0, 0.0, 0.0, 1.0], (0.0, 20 * math.pi),
                              tolerance=1e-12, energy=lambda s: dynamics.cartesian_hamiltonian(1.0, s))
    assert traj.final[0] == pytest.approx(20 * math.pi)
    assert max(abs(math.hypot(y[0], y[1]) - 1.0) for y in traj.y) < 1e-8
    assert max(traj.energy_residual) < 1e-8


def test_cartesian_refuses_collision():
    # radial infall from rest reaches the origin at t = pi / (2 sqrt 2)
    with pytest.raises(StepUnderflow):
        dynamics.integrate(dynamics.cartesian_rhs(1.0), [1.0, 0.0, 0.0, 0.0], (0.0, 2.0),
                           guard=dynamics.cartesian_guard(1.0))


def test_bad_tolerance():
    with pytest.raises(ValueError):
        dynamics.integrate(dynamics.cartesian_rhs(1.0), [1.0, 0.0, 0.0, 1.0], (0.0, 1.0), tolerance=0)


def test_homothetic_orbit_in_mcgehee_variables():
    mu, h = 0.5, -0.5
    vc = math.sqrt(2.0)  # v_c^2 = 2 U(0) = 2

    def closed(tau):
        return -vc * vc / (2 * h) / math.cosh(vc * tau / 2) ** 2, -vc * math.tanh(vc * tau / 2)

    r0, v0 = closed(-4.0)
    traj = dynamics.integrate(dynamics.mcgehee_rhs(mu), [r0, v0, 0.0, 0.0, 0.0], (-4.0, 4.0), tolerance=1e-12)
    for tau, y in zip(traj.t, traj.y):
        r, v = closed(tau)
        assert abs(y[0] - r) < 1e-6 and abs(y[1] - v) < 1e-6
        assert y[2] == 0.0 and y[3] == 0.0


def test_time_reversal():
    mu = 0.85
    start = [1.0, 0.2, 0.1, 0.9]
    rhs = dynamics.cartesian_rhs(mu)
    fwd = dynamics.integrate(rhs, start, (0.0, 10.0), tolerance=1e-12)
    back = dynamics.integrate(rhs, fwd.final[1], (10.0, 0.0), tolerance=1e-12)
    assert back.final[0] == 0.0
    assert max(abs(a - b) for a, b in zip(back.final[1], start)) < 1e-6


def test_coordinate_round_trip():
    s = [0.7, -0.4, 0.3, 1.1]
    back = dynamics.to_cartesian(dynamics.to_mcgehee(s))
    assert max(abs(a - b) for a, b in zip(s, back)) < 1e-14
    mu = 0.6
    m = dynamics.to_mcgehee(s)
    assert dynamics.mcgehee_hamiltonian(mu, m) == pytest.approx(dynamics.cartesian_hamiltonian(mu, s), abs=1e-13)


def test_section_argument_checks():
    assert dynamics.poincare_section(1, -0.5, 0) == [dynamics.SectionOrbit(i, s, []) for i, s in
                                                     enumerate(dynamics.DEFAULT_SEEDS)]
    with pytest.raises(ValueError):
        dynamics.poincare_section(1, 0.5, 5)
    with pytest.raises(ValueError):
        dynamics.poincare_section(1.5, -0.5, 5)
    with pytest.raises(ValueError):
        dynamics.section_state(1.0, -0.5, 2.0, 2.0)


def test_kepler_section_conserves_angular_momentum():
    orbits = dynamics.poincare_section(1, -0.5, 15, seeds=[(0.2, 0.6)])
    (o,) = orbits
    assert len(o.crossings) == 15
    Ls = [dynamics.kepler_angular_momentum(c, -0.5) for c in o.crossings]
    assert max(Ls) - min(Ls) < 1e-6
    assert all(c.u > 0 and c.theta_error <= dynamics.SECTION_TOLERANCE for c in o.crossings)
    assert max(c.energy_residual for c in o.crossings) < 1e-8
    assert dynamics.invariant_curve_deviation(o, -0.5) < 1e-4
    # Cartesian angular momentum of the seed agrees with the section value
    x, y, px, py = dynamics.to_cartesian(dynamics.section_state(1.0, -0.5, 0.2, 0.6))
    assert Ls[0] == pytest.approx(x * py - y * px, rel=1e-8)


def test_section_csv_and_workers():
    seeds = [(0.0, 0.5), (0.1, 0.7)]
    serial = dynamics.poincare_section(0.85, -0.5, 3, seeds=seeds)
    parallel = dynamics.poincare_section(0.85, -0.5, 3, seeds=seeds, workers=2)
    assert serial == parallel
    buf = io.StringIO()
    dynamics.section_csv(serial, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "orbit_id,crossing_index,v,u,t,energy_residual"
    assert len(lines) == 1 + 6
    assert lines[1].startswith("0,0,")
