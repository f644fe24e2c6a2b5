"""End-to-end acceptance checks with their time budgets.

Each test carries a ``criterion`` marker; conftest prints one PASS/FAIL line
per criterion after the run.
"""

import random
import time
from fractions import Fraction as F

import pytest

from liouville.algebra.numbers import sqrt_rational, to_complex
from liouville.algebra.ratfunc import RatFunc
from liouville.celestial.e3bp import euler_points, kappa_curves
from liouville.celestial.families import (
    hypergeometric_forms,
    kappa_family_r,
    kappa_hypergeometric_ode,
    omega_family_r,
)
from liouville.celestial.problems import anisotropic, rect4bp, uncoupled
from liouville.dynamics import invariant_curve_deviation, poincare_section
from liouville.kimura import solvable
from liouville.kovacic import analyze, case1_residual, identify_group
from liouville.odeforms import riemann_scheme
from liouville.verdict import NO_OBSTRUCTION, NOT_INTEGRABLE, omega_condition

from oracles import witness_residual

KAPPA_YES = [F(0), F(1), F(3), F(6), F(10), F(15)]
KAPPA_NO = [F(2), F(4), F(5), F(7)]
OMEGA_YES = [F(2), F(6), F(12), F(20)]
OMEGA_NO = [F(1), F(3), F(5), F(7)]


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def dichotomy(family, yes, no):
    outcomes = {}
    for p in yes + no:
        outcomes[p] = analyze(family(p))
    return outcomes


@pytest.mark.criterion(1, "kappa family: witnesses for n(n+1)/2, SL2 otherwise (< 10 s)")
def test_kappa_family_dichotomy():
    outcomes, elapsed = timed(lambda: dichotomy(kappa_family_r, KAPPA_YES, KAPPA_NO))
    for k in KAPPA_YES:
        o = outcomes[k]
        assert o.case_used == 1, k
        assert not case1_residual(o.r, o.omega.ratfunc, o.P), k
    for k in KAPPA_NO:
        assert outcomes[k].case_used is None and identify_group(outcomes[k]).tag == "SL2", k
    assert elapsed < 10


@pytest.mark.criterion(2, "omega family: witnesses for n(n+1), SL2 otherwise (< 10 s)")
def test_omega_family_dichotomy():
    outcomes, elapsed = timed(lambda: dichotomy(omega_family_r, OMEGA_YES, OMEGA_NO))
    for w in OMEGA_YES:
        o = outcomes[w]
        assert o.case_used == 1, w
        assert not case1_residual(o.r, o.omega.ratfunc, o.P), w
    for w in OMEGA_NO:
        assert outcomes[w].case_used is None and identify_group(outcomes[w]).tag == "SL2", w
    assert elapsed < 10


@pytest.mark.criterion(3, "Kimura agrees with Kovacic on every family instance (< 5 s)")
def test_kimura_cross_validation():
    def run():
        rows = []
        for k in KAPPA_YES + KAPPA_NO:
            scheme = riemann_scheme(kappa_hypergeometric_ode(k)) if k == 0 else hypergeometric_forms(kappa=k).scheme
            rows.append((("kappa", k), solvable(scheme).solvable, analyze(kappa_family_r(k))))
        for w in OMEGA_YES + OMEGA_NO:
            rows.append((("omega2", w), solvable(hypergeometric_forms(omega2=w).scheme).solvable,
                         analyze(omega_family_r(w))))
        return rows

    rows, elapsed = timed(run)
    assert len(rows) == 18
    for label, kim, outcome in rows:
        assert kim == (identify_group(outcome).tag != "SL2"), label
    assert elapsed < 5


@pytest.mark.criterion(4, "rectangular four-body: exact omega^2, not integrable (< 1 s)")
def test_rectangular_four_body():
    rep, elapsed = timed(rect4bp)
    expected = 12 * sqrt_rational(2) / (1 + 2 * sqrt_rational(2))
    assert rep.omega2.exact == expected
    assert abs(to_complex(rep.omega2.exact).real - 4.4328) < 1e-4
    assert abs(rep.omega2.approx - to_complex(expected).real) <= 1e-12
    assert rep.theta.hi - rep.theta.lo <= F(1, 10**12)
    assert omega_condition(rep.omega2.exact) is None
    assert rep.verdict.conclusion == NOT_INTEGRABLE
    assert elapsed < 1


@pytest.mark.criterion(5, "anisotropic Kepler: no obstruction only at mu = 0, 1 (< 5 s)")
def test_anisotropic_scan():
    def run():
        return {F(k, 100): anisotropic(F(k, 100), use_kovacic=False) for k in range(101)}

    reports, elapsed = timed(run)
    open_set = {mu for mu, rep in reports.items() if rep.verdict.conclusion == NO_OBSTRUCTION}
    assert open_set == {F(0), F(1)}
    assert all(not rep.notes or "disagree" not in " ".join(rep.notes) for rep in reports.values())
    assert elapsed < 5


@pytest.mark.criterion(6, "uncoupled Keplers: omega^2 = 6 for every mass ratio (< 5 s)")
def test_uncoupled_keplers():
    rng = random.Random(20240)
    randoms = [F(rng.randint(1, 500), rng.randint(1, 97)) for _ in range(20)]

    def run():
        exact = [uncoupled(mu, use_kovacic=False) for mu in (F(1, 8), F(1), F(8))]
        loose = [uncoupled(mu, use_kovacic=False) for mu in randoms]
        return exact, loose

    (exact, loose), elapsed = timed(run)
    for rep in exact:
        assert rep.omega2.exact == 6
    for rep in loose:
        assert rep.omega2.contains(6)
        assert rep.omega2.width <= F(1, 10**9)
    assert all(rep.verdict.conclusion != NOT_INTEGRABLE for rep in exact + loose)
    assert elapsed < 5


@pytest.mark.criterion(7, "elliptic 3BP limits and kappa2 < 0 (< 30 s)")
def test_e3bp_branch1_limit():
    p = euler_points(F(1, 10**6))[0]
    assert abs(float(p.kappa1.mid) - 3) <= 1e-3
    assert abs(p.kappa1.lo - 3) <= F(1, 1000) and abs(p.kappa1.hi - 3) <= F(1, 1000)


@pytest.mark.criterion(7, "elliptic 3BP limits and kappa2 < 0 (< 30 s)")
def test_e3bp_branch2_limit():
    p = euler_points(F(1, 10**6))[1]
    within = abs(p.kappa1.lo - 6) <= F(1, 100) and abs(p.kappa1.hi - 6) <= F(1, 100)
    assert within, f"branch-2 kappa1 enclosure is near {float(p.kappa1.mid):.6f}, not within 1e-2 of 6"


@pytest.mark.criterion(7, "elliptic 3BP limits and kappa2 < 0 (< 30 s)")
def test_e3bp_kappa2_negative_on_grid():
    rows, elapsed = timed(lambda: kappa_curves([F(k, 100) for k in range(1, 100)]))
    assert len(rows) == 3 * 99
    assert all(r.kappa2.hi < 0 for r in rows)
    assert elapsed < 30


@pytest.mark.criterion(8, "every family witness: exact and 50-point numeric residual (< 10 s)")
def test_witness_identities():
    def run():
        worst = 0.0
        count = 0
        for family, params in ((kappa_family_r, KAPPA_YES), (omega_family_r, OMEGA_YES)):
            for p in params:
                o = analyze(family(p))
                for w in o.witnesses:
                    assert not case1_residual(o.r, w.omega.ratfunc, w.P), p
                    worst = max(worst, witness_residual(o.r, w.omega.ratfunc, w.P, 1.2, 3.0, n=50))
                    count += 1
        return worst, count

    (worst, count), elapsed = timed(run)
    assert count >= len(KAPPA_YES) + len(OMEGA_YES)
    assert worst <= 1e-6
    assert elapsed < 10


@pytest.mark.criterion(9, "Poincare section: energy and invariant-curve bounds (< 60 s)")
def test_poincare_properties():
    def run():
        kepler = poincare_section(1, F(-1, 2), 200)
        aniso = poincare_section(F(85, 100), F(-1, 2), 200, seeds=[(0.0, 0.3), (0.0, 0.6), (0.3, 0.7)])
        return kepler, aniso

    (kepler, aniso), elapsed = timed(run)
    for o in kepler:
        assert len(o.crossings) == 200
        assert max(c.energy_residual for c in o.crossings) <= 1e-8
        assert invariant_curve_deviation(o, -0.5) <= 1e-4
    for o in aniso:
        assert len(o.crossings) == 200
        assert max(c.energy_residual for c in o.crossings) <= 1e-8
    assert elapsed < 60


def _riemann_r(l, m, n):
    x = RatFunc.x()
    return -((1 - l * l) / (x * x) + (1 - m * m) / ((x - 1) ** 2) - (1 - l * l - m * m + n * n) / (x * (x - 1))) / 4


def _random_r(rng):
    """Mix of solvable and SL2 inputs across every Kovacic case."""
    kind = rng.randrange(4)
    if kind == 0:
        n = rng.randint(0, 5)
        return kappa_family_r(F(rng.choice([n * (n + 1) // 2, rng.randint(1, 12)])))
    if kind == 1:
        n = rng.randint(0, 4)
        return omega_family_r(F(rng.choice([n * (n + 1), rng.randint(1, 12)])))
    if kind == 2:
        triple = rng.choice([
            (F(1, 2), F(1, 3), F(1, 3)),
            (F(1, 2), F(1, 3), F(1, 4)),
            (F(1, 2), F(1, 3), F(1, 5)),
            (F(1, 2), F(1, 2), F(rng.randint(1, 7), rng.randint(2, 5))),
            (F(1, rng.randint(2, 7)), F(1, rng.randint(2, 7)), F(rng.randint(1, 5), rng.randint(2, 9))),
        ])
        return _riemann_r(*triple)
    x = RatFunc.x()
    return x ** rng.randint(0, 2) + F(rng.randint(-4, 4), rng.randint(1, 4)) / (x * x)


@pytest.mark.criterion(10, "affine invariance of the group tag on 20 random triples (< 10 s)")
def test_affine_invariance():
    rng = random.Random(31337)
    triples = []
    for _ in range(20):
        u = F(rng.choice([-1, 1]) * rng.randint(1, 5), rng.randint(1, 4))
        v = F(rng.randint(-6, 6), rng.randint(1, 5))
        triples.append((_random_r(rng), u, v))

    def run():
        out = []
        for r, u, v in triples:
            before = identify_group(analyze(r)).tag
            after = identify_group(analyze(r.affine(u, v) * (u * u))).tag
            out.append((before, after))
        return out

    tags, elapsed = timed(run)
    for (before, after), (r, u, v) in zip(tags, triples):
        assert before == after, (r.render(), u, v)
    assert elapsed < 10
