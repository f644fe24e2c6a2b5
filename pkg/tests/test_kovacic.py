import random
from fractions import Fraction as F

import pytest

from liouville.algebra.numbers import sqrt_rational
from liouville.algebra.poly import Poly
from liouville.algebra.ratfunc import RatFunc
from liouville.celestial.families import kappa_family_r, omega_family_r
from liouville.kovacic import (
    AlgebraicOmega,
    Case1Omega,
    Case1Witness,
    analyze,
    case1_candidates,
    case1_residual,
    exponent_data,
    identify_group,
    riccati_check,
    second_solution,
    solve_monic,
)

from oracles import witness_residual

x = RatFunc.x()
TRIANGULAR = {n * (n + 1) // 2 for n in range(10)}
OBLONG = {n * (n + 1) for n in range(10)}


def riemann_r(l, m, n):
    """r of the normal form with exponent differences l, m, n at 0, 1, infinity."""
    return -((1 - l * l) / (x * x) + (1 - m * m) / ((x - 1) ** 2) - (1 - l * l - m * m + n * n) / (x * (x - 1))) / 4


def test_zero_has_two_rational_solutions():
    o = analyze(RatFunc.const(0))
    assert o.case_used == 1
    g = identify_group(o)
    assert g.tag == "e" and g.identity_component_abelian
    assert o.second_solution.xi1 == RatFunc.const(1)
    assert o.second_solution.xi2 == x and not o.second_solution.has_log


def test_euler_equation():
    r = 2 / (x * x)
    assert sorted({c.m for c in case1_candidates(exponent_data(r))}) == [0, 3]
    o = analyze(r)
    assert o.case_used == 1 and identify_group(o).tag == "e"
    sec = o.second_solution
    assert {sec.xi1, sec.xi2 * -3} == {x * x, 1 / x}


def test_solve_monic_trivial():
    assert solve_monic(1, RatFunc.const(0), RatFunc.const(0)) == Poly((0, 1))
    assert solve_monic(1, RatFunc.const(0), x) is None


def test_kappa_three_is_case_one():
    o = analyze(kappa_family_r(3))
    assert o.case_used == 1
    assert not case1_residual(o.r, o.omega.ratfunc, o.P)


def test_omega_five_is_sl2():
    o = analyze(omega_family_r(5))
    assert o.case_used is None
    g = identify_group(o)
    assert g.tag == "SL2" and not g.identity_component_abelian


def test_irrational_omega_has_empty_candidate_set():
    w2 = 12 * sqrt_rational(2) / (1 + 2 * sqrt_rational(2))
    assert case1_candidates(exponent_data(omega_family_r(w2))) == []


@pytest.mark.parametrize("kappa", range(31))
def test_kappa_sweep(kappa):
    o = analyze(kappa_family_r(kappa))
    assert o.solvable == (kappa in TRIANGULAR)


@pytest.mark.parametrize("w2", range(31))
def test_omega_sweep(w2):
    o = analyze(omega_family_r(w2))
    assert o.solvable == (w2 in OBLONG)


@pytest.mark.parametrize("r", [kappa_family_r(F(15)), kappa_family_r(F(6)), omega_family_r(F(12)),
                               omega_family_r(F(20))], ids=["k15", "k6", "w12", "w20"])
def test_witness_numeric_residual(r):
    o = analyze(r)
    assert not case1_residual(r, o.omega.ratfunc, o.P)
    assert witness_residual(r, o.omega.ratfunc, o.P, 1.2, 3.0) <= 1e-6


@pytest.mark.parametrize("triple, n, tag", [
    ((F(1, 2), F(1, 3), F(1, 3)), 4, "tetrahedral"),
    ((F(1, 2), F(1, 3), F(1, 4)), 6, "octahedral"),
    ((F(1, 2), F(1, 3), F(1, 5)), 12, "icosahedral"),
])
def test_finite_primitive_groups(triple, n, tag):
    r = riemann_r(*triple)
    o = analyze(r)
    assert (o.case_used, o.n) == (3, n)
    assert isinstance(o.omega, AlgebraicOmega)
    assert riccati_check(r, o.omega.coefficients)
    g = identify_group(o)
    assert g.tag == tag and g.identity_component_abelian


def test_dihedral_case():
    r = 1 / x - F(3, 16) / (x * x)
    o = analyze(r)
    assert o.case_used == 2
    assert riccati_check(r, o.omega.coefficients)
    assert identify_group(o).tag == "dihedral"


@pytest.mark.parametrize("r, tag", [
    (2 / (x * (x - 1)), "C+"),
    (x * x + 1, "C*xC+"),
    (RatFunc.const(1), "C*"),
    (-F(3, 16) / (x * x), "G_k"),
])
def test_case_one_group_table(r, tag):
    g = identify_group(analyze(r))
    assert g.tag == tag
    assert g.identity_component_abelian == (tag != "C*xC+")


def test_second_solution_of_x():
    w = Case1Witness(1, Case1Omega(RatFunc.const(0), ("+",), (), (), ()), Poly((0, 1)), 0)
    sec = second_solution(w)
    assert not sec.has_log
    assert sec.xi2 == RatFunc.const(-1)


def test_degree_cap_is_reported():
    o = analyze(2 / (x * x), max_degree=1)
    assert 3 in o.skipped_degrees
    assert any(a.result == "skipped-degree-cap" for a in o.audit)


AFFINE_CASES = [kappa_family_r(1), kappa_family_r(4), omega_family_r(6), omega_family_r(3),
                2 / (x * x), riemann_r(F(1, 2), F(1, 3), F(1, 3)), 1 / x - F(3, 16) / (x * x), x * x + 1]


@pytest.mark.parametrize("i", range(len(AFFINE_CASES)))
def test_affine_invariance(i):
    rng = random.Random(i)
    r = AFFINE_CASES[i]
    u = F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
    v = F(rng.randint(-5, 5), rng.randint(1, 3))
    before, after = analyze(r), analyze(r.affine(u, v) * (u * u))
    assert before.case_used == after.case_used
    assert identify_group(before).tag == identify_group(after).tag


def test_degree_cap_from_environment(monkeypatch):
    monkeypatch.setenv("LIOUVILLE_MAX_DEGREE", "1")
    assert analyze(2 / (x * x)).skipped_degrees == (3,)
    monkeypatch.delenv("LIOUVILLE_MAX_DEGREE")
    assert analyze(2 / (x * x)).skipped_degrees == ()
