import itertools
from fractions import Fraction as F

import pytest

from liouville.algebra.numbers import sqrt_rational
from liouville.celestial.families import (
    kappa_family_r,
    kappa_hypergeometric_ode,
    omega_family_r,
    omega_hypergeometric_ode,
)
from liouville.errors import FuchsViolation
from liouville.kimura import ConditionI, ConditionII, ExponentDifferences, classify, condition_i, condition_ii, solvable
from liouville.kovacic import analyze, identify_group
from liouville.odeforms import RiemannExponents, riemann_scheme

half = F(1, 2)


def test_condition_i_direct_sum():
    w = condition_i(ExponentDifferences(-half, F(-1), F(5, 2)))
    assert w == ConditionI((1, 1, 1), 1)


def test_condition_i_omega_six():
    # the plain sum is already odd: -5/2 + 1 + 1/2 = -1
    assert condition_i(ExponentDifferences(F(-5, 2), F(1), half)) == ConditionI((1, 1, 1), -1)
    # with the first sign flipped the plain sum is 4, and the next combination fires
    assert condition_i(ExponentDifferences(F(5, 2), F(1), half)) == ConditionI((-1, 1, 1), -1)


def test_irrational_has_no_witness():
    d = ExponentDifferences(sqrt_rational(2) / 2, F(0), F(0))
    assert condition_i(d) is None and condition_ii(d) is None
    assert not classify(d).solvable


def test_row_four():
    w = condition_ii(ExponentDifferences(half, F(1, 3), F(1, 4)))
    assert isinstance(w, ConditionII) and w.row == 4
    assert (w.l, w.m, w.q) == (-1, 0, 0)
    assert w.assignment == ("-lambda", "mu", "nu")


def test_row_one_arbitrary_slot():
    d = ExponentDifferences(F(7, 2), sqrt_rational(3), half)
    assert condition_i(d) is None
    w = condition_ii(d)
    assert w.row == 1 and w.q is None


def test_irrational_omega_scheme_not_solvable():
    w2 = 12 * sqrt_rational(2) / (1 + 2 * sqrt_rational(2))
    scheme = riemann_scheme(omega_hypergeometric_ode(w2))
    assert not solvable(scheme).solvable


SAMPLES = [
    (half, F(1, 3), F(1, 4)),
    (F(-5, 2), F(1), half),
    (F(2, 3), F(1, 3), F(1, 5)),
    (F(1, 7), F(2, 7), F(3, 7)),
    (F(1, 3), F(2, 5), F(1, 5)),
    (sqrt_rational(5), half, F(3, 2)),
]


@pytest.mark.parametrize("vals", SAMPLES)
def test_signed_permutation_invariance(vals):
    expected = classify(ExponentDifferences(*vals)).solvable
    for perm in itertools.permutations(vals):
        for signs in itertools.product((1, -1), repeat=3):
            d = ExponentDifferences(*(s * v for s, v in zip(signs, perm)))
            assert classify(d).solvable == expected


def test_fuchs_violation():
    with pytest.raises(FuchsViolation):
        solvable(RiemannExponents(F(0), F(0), F(0), F(0), F(0), F(0)))


@pytest.mark.parametrize("kappa", range(-5, 31))
def test_kappa_agreement_with_kovacic(kappa):
    kim = solvable(riemann_scheme(kappa_hypergeometric_ode(F(kappa))))
    group = identify_group(analyze(kappa_family_r(F(kappa))))
    assert kim.solvable == (group.tag != "SL2")


@pytest.mark.parametrize("w2", range(31))
def test_omega_agreement_with_kovacic(w2):
    kim = solvable(riemann_scheme(omega_hypergeometric_ode(F(w2))))
    group = identify_group(analyze(omega_family_r(F(w2))))
    assert kim.solvable == (group.tag != "SL2")


@pytest.mark.parametrize("n", range(12))
def test_condition_i_kappas_are_triangular(n):
    for kappa in ((n + 1) * (2 * n + 3), (n + 1) * (2 * n + 1), n * (2 * n + 1)):
        ell = next(l for l in range(4 * n + 4) if l * (l + 1) == 2 * kappa)
        assert ell in (2 * (n + 1), 2 * n + 1, 2 * n)
