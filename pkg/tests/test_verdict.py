from fractions import Fraction as F

import pytest

from liouville.algebra.numbers import sqrt_rational
from liouville.kovacic.groups import make_group
from liouville.odeforms import IRREGULAR_SINGULAR, REGULAR_SINGULAR
from liouville.verdict import (
    NO_OBSTRUCTION,
    NOT_INTEGRABLE,
    SCOPE_RATIONAL,
    assemble,
    assemble_spectral,
    kappa_condition,
    kappa_condition_enclosure,
    omega_condition,
    omega_condition_enclosure,
)


def test_examples():
    assert kappa_condition(3) == 2
    assert kappa_condition(0) == 0
    assert kappa_condition(-7) is None
    assert omega_condition(6) == 2
    assert omega_condition(0) == 0
    assert omega_condition(12 * sqrt_rational(2) / (1 + 2 * sqrt_rational(2))) is None
    assert kappa_condition(F(3, 2)) is None


def test_round_trips():
    for n in range(1001):
        assert kappa_condition(F(n * (n + 1), 2)) == n
        assert omega_condition(n * (n + 1)) == n


def test_omega_kappa_relation():
    for k in range(2001):
        v = F(k, 2)
        assert (omega_condition(v) is None) == (kappa_condition(v / 2) is None)


@pytest.mark.parametrize("tag", ["e", "C*", "C+", "dihedral", "tetrahedral", "octahedral", "icosahedral"])
def test_abelian_groups_never_obstruct(tag):
    v = assemble(make_group(tag))
    assert v.conclusion == NO_OBSTRUCTION


def test_non_abelian_groups():
    for tag in ("SL2", "C*xC+"):
        assert assemble(make_group(tag)).conclusion == NOT_INTEGRABLE


def test_irregular_infinity_narrows_scope():
    v = assemble(make_group("SL2"), IRREGULAR_SINGULAR)
    assert v.conclusion == NOT_INTEGRABLE
    assert v.scope_note == SCOPE_RATIONAL and "rational" in v.text
    assert assemble(make_group("SL2"), REGULAR_SINGULAR).singularity_class_at_infinity == REGULAR_SINGULAR


def test_enclosures():
    assert kappa_condition_enclosure(F(299, 100), F(301, 100)).candidates == (2,)
    assert kappa_condition_enclosure(F(-10), F(-1)).certified_excluded
    assert omega_condition_enclosure(F(4), F(5)).certified_excluded
    assert omega_condition_enclosure(F(0), F(6)).candidates == (0, 1, 2)


def test_spectral_verdicts():
    assert assemble_spectral("omega^2", F(5), None).conclusion == NOT_INTEGRABLE
    assert assemble_spectral("omega^2", F(6), 2).conclusion == NO_OBSTRUCTION
    open_enc = omega_condition_enclosure(F(5), F(7))
    assert assemble_spectral("omega^2", None, None, open_enc).conclusion == NO_OBSTRUCTION
    closed_enc = omega_condition_enclosure(F(4), F(5))
    assert assemble_spectral("omega^2", None, None, closed_enc).conclusion == NOT_INTEGRABLE
