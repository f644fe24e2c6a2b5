import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liouville.algebra.numbers import SurdSum, integer_value, sqrt_rational, surd
from liouville.algebra.poly import Poly, poly_gcd, squarefree_decomposition
from liouville.algebra.ratfunc import (
    RatFunc,
    hermite_reduce,
    laurent_at,
    normalize,
    ordinary_site,
    partial_fractions,
    pole_sites,
    reconstruct,
)
from liouville.celestial.families import kappa_family_r, omega_family_r
from liouville.errors import UnsupportedPoleField, ZeroDenominator

x = RatFunc.x()


def P(*c):
    return Poly(c)


def test_normalize_cancels_common_factor():
    r = normalize(P(-1, 0, 1), P(-1, 1))
    assert r.num == P(1, 1) and r.den == P(1)


def test_normalize_zero():
    r = normalize(Poly(), P(0, 0, 0, 1))
    assert r.num.is_zero() and r.den == P(1)


def test_normalize_kappa_one_matches_family():
    k = 1
    num = P(4 * k - 3, 4 * k)
    den = P(4) * P(1, -1) ** 2 * P(1, 1) ** 2
    r = normalize(num, den)
    ref = kappa_family_r(1)
    assert r.num * ref.den == ref.num * r.den
    assert r.den.lc == 1


def test_zero_denominator():
    with pytest.raises(ZeroDenominator):
        RatFunc(P(1), Poly())


def test_partial_fractions_kappa_family():
    k = F(7, 3)
    r = kappa_family_r(k)
    tau = x
    expected = ((8 * k - 3) / (16 * (1 - tau) ** 2) + (4 * k - 3) / (16 * (1 - tau))
                - F(3) / (16 * (1 + tau) ** 2) + (4 * k - 3) / (16 * (1 + tau)))
    assert reconstruct(partial_fractions(r)) == r
    assert expected == r


def test_partial_fractions_simple():
    terms = partial_fractions(1 / (x * x - 1))
    got = {(t.site.point, t.power): t.coeff for t in terms}
    assert got == {(1, 1): F(1, 2), (-1, 1): F(-1, 2)}


def test_partial_fractions_omega_family():
    w = F(5)
    r = omega_family_r(w)
    terms = partial_fractions(r)
    assert len(terms) == 5
    got = {(t.site.point, t.power): t.coeff for t in terms}
    assert got[(0, 2)] == F(3, 4)
    assert reconstruct(terms) == r


def test_laurent_at_infinity_omega_family():
    w = F(6)
    r = omega_family_r(w)
    from liouville.algebra.ratfunc import infinity_site

    lau = laurent_at(r, infinity_site(r), 5)
    assert lau.coeff(2) == w
    assert lau.coeff(3) == 0
    assert lau.coeff(4) == w - F(3, 2)


def test_laurent_trivial():
    lau = laurent_at(1 / (x * x), ordinary_site(0), 2)
    assert [lau.coeff(k) for k in (-2, -1, 0, 1)] == [1, 0, 0, 0]


def test_laurent_leading_coefficient_kappa():
    k = F(5)
    r = kappa_family_r(k)
    site = [s for s in pole_sites(r) if s.point == 1][0]
    assert laurent_at(r, site, 1).coeff(-2) == (8 * k - 3) / 16


def _eval_mp(r, z):
    # expanded polynomials cancel badly near a pole: evaluate in 40 digits
    def horner(p):
        acc = mpmath.mpc(0)
        for c in reversed(p.coeffs):
            acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
        return acc
    with mpmath.workdps(40):
        z = mpmath.mpc(z)
        return complex(horner(r.num) / horner(r.den))


def test_laurent_numeric_agreement():
    rng = random.Random(3)
    r = kappa_family_r(F(3)) + 1 / (x - 2) ** 3
    for site in pole_sites(r):
        depth = site.order + 6
        lau = laurent_at(r, site, depth)
        for _ in range(5):
            z = 1e-3 * complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            z *= 1e-3 / abs(z)
            approx = sum(complex(lau.coeff(k)) * z ** k for k in range(-site.order, depth))
            exact = _eval_mp(r, complex(site.point) + z)
            assert abs(approx - exact) <= 1e-6 * abs(exact)


def test_integer_value():
    assert integer_value(F(3, 4) + F(1, 4)) == 1
    h = surd(0, F(1, 2), 17)
    assert integer_value(h - h + 2) == 2
    assert integer_value(surd(0, F(1, 2), 5)) is None


def test_conjugate_product():
    for a, b, d in [(3, 2, 5), (F(1, 2), F(-3, 7), 6), (1, 1, -3)]:
        s = surd(a, b, d)
        t = surd(a, -b, d)
        assert s * t == F(a) ** 2 - d * F(b) ** 2


def test_sqrt_rational_and_inverse():
    s = sqrt_rational(F(8, 3))
    assert s * s == F(8, 3)
    w = 12 * sqrt_rational(2) / (1 + 2 * sqrt_rational(2))
    assert w == F(48, 7) - F(12, 7) * sqrt_rational(2)
    assert isinstance(w, SurdSum)


def test_irreducible_cubic_rejected():
    with pytest.raises(UnsupportedPoleField):
        pole_sites(1 / (x ** 3 + x + 1) ** 2)


def test_squarefree_decomposition():
    p = P(-1, 1) ** 3 * P(2, 1) * P(0, 1) ** 2
    parts = squarefree_decomposition(p)
    prod = Poly((1,))
    for f, m in parts:
        prod = prod * f ** m
    assert prod.monic() == p.monic()


def test_hermite_reduce_rational_integral():
    R = -1 / (x * x)
    res = hermite_reduce(R)
    assert res.rational_part == 1 / x
    assert not res.has_log
    assert hermite_reduce(1 / x).has_log


small = st.integers(-6, 6)


@st.composite
def ratfuncs(draw):
    num = Poly([F(draw(small), draw(st.integers(1, 4))) for _ in range(draw(st.integers(0, 4)))])
    roots = draw(st.lists(st.integers(-3, 3), min_size=0, max_size=3))
    den = Poly((1,))
    for c in roots:
        den = den * P(-c, 1)
    return RatFunc(num, den)


@settings(max_examples=60, deadline=None)
@given(ratfuncs(), ratfuncs())
def test_normalized_after_arithmetic(a, b):
    for r in (a + b, a * b, a - b):
        assert r.den.lc == 1
        assert poly_gcd(r.num, r.den).degree <= 0 or r.num.is_zero()
        assert normalize(r.num, r.den) == r


@settings(max_examples=60, deadline=None)
@given(ratfuncs())
def test_partial_fractions_roundtrip(r):
    assert reconstruct(partial_fractions(r)) == r
