"""Local data at the poles of r: square-root Laurent parts, exponents, E-sets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from liouville.algebra.numbers import NestedSurd, RadicalPool, integer_value, number_sort_key
from liouville.algebra.poly import Poly
from liouville.algebra.ratfunc import PoleSite, RatFunc, infinity_site, laurent_at, pole_sites
from liouville.errors import UnsupportedPoleField

# branch labels
C1, C2, C3, C_ODD = "c1", "c2", "c3", "c-odd"
INF1, INF2, INF3, INF_ODD = "inf1", "inf2", "inf3", "inf-odd"


@dataclass(frozen=True)
class SiteExponents:
    """Local data at one site.

    ``sqrt_part`` holds (power, coeff) pairs of [sqrt r] in the local parameter
    z (x - c, or 1/x at infinity).  ``alpha_plus``/``alpha_minus`` are None
    where case 1 is impossible.
    """

    site: PoleSite
    branch: str
    sqrt_part: tuple = ()
    b: Any = None
    alpha_plus: Any = None
    alpha_minus: Any = None
    sqrt_disc: Any = None  # sqrt(1 + 4b) for order-2 sites

    @property
    def case1_ok(self) -> bool:
        return self.alpha_plus is not None

    def sqrt_ratfunc(self) -> RatFunc:
        acc = RatFunc.const(0)
        for power, coeff in self.sqrt_part:
            if self.site.is_infinity:
                acc = acc + RatFunc(Poly.monomial(-power, coeff))
            else:
                base = Poly((-self.site.point, 1)) ** (-power)
                acc = acc + RatFunc(Poly.const(coeff), base)
        return acc

    def alphas(self) -> list[tuple[str, Any]]:
        """Sign options, '+' first, duplicates removed."""
        if self.alpha_plus == self.alpha_minus and not self.sqrt_part:
            return [("+", self.alpha_plus)]
        return [("+", self.alpha_plus), ("-", self.alpha_minus)]


@dataclass(frozen=True)
class ExponentData:
    r: RatFunc
    infinity: SiteExponents
    finite: tuple  # of SiteExponents
    pool: RadicalPool

    @property
    def case1_possible(self) -> bool:
        return self.infinity.case1_ok and all(s.case1_ok for s in self.finite)

    def sites(self):
        return (self.infinity,) + tuple(self.finite)


def _series_sqrt(a: list, n: int, pool: RadicalPool) -> list:
    """First n coefficients of a square root of the power series a (a[0] != 0)."""
    g0 = pool.sqrt(a[0])
    if isinstance(g0, NestedSurd):
        raise UnsupportedPoleField(f"leading coefficient {a[0]} has no square root in the surd field")
    g = [g0]
    for k in range(1, n):
        acc = a[k] if k < len(a) else Fraction(0)
        for i in range(1, k):
            acc = acc - g[i] * g[k - i]
        g.append(acc / (2 * g0))
    return g


def _square_coeff(g: list, k: int):
    acc = Fraction(0)
    for i in range(0, k + 1):
        if i < len(g) and k - i < len(g):
            acc = acc + g[i] * g[k - i]
    return acc


def _order2_alphas(b, pool: RadicalPool):
    s = pool.sqrt(1 + 4 * b)
    return (1 + s) * Fraction(1, 2), (1 - s) * Fraction(1, 2), s


def finite_site_data(r: RatFunc, site: PoleSite, pool: RadicalPool) -> SiteExponents:
    o = site.order
    if o == 1:
        return SiteExponents(site, C1, (), None, Fraction(1), Fraction(1))
    if o == 2:
        lau = laurent_at(r, site, 1)
        b = lau.coeff(-2)
        ap, am, s = _order2_alphas(b, pool)
        return SiteExponents(site, C2, (), b, ap, am, s)
    if o % 2:
        return SiteExponents(site, C_ODD)
    v = o // 2
    # r = z^(-2v) A(z); sqrt(r) = z^(-v) g(z); [sqrt r] keeps z^-v .. z^-2
    lau = laurent_at(r, site, 1)
    A = [lau.coeff(-2 * v + k) for k in range(v + 1)]
    g = _series_sqrt(A, v - 1, pool)
    b = A[v - 1] - _square_coeff(g, v - 1)
    a = g[0]
    sqrt_part = tuple((-v + i, g[i]) for i in range(v - 1) if g[i])
    ap = (b / a + v) * Fraction(1, 2)
    am = (-b / a + v) * Fraction(1, 2)
    return SiteExponents(site, C3, sqrt_part, b, ap, am)


def infinity_site_data(r: RatFunc, pool: RadicalPool) -> SiteExponents:
    site = infinity_site(r)
    o = site.order
    if r.is_zero() or o > 2:
        return SiteExponents(site, INF1, (), None, Fraction(0), Fraction(1))
    if o == 2:
        lau = laurent_at(r, site, 3)
        b = lau.coeff(2)
        ap, am, s = _order2_alphas(b, pool)
        return SiteExponents(site, INF2, (), b, ap, am, s)
    if o % 2:
        return SiteExponents(site, INF_ODD)
    v = -o // 2
    # r = z^(-2v) A(z) with z = 1/x; [sqrt r] keeps z^-v .. z^0
    lau = laurent_at(r, site, max(1, 2 - v))
    A = [lau.coeff(-2 * v + k) for k in range(v + 2)]
    g = _series_sqrt(A, v + 1, pool)
    b = A[v + 1] - _square_coeff(g, v + 1)
    a = g[0]
    sqrt_part = tuple((-v + i, g[i]) for i in range(v + 1) if g[i])
    ap = (b / a - v) * Fraction(1, 2)
    am = (-b / a - v) * Fraction(1, 2)
    return SiteExponents(site, INF3, sqrt_part, b, ap, am)


def exponent_data(r: RatFunc) -> ExponentData:
    pool = RadicalPool()
    finite = tuple(finite_site_data(r, s, pool) for s in pole_sites(r))
    return ExponentData(r, infinity_site_data(r, pool), finite, pool)


# -------------------------------------------------------------------------
# E-sets (integers only)
# -------------------------------------------------------------------------
def _integers(values) -> list[int]:
    out = []
    for v in values:
        k = integer_value(v)
        if k is not None and k not in out:
            out.append(k)
    return out


def case2_set(data: SiteExponents) -> list[int]:
    site = data.site
    if site.is_infinity:
        o = site.order
        if data.branch == INF1:
            return [0, 2, 4]
        if o == 2:
            return _integers(2 + k * data.sqrt_disc for k in (0, 2, -2))
        return [o]
    o = site.order
    if o == 1:
        return [4]
    if o == 2:
        return _integers(2 + k * data.sqrt_disc for k in (0, 2, -2))
    return [o]


def case3_possible(data: ExponentData) -> bool:
    if any(s.site.order > 2 for s in data.finite):
        return False
    return data.infinity.branch == INF1 or data.infinity.site.order >= 2


def case3_set(data: SiteExponents, n: int) -> list[int]:
    ks = [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6]
    site = data.site
    if site.is_infinity:
        s = data.sqrt_disc if data.branch == INF2 else Fraction(1)
        return _integers(6 + Fraction(12 * k, n) * s for k in ks)
    if site.order == 1:
        return [12]
    return _integers(6 + k * data.sqrt_disc for k in ks)


def sort_numbers(values):
    return sorted(values, key=number_sort_key)
