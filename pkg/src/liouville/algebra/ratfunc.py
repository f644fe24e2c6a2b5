"""Normalized rational functions, pole sites, Laurent data and partial fractions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from liouville.algebra.numbers import SurdSum, sqrt_rational, to_complex
from liouville.algebra.poly import Poly, irreducible_factors, poly_gcd, poly_xgcd
from liouville.errors import UnsupportedPoleField, ZeroDenominator


class RatFunc:
    """num/den with gcd(num, den) = 1 and a monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _normalized: bool = False):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = Poly((1,))
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        if not _normalized:
            num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def x(cls) -> "RatFunc":
        return cls(Poly.x(), _normalized=True)

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(Poly.const(c), _normalized=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeff(0)

    # arithmetic -----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, _normalized=True)
        if isinstance(other, (int, Fraction, SurdSum)):
            return RatFunc.const(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        a = self.den.exact_div(g)
        b = o.den.exact_div(g)
        return RatFunc(self.num * b + o.num * a, a * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_constant():
            c = o.constant_value()
            if not c:
                return RatFunc.const(0)
            return RatFunc(self.num * c, self.den, _normalized=True)
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        num = self.num.exact_div(g1) * o.num.exact_div(g2)
        den = self.den.exact_div(g2) * o.den.exact_div(g1)
        return RatFunc(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDenominator("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _normalized=True)

    def derivative(self) -> "RatFunc":
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den)

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDenominator(f"pole at {x}")
        return self.num(x) / d

    def evaluate_complex(self, z: complex) -> complex:
        num = 0j
        for c in reversed(self.num.coeffs):
            num = num * z + to_complex(c)
        den = 0j
        for c in reversed(self.den.coeffs):
            den = den * z + to_complex(c)
        return num / den

    def compose(self, inner: "RatFunc") -> "RatFunc":
        """self(inner(x))."""
        n = _horner_rf(self.num, inner)
        d = _horner_rf(self.den, inner)
        return n / d

    def affine(self, u, v) -> "RatFunc":
        """self(u*x + v)."""
        lin = Poly((v, u))
        return RatFunc(self.num.compose(lin), self.den.compose(lin))

    def is_rational_coefficients(self) -> bool:
        return self.num.is_rational() and self.den.is_rational()

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("RatFunc", self.num, self.den))
        return self._hash

    def render(self, var: str = "x") -> str:
        n = self.num.render(var)
        if self.den.degree == 0:
            return n
        return f"({n})/({self.den.render(var)})"

    def __repr__(self):
        return f"RatFunc({self.render()})"

    __str__ = render


def _horner_rf(p: Poly, inner: RatFunc) -> RatFunc:
    acc = RatFunc.const(0)
    for c in reversed(p.coeffs):
        acc = acc * inner + c
    return acc


def _normalize_pair(num: Poly, den: Poly):
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    if num.is_zero():
        return Poly(), Poly((1,))
    g = poly_gcd(num, den)
    if g.degree > 0:
        num = num.exact_div(g)
        den = den.exact_div(g)
    lc = den.lc
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


def normalize(num: Poly, den: Poly) -> RatFunc:
    """Coprime pair with monic denominator, value-equal to num/den."""
    return RatFunc(num, den)


# -------------------------------------------------------------------------
# pole sites
# -------------------------------------------------------------------------
RATIONAL_ROOT = "rational-root"
QUADRATIC_PAIR = "quadratic-conjugate-pair"
INFINITY = "infinity"


@dataclass(frozen=True)
class PoleSite:
    """A point of the projective line where a rational function is examined.

    For a finite site ``order`` is the pole multiplicity and ``point`` the exact
    location (a surd for one root of an irreducible quadratic).  For infinity
    ``order`` is deg(den) - deg(num).
    """

    kind: str
    location: Any
    order: int
    point: Any = None

    @property
    def is_infinity(self) -> bool:
        return self.kind == INFINITY

    def label(self) -> str:
        if self.is_infinity:
            return "infinity"
        from liouville.algebra.numbers import render_number

        return render_number(self.point)

    def local_parameter(self) -> RatFunc:
        """x - c for a finite site and 1/x at infinity."""
        if self.is_infinity:
            return RatFunc(Poly((1,)), Poly.x())
        return RatFunc(Poly((-self.point, 1)))


def ordinary_site(c) -> PoleSite:
    return PoleSite(RATIONAL_ROOT, c, 0, c)


def infinity_site(r: RatFunc) -> PoleSite:
    if r.is_zero():
        # the zero function vanishes to every order; treat it as a high-order zero
        return PoleSite(INFINITY, None, 10**9)
    return PoleSite(INFINITY, None, r.den.degree - r.num.degree)


def _quadratic_roots(q: Poly):
    c, b, _ = q.coeffs
    disc = b * b - 4 * c
    s = sqrt_rational(disc)
    return ((-b + s) / 2, (-b - s) / 2)


def pole_sites(r: RatFunc) -> list[PoleSite]:
    """Finite poles of r, rational roots first, each quadratic root separately."""
    if not r.den.is_rational():
        raise UnsupportedPoleField("denominator has irrational coefficients")
    sites = []
    for f, mult in sorted(irreducible_factors(r.den), key=lambda fm: (fm[0].degree, -fm[0].coeffs[0] if fm[0].degree == 1 else 0)):
        if f.degree == 1:
            c = -f.coeffs[0]
            sites.append(PoleSite(RATIONAL_ROOT, c, mult, c))
        else:
            for root in _quadratic_roots(f):
                sites.append(PoleSite(QUADRATIC_PAIR, f, mult, root))
    return sites


# -------------------------------------------------------------------------
# Laurent expansions
# -------------------------------------------------------------------------
@dataclass(frozen=True)
class Laurent:
    """Truncated Laurent series: coeffs[i] multiplies z**(start + i)."""

    start: int
    coeffs: tuple

    def coeff(self, k: int):
        i = k - self.start
        if i < 0:
            return Fraction(0)
        if i >= len(self.coeffs):
            raise IndexError(f"coefficient of z^{k} beyond computed depth")
        return self.coeffs[i]

    @property
    def stop(self) -> int:
        return self.start + len(self.coeffs)

    def leading(self):
        return self.coeffs[0] if self.coeffs else Fraction(0)


def _series_div(num: list, den: list, n: int) -> list:
    """First n coefficients of num/den as power series, den[0] != 0."""
    inv0 = 1 / den[0]
    out = []
    for k in range(n):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            if den[j] and out[k - j]:
                acc = acc - den[j] * out[k - j]
        out.append(acc * inv0 if acc else Fraction(0))
    return out


def laurent_at(r: RatFunc, site: PoleSite, depth: int) -> Laurent:
    """Laurent series of r in the local parameter at ``site``.

    The list starts at z**(-order) (z**order at infinity, z = 1/x) and runs
    through z**(depth - 1).
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if site.is_infinity:
        if r.is_zero():
            return Laurent(site.order if site.order < 10**8 else depth, ())
        nd, dd = r.num.degree, r.den.degree
        num = list(r.num.reverse().coeffs)
        den = list(r.den.reverse().coeffs)
        start = dd - nd
        count = max(depth - start, 0)
        return Laurent(start, tuple(_series_div(num, den, count)))
    c = site.point
    num = r.num.shift(c)
    den = r.den.shift(c)
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    k = den.valuation()
    if r.is_zero():
        return Laurent(-k, tuple(Fraction(0) for _ in range(max(depth + k, 0))))
    start = -max(site.order, k)
    if k != site.order and site.order:
        raise ValueError(f"site order {site.order} does not match pole order {k}")
    dcs = list(den.coeffs[k:])
    # r = num / (z^k * D) ; shift so that the list starts at z^start
    ncs = list(num.coeffs)
    pad = -start - k
    ncs = [Fraction(0)] * pad + ncs if pad >= 0 else ncs[-pad:]
    count = max(depth - start, 0)
    return Laurent(start, tuple(_series_div(ncs, dcs, count)))


# -------------------------------------------------------------------------
# partial fractions
# -------------------------------------------------------------------------
@dataclass(frozen=True)
class FractionTerm:
    """coeff / (x - site.point)**power, or coeff * x**power for the polynomial part."""

    site: PoleSite
    power: int
    coeff: Any

    def as_ratfunc(self) -> RatFunc:
        if self.site.is_infinity:
            return RatFunc(Poly.monomial(self.power, self.coeff))
        base = Poly((-self.site.point, 1)) ** self.power
        return RatFunc(Poly.const(self.coeff), base)


def partial_fractions(r: RatFunc) -> list[FractionTerm]:
    """Exact decomposition; polynomial-part terms use the infinity site."""
    q, rem = divmod(r.num, r.den)
    terms = []
    inf = infinity_site(r)
    for i, c in enumerate(q.coeffs):
        if c:
            terms.append(FractionTerm(inf, i, c))
    proper = RatFunc(rem, r.den, _normalized=True) if rem else None
    if proper is None:
        return terms
    for site in pole_sites(r):
        lau = laurent_at(proper, site, 1)
        for j in range(site.order, 0, -1):
            c = lau.coeff(-j)
            if c:
                terms.append(FractionTerm(site, j, c))
    return terms


def reconstruct(terms: list[FractionTerm]) -> RatFunc:
    acc = RatFunc.const(0)
    for t in terms:
        acc = acc + t.as_ratfunc()
    return acc


# -------------------------------------------------------------------------
# integration
# -------------------------------------------------------------------------
@dataclass
class RationalIntegral:
    """∫R = rational_part + ∫log_integrand with log_integrand having simple poles only."""

    rational_part: RatFunc
    log_integrand: RatFunc
    polynomial_part: Poly = field(default_factory=Poly)

    @property
    def has_log(self) -> bool:
        return not self.log_integrand.is_zero()


def _integrate_poly(p: Poly) -> Poly:
    return Poly([Fraction(0)] + [c / (i + 1) for i, c in enumerate(p.coeffs)])


def hermite_reduce(R: RatFunc) -> RationalIntegral:
    """Hermite reduction over the coefficient field; no factorization needed."""
    q, a = divmod(R.num, R.den)
    d = R.den
    g = RatFunc.const(0)
    dm = poly_gcd(d, d.derivative())
    ds = d.exact_div(dm)
    while dm.degree > 0:
        dm2 = poly_gcd(dm, dm.derivative())
        dms = dm.exact_div(dm2)
        u = -(ds * dm.derivative()).exact_div(dm)
        # b*u + c*dms = a with deg b < deg dms
        one, s0, _ = poly_xgcd(u, dms)
        if one.degree != 0:
            raise ArithmeticError("Hermite reduction: non-coprime step")
        b = (s0 * a) % dms
        c = (a - b * u).exact_div(dms)
        a = c - b.derivative() * ds.exact_div(dms)
        g = g + RatFunc(b, dm)
        dm = dm2
    qq, a = divmod(a, ds)
    q = q + qq
    log_part = RatFunc(a, ds) if a else RatFunc.const(0)
    return RationalIntegral(g + RatFunc(_integrate_poly(q)), log_part, q)
