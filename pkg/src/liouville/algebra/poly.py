"""Dense univariate polynomials over exact coefficient fields.

Coefficients may be ``Fraction``, ``SurdSum``, ``RatFunc`` or even ``Poly``
(for polynomials in a second variable); only ring operations and a zero test
are required, plus division for ``divmod`` and ``gcd``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from liouville.algebra.numbers import SurdSum, render_number
from liouville.errors import UnsupportedPoleField


def _coerce(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    return c


class Poly:
    """Polynomial with coefficients stored low degree first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c=1) -> "Poly":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    # basic properties -----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) or (isinstance(c, SurdSum) and c.is_rational) for c in self.coeffs)

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("valuation of the zero polynomial")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = _coerce(other)
            if not other:
                return Poly()
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly(out)

    def __rmul__(self, other):
        other = _coerce(other)
        if not other:
            return Poly()
        return Poly(other * c for c in self.coeffs)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        return self * c

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quot = [Fraction(0)] * (dq + 1)
        inv = 1 / other.lc if not isinstance(other.lc, Fraction) else Fraction(1) / other.lc
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1]
            if not c:
                continue
            q = c * inv
            quot[k] = q
            for j, b in enumerate(other.coeffs):
                if b:
                    rem[k + j] = rem[k + j] - q * b
        return Poly(quot), Poly(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __truediv__(self, c):
        if isinstance(c, Poly):
            return NotImplemented
        c = _coerce(c)
        return Poly(x / c for x in self.coeffs)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.lc
        if lc == 1:
            return self
        return Poly(c / lc for c in self.coeffs)

    def derivative(self) -> "Poly":
        return Poly(c * i for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.const(c)
        return acc

    def shift(self, c) -> "Poly":
        """p(x + c)."""
        return self.compose(Poly((c, 1)))

    def reverse(self, n: int | None = None) -> "Poly":
        """x^n p(1/x) with n defaulting to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Poly(reversed(cs[: n + 1]))

    def map(self, f) -> "Poly":
        return Poly(f(c) for c in self.coeffs)

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, SurdSum)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Poly", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Poly({self.render()})"

    def render(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if isinstance(c, Poly):
                cs = f"({c.render('y')})"
            else:
                cs = render_number(c)
                if any(ch in cs for ch in "+ ") or (cs.startswith("-") and i and ("/" in cs)):
                    cs = f"({cs})"
            if i == 0:
                parts.append(cs)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    __str__ = render


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over a field; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = Poly((1,)), Poly()
    t0, t1 = Poly(), Poly((1,))
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc
    return r0.monic(), s0 / lc, t0 / lc


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree factors with multiplicities (char 0)."""
    if p.degree < 1:
        return []
    p = p.monic()
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def _integer_coeffs(p: Poly) -> list[int]:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints] if g else ints


def _divisors(n: int, limit: int = 10**7) -> list[int] | None:
    n = abs(n)
    if n > limit:
        return None
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(p: Poly) -> list[Fraction] | None:
    """Distinct rational roots of a rational polynomial, or None if the search space is too large."""
    if p.degree < 1:
        return []
    ints = _integer_coeffs(p)
    roots: list[Fraction] = []
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    ints = ints[k:]
    if len(ints) == 1:
        return roots
    ps = _divisors(ints[0])
    qs = _divisors(ints[-1])
    if ps is None or qs is None:
        return None
    q = Poly(ints)
    for a in ps:
        for b in qs:
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if cand not in roots and not q(cand):
                    roots.append(cand)
    return sorted(roots)


def _sympy_factor(p: Poly) -> list[Poly]:
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(expr, x)
    out = []
    for f, mult in factors:
        cs = sympy.Poly(f, x).all_coeffs()[::-1]
        q = Poly(Fraction(int(c.p), int(c.q)) for c in cs).monic()
        out.extend([q] * mult)
    return out


def irreducible_factors(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors over Q of degree at most two, with multiplicities.

    Raises ``UnsupportedPoleField`` for an irreducible factor of degree three or more.
    """
    if not p.is_rational():
        raise UnsupportedPoleField("polynomial has irrational coefficients")
    p = p.map(lambda c: c if isinstance(c, Fraction) else c.rational_part)
    out: list[tuple[Poly, int]] = []
    for sq, mult in squarefree_decomposition(p):
        rest = sq
        roots = rational_roots(sq)
        if roots is None:
            pieces = _sympy_factor(sq)
        else:
            pieces = []
            for r in roots:
                lin = Poly((-r, 1))
                rest = rest.exact_div(lin)
                pieces.append(lin)
            if rest.degree >= 3:
                pieces.extend(_sympy_factor(rest))
            elif rest.degree >= 1:
                pieces.append(rest.monic())
        for f in pieces:
            if f.degree >= 3:
                raise UnsupportedPoleField(f"irreducible factor {f} of degree {f.degree}")
            out.append((f, mult))
    out.sort(key=lambda fm: (fm[0].degree, [c for c in fm[0].coeffs]))
    return out


def solve_linear(rows: Sequence[Sequence], rhs: Sequence):
    """Solve an exact linear system; returns (solution, nullity) or (None, nullity).

    Free variables are set to zero in the returned particular solution.
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [v * inv if v else v for v in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    nullity = ncols - len(pivots)
    for i in range(row, len(m)):
        if m[i][-1]:
            return None, nullity
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = m[i][-1]
    return sol, nullity
