"""Exact numbers: rationals extended by square roots of rationals.

``SurdSum`` is an element ``q0 + sum(q_d * sqrt(d))`` over squarefree integer
radicands ``d`` (negative radicands are imaginary: ``sqrt(-3) = i*sqrt(3)``).
The square roots of distinct squarefree integers are linearly independent
over the rationals, so the representation is canonical and equality is exact.
The set of such sums is a field; division uses repeated conjugation.

Arithmetic on a ``SurdSum`` returns a plain ``Fraction`` whenever the result is
rational, so callers mostly see ``Fraction`` and only pay for surds when they
appear.

``NestedSurd`` adds formal square roots of field elements that are not squares
in the field (for instance ``sqrt(1 + 4*w2)`` with ``w2`` itself a surd).  It
supports the additive operations needed for integrality tests only.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

from liouville.errors import UnsupportedPoleField

Number = Union[int, Fraction, "SurdSum"]


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d``, ``s > 0`` and ``d`` squarefree (sign kept in ``d``)."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    sign = -1 if n < 0 else 1
    m = abs(n)
    s = 1
    d = 1
    p = 2
    # trial division up to the cube root; the cofactor then has at most two prime factors
    while p * p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    if m > 1:
        r = math.isqrt(m)
        if r * r == m:
            s *= r
        else:
            d *= m
    return s, sign * d


def _mul_radicands(d: int, f: int) -> tuple[int, int]:
    """sqrt(d)*sqrt(f) == c*sqrt(e) for squarefree d, f; returns (c, e)."""
    g = math.gcd(d, f)
    e = (d // g) * (f // g)
    c = g
    if d < 0 and f < 0:
        c = -g
    return c, e


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def _make(rat: Fraction, terms: dict[int, Fraction]) -> Number:
    clean = {d: q for d, q in terms.items() if q}
    if not clean:
        return rat
    return SurdSum(rat, clean)


class SurdSum:
    """``rational_part + sum(coeff * sqrt(radicand))``; immutable and hashable."""

    __slots__ = ("rational_part", "irrational_terms", "_hash")

    def __init__(self, rational_part=0, irrational_terms=None):
        rat = _as_fraction(rational_part)
        acc: dict[int, Fraction] = {}
        for d, q in dict(irrational_terms or {}).items():
            q = _as_fraction(q)
            if not q:
                continue
            s, sq = squarefree_split(int(d))
            if sq == 1:
                rat += q * s
                continue
            acc[sq] = acc.get(sq, Fraction(0)) + q * s
        self.rational_part = rat
        self.irrational_terms = tuple(sorted((d, q) for d, q in acc.items() if q))
        self._hash = None

    # construction helpers -------------------------------------------------
    @property
    def radicands(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.irrational_terms)

    @property
    def is_rational(self) -> bool:
        return not self.irrational_terms

    def terms_dict(self) -> dict[int, Fraction]:
        return dict(self.irrational_terms)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return _make(self.rational_part + other, self.terms_dict())
        if isinstance(other, SurdSum):
            t = self.terms_dict()
            for d, q in other.irrational_terms:
                t[d] = t.get(d, Fraction(0)) + q
            return _make(self.rational_part + other.rational_part, t)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return _make(-self.rational_part, {d: -q for d, q in self.irrational_terms})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, SurdSum)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            return _make(self.rational_part * other, {d: q * other for d, q in self.irrational_terms})
        if isinstance(other, SurdSum):
            a = [(1, self.rational_part)] + list(self.irrational_terms)
            b = [(1, other.rational_part)] + list(other.irrational_terms)
            rat = Fraction(0)
            t: dict[int, Fraction] = {}
            for d, p in a:
                if not p:
                    continue
                for f, q in b:
                    if not q:
                        continue
                    c, e = _mul_radicands(d, f)
                    v = p * q * c
                    if e == 1:
                        rat += v
                    else:
                        t[e] = t.get(e, Fraction(0)) + v
            return _make(rat, t)
        return NotImplemented

    __rmul__ = __mul__

    def _conjugate_at(self, g: int) -> "SurdSum":
        # flip the sign of every term containing the generator sqrt(g)
        if g == -1:
            flip = {d: (-q if d < 0 else q) for d, q in self.irrational_terms}
        else:
            flip = {d: (-q if d % g == 0 else q) for d, q in self.irrational_terms}
        return SurdSum(self.rational_part, flip)

    def inverse(self) -> Number:
        if not self.irrational_terms:
            if not self.rational_part:
                raise ZeroDivisionError("inverse of zero")
            return 1 / self.rational_part
        g = _pick_generator(self.radicands)
        conj = self._conjugate_at(g)
        norm = self * conj
        return conj * _inverse(norm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / other)
        if isinstance(other, SurdSum):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return _inverse(self) ** (-n)
        result: Number = Fraction(1)
        base: Number = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, SurdSum):
            return self.rational_part == other.rational_part and self.irrational_terms == other.irrational_terms
        if isinstance(other, (int, Fraction)):
            return not self.irrational_terms and self.rational_part == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not self.irrational_terms:
                self._hash = hash(self.rational_part)
            else:
                self._hash = hash((self.rational_part, self.irrational_terms))
        return self._hash

    def __bool__(self):
        return bool(self.rational_part) or bool(self.irrational_terms)

    def sort_key(self):
        return (self.rational_part, self.irrational_terms)

    # numerics -------------------------------------------------------------
    def __complex__(self):
        z = complex(float(self.rational_part))
        for d, q in self.irrational_terms:
            r = math.sqrt(abs(d)) * float(q)
            z += complex(0, r) if d < 0 else r
        return z

    def real_sign(self) -> int:
        """Exact sign of the real part."""
        real = [(d, q) for d, q in self.irrational_terms if d > 0]
        return _real_sign(self.rational_part, real)

    def imag_sign(self) -> int:
        imag = [(-d, q) for d, q in self.irrational_terms if d < 0]
        return _real_sign(Fraction(0), imag)

    def __repr__(self):
        return f"SurdSum({self})"

    def __str__(self):
        return render_number(self)


def _pick_generator(radicands) -> int:
    if any(d < 0 for d in radicands):
        return -1
    best = None
    for d in radicands:
        p = _smallest_prime(abs(d))
        if best is None or p < best:
            best = p
    return best


def _smallest_prime(n: int) -> int:
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


def _inverse(x: Number) -> Number:
    if isinstance(x, SurdSum):
        return x.inverse()
    x = _as_fraction(x)
    if not x:
        raise ZeroDivisionError("inverse of zero")
    return 1 / x


def _real_sign(rat: Fraction, terms: list[tuple[int, Fraction]]) -> int:
    if not terms:
        return (rat > 0) - (rat < 0)
    bits = 32
    while True:
        scale = 1 << bits
        lo = hi = rat
        for d, q in terms:
            root = math.isqrt(d * scale * scale)
            a = Fraction(root, scale)
            b = Fraction(root + 1, scale)
            if q > 0:
                lo += q * a
                hi += q * b
            else:
                lo += q * b
                hi += q * a
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
        if bits > 1 << 16:
            # nonzero by linear independence; this only guards against a bug
            raise ArithmeticError("sign refinement did not terminate")


def to_complex(x) -> complex:
    if isinstance(x, (int, Fraction)):
        return complex(float(x))
    return complex(x)


def is_rational(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return True
    if isinstance(x, SurdSum):
        return x.is_rational
    if isinstance(x, NestedSurd):
        return x.is_rational
    return False


def as_rational(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, SurdSum) and x.is_rational:
        return x.rational_part
    if isinstance(x, NestedSurd) and x.is_rational:
        return as_rational(x.base)
    raise ValueError(f"{x} is not rational")


def integer_value(x) -> int | None:
    """The integer equal to ``x`` if there is one, else ``None``."""
    if not is_rational(x):
        return None
    q = as_rational(x)
    if q.denominator != 1:
        return None
    return q.numerator


def surd(rat=0, coeff=0, radicand: int = 1) -> Number:
    """``rat + coeff*sqrt(radicand)`` in canonical form."""
    rat = _as_fraction(rat)
    coeff = _as_fraction(coeff)
    if not coeff:
        return rat
    return _make(*_norm_single(rat, coeff, radicand))


def _norm_single(rat, coeff, radicand):
    s, d = squarefree_split(int(radicand))
    if d == 1:
        return rat + coeff * s, {}
    return rat, {d: coeff * s}


def real_compare(a, b) -> int:
    """Exact comparison of real parts: -1, 0 or 1."""
    diff = a - b
    if isinstance(diff, SurdSum):
        return diff.real_sign()
    if isinstance(diff, NestedSurd):
        z = complex(diff)
        return (z.real > 0) - (z.real < 0)
    diff = _as_fraction(diff)
    return (diff > 0) - (diff < 0)


def sqrt_rational(q) -> Number:
    q = _as_fraction(q)
    if not q:
        return Fraction(0)
    n = q.numerator * q.denominator
    s, d = squarefree_split(n)
    return surd(0, Fraction(s, q.denominator), d) if d != 1 else Fraction(s, q.denominator)


def ksqrt(x) -> Number | None:
    """A square root of ``x`` inside the surd field, or ``None`` when it provably has none.

    Raises ``UnsupportedPoleField`` when membership cannot be decided
    (square roots of sums over several radicands).
    """
    if isinstance(x, (int, Fraction)):
        return sqrt_rational(x)
    if not isinstance(x, SurdSum):
        raise TypeError(f"cannot take square root of {x!r}")
    if x.is_rational:
        return sqrt_rational(x.rational_part)
    if len(x.irrational_terms) > 1:
        raise UnsupportedPoleField(f"square root of {x} needs a deeper number field")
    (d, b), = x.irrational_terms
    a = x.rational_part
    disc = a * a - b * b * d
    w = _rational_sqrt_exact(disc)
    if w is None:
        return None
    for u, v in (((a + w) / 2, (a - w) / 2), ((a - w) / 2, (a + w) / 2)):
        su, sv = sqrt_rational(u), sqrt_rational(v)
        for cand in (su + sv, su - sv):
            if cand * cand == x:
                if real_compare(cand, 0) < 0 or (real_compare(cand, 0) == 0 and _imag_sign(cand) < 0):
                    cand = -cand
                return cand
    return None


def _imag_sign(x) -> int:
    if isinstance(x, SurdSum):
        return x.imag_sign()
    return 0


def _rational_sqrt_exact(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# -------------------------------------------------------------------------
# formal extensions
# -------------------------------------------------------------------------
class RadicalPool:
    """Registry of formal square roots used within one computation.

    Generators are kept in distinct square classes, so formal parts of sums
    are linearly independent and vanish only when every coefficient does.
    """

    def __init__(self):
        self.generators: list[Number] = []

    def sqrt(self, x) -> "Number | NestedSurd":
        root = ksqrt(x)
        if root is not None:
            return root
        for idx, g in enumerate(self.generators):
            ratio = x / g
            r = ksqrt(ratio)
            if r is not None:
                return NestedSurd(Fraction(0), ((idx, r),), self)
        self.generators.append(x)
        return NestedSurd(Fraction(0), ((len(self.generators) - 1, Fraction(1)),), self)


class NestedSurd:
    """``base + sum(coeff * sqrt(generator))`` with generators from a ``RadicalPool``."""

    __slots__ = ("base", "terms", "pool")

    def __init__(self, base, terms, pool: RadicalPool):
        self.base = base
        self.terms = tuple(sorted((i, c) for i, c in terms if c))
        self.pool = pool

    @property
    def is_rational(self) -> bool:
        return not self.terms and is_rational(self.base)

    def reduce(self):
        """Collapse to a plain field element when no formal part remains."""
        return self.base if not self.terms else self

    def _combine(self, other, sign):
        if isinstance(other, NestedSurd):
            if other.pool is not self.pool:
                raise ValueError("nested surds from different pools")
            t = dict(self.terms)
            for i, c in other.terms:
                t[i] = t.get(i, Fraction(0)) + sign * c
            return NestedSurd(self.base + sign * other.base, tuple(t.items()), self.pool).reduce()
        if isinstance(other, (int, Fraction, SurdSum)):
            return NestedSurd(self.base + sign * other, self.terms, self.pool).reduce()
        return NotImplemented

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return NestedSurd(-self.base, tuple((i, -c) for i, c in self.terms), self.pool)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, SurdSum)):
            return NestedSurd(self.base * other, tuple((i, c * other) for i, c in self.terms), self.pool).reduce()
        if isinstance(other, NestedSurd) and not other.terms:
            return self * other.base
        if isinstance(other, NestedSurd) and not self.terms:
            return other * self.base
        raise UnsupportedPoleField("product of two nested radicals")

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, SurdSum)):
            inv = _inverse(other)
            return self * inv
        raise UnsupportedPoleField("division by a nested radical")

    def __eq__(self, other):
        if isinstance(other, NestedSurd):
            return self.pool is other.pool and self.base == other.base and self.terms == other.terms
        if isinstance(other, (int, Fraction, SurdSum)):
            return not self.terms and self.base == other
        return NotImplemented

    def __hash__(self):
        if not self.terms:
            return hash(self.base)
        return hash((self.base, self.terms))

    def __bool__(self):
        return bool(self.terms) or bool(self.base)

    def sort_key(self):
        return (number_sort_key(self.base), tuple((i, number_sort_key(c)) for i, c in self.terms))

    def __complex__(self):
        z = to_complex(self.base)
        for i, c in self.terms:
            z += to_complex(c) * cmath.sqrt(to_complex(self.pool.generators[i]))
        return z

    def __str__(self):
        parts = [] if not self.base else [render_number(self.base)]
        for i, c in self.terms:
            parts.append(f"{_paren(render_number(c))}*sqrt({render_number(self.pool.generators[i])})")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def number_sort_key(x):
    """Lexicographic (never numeric) ordering key for exact numbers."""
    if isinstance(x, (int, Fraction)):
        return (0, Fraction(x), ())
    if isinstance(x, SurdSum):
        return (1, x.rational_part, x.irrational_terms)
    if isinstance(x, NestedSurd):
        return (2,) + x.sort_key()
    raise TypeError(type(x))


def _paren(s: str) -> str:
    return f"({s})" if any(ch in s for ch in "+- ") else s


def render_number(x) -> str:
    """Text that the expression parser reads back to the same value."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, NestedSurd):
        return str(x)
    terms = []  # (coefficient, body or None)
    if x.rational_part:
        terms.append((x.rational_part, None))
    terms.extend((q, f"sqrt({d})") for d, q in x.irrational_terms)
    if not terms:
        return "0"
    out = ""
    for i, (q, body) in enumerate(terms):
        mag = abs(q)
        if body is None:
            text = str(mag)
        else:
            text = body if mag == 1 else f"{mag}*{body}"
        if i == 0:
            out = text if q > 0 else f"-{text}"
        else:
            out += f" + {text}" if q > 0 else f" - {text}"
    return out


def to_json_number(x):
    """JSON-friendly exact encoding (strings) plus a float approximation."""
    z = to_complex(x)
    out = {"exact": render_number(x)}
    if abs(z.imag) > 0:
        out["approx"] = [z.real, z.imag]
    else:
        out["approx"] = z.real
    return out
