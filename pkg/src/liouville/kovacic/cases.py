"""The three solvable cases of Kovacic's algorithm for y'' = r y."""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from liouville.algebra.numbers import SurdSum, _mul_radicands, integer_value, render_number
from liouville.algebra.poly import Poly, poly_gcd, solve_linear
from liouville.algebra.ratfunc import RatFunc
from liouville.kovacic.exponents import ExponentData, SiteExponents, case2_set, case3_possible, case3_set

DEFAULT_MAX_DEGREE = 200

# Sign in front of ((n-i)S' - S*theta) P_i in the case-3 recursion.  The
# opposite sign fails on the tetrahedral/octahedral/icosahedral test equations.
CASE3_RECURSION_SIGN = +1


def resolve_max_degree(max_degree: int | None = None) -> int:
    if max_degree is not None:
        return int(max_degree)
    env = os.environ.get("LIOUVILLE_MAX_DEGREE")
    if env:
        return int(env)
    return DEFAULT_MAX_DEGREE


@dataclass(frozen=True)
class AuditEntry:
    case: int
    m: int
    choice: str
    result: str  # "solution", "no-polynomial", "skipped-degree-cap", "riccati-check-failed"

    def as_dict(self) -> dict:
        return {"case": self.case, "m": self.m, "choice": self.choice, "result": self.result}


# -------------------------------------------------------------------------
# linear algebra for the monic polynomial
# -------------------------------------------------------------------------
def _poly_lcm(a: Poly, b: Poly) -> Poly:
    g = poly_gcd(a, b)
    return (a * b).exact_div(g).monic()


def _nth_derivative(p: Poly, k: int) -> Poly:
    for _ in range(k):
        p = p.derivative()
    return p


def operator_images(coeffs: list[RatFunc], m: int) -> list[Poly]:
    """Images of 1, x, ..., x^m under sum(coeffs[d] * D^d), denominators cleared.

    ``coeffs[-1]`` is the leading coefficient (usually 1).
    """
    M = Poly((1,))
    for c in coeffs:
        M = _poly_lcm(M, c.den)
    lifted = [c.num * M.exact_div(c.den) for c in coeffs]
    out = []
    for j in range(m + 1):
        mono = Poly.monomial(j)
        acc = Poly()
        for d, c in enumerate(lifted):
            if c:
                dm = _nth_derivative(mono, d)
                if dm:
                    acc = acc + c * dm
        out.append(acc)
    return out


def solve_monic_from_images(images: list[Poly]):
    """Monic P of degree m = len(images)-1 with sum p_j images[j] = 0; returns (P, nullity)."""
    m = len(images) - 1
    if m == 0:
        return (Poly((1,)), 0) if images[0].is_zero() else (None, 0)
    rows_n = max((im.degree for im in images), default=-1) + 1
    if rows_n <= 0:
        sol = [Fraction(0)] * m
        return Poly(sol + [1]), m
    rows = [[images[j].coeff(i) for j in range(m)] for i in range(rows_n)]
    rhs = [-images[m].coeff(i) for i in range(rows_n)]
    sol, nullity = solve_linear(rows, rhs)
    if sol is None:
        return None, nullity
    return Poly(list(sol) + [1]), nullity


# -------------------------------------------------------------------------
# case 1
# -------------------------------------------------------------------------
@dataclass(frozen=True)
class Case1Omega:
    """omega = eps(inf)[sqrt r]_inf + sum(eps(c)[sqrt r]_c + alpha_c/(x-c))."""

    ratfunc: RatFunc
    signs: tuple
    poly_part: tuple  # (power of x, coeff)
    principal: tuple  # (site, ((power of (x-c), coeff), ...))
    residues: tuple  # (site, alpha)

    def is_algebraic_exponential(self) -> bool:
        """True when exp(∫omega) is a product of powers (x-c)^alpha."""
        return not self.poly_part and not any(parts for _, parts in self.principal)

    def render(self, var: str = "x") -> str:
        return self.ratfunc.render(var)


@dataclass(frozen=True)
class Case1Witness:
    m: int
    omega: Case1Omega
    P: Poly
    nullity: int

    def log_derivative(self) -> RatFunc:
        return self.omega.ratfunc + RatFunc(self.P.derivative(), self.P)


def case1_residual(r: RatFunc, omega: RatFunc, P: Poly) -> RatFunc:
    """P'' + 2 omega P' + (omega' + omega^2 - r) P, exactly."""
    Pr = RatFunc(P)
    return (
        RatFunc(P.derivative().derivative())
        + omega * 2 * RatFunc(P.derivative())
        + (omega.derivative() + omega * omega - r) * Pr
    )


@dataclass(frozen=True)
class Case1Candidate:
    m: int
    choices: tuple  # ((SiteExponents, sign, alpha), ...) with infinity first

    def label(self) -> str:
        return ",".join(f"{c[0].site.label()}:{c[1]}" for c in self.choices)


def case1_candidates(data: ExponentData) -> list[Case1Candidate]:
    """All sign assignments with m a non-negative integer, ascending in m."""
    if not data.case1_possible:
        return []
    sites = data.sites()
    options = [s.alphas() for s in sites]
    out = []
    for combo in itertools.product(*options):
        total = combo[0][1]
        for _, alpha in combo[1:]:
            total = total - alpha
        m = integer_value(total)
        if m is None or m < 0:
            continue
        choices = tuple((s, sign, alpha) for s, (sign, alpha) in zip(sites, combo))
        out.append(Case1Candidate(m, choices))
    out.sort(key=lambda c: c.m)
    return out


def build_case1_omega(candidate: Case1Candidate) -> Case1Omega:
    acc = RatFunc.const(0)
    signs = []
    poly_part = ()
    principal = []
    residues = []
    for site_data, sign, alpha in candidate.choices:
        eps = 1 if sign == "+" else -1
        signs.append(sign)
        part = site_data.sqrt_ratfunc() * eps if site_data.sqrt_part else RatFunc.const(0)
        if site_data.site.is_infinity:
            poly_part = tuple((-p, c * eps) for p, c in site_data.sqrt_part)
            acc = acc + part
            continue
        principal.append((site_data.site, tuple((p, c * eps) for p, c in site_data.sqrt_part)))
        residues.append((site_data.site, alpha))
        acc = acc + part + RatFunc(Poly.const(alpha), Poly((-site_data.site.point, 1)))
    return Case1Omega(acc, tuple(signs), poly_part, tuple(principal), tuple(residues))


def solve_monic_case1(r: RatFunc, omega: RatFunc, m: int):
    q = omega.derivative() + omega * omega - r
    images = operator_images([q, omega * 2, RatFunc.const(1)], m)
    return solve_monic_from_images(images)


def run_case1(data: ExponentData, cap: int, audit: list, skipped: list) -> list[Case1Witness]:
    found = []
    for cand in case1_candidates(data):
        if cand.m > cap:
            skipped.append(cand.m)
            audit.append(AuditEntry(1, cand.m, cand.label(), "skipped-degree-cap"))
            continue
        omega = build_case1_omega(cand)
        P, nullity = solve_monic_case1(data.r, omega.ratfunc, cand.m)
        if P is None:
            audit.append(AuditEntry(1, cand.m, cand.label(), "no-polynomial"))
            continue
        audit.append(AuditEntry(1, cand.m, cand.label(), "solution"))
        found.append(Case1Witness(cand.m, omega, P, nullity))
    return found


# -------------------------------------------------------------------------
# E-set enumeration shared by cases 2 and 3
# -------------------------------------------------------------------------
def _enumerate_sums(sets: list[list[int]], target: int):
    """Tuples (e_1..e_k), one from each set, summing to target, in set order."""
    k = len(sets)
    reach = [set() for _ in range(k + 1)]
    reach[k] = {0}
    for i in range(k - 1, -1, -1):
        reach[i] = {e + s for e in sets[i] for s in reach[i + 1]}
    if target not in reach[0]:
        return
    stack = [(0, target, ())]

    def rec(i, remaining, prefix):
        if i == k:
            yield prefix
            return
        for e in sets[i]:
            if remaining - e in reach[i + 1]:
                yield from rec(i + 1, remaining - e, prefix + (e,))

    del stack
    yield from rec(0, target, ())


def _e_candidates(e_inf: list[int], e_fin: list[list[int]], scale: Fraction, cap: int):
    """(m, e_inf, e_c tuple) with m = scale*(e_inf - sum e_c) a non-negative integer.

    Candidates with m above ``cap`` are returned separately as bare degrees.
    """
    fin_sums = {0}
    for s in e_fin:
        fin_sums = {a + b for a in fin_sums for b in s}
    out = []
    skipped = []
    for ei in e_inf:
        for total in sorted(fin_sums):
            mq = scale * (ei - total)
            if mq.denominator != 1 or mq < 0:
                continue
            m = int(mq)
            if m > cap:
                skipped.append(m)
                continue
            for combo in _enumerate_sums(e_fin, total):
                out.append((m, ei, combo))
    out.sort(key=lambda t: t[0])
    return out, sorted(set(skipped))


def _theta(data: ExponentData, es, scale: Fraction) -> RatFunc:
    acc = RatFunc.const(0)
    for site_data, e in zip(data.finite, es):
        if e:
            acc = acc + RatFunc(Poly.const(scale * e), Poly((-site_data.site.point, 1)))
    return acc


@dataclass(frozen=True)
class AlgebraicOmega:
    """omega is a root of sum(coefficients[i] * w^i) with coefficients in K[x]."""

    degree: int
    coefficients: tuple  # Poly in x, low degree in w first
    theta: RatFunc
    e_infinity: int
    e_finite: tuple

    def defining_poly(self) -> Poly:
        """Monic in w, with rational-function coefficients."""
        lead = RatFunc(self.coefficients[-1])
        return Poly(RatFunc(c) / lead for c in self.coefficients)

    def render(self, var: str = "x") -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c.is_zero():
                continue
            w = "w" if i == 1 else (f"w^{i}" if i else "")
            cs = c.render(var)
            if i and cs == "1":
                terms.append(w)
            else:
                terms.append(f"({cs})" + (f"*{w}" if w else ""))
        return " + ".join(terms) + " = 0"


@dataclass(frozen=True)
class AlgebraicWitness:
    case: int
    m: int
    n: int
    P: Poly
    omega: AlgebraicOmega


def _pseudo_remainder(A: list, B: list) -> list:
    """Pseudo-remainder of A by B, both lists of Poly coefficients (low degree first)."""
    R = list(A)
    lb = B[-1]
    db = len(B) - 1
    while R and R[-1].is_zero():
        R.pop()
    while len(R) - 1 >= db:
        lr = R[-1]
        shift = len(R) - 1 - db
        R = [c * lb for c in R]
        for k, bc in enumerate(B):
            if not bc.is_zero():
                R[k + shift] = R[k + shift] - lr * bc
        while R and R[-1].is_zero():
            R.pop()
    return R


def riccati_check(r: RatFunc, coeffs) -> bool:
    """True when F = sum(coeffs[i] w^i) divides F_x + (r - w^2) F_w.

    Then every root w of F satisfies w' + w^2 = r.  Coefficients may be Poly
    or RatFunc; denominators are cleared first.
    """
    rf = [c if isinstance(c, RatFunc) else RatFunc(c) for c in coeffs]
    M = Poly((1,))
    for c in rf:
        M = _poly_lcm(M, c.den)
    F = [c.num * M.exact_div(c.den) for c in rf]
    s, t = r.num, r.den
    n = len(F) - 1
    Fx = [c.derivative() for c in F]
    Fw = [F[i] * i for i in range(1, n + 1)]
    # t*G = t*F_x + (s - t w^2) F_w
    G = [Poly() for _ in range(n + 2)]
    for i, c in enumerate(Fx):
        G[i] = G[i] + t * c
    for i, c in enumerate(Fw):
        G[i] = G[i] + s * c
        G[i + 2] = G[i + 2] - t * c
    return not _pseudo_remainder(G, F)


def _case2_coeffs(r: RatFunc, theta: RatFunc) -> list[RatFunc]:
    t1 = theta.derivative()
    t2 = t1.derivative()
    c3 = RatFunc.const(1)
    c2 = theta * 3
    c1 = t1 * 3 + theta * theta * 3 - r * 4
    c0 = t2 + theta * t1 * 3 + theta * theta * theta - r * theta * 4 - r.derivative() * 2
    return [c0, c1, c2, c3]


def run_case2(data: ExponentData, cap: int, audit: list, skipped: list) -> AlgebraicWitness | None:
    r = data.r
    e_inf = case2_set(data.infinity)
    e_fin = [case2_set(s) for s in data.finite]
    cands, skip = _e_candidates(e_inf, e_fin, Fraction(1, 2), cap)
    for m in skip:
        skipped.append(m)
        audit.append(AuditEntry(2, m, "", "skipped-degree-cap"))
    for m, ei, es in cands:
        label = f"e_inf={ei};e_c={list(es)}"
        theta = _theta(data, es, Fraction(1, 2))
        images = operator_images(_case2_coeffs(r, theta), m)
        P, _ = solve_monic_from_images(images)
        if P is None:
            audit.append(AuditEntry(2, m, label, "no-polynomial"))
            continue
        phi = theta + RatFunc(P.derivative(), P)
        c0 = (phi.derivative() + phi * phi - r * 2) * Fraction(1, 2)
        M = _poly_lcm(c0.den, phi.den)
        coeffs = (c0.num * M.exact_div(c0.den), -phi.num * M.exact_div(phi.den), M)
        if not riccati_check(r, coeffs):
            audit.append(AuditEntry(2, m, label, "riccati-check-failed"))
            continue
        audit.append(AuditEntry(2, m, label, "solution"))
        return AlgebraicWitness(2, m, 2, P, AlgebraicOmega(2, coeffs, theta, ei, tuple(es)))
    return None


def _as_poly(f: RatFunc) -> Poly:
    if f.den.degree != 0:
        raise ArithmeticError("expected a polynomial")
    return f.num / f.den.coeff(0)


def case3_chain(P: Poly, S: Poly, Stheta: Poly, S2r: Poly, n: int, sign: int = CASE3_RECURSION_SIGN):
    """P_n, P_(n-1), ..., P_(-1) from the recursion; returned indexed by i+1."""
    dS = S.derivative()
    chain = {n: -P, n + 1: Poly()}
    for i in range(n, -1, -1):
        Pi = chain[i]
        nxt = chain[i + 1]
        val = -(S * Pi.derivative()) + ((dS * (n - i) - Stheta) * Pi) * sign - (S2r * nxt) * ((n - i) * (i + 1))
        chain[i - 1] = val
    return chain


def _imul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _iadd(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _iscale(a: list, c: int) -> list:
    return [c * x for x in a]


def _ideriv(a: list) -> list:
    return [i * a[i] for i in range(1, len(a))]


def _smul(A: dict, B: dict) -> dict:
    """Product of polynomials written as {radicand: integer coefficient list}."""
    out: dict = {}
    for d, pa in A.items():
        for f, pb in B.items():
            c, e = _mul_radicands(d, f)
            out[e] = _iadd(out.get(e, []), _iscale(_imul(pa, pb), c))
    return {d: p for d, p in out.items() if any(p)}


def _sadd(A: dict, B: dict) -> dict:
    out = dict(A)
    for d, p in B.items():
        out[d] = _iadd(out.get(d, []), p)
    return {d: p for d, p in out.items() if any(p)}


def _sscale(A: dict, c: int) -> dict:
    return {d: _iscale(p, c) for d, p in A.items()} if c else {}


def _case3_tail_surd(P: dict, LS: dict, LdS: dict, LSt: dict, L2S2r: dict, n: int, sign: int) -> dict:
    """Same recursion as ``_case3_tail_int`` with coefficients in Z[sqrt(d), ...]."""
    Q = {n: _sscale(P, -1), n + 1: {}}
    for i in range(n, -1, -1):
        Qi = Q[i]
        dQ = {d: _ideriv(p) for d, p in Qi.items()}
        term = _sscale(_smul(LS, dQ), -1)
        mid = _sadd(_sscale(LdS, n - i), _sscale(LSt, -1))
        term = _sadd(term, _sscale(_smul(mid, Qi), sign))
        if Q[i + 1]:
            term = _sadd(term, _sscale(_smul(L2S2r, Q[i + 1]), -(n - i) * (i + 1)))
        Q[i - 1] = term
    return Q[-1]


def _integer_scaled(polys: list[Poly]):
    """Common multiplier L and the coefficient lists of L*p over the integers.

    Lists of ints when every input is rational, else {radicand: list of ints}.
    """
    L = 1
    rational = True
    for p in polys:
        for c in p.coeffs:
            if isinstance(c, SurdSum):
                rational = False
                dens = [c.rational_part.denominator] + [q.denominator for _, q in c.irrational_terms]
            else:
                dens = [Fraction(c).denominator]
            for dn in dens:
                L = L * dn // math.gcd(L, dn)

    if rational:
        return L, True, [[int(c * L) for c in p.coeffs] for p in polys]
    out = []
    for p in polys:
        parts: dict = {}
        for k, c in enumerate(p.coeffs):
            pairs = [(1, c.rational_part)] + list(c.irrational_terms) if isinstance(c, SurdSum) else [(1, c)]
            for d, q in pairs:
                lst = parts.setdefault(d, [0] * len(p.coeffs))
                lst[k] = int(q * L)
        out.append({d: lst for d, lst in parts.items() if any(lst)})
    return L, False, out


def _case3_tail_int(P: list, LS: list, LdS: list, LSt: list, L2S2r: list, n: int, sign: int) -> list:
    """Q_(-1) for Q_i = L^(n-i) P_i, all in integer arithmetic."""
    Q = {n: [-c for c in P], n + 1: []}
    for i in range(n, -1, -1):
        Qi = Q[i]
        term = _iscale(_imul(LS, _ideriv(Qi)), -1)
        mid = _iadd(_iscale(LdS, n - i), _iscale(LSt, -1))
        term = _iadd(term, _iscale(_imul(mid, Qi), sign))
        if Q[i + 1]:
            term = _iadd(term, _iscale(_imul(L2S2r, Q[i + 1]), -(n - i) * (i + 1)))
        Q[i - 1] = term
    return Q[-1]


def _case3_tails(m: int, S: Poly, Stheta: Poly, S2r: Poly, n: int) -> list[Poly]:
    try:
        L, rational, (LS, LdS, LSt, LS2r) = _integer_scaled([S, S.derivative(), Stheta, S2r])
    except TypeError:
        return [case3_chain(Poly.monomial(j), S, Stheta, S2r, n)[-1] for j in range(m + 1)]
    out = []
    if rational:
        L2S2r = _iscale(LS2r, L)
        for j in range(m + 1):
            out.append(Poly(_case3_tail_int([0] * j + [1], LS, LdS, LSt, L2S2r, n, CASE3_RECURSION_SIGN)))
        return out
    L2S2r = _sscale(LS2r, L)
    for j in range(m + 1):
        tail = _case3_tail_surd({1: [0] * j + [1]}, LS, LdS, LSt, L2S2r, n, CASE3_RECURSION_SIGN)
        size = max((len(p) for p in tail.values()), default=0)
        coeffs = [SurdSum(tail.get(1, [0] * size)[k] if k < len(tail.get(1, [])) else 0,
                          {d: p[k] for d, p in tail.items() if d != 1 and k < len(p)}) for k in range(size)]
        out.append(Poly(coeffs))
    return out


def run_case3(data: ExponentData, n: int, cap: int, audit: list, skipped: list) -> AlgebraicWitness | None:
    r = data.r
    S = Poly((1,))
    for s in data.finite:
        S = S * Poly((-s.site.point, 1))
    e_inf = case3_set(data.infinity, n)
    e_fin = [case3_set(s, n) for s in data.finite]
    cands, skip = _e_candidates(e_inf, e_fin, Fraction(n, 12), cap)
    for m in skip:
        skipped.append(m)
        audit.append(AuditEntry(3, m, f"n={n}", "skipped-degree-cap"))
    S2r = _as_poly(r * RatFunc(S * S))
    # S*theta is a polynomial: sum of scale*e_c * S/(x - c)
    cofactors = [S.exact_div(Poly((-s.site.point, 1))) for s in data.finite]
    scale = Fraction(n, 12)
    for m, ei, es in cands:
        label = f"n={n};e_inf={ei};e_c={list(es)}"
        Stheta = Poly()
        for cof, e in zip(cofactors, es):
            if e:
                Stheta = Stheta + cof * (scale * e)
        tails = _case3_tails(m, S, Stheta, S2r, n)
        P, _ = solve_monic_from_images(tails)
        if P is None:
            audit.append(AuditEntry(3, m, label, "no-polynomial"))
            continue
        chain = case3_chain(P, S, Stheta, S2r, n)
        coeffs = tuple(S ** i * chain[i] * Fraction(1, math.factorial(n - i)) for i in range(n + 1))
        if not riccati_check(r, coeffs):
            audit.append(AuditEntry(3, m, label, "riccati-check-failed"))
            continue
        audit.append(AuditEntry(3, m, label, "solution"))
        theta = _theta(data, es, scale)
        return AlgebraicWitness(3, m, n, P, AlgebraicOmega(n, coeffs, theta, ei, tuple(es)))
    return None


def describe_choice(site_data: SiteExponents, sign: str, alpha: Any) -> dict:
    return {"site": site_data.site.label(), "sign": sign, "alpha": render_number(alpha)}
