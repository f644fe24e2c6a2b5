"""Galois group identification from Kovacic outcomes, and the reduction-of-order solution."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from liouville.algebra.numbers import SurdSum
from liouville.algebra.poly import Poly
from liouville.algebra.ratfunc import RatFunc, hermite_reduce
from liouville.errors import NotRationalWitness

E = "e"
G_K = "G_k"
C_STAR = "C*"
C_PLUS = "C+"
BOREL = "C*xC+"
SL2 = "SL2"
DIHEDRAL = "dihedral"
TETRAHEDRAL = "tetrahedral"
OCTAHEDRAL = "octahedral"
ICOSAHEDRAL = "icosahedral"

NON_ABELIAN_IDENTITY = {BOREL, SL2}
CASE3_GROUPS = {4: TETRAHEDRAL, 6: OCTAHEDRAL, 12: ICOSAHEDRAL}


@dataclass(frozen=True)
class GaloisGroupId:
    tag: str
    identity_component_abelian: bool
    k: int | None = None
    note: str = ""
    unclassifiable: bool = False

    @property
    def label(self) -> str:
        if self.tag == G_K:
            return f"G_{self.k}"
        if self.tag == BOREL:
            return "C* ⋉ C+"
        return self.tag

    def as_dict(self) -> dict:
        d = {"tag": self.tag, "label": self.label, "identity_component_abelian": self.identity_component_abelian}
        if self.k is not None:
            d["k"] = self.k
        if self.note:
            d["note"] = self.note
        if self.unclassifiable:
            d["unclassifiable"] = True
        return d


def make_group(tag: str, k: int | None = None, note: str = "", unclassifiable: bool = False) -> GaloisGroupId:
    return GaloisGroupId(tag, tag not in NON_ABELIAN_IDENTITY, k, note, unclassifiable)


@dataclass(frozen=True)
class SecondSolution:
    """xi2 = xi1 * ∫ dx / xi1^2 for a rational xi1."""

    xi1: RatFunc
    integral_rational_part: RatFunc
    has_log: bool
    xi2: RatFunc | None  # only when there is no logarithmic term

    def as_dict(self) -> dict:
        d = {"xi1": self.xi1.render(), "has_log_term": self.has_log}
        if self.xi2 is not None:
            d["xi2"] = self.xi2.render()
        return d


def algebraic_order(witness) -> int | None:
    """Smallest k with xi1^k rational for xi1 = P exp(∫omega), or None if xi1 is not algebraic."""
    omega = witness.omega
    if not omega.is_algebraic_exponential():
        return None
    k = 1
    for _, alpha in omega.residues:
        if isinstance(alpha, SurdSum):
            if not alpha.is_rational:
                return None
            alpha = alpha.rational_part
        if not isinstance(alpha, (Fraction, int)):
            return None
        alpha = Fraction(alpha)
        k = k * alpha.denominator // math.gcd(k, alpha.denominator)
    return k


def rational_solution(witness) -> RatFunc:
    """xi1 as an explicit rational function; requires integer residues only."""
    if algebraic_order(witness) != 1:
        raise NotRationalWitness("first solution is not a rational function")
    xi = RatFunc(witness.P)
    for site, alpha in witness.omega.residues:
        a = int(alpha if isinstance(alpha, (int, Fraction)) else alpha.rational_part)
        lin = RatFunc(Poly((-site.point, 1)))
        xi = xi * lin ** a
    return xi


def second_solution(witness) -> SecondSolution:
    xi1 = rational_solution(witness)
    integrand = (xi1 * xi1).inverse()
    integral = hermite_reduce(integrand)
    xi2 = None if integral.has_log else xi1 * integral.rational_part
    return SecondSolution(xi1, integral.rational_part, integral.has_log, xi2)


def identify_group(outcome) -> GaloisGroupId:
    if outcome.case_used is None:
        return make_group(SL2)
    if outcome.case_used == 2:
        return make_group(DIHEDRAL)
    if outcome.case_used == 3:
        return make_group(CASE3_GROUPS[outcome.n])
    witnesses = outcome.witnesses
    logs = []
    for w in witnesses:
        ld = w.log_derivative()
        if ld not in logs:
            logs.append(ld)
    two = len(logs) >= 2 or any(w.nullity > 0 for w in witnesses)
    orders = [algebraic_order(w) for w in witnesses]
    if all(k is None for k in orders):
        k = None
    else:
        known = [k for k in orders if k is not None]
        k = min(known)
    if two:
        if k == 1:
            return make_group(E, note="two rational solutions")
        if k is not None:
            return make_group(G_K, k, note="diagonal: two algebraic solutions")
        return make_group(C_STAR, note="two non-algebraic exponential solutions")
    if k == 1:
        sec = outcome.second_solution
        if sec is None:
            sec = second_solution(witnesses[0])
        if sec.has_log:
            return make_group(C_PLUS, note="second solution has a logarithmic term")
        return make_group(E, note="second solution is rational")
    if k is not None:
        return make_group(G_K, k)
    return make_group(BOREL, note="one exponential solution, neither it nor its square is rational")
