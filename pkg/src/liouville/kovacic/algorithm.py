"""Driver: try cases 1, 2, 3 in order and package the outcome."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from liouville.algebra.poly import Poly
from liouville.algebra.ratfunc import RatFunc
from liouville.errors import DegreeBoundExceeded, NotRationalWitness
from liouville.kovacic.cases import (
    AlgebraicOmega,
    AuditEntry,
    Case1Omega,
    case3_possible,
    resolve_max_degree,
    run_case1,
    run_case2,
    run_case3,
)
from liouville.kovacic.exponents import ExponentData, exponent_data
from liouville.kovacic.groups import SecondSolution, second_solution


@dataclass
class KovacicOutcome:
    r: RatFunc
    case_used: int | None
    degree: int | None = None
    omega: Case1Omega | AlgebraicOmega | None = None
    P: Poly | None = None
    n: int | None = None
    witnesses: tuple = ()
    second_solution: SecondSolution | None = None
    audit: tuple = ()
    skipped_degrees: tuple = ()
    exponents: ExponentData | None = None
    notes: tuple = field(default_factory=tuple)

    @property
    def solvable(self) -> bool:
        return self.case_used is not None

    @property
    def solution_form(self) -> str:
        if self.case_used == 1:
            return "xi1 = P*exp(integral(omega))"
        if self.case_used in (2, 3):
            return "xi = exp(integral(omega)), omega a root of the defining polynomial"
        return "no Liouvillian solution"


def analyze(r: RatFunc, max_degree: int | None = None) -> KovacicOutcome:
    cap = resolve_max_degree(max_degree)
    data = exponent_data(r)
    audit: list[AuditEntry] = []
    skipped: list[int] = []
    notes: list[str] = []

    if data.case1_possible:
        found = run_case1(data, cap, audit, skipped)
        if found:
            first = found[0]
            sec = None
            try:
                sec = second_solution(first)
            except NotRationalWitness:
                pass
            return KovacicOutcome(
                r, 1, first.m, first.omega, first.P, None, tuple(found), sec,
                tuple(audit), tuple(sorted(set(skipped))), data, tuple(notes),
            )
    else:
        notes.append("case 1 excluded by pole orders")

    w = run_case2(data, cap, audit, skipped)
    if w is not None:
        notes.append("later cases not attempted")
        return KovacicOutcome(r, 2, w.m, w.omega, w.P, 2, (w,), None, tuple(audit),
                              tuple(sorted(set(skipped))), data, tuple(notes))

    if case3_possible(data):
        for n in (4, 6, 12):
            w = run_case3(data, n, cap, audit, skipped)
            if w is not None:
                return KovacicOutcome(r, 3, w.m, w.omega, w.P, n, (w,), None, tuple(audit),
                                      tuple(sorted(set(skipped))), data, tuple(notes))
    else:
        notes.append("case 3 excluded by pole orders")

    if skipped:
        raise DegreeBoundExceeded(
            f"candidate degrees {sorted(set(skipped))} exceed the cap {cap}; no solution found below it",
            sorted(set(skipped)),
        )
    return KovacicOutcome(r, None, audit=tuple(audit), exponents=data, notes=tuple(notes))
