"""Kovacic's algorithm for y'' = r y with r rational."""

from liouville.kovacic.algorithm import KovacicOutcome, analyze
from liouville.kovacic.cases import (
    AlgebraicOmega,
    AlgebraicWitness,
    Case1Omega,
    Case1Witness,
    case1_candidates,
    case1_residual,
    riccati_check,
    solve_monic_case1,
)
from liouville.kovacic.exponents import ExponentData, SiteExponents, exponent_data
from liouville.kovacic.groups import GaloisGroupId, SecondSolution, identify_group, second_solution


def solve_monic(m: int, omega, r, case: int = 1):
    """Monic P of degree m for a case-1 omega (RatFunc); None when none exists."""
    if case != 1:
        raise ValueError("only case-1 data can be passed directly; cases 2 and 3 run inside analyze")
    P, _ = solve_monic_case1(r, omega, m)
    return P


__all__ = [
    "AlgebraicOmega",
    "AlgebraicWitness",
    "Case1Omega",
    "Case1Witness",
    "ExponentData",
    "GaloisGroupId",
    "KovacicOutcome",
    "SecondSolution",
    "SiteExponents",
    "analyze",
    "case1_candidates",
    "case1_residual",
    "exponent_data",
    "identify_group",
    "riccati_check",
    "second_solution",
    "solve_monic",
]
