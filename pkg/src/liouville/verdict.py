"""Morales-Ramis conclusions from Galois-group data and spectral conditions.

The theory runs one way only: a non-abelian identity component of the
variational equation's Galois group rules out a complete set of meromorphic
first integrals near the orbit.  An abelian identity component proves nothing,
so no verdict here ever says "integrable".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from liouville.algebra.numbers import NestedSurd, as_rational, is_rational, render_number
from liouville.kovacic.groups import GaloisGroupId
from liouville.odeforms import IRREGULAR_SINGULAR, REGULAR_SINGULAR

NOT_INTEGRABLE = "not-meromorphically-integrable"
NO_OBSTRUCTION = "obstruction-not-found"


def _triangular_index(t) -> int | None:
    """n >= 0 with n(n+1)/2 == t for rational t, else None."""
    if isinstance(t, NestedSurd):
        t = t.reduce()
    if not is_rational(t):
        return None
    t = as_rational(t)
    if t < 0 or t.denominator != 1:
        return None
    disc = 1 + 8 * t.numerator
    s = math.isqrt(disc)
    if s * s != disc:
        return None
    return (s - 1) // 2


def kappa_condition(kappa) -> int | None:
    """n with kappa = n(n+1)/2, n >= 0; None when kappa is not of that form."""
    return _triangular_index(kappa)


def omega_condition(omega2) -> int | None:
    """n with omega^2 = n(n+1), n >= 0; None otherwise."""
    if isinstance(omega2, NestedSurd):
        omega2 = omega2.reduce()
    if not is_rational(omega2):
        return None
    return _triangular_index(as_rational(omega2) / 2)


@dataclass(frozen=True)
class EnclosureCheck:
    """Outcome of a spectral test on an interval [lo, hi].

    ``candidates`` lists every family index n whose value lies in the
    interval.  An empty list certifies that the condition fails.
    """

    lo: Fraction
    hi: Fraction
    candidates: tuple

    @property
    def certified_excluded(self) -> bool:
        return not self.candidates

    def as_dict(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "candidates": list(self.candidates),
                "certified_excluded": self.certified_excluded}


def _family_hits(lo: Fraction, hi: Fraction, scale: int) -> tuple:
    # values n(n+1)/scale, n >= 0, inside [lo, hi]
    lo, hi = Fraction(lo), Fraction(hi)
    if hi < 0:
        return ()
    n = 0
    if lo > 0:
        n = max(0, (math.isqrt(int(4 * scale * lo) + 1) - 1) // 2 - 1)
    hits = []
    while Fraction(n * (n + 1), scale) <= hi:
        if Fraction(n * (n + 1), scale) >= lo:
            hits.append(n)
        n += 1
    return tuple(hits)


def kappa_condition_enclosure(lo, hi) -> EnclosureCheck:
    return EnclosureCheck(Fraction(lo), Fraction(hi), _family_hits(lo, hi, 2))


def omega_condition_enclosure(lo, hi) -> EnclosureCheck:
    return EnclosureCheck(Fraction(lo), Fraction(hi), _family_hits(lo, hi, 1))


SCOPE_MEROMORPHIC = (
    "infinity is a regular singular point of the variational equation: "
    "the obstruction concerns meromorphic first integrals"
)
SCOPE_RATIONAL = (
    "infinity is an irregular singular point of the variational equation: "
    "the obstruction concerns rational first integrals only"
)


@dataclass(frozen=True)
class IntegrabilityVerdict:
    conclusion: str
    witness: Any
    spectral_note: int | None = None
    singularity_class_at_infinity: str = REGULAR_SINGULAR
    scope_note: str = ""
    text: str = ""

    def as_dict(self) -> dict:
        w = self.witness
        return {
            "conclusion": self.conclusion,
            "witness": w.as_dict() if hasattr(w, "as_dict") else w,
            "spectral_note": self.spectral_note,
            "singularity_class_at_infinity": self.singularity_class_at_infinity,
            "scope_note": self.scope_note,
            "text": self.text,
        }


def _scope(infinity_class: str) -> str:
    return SCOPE_RATIONAL if infinity_class == IRREGULAR_SINGULAR else SCOPE_MEROMORPHIC


def assemble(group: GaloisGroupId, infinity_class: str = REGULAR_SINGULAR,
             spectral_note: int | None = None) -> IntegrabilityVerdict:
    scope = _scope(infinity_class)
    if not group.identity_component_abelian:
        kind = "rational" if infinity_class == IRREGULAR_SINGULAR else "meromorphic"
        text = (f"identity component of {group.label} is not abelian: no complete set of "
                f"{kind} first integrals in a neighborhood of the particular orbit")
        return IntegrabilityVerdict(NOT_INTEGRABLE, group, spectral_note, infinity_class, scope, text)
    text = (f"identity component of {group.label} is abelian: the first-order test gives no obstruction "
            "(this is not a proof of integrability)")
    return IntegrabilityVerdict(NO_OBSTRUCTION, group, spectral_note, infinity_class, scope, text)


def assemble_spectral(parameter: str, value, n: int | None, enclosure: EnclosureCheck | None = None,
                      infinity_class: str = REGULAR_SINGULAR) -> IntegrabilityVerdict:
    """Verdict from a family condition (kappa or omega^2) instead of a group.

    Failing the condition means the variational equation has group SL2.  An
    enclosure that still contains family members cannot certify that.
    """
    scope = _scope(infinity_class)
    shown = render_number(value) if value is not None else "enclosure"
    witness = {"parameter": parameter, "value": shown}
    if enclosure is not None:
        witness["enclosure"] = enclosure.as_dict()
        if not enclosure.certified_excluded:
            text = (f"{parameter} enclosure contains family values for n in {list(enclosure.candidates)}: "
                    "non-membership cannot be certified, no obstruction claimed")
            return IntegrabilityVerdict(NO_OBSTRUCTION, witness, None, infinity_class, scope, text)
        text = f"{parameter} enclosure excludes every family value: identity component SL2 is not abelian"
        return IntegrabilityVerdict(NOT_INTEGRABLE, witness, None, infinity_class, scope, text)
    if n is None:
        text = f"{parameter} = {shown} is not a family value: identity component SL2 is not abelian"
        return IntegrabilityVerdict(NOT_INTEGRABLE, witness, None, infinity_class, scope, text)
    text = f"{parameter} = {shown} is the family value with n = {n}: no obstruction at first order"
    return IntegrabilityVerdict(NO_OBSTRUCTION, witness, n, infinity_class, scope, text)
