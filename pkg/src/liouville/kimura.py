"""Kimura's solvability test for the Riemann (hypergeometric) equation.

The identity component of the Galois group is solvable iff one of the four
signed sums of the exponent differences is an odd integer (condition i), or
the differences, up to sign and order, fit one of fifteen families
(condition ii).  Both tests are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from liouville.algebra.numbers import NestedSurd, as_rational, integer_value, is_rational, render_number
from liouville.errors import FuchsViolation
from liouville.odeforms import RiemannExponents

F = Fraction

# (row, slot fractions, l+m+q must be even); None marks the arbitrary slot
KIMURA_TABLE = (
    (1, (F(1, 2), F(1, 2), None), False),
    (2, (F(1, 2), F(1, 3), F(1, 3)), False),
    (3, (F(2, 3), F(1, 3), F(1, 3)), True),
    (4, (F(1, 2), F(1, 3), F(1, 4)), False),
    (5, (F(2, 3), F(1, 4), F(1, 4)), True),
    (6, (F(1, 2), F(1, 3), F(1, 5)), False),
    (7, (F(2, 5), F(1, 3), F(1, 3)), True),
    (8, (F(2, 3), F(1, 5), F(1, 5)), True),
    (9, (F(1, 2), F(2, 5), F(1, 5)), True),
    (10, (F(3, 5), F(1, 3), F(1, 5)), True),
    (11, (F(2, 5), F(2, 5), F(2, 5)), True),
    (12, (F(2, 3), F(1, 3), F(1, 5)), True),
    (13, (F(4, 5), F(1, 5), F(1, 5)), True),
    (14, (F(1, 2), F(2, 5), F(1, 3)), True),
    (15, (F(3, 5), F(2, 5), F(1, 3)), True),
)

NAMES = ("lambda", "mu", "nu")


def _clean(x):
    return x.reduce() if isinstance(x, NestedSurd) else x


@dataclass(frozen=True)
class ExponentDifferences:
    lambda_hat: Any
    mu_hat: Any
    nu_hat: Any

    def values(self) -> tuple:
        return (self.lambda_hat, self.mu_hat, self.nu_hat)

    def as_dict(self) -> dict:
        return {"lambda_hat": render_number(self.lambda_hat), "mu_hat": render_number(self.mu_hat),
                "nu_hat": render_number(self.nu_hat)}


def differences(scheme: RiemannExponents) -> ExponentDifferences:
    return ExponentDifferences(
        _clean(scheme.alpha - scheme.alpha_p),
        _clean(scheme.beta - scheme.beta_p),
        _clean(scheme.gamma - scheme.gamma_p),
    )


@dataclass(frozen=True)
class ConditionI:
    signs: tuple  # signs applied to (lambda, mu, nu)
    value: int

    def describe(self) -> str:
        terms = "".join(("+" if s > 0 else "-") + n for s, n in zip(self.signs, NAMES))
        return f"{terms.lstrip('+')} = {self.value} (odd)"

    def as_dict(self) -> dict:
        return {"condition": "i", "signs": list(self.signs), "value": self.value, "text": self.describe()}


@dataclass(frozen=True)
class ConditionII:
    row: int
    l: int
    m: int
    q: int | None  # None: the arbitrary slot
    assignment: tuple  # e.g. ("-lambda", "nu", "mu"): which signed difference fills each slot

    def describe(self) -> str:
        q = "arbitrary" if self.q is None else str(self.q)
        return f"row {self.row} with (l, m, q) = ({self.l}, {self.m}, {q}), slots {', '.join(self.assignment)}"

    def as_dict(self) -> dict:
        return {"condition": "ii", "row": self.row, "l": self.l, "m": self.m, "q": self.q,
                "assignment": list(self.assignment), "text": self.describe()}


@dataclass(frozen=True)
class KimuraVerdict:
    solvable: bool
    witness: ConditionI | ConditionII | None
    differences: ExponentDifferences

    def as_dict(self) -> dict:
        return {
            "solvable": self.solvable,
            "witness": None if self.witness is None else self.witness.as_dict(),
            "differences": self.differences.as_dict(),
        }


_COMBINATIONS = ((1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1))


def condition_i(d: ExponentDifferences) -> ConditionI | None:
    lam, mu, nu = d.values()
    for signs in _COMBINATIONS:
        total = _clean(signs[0] * lam + signs[1] * mu + signs[2] * nu)
        k = integer_value(total)
        if k is not None and k % 2:
            return ConditionI(signs, k)
    return None


def _shift(value, frac: Fraction) -> int | None:
    """The integer l with value = frac + l, if any."""
    if not is_rational(value):
        return None
    diff = as_rational(value) - frac
    return diff.numerator if diff.denominator == 1 else None


def condition_ii(d: ExponentDifferences) -> ConditionII | None:
    vals = d.values()
    candidates = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            slots = [_clean(signs[i] * vals[perm[i]]) for i in range(3)]
            labels = tuple(("-" if signs[i] < 0 else "") + NAMES[perm[i]] for i in range(3))
            for row, fracs, even in KIMURA_TABLE:
                ints = []
                for v, fr in zip(slots, fracs):
                    if fr is None:
                        ints.append(None)
                        continue
                    k = _shift(v, fr)
                    if k is None:
                        break
                    ints.append(k)
                else:
                    if even and sum(ints) % 2:
                        continue
                    key = tuple(-10**9 if k is None else k for k in ints)
                    candidates.append((row, key, labels, ints))
    if not candidates:
        return None
    row, _, labels, ints = min(candidates, key=lambda c: (c[0], c[1], c[2]))
    return ConditionII(row, ints[0], ints[1], ints[2], labels)


def classify(d: ExponentDifferences) -> KimuraVerdict:
    w = condition_i(d)
    if w is None:
        w = condition_ii(d)
    return KimuraVerdict(w is not None, w, d)


def solvable(scheme: RiemannExponents) -> KimuraVerdict:
    total = _clean(scheme.fuchs_sum())
    if total != 1:
        raise FuchsViolation(f"exponents sum to {render_number(total)}, expected 1")
    return classify(differences(scheme))
