"""JSON report documents and their text rendering.

Every command builds one JSON-ready dict; the text printed on the terminal is
rendered from that dict and never computed on its own.
"""

from __future__ import annotations

import json

from liouville import __version__
from liouville.algebra.numbers import render_number
from liouville.kovacic import KovacicOutcome, case1_residual
from liouville.kovacic.cases import AlgebraicOmega
from liouville.kovacic.groups import GaloisGroupId

SCHEMA_VERSION = "1"


def exponents_section(outcome: KovacicOutcome, var: str) -> list:
    data = outcome.exponents
    if data is None:
        return []
    rows = []
    for s in data.sites():
        row = {"site": s.site.label(), "branch": s.branch}
        if s.b is not None:
            row["b"] = render_number(s.b)
        if s.alpha_plus is not None:
            row["alpha_plus"] = render_number(s.alpha_plus)
            row["alpha_minus"] = render_number(s.alpha_minus)
        rows.append(row)
    return rows


def kovacic_section(outcome: KovacicOutcome, group: GaloisGroupId, var: str = "x") -> dict:
    d = {
        "r": outcome.r.render(var),
        "solvable": outcome.solvable,
        "case": outcome.case_used,
        "m": outcome.degree,
        "solution_form": outcome.solution_form,
        "galois_group": group.as_dict(),
        "exponents": exponents_section(outcome, var),
    }
    if outcome.case_used is not None:
        d["P"] = outcome.P.render(var)
        om = outcome.omega
        if isinstance(om, AlgebraicOmega):
            d["n"] = outcome.n
            d["omega"] = {"defining_polynomial": om.render(var), "theta": om.theta.render(var),
                          "e_infinity": render_number(om.e_infinity),
                          "e_finite": [render_number(e) for e in om.e_finite]}
            d["verified"] = "exact Riccati divisibility check"
        else:
            d["omega"] = om.render(var)
            residual = case1_residual(outcome.r, om.ratfunc, outcome.P)
            d["verified"] = "exact residual P'' + 2 omega P' + (omega' + omega^2 - r) P = 0" if not residual \
                else f"residual {residual.render(var)}"
        if outcome.second_solution is not None:
            d["second_solution"] = outcome.second_solution.as_dict()
    d["audit"] = [a.as_dict() for a in outcome.audit]
    if outcome.skipped_degrees:
        d["skipped_degrees"] = list(outcome.skipped_degrees)
    if outcome.notes:
        d["notes"] = list(outcome.notes)
    return d


def document(command: str, inputs: dict, result: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "liouville",
        "version": __version__,
        "command": command,
        "input": inputs,
        "result": result,
    }


def dumps(doc: dict) -> str:
    """Byte-stable JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _render(value, indent: int, lines: list) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                _render(v, indent + 1, lines)
            else:
                lines.append(f"{pad}{k}: {_scalar(v) if not isinstance(v, (dict, list)) else '-'}")
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            lines.append(pad + ", ".join(_scalar(v) for v in value))
            return
        for i, v in enumerate(value):
            lines.append(f"{pad}[{i}]")
            _render(v, indent + 1, lines)
    else:
        lines.append(pad + _scalar(value))


def render_text(doc: dict, include_audit: bool = False) -> str:
    """Indented text view of a report document."""
    result = dict(doc["result"])
    if not include_audit:
        if isinstance(result.get("kovacic"), dict):
            result["kovacic"] = dict(result["kovacic"])
        for section in (result, result.get("kovacic") or {}):
            if "audit" in section:
                section["audit"] = f"{len(section['audit'])} candidate branches (see JSON)"
    lines = [f"liouville {doc['version']}: {doc['command']}"]
    _render({"input": doc["input"]}, 0, lines)
    _render(result, 0, lines)
    return "\n".join(lines) + "\n"
