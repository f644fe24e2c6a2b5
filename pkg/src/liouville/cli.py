"""Command line: ``liouville <command> ...``.

Exit codes: 0 analysis completed (whatever the verdict), 2 usage error,
3 parse error, 4 engine error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from liouville import kimura
from liouville.algebra.numbers import render_number
from liouville.algebra.ratfunc import RatFunc
from liouville.celestial.e3bp import kappa_curves_csv
from liouville.celestial.problems import anisotropic, e3bp, rect4bp, uncoupled
from liouville.errors import LiouvilleError, ParseError
from liouville.kovacic import analyze, identify_group
from liouville.odeforms import SecondOrderODE, algebrize, classify_infinity, riemann_scheme, to_normal_form
from liouville.parser import parse_bindings, parse_expression, parse_rational
from liouville.report import document, dumps, kovacic_section, render_text
from liouville.verdict import assemble

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_ENGINE = 0, 2, 3, 4


def _parse_all(texts: dict, params: dict) -> tuple[dict, str]:
    """Parse several expressions that must share one variable."""
    var = None
    out = {}
    for name, text in texts.items():
        value, v = parse_expression(text, params, var)
        if var is None and any(ch.isalpha() for ch in text):
            var = v
        out[name] = value
    return out, var or "x"


def _width(args) -> Fraction | None:
    return Fraction(1, 10 ** args.precision) if args.precision else None


def _kovacic_block(r: RatFunc, var: str, max_degree=None) -> tuple[dict, object]:
    outcome = analyze(r, max_degree)
    group = identify_group(outcome)
    return kovacic_section(outcome, group, var), group


def cmd_kovacic(args) -> tuple[dict, dict]:
    params = parse_bindings(args.param)
    (vals, var) = _parse_all({"r": args.r}, params)
    r = vals["r"]
    block, group = _kovacic_block(r, var, args.max_degree)
    infinity = classify_infinity(SecondOrderODE(RatFunc.const(0), -r))
    verdict = assemble(group, infinity)
    inputs = {"r": args.r, "params": {k: str(v) for k, v in params.items()}, "max_degree": args.max_degree}
    return inputs, {"reduction": [f"y'' = ({r.render(var)})*y"], "kovacic": block,
                    "verdict": verdict.as_dict()}


def cmd_kimura(args) -> tuple[dict, dict]:
    if args.exponents:
        parts = args.exponents.split(",")
        if len(parts) != 3:
            raise ParseError("expected three comma-separated exponent differences", 0, {"l,m,n"})
        d = kimura.ExponentDifferences(*(parse_rational(p) for p in parts))
        verdict = kimura.classify(d)
        return {"exponents": args.exponents}, {"kimura": verdict.as_dict()}
    params = parse_bindings(args.param)
    vals, var = _parse_all({"r": args.from_ode}, params)
    ode = SecondOrderODE(RatFunc.const(0), -vals["r"])
    scheme = riemann_scheme(ode)
    verdict = kimura.solvable(scheme)
    return ({"from_ode": args.from_ode, "params": {k: str(v) for k, v in params.items()}},
            {"ode": ode.render(var), "riemann_scheme": scheme.as_dict(), "kimura": verdict.as_dict()})


def cmd_algebrize(args) -> tuple[dict, dict]:
    params = parse_bindings(args.param)
    vals, var = _parse_all({"f": args.f, "alpha": args.alpha}, params)
    ode = algebrize(vals["f"], vals["alpha"])
    rlde, mult = to_normal_form(ode)
    result = {"algebrized": ode.render(var), "infinity": classify_infinity(ode),
              "rlde": rlde.render(var), "multiplier": mult.render(var)}
    if args.kovacic:
        result["kovacic"], _ = _kovacic_block(rlde.r, var, args.max_degree)
    return {"f": args.f, "alpha": args.alpha, "params": {k: str(v) for k, v in params.items()}}, result


def cmd_reduce(args) -> tuple[dict, dict]:
    params = parse_bindings(args.param)
    vals, var = _parse_all({"a1": args.a1, "a0": args.a0}, params)
    ode = SecondOrderODE(vals["a1"], vals["a0"])
    rlde, mult = to_normal_form(ode)
    result = {"ode": ode.render(var), "infinity": classify_infinity(ode), "rlde": rlde.render(var),
              "multiplier": mult.render(var)}
    if args.kovacic:
        result["kovacic"], _ = _kovacic_block(rlde.r, var, args.max_degree)
    return {"a1": args.a1, "a0": args.a0, "params": {k: str(v) for k, v in params.items()}}, result


def _homogeneous_result(rep) -> dict:
    d = rep.as_dict()
    if rep.kovacic is not None:
        d["kovacic"] = kovacic_section(rep.kovacic, rep.group, "tau")
    return d


def cmd_problem(args) -> tuple[dict, dict]:
    width = _width(args)
    extra = {} if width is None else {"width": width}
    name = args.problem
    if name == "e3bp":
        mu = parse_rational(args.mu)
        rep = e3bp(mu, width or Fraction(1, 10**12), args.grid)
        result = rep.as_dict()
        if rep.rows:
            result["grid"] = {
                "points": args.grid,
                "rows": len(rep.rows),
                "kappa2_negative": all(r.kappa2.hi < 0 for r in rep.rows),
                "mirror_symmetric": all(r.symmetric for r in rep.rows),
            }
            if args.csv:
                with open(args.csv, "w", newline="") as fh:
                    kappa_curves_csv(rep.rows, fh)
                result["grid"]["csv"] = args.csv
        return {"problem": name, "mu": args.mu, "grid": args.grid}, result
    if name == "rect4bp":
        return {"problem": name}, _homogeneous_result(rect4bp(not args.spectral_only, **extra))
    mu = parse_rational(args.mu)
    fn = anisotropic if name == "anisotropic" else uncoupled
    return {"problem": name, "mu": args.mu}, _homogeneous_result(fn(mu, not args.spectral_only, **extra))


def cmd_poincare(args) -> tuple[dict, dict]:
    from liouville import dynamics

    mu = parse_rational(args.mu)
    h = parse_rational(args.h)
    orbits = dynamics.poincare_section(mu, h, args.crossings, workers=args.workers)
    with open(args.csv, "w", newline="") as fh:
        dynamics.section_csv(orbits, fh)
    rows = []
    for o in orbits:
        row = {"orbit_id": o.orbit_id, "seed": {"v": o.initial[0], "u": o.initial[1]},
               "crossings": len(o.crossings),
               "max_energy_residual": max((c.energy_residual for c in o.crossings), default=0.0)}
        if mu == 1:
            row["invariant_curve_deviation"] = dynamics.invariant_curve_deviation(o, float(h))
        rows.append(row)
    return ({"mu": args.mu, "h": args.h, "crossings": args.crossings},
            {"section": "theta = 0, u > 0", "coordinates": ["v", "u"], "csv": args.csv, "orbits": rows})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liouville", description=__doc__.splitlines()[0])
    p.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    p.add_argument("--precision", type=int, metavar="DIGITS",
                   help="enclosure width 10^-DIGITS for numeric roots (default 12)")
    sub = p.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kovacic", help="Kovacic's algorithm on y'' = r y")
    k.add_argument("--r", required=True, metavar="EXPR")
    k.add_argument("--param", action="append", default=[], metavar="NAME=Q")
    k.add_argument("--max-degree", type=int, metavar="N")
    k.set_defaults(func=cmd_kovacic)

    km = sub.add_parser("kimura", help="Kimura's test for a Riemann equation")
    g = km.add_mutually_exclusive_group(required=True)
    g.add_argument("--exponents", metavar="L,M,N", help="exponent differences at 0, infinity, 1")
    g.add_argument("--from-ode", metavar="EXPR", help="r of y'' = r y with singular points 0, 1, infinity")
    km.add_argument("--param", action="append", default=[], metavar="NAME=Q")
    km.set_defaults(func=cmd_kimura)

    a = sub.add_parser("algebrize", help="algebraic form of y'' = f y under a change with (dtau/dt)^2 = alpha")
    a.add_argument("--f", required=True, metavar="EXPR")
    a.add_argument("--alpha", required=True, metavar="EXPR")
    a.add_argument("--param", action="append", default=[], metavar="NAME=Q")
    a.add_argument("--kovacic", action="store_true", help="also run Kovacic on the reduced equation")
    a.add_argument("--max-degree", type=int, metavar="N")
    a.set_defaults(func=cmd_algebrize)

    r = sub.add_parser("reduce", help="normal form of xi'' + a1 xi' + a0 xi = 0")
    r.add_argument("--a1", required=True, metavar="EXPR")
    r.add_argument("--a0", required=True, metavar="EXPR")
    r.add_argument("--param", action="append", default=[], metavar="NAME=Q")
    r.add_argument("--kovacic", action="store_true", help="also run Kovacic on the reduced equation")
    r.add_argument("--max-degree", type=int, metavar="N")
    r.set_defaults(func=cmd_reduce)

    pr = sub.add_parser("problem", help="few-body pipelines")
    psub = pr.add_subparsers(dest="problem", required=True)
    e = psub.add_parser("e3bp", help="collinear points of the elliptic restricted three-body problem")
    e.add_argument("--mu", required=True, metavar="Q")
    e.add_argument("--grid", type=int, metavar="N", help="also tabulate kappa on mu = k/(N+1)")
    e.add_argument("--csv", metavar="PATH")
    psub.add_parser("rect4bp", help="rectangular four-body problem")
    an = psub.add_parser("anisotropic", help="anisotropic Kepler problem")
    an.add_argument("--mu", required=True, metavar="Q")
    un = psub.add_parser("uncoupled", help="two uncoupled Kepler problems")
    un.add_argument("--mu", required=True, metavar="Q")
    for q in (psub.choices["rect4bp"], an, un):
        q.add_argument("--spectral-only", action="store_true",
                       help="skip Kovacic; decide from the omega^2 condition and Kimura")
    pr.set_defaults(func=cmd_problem)

    pc = sub.add_parser("poincare", help="Poincare section theta = 0 of the anisotropic Kepler flow")
    pc.add_argument("--mu", required=True, metavar="Q")
    pc.add_argument("--h", required=True, metavar="Q")
    pc.add_argument("--crossings", required=True, type=int, metavar="N")
    pc.add_argument("--csv", required=True, metavar="PATH")
    pc.add_argument("--workers", type=int, default=1, metavar="N")
    pc.set_defaults(func=cmd_poincare)
    return p


def _emit(doc: dict, json_path: str | None) -> None:
    if json_path == "-":
        sys.stdout.write(dumps(doc))
        return
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
    sys.stdout.write(render_text(doc))


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn '--h -1/2' into '--h=-1/2'.

    argparse reads any token that starts with '-' and is not a plain number
    as an option.  The only short option is -h, so other single-dash tokens
    after a long option are values such as '-1/2' or '-x'.
    """
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (tok.startswith("--") and "=" not in tok and nxt is not None and nxt.startswith("-")
                and not nxt.startswith("--") and nxt != "-h"):
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else list(argv)))
    if args.precision is not None and args.precision <= 0:
        parser.error("--precision must be positive")
    command = args.command if args.command != "problem" else f"problem {args.problem}"
    try:
        inputs, result = args.func(args)
    except ParseError as exc:
        print(f"liouville: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LiouvilleError as exc:
        print(f"liouville: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"liouville: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(document(command, inputs, result), args.json)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
