"""Command-line interface: ``tower-limits <subcommand> ...``.

Exit codes: 0 success/true, 1 false, 2 usage or parse error, 3 budget
exceeded, 4 hypothesis violated (not tower-stable, preperiodic start, or
f not mapping the positive integers into themselves).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, is_dataclass

from . import config as cfg
from .dynamics import analyze_map, orbit_shape
from .errors import BudgetExceeded, Inconclusive, NotTowerStable, PolynomialSyntaxError, PreperiodicStart
from .limits import LITERAL, REDUCED, digit_stream, tower_sequence_mod, verify_selfref
from .periods import lambda_chain, lambda_multiple
from .polyparse import maps_naturals_into_naturals, parse_poly, render
from .stability import UNSTABLE, ctow_partial, is_f_valid_base, is_valid_base, tower_stability_report

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET, EXIT_HYPOTHESIS = 0, 1, 2, 3, 4

TABLE_LIMIT = 100


class HypothesisViolation(Exception):
    pass


def _jsonable(obj):
    if is_dataclass(obj):
        return asdict(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


class Output:
    def __init__(self, command, inputs, as_json):
        self.command = command
        self.inputs = inputs
        self.as_json = as_json
        self.result = None
        self.certificates = []
        self.warnings = []
        self.lines = []

    def say(self, line=""):
        self.lines.append(line)

    def emit(self, stream=None, error=None):
        stream = sys.stdout if stream is None else stream
        if self.as_json:
            doc = {
                "command": self.command,
                "inputs": self.inputs,
                "result": self.result,
                "certificates": self.certificates,
                "warnings": self.warnings,
            }
            if error is not None:
                doc["error"] = error
            json.dump(doc, stream, default=_jsonable)
            stream.write("\n")
            return
        for line in self.lines:
            print(line, file=stream)
        for w in self.warnings:
            print(f"warning: {w}", file=sys.stderr)
        if error is not None:
            print(f"error: {error['message']}", file=sys.stderr)


def _poly(args):
    return parse_poly(args.polynomial)


def _require_naturals(f):
    if not maps_naturals_into_naturals(f):
        raise HypothesisViolation(f"{render(f)} does not map the positive integers into themselves")


def cmd_analyze(args, conf, out):
    f = _poly(args)
    m = args.modulus
    if args.start is not None:
        shape = orbit_shape(f, args.start, m, conf.max_steps, conf.cache_bound)
        out.result = {"modulus": m, "start": shape.start, "tail": shape.tail, "cycle": shape.cycle, "entry": shape.entry}
        out.say(f"orbit of {shape.start} mod {m}: tail {shape.tail}, cycle {shape.cycle}, enters at {shape.entry}")
        return EXIT_OK
    g = analyze_map(f, m, conf.enum_ceiling)
    cycles = g.cycle_inventory()
    out.result = {
        "modulus": m,
        "preperiod": g.preperiod,
        "period": g.period,
        "cycle_count": len(cycles),
        "cycle_lengths": sorted(len(c) for c in cycles),
    }
    out.say(f"f = {render(f)} mod {m}")
    out.say(f"K = {g.preperiod}")
    out.say(f"L = {g.period}")
    out.say(f"cycles: {len(cycles)} with lengths {out.result['cycle_lengths']}")
    if m <= TABLE_LIMIT:
        out.result["cycles"] = cycles
        out.result["points"] = [
            {"x": x, "tail": int(g.tails[x]), "cycle": int(g.cycles[x]), "entry": int(g.entries[x])} for x in range(m)
        ]
        for c in cycles:
            out.say("  (" + " ".join(map(str, c)) + ")")
        out.say("  x  tail  cycle  entry")
        for row in out.result["points"]:
            out.say(f"{row['x']:>3} {row['tail']:>5} {row['cycle']:>6} {row['entry']:>6}")
    return EXIT_OK


def cmd_period(args, conf, out):
    f = _poly(args)
    cert = lambda_multiple(f, args.modulus, args.start, conf)
    out.result = asdict(cert)
    out.certificates.append(asdict(cert))
    kind = "exact" if cert.exact else "multiple"
    who = "map" if cert.start is None else f"orbit of {cert.start}"
    out.say(f"lambda ({who}) mod {cert.modulus}: {cert.period} [{kind}], tail <= {cert.tail_bound}, via {cert.provenance}")
    return EXIT_OK


def cmd_chain(args, conf, out):
    f = _poly(args)
    chain = lambda_chain(f, args.modulus, args.max_depth, conf)
    out.result = [c.modulus for c in chain]
    out.certificates.extend(asdict(c) for c in chain)
    out.say(" -> ".join(str(c.modulus) for c in chain))
    return EXIT_OK


def cmd_stable(args, conf, out):
    f = _poly(args)
    report = tower_stability_report(f, args.prime_bound, args.search_bound)
    out.result = report.to_dict()
    if report.verdict == UNSTABLE:
        out.say(f"unstable: f mod {report.witness} is a {report.witness}-cycle")
        return EXIT_FALSE
    if report.fixed_point is not None:
        how = f"fixed point {report.fixed_point}"
    elif report.collision is not None:
        c, d = report.collision
        how = f"collision ({c},{d})"
        if report.residual_primes:
            how += f", residual primes {list(report.residual_primes)} cleared"
    else:
        how = f"primes up to {report.prime_bound} cleared"
    out.say(f"{report.verdict} via {how}")
    return EXIT_OK


def cmd_check_base(args, conf, out):
    valid = is_valid_base(args.base)
    out.result = {"base": args.base, "valid": valid}
    out.say(f"valid: {str(valid).lower()}")
    if args.polynomial is None:
        return EXIT_OK if valid else EXIT_FALSE
    f = _poly(args)
    fvalid = is_f_valid_base(f, args.base, conf)
    out.result["f_valid"] = fvalid
    out.say(f"f-valid: {str(fvalid).lower()}")
    return EXIT_OK if fvalid else EXIT_FALSE


def cmd_limit(args, conf, out):
    f = _poly(args)
    _require_naturals(f)
    stream = digit_stream(f, args.start, args.base, args.levels, conf)
    out.result = stream.to_dict()
    out.warnings.extend(stream.warnings)
    out.say(stream.window())
    marks = "".join({True: "+", False: "-", None: "?"}[v] for v in reversed(stream.verified))
    out.say(f"   {marks}  (verified levels, most significant first)")
    return EXIT_OK


def cmd_tower(args, conf, out):
    f = _poly(args)
    _require_naturals(f)
    trace = tower_sequence_mod(f, args.start, args.seed, args.modulus, args.steps, conf)
    out.result = trace.to_dict()
    out.say(" ".join(map(str, trace.values)))
    if trace.stabilization_index is None:
        out.say("not stabilised")
        out.warnings.append("trace did not stabilise within the requested steps")
    else:
        out.say(f"stable from step {trace.stabilization_index} at {trace.limit}")
    return EXIT_OK


def cmd_verify(args, conf, out):
    f = _poly(args)
    ok = verify_selfref(f, args.start, args.x, args.modulus, args.mode, conf)
    out.result = ok
    out.say(f"f^{args.x}({args.start}) = {args.x} mod {args.modulus}: {str(ok).lower()}")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_ctow(args, conf, out):
    value = ctow_partial(args.prime_bound)
    out.result = value
    out.say(f"{value:.6f}")
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON document")
    common.add_argument("--max-steps", type=int, default=argparse.SUPPRESS, help="orbit step budget")
    common.add_argument("--enum-ceiling", type=int, default=argparse.SUPPRESS, help="largest enumerable modulus")
    common.add_argument("--literal-cap", type=int, default=argparse.SUPPRESS, help="literal iteration cap")
    common.add_argument("--cache-bound", type=int, default=argparse.SUPPRESS, help="largest cached orbit")

    parser = argparse.ArgumentParser(prog="tower-limits", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, poly=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if poly:
            p.add_argument("polynomial")
        p.set_defaults(func=func)
        return p

    p = add("analyze", cmd_analyze, "tails and cycles of f mod m")
    p.add_argument("-m", "--modulus", type=int, required=True)
    p.add_argument("-a", "--start", type=int, help="follow one orbit instead of enumerating")

    p = add("period", cmd_period, "period certificate for f mod m")
    p.add_argument("-m", "--modulus", type=int, required=True)
    p.add_argument("-a", "--start", type=int)

    p = add("chain", cmd_chain, "iterate the period map down to 1")
    p.add_argument("-m", "--modulus", type=int, required=True)
    p.add_argument("--max-depth", type=int, default=64)

    p = add("stable", cmd_stable, "tower-stability report")
    p.add_argument("-P", "--prime-bound", type=int, default=100)
    p.add_argument("-B", "--search-bound", type=int, default=1000)

    p = sub.add_parser("check-base", parents=[common], help="valid and f-valid base checks")
    p.add_argument("polynomial", nargs="?")
    p.add_argument("-b", "--base", type=int, required=True)
    p.set_defaults(func=cmd_check_base)

    p = add("limit", cmd_limit, "base-b digits of the tower limit")
    p.add_argument("-a", "--start", type=int, required=True)
    p.add_argument("-b", "--base", type=int, default=10)
    p.add_argument("-n", "--levels", type=int, required=True)

    p = add("tower", cmd_tower, "tower sequence modulo m")
    p.add_argument("-a", "--start", type=int, required=True)
    p.add_argument("-s", "--seed", type=int, default=1)
    p.add_argument("-m", "--modulus", type=int, required=True)
    p.add_argument("--steps", type=int, default=12)

    p = add("verify", cmd_verify, "check f^x(a) = x mod m")
    p.add_argument("-a", "--start", type=int, required=True)
    p.add_argument("-x", type=int, required=True)
    p.add_argument("-m", "--modulus", type=int, required=True)
    p.add_argument("--mode", choices=[REDUCED, LITERAL], default=REDUCED)

    p = add("ctow", cmd_ctow, "partial product for the tower-stable density", poly=False)
    p.add_argument("-P", "--prime-bound", type=int, default=200)
    return parser


def _config(args):
    base = cfg.from_env()
    return base.with_overrides(
        max_steps=getattr(args, "max_steps", None),
        enum_ceiling=getattr(args, "enum_ceiling", None),
        literal_cap=getattr(args, "literal_cap", None),
        cache_bound=getattr(args, "cache_bound", None),
    )


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)
    inputs = {
        k: v
        for k, v in vars(args).items()
        if k not in ("func", "command", "json") and v is not None
    }
    out = Output(args.command, inputs, as_json)
    code, error = EXIT_OK, None
    try:
        conf = _config(args)
        code = args.func(args, conf, out)
    except PolynomialSyntaxError as exc:
        code, error = EXIT_USAGE, {"type": "parse", "message": str(exc), "position": exc.position}
    except ValueError as exc:
        code, error = EXIT_USAGE, {"type": "usage", "message": str(exc)}
    except (BudgetExceeded, Inconclusive) as exc:
        code, error = EXIT_BUDGET, {"type": "budget", "message": str(exc), "required": getattr(exc, "required", None)}
    except NotTowerStable as exc:
        code, error = EXIT_HYPOTHESIS, {"type": "unstable", "message": f"unstable at p={exc.prime}", "prime": exc.prime}
    except PreperiodicStart as exc:
        w = exc.witness
        code, error = EXIT_HYPOTHESIS, {
            "type": "preperiodic",
            "message": str(exc),
            "witness": {"start": w.start, "tail": w.tail, "cycle": w.cycle, "value": w.value},
        }
    except HypothesisViolation as exc:
        code, error = EXIT_HYPOTHESIS, {"type": "domain", "message": str(exc)}
    out.emit(error=error)
    return code


if __name__ == "__main__":
    sys.exit(main())
