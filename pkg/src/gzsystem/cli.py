"""Command-line interface: one JSON document in, one JSON document out.

Exit codes: 0 success, 1 a ``verify`` check failed, 2 malformed input,
3 a mathematical precondition failed.
"""

import argparse
import json
import sys

from . import jsonio
from .errors import DimensionError, GZError
from .fibers import gamma, gamma_inverse, torus_act
from .flows import act, flow_step
from .invariants import AlgebraKind, eval_invariant, generators, invariant_id
from .moment import coeff_moment, element_in_omega, fiber_residual, moment_map
from .nilfibre import check_nilradical_example, in_nilfibre
from .regularity import sreg_report
from .verify import run_suite

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


class InputError(Exception):
    pass


def _load(args):
    text = open(args.input).read() if args.input and args.input != "-" else sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _field(data, key):
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"input needs a {key!r} field")
    return data[key]


def _matrix(data, args):
    x = jsonio.parse_matrix(_field(data, "matrix"))
    if args.n is not None and args.n != x.shape[0]:
        raise InputError(f"--n {args.n} does not match matrix size {x.shape[0]}")
    return x, AlgebraKind(args.algebra, x.shape[0])


def _target(data, args):
    c = jsonio.target_from_json(_field(data, "target"))
    if c.kind.family != args.algebra:
        raise InputError(f"target kind {c.kind.family} does not match --algebra {args.algebra}")
    return c


def cmd_invariants(args, data):
    x, kind = _matrix(data, args)
    return {
        "kind": kind.family,
        "n": kind.n,
        "invariants": [
            {"level": g.level, "index": g.index, "flavor": g.flavor, "value": eval_invariant(g, x)}
            for g in generators(kind)
        ],
    }


def cmd_moment(args, data):
    x, kind = _matrix(data, args)
    return {"kind": kind.family, "n": kind.n, "values": list(moment_map(kind, x))}


def cmd_coeff_moment(args, data):
    x, kind = _matrix(data, args)
    if kind.family != "gl":
        raise InputError("coeff-moment is defined for gl only")
    return {"kind": kind.family, "n": kind.n, "values": list(coeff_moment(kind, x))}


def cmd_flow(args, data):
    x, kind = _matrix(data, args)
    try:
        gid = invariant_id(kind, int(_field(data, "level")), int(_field(data, "index")))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DimensionError):
            raise
        raise InputError(f"bad generator: {exc}") from exc
    t = jsonio.parse_complex(_field(data, "time"))
    return {"matrix": jsonio.matrix_to_json(flow_step(gid, t, x))}


def cmd_act(args, data):
    x, kind = _matrix(data, args)
    times = jsonio.parse_vector(_field(data, "times"))
    order = None
    if args.order:
        try:
            order = [int(k) for k in args.order.split(",")]
        except ValueError as exc:
            raise InputError("--order must be comma-separated generator positions") from exc
    try:
        y = act(kind, times, x, order)
    except ValueError as exc:
        if isinstance(exc, GZError):
            raise
        raise InputError(str(exc)) from exc
    return {"matrix": jsonio.matrix_to_json(y)}


def cmd_sreg(args, data):
    x, kind = _matrix(data, args)
    rep = sreg_report(kind, x)
    return {
        "strongly_regular": rep.strongly_regular,
        "via_centralizers": rep.via_centralizers,
        "gradient_rank": rep.gradient_rank,
        "expected_rank": rep.expected_rank,
        "distribution_rank": rep.distribution_rank,
        "d": rep.d,
        "regular_levels": rep.regular_levels,
        "disjoint_levels": rep.disjoint_levels,
        "low_confidence": rep.low_confidence,
        "in_omega": element_in_omega(kind, x),
    }


def cmd_fiber_build(args, data):
    c = _target(data, args)
    z = jsonio.torus_from_json(_field(data, "torus"), c.kind)
    x = gamma(c, z)
    return {"matrix": jsonio.matrix_to_json(x), "residual": fiber_residual(x, c)}


def cmd_fiber_invert(args, data):
    c = _target(data, args)
    x, _ = _matrix(data, args)
    return {"torus": jsonio.torus_to_json(gamma_inverse(x, c, args.tol))}


def cmd_torus_act(args, data):
    c = _target(data, args)
    x, _ = _matrix(data, args)
    z = jsonio.torus_from_json(_field(data, "torus"), c.kind)
    return {"matrix": jsonio.matrix_to_json(torus_act(z, x, c, args.tol))}


def cmd_nilfibre_check(args, data):
    out = {"nilradical_example": check_nilradical_example()}
    if isinstance(data, dict) and "matrix" in data:
        x, _ = _matrix(data, args)
        out["in_nilfibre"] = in_nilfibre(x, args.tol)
    return out


COMMANDS = {
    "invariants": cmd_invariants,
    "moment": cmd_moment,
    "coeff-moment": cmd_coeff_moment,
    "flow": cmd_flow,
    "act": cmd_act,
    "sreg": cmd_sreg,
    "fiber-build": cmd_fiber_build,
    "fiber-invert": cmd_fiber_invert,
    "torus-act": cmd_torus_act,
    "nilfibre-check": cmd_nilfibre_check,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="gzsystem", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted([*COMMANDS, "verify"]))
    parser.add_argument("--algebra", choices=["gl", "so"], default="gl")
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--tol", type=float, default=1e-8)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--order", default=None, help="comma-separated flow application order")
    parser.add_argument("--input", default=None, help="JSON input file (default: stdin)")
    return parser


def _verify(args, out):
    n = args.n if args.n is not None else 4
    if n < 3:
        raise InputError("verify needs --n >= 3")
    results = run_suite(args.algebra, n, args.seed, args.tol)
    for r in results:
        print(r.line(), file=sys.stderr)
    out.write(jsonio.dumps({
        "algebra": args.algebra,
        "n": n,
        "seed": args.seed,
        "passed": all(r.passed for r in results),
        "checks": [
            {"name": r.name, "passed": r.passed, "measured": r.measured, "tolerance": r.tolerance}
            for r in results
        ],
    }) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _verify(args, out)
        data = _load(args)
        result = COMMANDS[args.command](args, data)
    except (InputError, jsonio.FormatError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GZError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.write(jsonio.dumps(result) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
