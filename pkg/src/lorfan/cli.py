"""Command-line interface.

Exit codes: 0 verdict computed (even a negative one), 2 input error,
3 precondition failure, 4 internal invariant breach.  The one exception is
`validate`, which exits 3 when the fan fails validation, per the documented
contract.  Randomized subcommands require an explicit --seed.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import io
from .convexity import classify_convexity
from .errors import InputError, InternalError, LorfanError, PreconditionError
from .fan import star, stellar_subdivide, validate
from .lorentzian import (
    af_report,
    definition_sample_check,
    is_lorentzian,
    volume_poly_2d,
    volume_polynomial,
)
from .matroids import bergman_fan
from .ops import polytope_bridge, product_tropical, act_divisor_fan, tropical_modification
from .weights import check_balancing, mixed_degree, star_weight, transport_weight

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4


def _emit(args, payload) -> None:
    text = io.dumps(payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_tropical(path):
    return io.tropical_from_json(io.load_json_file(path))


def _load_fan(path):
    return io.fan_from_json(io.load_json_file(path))


def _parse_point(text):
    return tuple(io.str_to_rat(p) for p in text.split(","))


def cmd_validate(args):
    fan, _ = _load_fan(args.fan)
    report = validate(fan)
    _emit(args, io.validation_to_json(report))
    return EXIT_OK if report.valid else EXIT_PRECONDITION


def cmd_balance(args):
    fan, weight = _load_fan(args.fan)
    if weight is None:
        raise InputError("fan file carries no weights")
    failing = check_balancing(fan, weight)
    _emit(args, {
        "balanced": not failing,
        "failing_cones": [io.cone_to_key(c) for c in failing],
    })
    return EXIT_OK


def cmd_degree(args):
    tf = _load_tropical(args.fan)
    divisors = io.divisors_from_json(io.load_json_file(args.divisors))
    value = mixed_degree(tf.fan, tf.weight, divisors)
    _emit(args, {"degree": io.rat_to_str(value)})
    return EXIT_OK


def cmd_convexity(args):
    fan, _ = _load_fan(args.fan)
    z = io.divisor_from_json(io.load_json_file(args.divisor))
    cert = classify_convexity(fan, z, strict=args.strict)
    _emit(args, io.convexity_to_json(cert))
    return EXIT_OK


def cmd_lorentzian(args):
    tf = _load_tropical(args.fan)
    cert = is_lorentzian(tf)
    payload = io.lorentzian_to_json(cert)
    if args.samples:
        if args.seed is None:
            raise InputError("--samples requires an explicit --seed")
        payload["sampling"] = io.samples_to_json(
            definition_sample_check(tf, samples=args.samples, seed=args.seed)
        )
    _emit(args, payload)
    return EXIT_OK


def cmd_af(args):
    tf = _load_tropical(args.fan)
    d1 = io.divisor_from_json(io.load_json_file(args.d1))
    d2 = io.divisor_from_json(io.load_json_file(args.d2))
    aux = io.divisors_from_json(io.load_json_file(args.aux)) if args.aux else []
    report = af_report(tf, d1, d2, aux)
    _emit(args, io.af_to_json(report))
    return EXIT_OK


def cmd_bergman(args):
    matroid = io.matroid_from_json(io.load_json_file(args.matroid))
    tf = bergman_fan(matroid)
    _emit(args, io.tropical_to_json(tf))
    return EXIT_OK


def cmd_product(args):
    tf1 = _load_tropical(args.fan)
    tf2 = _load_tropical(args.fan2)
    _emit(args, io.tropical_to_json(product_tropical(tf1, tf2)))
    return EXIT_OK


def cmd_star(args):
    fan, weight = _load_fan(args.fan)
    apex = io.key_to_cone(args.cone)
    sd = star(fan, apex)
    payload = io.fan_to_json(sd.fan)
    if weight is not None:
        from .weights import TropicalFan

        stf = star_weight(TropicalFan(fan, weight), apex, sd)
        payload = io.tropical_to_json(stf)
    payload["lift"] = list(sd.lift)
    payload["projection"] = [[io.rat_to_str(x) for x in row] for row in sd.projection]
    _emit(args, payload)
    return EXIT_OK


def cmd_stellar(args):
    fan, weight = _load_fan(args.fan)
    point = _parse_point(args.point)
    result = stellar_subdivide(fan, point)
    transported = None
    if weight is not None:
        from .weights import TropicalFan

        transported = transport_weight(
            TropicalFan(fan, weight), result.fan, result.containment
        ).weight
    _emit(args, io.stellar_to_json(result, transported))
    return EXIT_OK


def cmd_modify(args):
    tf = _load_tropical(args.fan)
    z = io.divisor_from_json(io.load_json_file(args.divisor))
    _emit(args, io.tropical_to_json(tropical_modification(tf, z)))
    return EXIT_OK


def cmd_act(args):
    tf = _load_tropical(args.fan)
    z = io.divisor_from_json(io.load_json_file(args.divisor))
    _emit(args, io.tropical_to_json(act_divisor_fan(tf, z)))
    return EXIT_OK


def cmd_mixedvol(args):
    polytopes = [io.polytope_from_json(io.load_json_file(p)) for p in args.polytope]
    fan = polytopes[0][0]
    for other, _ in polytopes[1:]:
        if other.rays != fan.rays or other.maximal_cones != fan.maximal_cones:
            raise PreconditionError("polytopes must share one normal fan")
    result = polytope_bridge(fan, [rhs for _, rhs in polytopes])
    _emit(args, io.mixedvol_to_json(result))
    return EXIT_OK


def cmd_volpoly(args):
    tf = _load_tropical(args.fan)
    if tf.dimension == 2:
        form = volume_poly_2d(tf)
        payload = {
            "matrix": [[io.rat_to_str(x) for x in row] for row in form.matrix],
            "inertia": list(form.inertia().astuple()),
        }
    else:
        payload = {"matrix": None, "inertia": None}
    payload["polynomial"] = io.polynomial_to_json(volume_polynomial(tf))
    _emit(args, payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorfan",
        description="Exact certificates for tropical fans: balancing, convexity, "
        "Lorentzian verdicts, Alexandrov-Fenchel reports, and mixed volumes.",
    )
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="upper bound on worker count (computation is sequential today)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **flags):
        p = sub.add_parser(name)
        for flag, kwargs in flags.items():
            p.add_argument(f"--{flag}", **kwargs)
        p.set_defaults(fn=fn)
        return p

    add("validate", cmd_validate, fan={"required": True})
    add("balance", cmd_balance, fan={"required": True})
    add("degree", cmd_degree, fan={"required": True}, divisors={"required": True})
    add(
        "convexity",
        cmd_convexity,
        fan={"required": True},
        divisor={"required": True},
        strict={"action": "store_true"},
    )
    add(
        "lorentzian",
        cmd_lorentzian,
        fan={"required": True},
        samples={"type": int, "default": 0},
        seed={"type": int},
    )
    add(
        "af",
        cmd_af,
        fan={"required": True},
        d1={"required": True},
        d2={"required": True},
        aux={},
    )
    add("bergman", cmd_bergman, matroid={"required": True})
    add("product", cmd_product, fan={"required": True}, fan2={"required": True})
    add("star", cmd_star, fan={"required": True}, cone={"required": True})
    stellar = add("stellar", cmd_stellar, fan={"required": True}, point={"required": True})
    # points with a negative leading coordinate ("-1,2") must parse as values
    stellar._negative_number_matcher = re.compile(r"^-[\d,/\-]+$")
    add("modify", cmd_modify, fan={"required": True}, divisor={"required": True})
    add("act", cmd_act, fan={"required": True}, divisor={"required": True})
    mv = sub.add_parser("mixedvol")
    mv.add_argument("--polytope", action="append", required=True)
    mv.set_defaults(fn=cmd_mixedvol)
    add("volpoly", cmd_volpoly, fan={"required": True})
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (PreconditionError, LorfanError) as exc:
        print(f"precondition failure: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
