"""Command-line interface.

Exit status: 0 on success, 1 on a domain error (bad expression, rejected data
file, desk-scale bound), 2 on a usage error.  --json switches every subcommand
to the schemas documented in qde.schemas; text output is for humans only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .classgroup import (
    class_group_structure,
    class_number_maximal,
    class_number_order,
    unit_index,
)
from .errors import QdeError
from .harness import parse_curves, validate
from .ktheory import crossed_product_k0
from .lattice import QuadraticOrder, companion_tori, endomorphism_ring
from .predict import predict
from .quadratic import cf_expand, fundamental_unit, parse_theta

__all__ = ["main"]


def _emit(payload: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(text)


def _resolve_order(args) -> QuadraticOrder:
    if args.theta is not None:
        return endomorphism_ring(parse_theta(args.theta))
    if args.D is not None:
        return QuadraticOrder(args.D, args.f)
    raise UsageError("either --theta or --D (with optional --f) is required")


class UsageError(Exception):
    pass


def _max_disc(args) -> int | None:
    if getattr(args, "max_disc", None) is not None:
        return args.max_disc
    env = os.environ.get("QDE_MAX_DISC")
    return int(env) if env else None


def _cmd_cf(args) -> int:
    theta = parse_theta(args.theta)
    cf = cf_expand(theta)
    _emit(
        {"theta": str(theta), "preperiod": list(cf.preperiod), "period": list(cf.period)},
        args.json,
        f"preperiod={list(cf.preperiod)} period={list(cf.period)}",
    )
    return 0


def _cmd_unit(args) -> int:
    epsilon, norm = fundamental_unit(args.D)
    expr = str(epsilon.to_irrational())
    _emit(
        {"D": args.D, "x": epsilon.x, "y": epsilon.y, "norm": norm, "expr": expr},
        args.json,
        f"epsilon = {epsilon} = {expr}, norm = {norm}",
    )
    return 0


def _cmd_order(args) -> int:
    order = endomorphism_ring(parse_theta(args.theta))
    _emit(
        {"D": order.D, "f": order.f, "discriminant": order.discriminant},
        args.json,
        f"{order} (D={order.D}, f={order.f}, discriminant {order.discriminant})",
    )
    return 0


def _cmd_classgroup(args) -> int:
    order = _resolve_order(args)
    structure = class_group_structure(order, max_disc=_max_disc(args))
    payload = {
        "D": order.D,
        "f": order.f,
        "discriminant": order.discriminant,
        "h": class_number_order(order),
        "h_field": class_number_maximal(order.D),
        "unit_index": unit_index(order),
        "invariant_factors": list(structure.invariant_factors),
    }
    _emit(
        payload,
        args.json,
        f"h = {payload['h']} for {order}; Cl = {structure}; "
        f"h(field) = {payload['h_field']}, unit index e_f = {payload['unit_index']}",
    )
    return 0


def _cmd_companions(args) -> int:
    order = _resolve_order(args)
    tori = companion_tori(order)
    exprs = [str(t) for t in tori]
    _emit(
        {"D": order.D, "f": order.f, "count": len(tori), "companions": exprs},
        args.json,
        "\n".join(f"companion {i}: {expr}" for i, expr in enumerate(exprs)),
    )
    return 0


def _cmd_k0(args) -> int:
    theta = parse_theta(args.theta)
    descriptor = crossed_product_k0(theta, max_disc=_max_disc(args))
    galois = descriptor.galois_group
    payload = {
        "theta": str(theta),
        "D": descriptor.order.D,
        "f": descriptor.order.f,
        "k0_rank": descriptor.k0_rank,
        "trace_generators": list(descriptor.trace_generators),
        "galois_group": {
            "invariant_factors": list(galois.invariant_factors),
            "order": galois.order,
        },
    }
    _emit(
        payload,
        args.json,
        f"K0 rank = {descriptor.k0_rank}; trace generators "
        f"[{', '.join(descriptor.trace_generators)}]; Galois group {galois}",
    )
    return 0


def _cmd_predict(args) -> int:
    theta = parse_theta(args.theta)
    p = predict(theta, max_disc=_max_disc(args))
    payload = {
        "D": p.order.D,
        "f": p.order.f,
        "h": p.h_lambda,
        "rank": p.rank,
        "sha": {
            "invariant_factors": list(p.sha_structure.invariant_factors),
            "order": p.sha_order,
        },
        "k0_rank": p.k0_rank,
    }
    _emit(
        payload,
        args.json,
        f"rank = {p.rank}, Sha = {p.sha_structure} (order {p.sha_order}), "
        f"K0 rank = {p.k0_rank} for {p.order}",
    )
    return 0


def _cmd_validate(args) -> int:
    records = parse_curves(args.input, format=args.format)
    report = validate(records, jobs=args.jobs)
    if args.json:
        print(json.dumps(report.to_json_dict(), separators=(",", ":")))
        return 0
    lines = [
        f"records: {report.total}, consistent: {report.consistent}, "
        f"violations: {report.violations}"
    ]
    for rank, total, consistent in report.by_rank:
        lines.append(f"  rank {rank}: {consistent}/{total} consistent")
    for label, rank, sha, predicted in report.violation_rows:
        lines.append(
            f"  violation: {label} has rank {rank}, |Sha| {sha}, predicted {predicted}"
        )
    print("\n".join(lines))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qde",
        description=(
            "Exact computations for real quadratic irrationals: continued "
            "fractions, fundamental units, class groups of orders, crossed-"
            "product K0 descriptors, rank/Sha predictions, and curve-data "
            "validation."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="emit machine-readable JSON")
        return p

    p = add("cf", _cmd_cf, "periodic continued fraction of theta")
    p.add_argument("--theta", required=True, help='expression like "(1+sqrt(5))/2"')

    p = add("unit", _cmd_unit, "fundamental unit of Q(sqrt(D))")
    p.add_argument("--D", type=int, required=True, help="squarefree radicand > 1")

    p = add("order", _cmd_order, "endomorphism order of Z + theta*Z")
    p.add_argument("--theta", required=True)

    for name, func, help_text in (
        ("classgroup", _cmd_classgroup, "class number and class group of an order"),
        ("companions", _cmd_companions, "one quadratic irrational per ideal class"),
    ):
        p = add(name, func, help_text)
        p.add_argument("--theta", help="derive the order from this expression")
        p.add_argument("--D", type=int, help="squarefree radicand > 1")
        p.add_argument("--f", type=int, default=1, help="conductor (default 1)")
        p.add_argument("--max-disc", type=int, help="desk-scale discriminant ceiling")

    p = add("k0", _cmd_k0, "K0 descriptor of the crossed product for theta")
    p.add_argument("--theta", required=True)
    p.add_argument("--max-disc", type=int)

    p = add("predict", _cmd_predict, "rank / Sha / K0 prediction for theta")
    p.add_argument("--theta", required=True)
    p.add_argument("--max-disc", type=int)

    p = add("validate", _cmd_validate, "check curve data against |Sha| = (1+rank)^2")
    p.add_argument("--input", required=True, help="path to the data file")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1, help="parallel validation workers")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
        return 2
    except QdeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
