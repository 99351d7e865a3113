"""Command-line front end.

Subcommand groups: instance, bound, code, minrank, repro.  All output is
deterministic given the flags and seed; numbers are printed exactly
(rates as "r/t" rationals, never floats), and every command grows a JSON
twin behind --json for machine consumption.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import BudgetExceeded
from .fields import field_make
from .gencode import load_general_code, verify_confusability, verify_decoders
from .gencode import DEFAULT_SEED
from .graphs import mais
from .instances import (
    compose_noway,
    compose_twoway,
    instance_to_json,
    load_instance,
)
from .lincode import load_linear_code, verify_linear
from .repro import CLAIMS, repro_run
from .search import SearchProblem, scalar_code_search


def _rate_str(rate) -> str:
    return f"{rate.numerator}/{rate.denominator}"


def _cmd_instance_show(args) -> int:
    inst = load_instance(args.instance)
    if args.json:
        payload = json.loads(instance_to_json(inst))
        payload["B"] = [sorted(inst.interfering(i)) for i in range(1, inst.m + 1)]
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    title = inst.name or "instance"
    print(f"{title}: {inst.m} users")
    for i in range(1, inst.m + 1):
        knows = ",".join(map(str, sorted(inst.known(i)))) or "-"
        interf = ",".join(map(str, sorted(inst.interfering(i)))) or "-"
        print(f"  user {i:>2}  knows {{{knows}}}  interferes {{{interf}}}")
    return 0


def _cmd_instance_validate(args) -> int:
    try:
        inst = load_instance(args.file)
    except (ValueError, KeyError, OSError) as exc:
        print(f"invalid: {exc}")
        return 1
    print(f"ok: {inst.m} users")
    return 0


def _cmd_instance_compose(args) -> int:
    a = load_instance(args.a)
    b = load_instance(args.b)
    fn = compose_noway if args.mode == "noway" else compose_twoway
    out = fn(a, b)
    text = instance_to_json(out)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")
    print(f"wrote {args.mode} composition ({out.m} users) to {args.output}")
    return 0


def _cmd_bound_mais(args) -> int:
    inst = load_instance(args.instance)
    res = mais(inst, budget=args.budget) if args.budget else mais(inst)
    if args.json:
        print(
            json.dumps(
                {
                    "mais": res.size,
                    "witness": list(res.witness or ()),
                    "nodes": res.nodes,
                },
                sort_keys=True,
            )
        )
        return 0
    witness = ",".join(map(str, res.witness or ()))
    print(f"mais {res.size}  witness {{{witness}}}  nodes {res.nodes}")
    return 0


def _cmd_verify_linear(args) -> int:
    inst = load_instance(args.instance)
    code = load_linear_code(args.matrix, t=args.t)
    report = verify_linear(inst, code)
    if args.json:
        print(
            json.dumps(
                {
                    "ok": report.ok,
                    "rate": _rate_str(report.rate),
                    "rank": report.rank,
                    "failures": list(report.failures()),
                },
                sort_keys=True,
            )
        )
        return 0 if report.ok else 1
    if report.ok:
        print(f"pass: all {inst.m} users decode  rate {_rate_str(report.rate)}")
        return 0
    bad = ",".join(map(str, report.failures()))
    print(f"fail: users {{{bad}}} cannot decode  rate {_rate_str(report.rate)}")
    return 1


def _cmd_verify_nonlinear(args) -> int:
    inst = load_instance(args.instance)
    code = load_general_code(args.code)
    mode = args.mode
    if mode == "auto":
        mode = "decoders" if code.decoders is not None else "confusability"
    if mode == "decoders":
        report = verify_decoders(
            inst, code, mode="auto", samples=args.samples, seed=args.seed
        )
        if args.json:
            print(
                json.dumps(
                    {
                        "check": "decoders",
                        "ok": report.ok,
                        "mode": report.mode,
                        "inputs": report.inputs,
                        "failures": {
                            str(c.user): c.failures
                            for c in report.checks
                            if not c.ok
                        },
                    },
                    sort_keys=True,
                )
            )
        else:
            print(
                f"{'pass' if report.ok else 'fail'}: decoders, "
                f"{report.mode} over {report.inputs} messages"
            )
            for c in report.checks:
                if not c.ok:
                    print(
                        f"  user {c.user}: {c.failures} failures, "
                        f"first at x={c.first_failure}"
                    )
        return 0 if report.ok else 1
    report = verify_confusability(inst, code)
    if args.json:
        print(
            json.dumps(
                {
                    "check": "confusability",
                    "ok": report.ok,
                    "witnesses": {
                        str(c.user): [list(x) for x in c.witness]
                        for c in report.checks
                        if not c.ok and c.witness
                    },
                },
                sort_keys=True,
            )
        )
    else:
        print(f"{'pass' if report.ok else 'fail'}: confusability")
        for c in report.checks:
            if not c.ok and c.witness:
                a, b = c.witness
                print(f"  user {c.user}: messages {a} and {b} collide")
    return 0 if report.ok else 1


def _cmd_minrank_search(args) -> int:
    inst = load_instance(args.instance)
    field = field_make(args.q)
    basis = None
    if args.basis:
        basis = tuple(int(tok) for tok in args.basis.split(","))
    problem = SearchProblem(
        instance=inst,
        field=field,
        target_rate=args.rate,
        basis_set=basis,
        order=args.order,
        budget=args.budget,
    )
    out = scalar_code_search(problem)
    payload = {
        "verdict": out.verdict,
        "nodes": out.nodes,
        "prunes": out.prunes,
        "basis": list(out.basis),
        "q": args.q,
        "rate": args.rate,
        "matrix": None
        if out.matrix is None
        else [[int(v) for v in row] for row in out.matrix.data],
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _cmd_repro(args) -> int:
    if args.list:
        for claim, (description, _, _) in CLAIMS.items():
            print(f"{claim}: {description}")
        return 0
    subset = args.claims or None
    try:
        report = repro_run(subset)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return 2
    print(report.to_json() if args.json else report.to_text())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="indexcode",
        description="construct, verify, and search unicast index codes",
    )
    parser.add_argument(
        "--json", action="store_true", help="machine-readable output"
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker count; the current engines are single-threaded and "
        "results never depend on this value",
    )
    groups = parser.add_subparsers(dest="group", required=True)

    inst = groups.add_parser("instance", help="inspect and build instances")
    inst_sub = inst.add_subparsers(dest="cmd", required=True)
    show = inst_sub.add_parser("show", help="print side info and interference")
    show.add_argument("instance", help="catalog name or JSON file")
    show.set_defaults(fn=_cmd_instance_show)
    validate = inst_sub.add_parser("validate", help="check an instance file")
    validate.add_argument("file")
    validate.set_defaults(fn=_cmd_instance_validate)
    compose = inst_sub.add_parser("compose", help="combine two instances")
    compose.add_argument("--mode", choices=("noway", "twoway"), required=True)
    compose.add_argument("a", help="catalog name or JSON file")
    compose.add_argument("b", help="catalog name or JSON file")
    compose.add_argument("-o", "--output", required=True, help="output JSON file")
    compose.set_defaults(fn=_cmd_instance_compose)

    bound = groups.add_parser("bound", help="lower bounds")
    bound_sub = bound.add_subparsers(dest="cmd", required=True)
    bmais = bound_sub.add_parser(
        "mais", help="maximum acyclic induced subgraph size"
    )
    bmais.add_argument("instance", help="catalog name or JSON file")
    bmais.add_argument("--budget", type=int, default=None, help="node budget")
    bmais.set_defaults(fn=_cmd_bound_mais)

    code = groups.add_parser("code", help="verify codes")
    code_sub = code.add_subparsers(dest="cmd", required=True)
    vlin = code_sub.add_parser("verify-linear", help="rank test a matrix code")
    vlin.add_argument("--instance", required=True, help="catalog name or JSON file")
    vlin.add_argument(
        "--matrix", required=True, help="catalog code name or matrix text file"
    )
    vlin.add_argument("--t", type=int, default=1, help="symbols per message")
    vlin.set_defaults(fn=_cmd_verify_linear)
    vnon = code_sub.add_parser(
        "verify-nonlinear", help="decoder or confusability check"
    )
    vnon.add_argument("--instance", required=True)
    vnon.add_argument(
        "--code", required=True, help="builtin code name or truth-table file"
    )
    vnon.add_argument(
        "--mode",
        choices=("auto", "decoders", "confusability"),
        default="auto",
    )
    vnon.add_argument("--samples", type=int, default=10**7)
    vnon.add_argument("--seed", type=int, default=DEFAULT_SEED)
    vnon.set_defaults(fn=_cmd_verify_nonlinear)

    minrank = groups.add_parser("minrank", help="scalar linear code search")
    minrank_sub = minrank.add_subparsers(dest="cmd", required=True)
    msearch = minrank_sub.add_parser(
        "search", help="decide one target rate; prints a JSON outcome"
    )
    msearch.add_argument("--instance", required=True)
    msearch.add_argument("--q", type=int, required=True)
    msearch.add_argument("--rate", type=int, required=True)
    msearch.add_argument("--basis", default=None, help="comma list, e.g. 1,2,3")
    msearch.add_argument("--order", choices=("default", "hint"), default="default")
    msearch.add_argument("--budget", type=int, default=None)
    msearch.set_defaults(fn=_cmd_minrank_search)

    repro = groups.add_parser("repro", help="run the built-in claim suite")
    repro.add_argument("claims", nargs="*", help="claim ids (default: all)")
    repro.add_argument("--list", action="store_true", help="list claim ids")
    repro.set_defaults(fn=_cmd_repro)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
