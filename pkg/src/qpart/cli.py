"""``qpart`` command line: expand, enumerate, biject, verify, suite, catalog."""
from __future__ import annotations

import argparse
import json
import sys

from . import bijections as bj
from . import identities as ids
from .partitions import ConstraintSet, Partition, enumerate_partitions
from .series import TruncatedSeries
from .suite import CRITERIA, SuiteUsageError, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SETS = {"p": 0, "d": 1, "rr": 2, "dse": 1}
IDENTITY_PARAMS = ("L", "N", "j", "m", "n")


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _identity_params(args) -> dict:
    return {k: getattr(args, k) for k in IDENTITY_PARAMS if getattr(args, k, None) is not None}


def _add_identity_flags(sp) -> None:
    for name in IDENTITY_PARAMS:
        sp.add_argument(f"--{name}", type=int, metavar="INT")
    sp.add_argument("--T", "-T", dest="T", type=int, default=ids.DEFAULT_T, help="truncation order in q")


def _series_payload(obj) -> dict:
    if isinstance(obj, TruncatedSeries):
        return {"trunc": obj.trunc, "terms": obj.to_json()}
    return {"trunc": None, "terms": obj.to_json()}


def cmd_expand(args) -> int:
    obj = ids.build(args.name, args.side, _identity_params(args), args.T)
    if args.format == "json":
        _emit({"name": args.name, "side": args.side, "params": _identity_params(args), **_series_payload(obj)})
    else:
        print(obj.to_text())
    return EXIT_OK


def cmd_enumerate(args) -> int:
    c = ConstraintSet(
        gap=SETS[args.set], max_part=args.max_part, min_part=args.min_part, parts=args.parts,
        parity=args.parity, evens_above_twice_odds=args.set == "dse")
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    parts = enumerate_partitions(args.n, c)
    if args.format == "json":
        _emit({"n": args.n, "count": len(parts), "partitions": [list(p) for p in parts]})
    else:
        for p in parts:
            print(p)
    return EXIT_OK


def _ledger(**sizes) -> dict:
    return {k: int(v) for k, v in sizes.items()}


def _rr_trace(p: Partition, order: str) -> dict:
    v, cols = bj.rr_decompose(p, order)
    minimal = bj.vector_to_minimal(v)
    inter = bj.intermediate_columns(v)
    box = bj.hooks_fold(v, inter)
    rebuilt = bj.rr_compose(v, cols)
    return {
        "vector": str(v),
        "minimal": str(minimal),
        "intermediate_columns": list(inter),
        "hooks": [list(h) for h in bj.hooks_from_vector(v).hooks],
        "box": str(box),
        "columns": list(cols),
        "output": str(rebuilt),
        "ledger": _ledger(input=p.size, base=bj.base_size(v.n, v.k), box=box.size,
                          columns=2 * sum(cols), output=rebuilt.size),
        "_render": [minimal, rebuilt],
    }


def _minimal_trace(v: bj.ParityVector) -> dict:
    minimal = bj.vector_to_minimal(v)
    inter = bj.intermediate_columns(v)
    box = bj.hooks_fold(v, inter)
    back, _ = bj.hooks_unfold(box, v.n, v.k)
    return {
        "vector": str(v),
        "intermediate_columns": list(inter),
        "hooks": [list(h) for h in bj.hooks_from_vector(v).hooks],
        "box": str(box),
        "output": str(minimal),
        "unfolded_vector": str(back),
        "ledger": _ledger(base=bj.base_size(v.n, v.k), box=box.size, output=minimal.size),
        "_render": [minimal],
    }


def _unfold_trace(box: Partition, n: int, k: int) -> dict:
    v, inter = bj.hooks_unfold(box, n, k)
    minimal = bj.vector_to_minimal(v)
    return {
        "vector": str(v),
        "hooks": [list(h) for h in bj.hooks_from_vector(v).hooks],
        "intermediate_columns": list(inter),
        "output": str(minimal),
        "ledger": _ledger(input=box.size, base=bj.base_size(n, k), output=minimal.size),
        "_render": [minimal],
    }


def cmd_biject(args) -> int:
    op = args.op
    text = args.literal
    if op == "minimal":
        try:
            v = bj.ParityVector.parse(text)
        except ValueError as exc:
            raise UsageError(f"malformed parity vector {text!r}: {exc}") from None
        trace = _minimal_trace(v)
    else:
        p = _partition(text)
        if op == "rr":
            trace = _rr_trace(p, args.order)
        elif op == "column":
            if args.n is None:
                raise UsageError("column needs --n")
            base, mu = bj.column_extract(p, args.n, args.gap)
            trace = {"staircase": str(bj.staircase(args.n, args.gap)), "base": str(base), "columns": str(mu),
                     "output": str(bj.column_insert(base, mu)),
                     "ledger": _ledger(input=p.size, base=base.size, columns=mu.size), "_render": [p]}
        elif op == "durfee":
            hat2, hat3, m = bj.durfee_split(p)
            trace = {"durfee": m, "below": str(hat2), "right": str(hat3),
                     "output": str(bj.durfee_merge(hat2, hat3, m)),
                     "ledger": _ledger(input=p.size, below=hat2.size, right=hat3.size), "_render": [p]}
        elif op == "parity":
            odd, even = bj.parity_split(p)
            trace = {"odd": str(odd), "even": str(even), "output": str(bj.parity_join(odd, even)),
                     "ledger": _ledger(input=p.size, odd=odd.size, even=even.size), "_render": [p]}
        elif op == "even":
            if args.n is None:
                raise UsageError("even needs --n")
            pp = bj.even_extract(p, args.n)
            k = len(p)
            trace = {"extracted": str(pp), "output": str(bj.even_insert(pp, k, args.n)),
                     "ledger": _ledger(input=p.size, extracted=pp.size, removed=2 * args.n * k + k * (k + 1)),
                     "_render": [p]}
        elif op == "unfold":
            if args.n is None or args.k is None:
                raise UsageError("unfold needs --n and --k")
            trace = _unfold_trace(p, args.n, args.k)
        else:  # argparse restricts choices
            raise UsageError(f"unknown map {op!r}")
    shown = trace.pop("_render")
    trace = {"map": op, "input": text.strip(), **trace}
    if args.render:
        trace["diagrams"] = [bj.render_two_modular(x).split("\n") if x else [] for x in shown]
    if args.format == "json":
        _emit(trace)
    else:
        for key, value in trace.items():
            if key == "diagrams":
                for rows in value:
                    print("\n".join(rows))
                    print()
            elif isinstance(value, dict):
                print(f"{key}: " + " ".join(f"{k}={v}" for k, v in value.items()))
            else:
                print(f"{key}: {value if isinstance(value, (str, int)) else json.dumps(value)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.oracle:
        report = ids.oracle_check(args.name, _identity_params(args), args.T)
    else:
        report = ids.verify(args.name, _identity_params(args), args.T)
    if args.format == "json":
        _emit(report.to_dict())
    else:
        print(report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def _parse_only(text: str | None):
    if text is None:
        return None
    chosen = {t.strip() for t in text.split(",") if t.strip()}
    known = {c[0] for c in CRITERIA}
    unknown = chosen - known
    if unknown:
        raise UsageError(f"unknown criteria {sorted(unknown)}")
    return chosen


def cmd_suite(args) -> int:
    catalog = ids.mutated_catalog(args.mutate) if args.mutate else None
    if args.seed < 0 or args.seed >= 2 ** 64:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    result = run_suite(args.profile, args.seed, _parse_only(args.only), catalog)
    if args.format == "json":
        _emit(result)
    else:
        for crit in result["criteria"]:
            print(f"{'PASS' if crit['pass'] else 'FAIL'} [{crit['id']}] {crit['title']}")
            for check in crit["checks"]:
                if not check["pass"]:
                    line = f"    FAIL {check['label']}"
                    w = check.get("witness")
                    if w:
                        line += f": coefficient of {w['monomial_text']} is {w['lhs']} vs {w['rhs']}"
                    elif check.get("error"):
                        line += f": {check['error']}"
                    print(line)
        print("PASS" if result["pass"] else "FAIL")
    return EXIT_OK if result["pass"] else EXIT_FAIL


def cmd_catalog(args) -> int:
    entries = [d.describe() for d in ids.CATALOG.values()]
    if args.json:
        _emit({"identities": entries})
    else:
        for e in entries:
            params = ", ".join(p["name"] for p in e["params"])
            print(f"{e['name']:22} {e['kind']:22} ({params})  {e['anchor']}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpart", description="Exact q-series and partition identity checker.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_format(sp, default="text"):
        sp.add_argument("--format", choices=("text", "json"), default=default)
        return sp

    sp = with_format(sub.add_parser("expand", help="expand one side of a catalog identity"))
    sp.add_argument("name")
    sp.add_argument("--side", default="L")
    _add_identity_flags(sp)
    sp.set_defaults(func=cmd_expand)

    sp = with_format(sub.add_parser("enumerate", help="list partitions satisfying constraints"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--set", choices=sorted(SETS), default="p")
    sp.add_argument("--parts", type=int)
    sp.add_argument("--max-part", type=int)
    sp.add_argument("--min-part", type=int, default=1)
    sp.add_argument("--parity", choices=("odd", "even"))
    sp.set_defaults(func=cmd_enumerate)

    sp = with_format(sub.add_parser("biject", help="run a bijection and print its trace"), default="json")
    sp.add_argument("op", choices=("rr", "minimal", "unfold", "column", "durfee", "parity", "even"))
    sp.add_argument("literal", help="partition literal such as (12,7,5,1), or a parity vector for 'minimal'")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--gap", type=int, default=2)
    sp.add_argument("--order", choices=("tallest", "shortest"), default="tallest")
    sp.add_argument("--render", action="store_true", help="include 2-modular diagrams")
    sp.set_defaults(func=cmd_biject)

    sp = with_format(sub.add_parser("verify", help="check a catalog identity"))
    sp.add_argument("name")
    _add_identity_flags(sp)
    sp.add_argument("--oracle", action="store_true", help="compare every side with brute-force enumeration")
    sp.set_defaults(func=cmd_verify)

    sp = with_format(sub.add_parser("suite", help="run the acceptance suite"), default="json")
    sp.add_argument("--profile", choices=("quick", "full"), default="quick")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--only", help="comma-separated criterion ids")
    sp.add_argument("--mutate", action="append", choices=sorted(ids.MUTATIONS),
                    help="replace a catalog entry with its deliberately broken variant")
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("catalog", help="list the identity catalog")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "T", 0) < 0:
        print("qpart: error: --T must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ids.CatalogError, SuiteUsageError, ValueError) as exc:
        print(f"qpart: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
