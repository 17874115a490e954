"""Command-line front end.

Exit status: 0 on success, 1 when a verification or corpus comparison fails,
2 on usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import closed_forms as cf
from .bounds import bounds_report
from .corpus import SUITES, run_suite
from .engine import Placement, is_krpds
from .graph import (
    FamilySpec,
    Graph,
    GraphParseError,
    complete_bipartite_parts,
    generate,
    parse_family,
    read_edge_list,
)
from .solvers import SearchOptions, ftpd_number, krpds_number, pd_number, q_number

K_VERBS = {"ftpd", "krpds-solve", "krpds-verify", "bounds", "formula"}


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--graph", metavar="FILE", help="edge-list file")
    src.add_argument("--family", metavar="SPEC", help="e.g. kpq:3,3  star:16  path:9  tree:10,7  T:h.txt:01")
    common.add_argument("--k", type=int)
    common.add_argument("--placement", metavar="STR", help='e.g. "0:2,4:1"')
    common.add_argument("--out", choices=("json", "tsv", "human"), default="human")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--time-limit", type=float, default=60.0, metavar="SECS")
    common.add_argument("--no-deg3", action="store_true", help="search all vertices, not only degree >= 3")
    common.add_argument("--no-forced", action="store_true", help="disable forced k+1 multiplicities")
    common.add_argument("--no-symmetry", action="store_true")
    common.add_argument("--max-size", type=int)
    common.add_argument("--no-timing", action="store_true", help="report millis as 0 for reproducible output")

    parser = argparse.ArgumentParser(prog="robustpd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("pd", parents=[common], help="power domination number")
    sub.add_parser("q", parents=[common], help="Q(G)")
    sub.add_parser("ftpd", parents=[common], help="k-fault-tolerant power domination number")
    sub.add_parser("krpds-solve", parents=[common], help="k-robust power domination number")
    sub.add_parser("krpds-verify", parents=[common], help="check a placement is k-robust")
    sub.add_parser("bounds", parents=[common], help="all applicable bounds")
    sub.add_parser("formula", parents=[common], help="closed-form value for a family")
    sub.add_parser("gen", parents=[common], help="print the edge list of a family")
    corpus = sub.add_parser("corpus", parents=[common], help="run a named regression suite")
    corpus.add_argument("suite", choices=SUITES)
    return parser


def _load_graph(args) -> tuple[Graph, FamilySpec | None]:
    if args.graph:
        try:
            return read_edge_list(args.graph), None
        except OSError as exc:
            raise UsageError(f"cannot read {args.graph}: {exc.strerror or exc}") from None
    if args.family:
        spec = parse_family(args.family)
        return generate(spec), spec
    raise UsageError("one of --graph or --family is required")


def _options(args) -> SearchOptions:
    return SearchOptions(
        use_deg3_restriction=not args.no_deg3,
        use_forced_multiplicity=not args.no_forced,
        symmetry="none" if args.no_symmetry else "auto",
        max_size=args.max_size,
        time_limit=args.time_limit,
    )


def _formula(g: Graph, spec: FamilySpec | None, k: int) -> dict:
    if spec is not None and spec.kind == "family_T":
        # (k+1)n/3 is attained exactly on this family
        return {"source": "n_over_3", "value": (k + 1) * spec.params[0].n}
    if g.is_tree():
        return {"source": "tree", "value": (k + 1) * pd_number(g).value}
    parts = complete_bipartite_parts(g)
    if parts is None:
        raise cf.NotApplicable("no closed form: graph is neither a tree, complete bipartite, nor in family T")
    a, b = sorted((len(parts[0]), len(parts[1])))
    if (a, b) == (3, 3):
        return {"source": "k33", "value": cf.k33_value(k)}
    if a == 3:
        return {"source": "k3m", "value": cf.k3m_value(k, b)}
    if a == b:
        return {"source": "knn", "value": cf.knn_value(a, k)}
    lo, hi = cf.knm_bounds(a, b, k)
    return {"source": "bip_lower/bip_upper", "lower": lo, "upper": hi}


def _execute(args) -> tuple[Any, int]:
    if args.verb == "corpus":
        rows = run_suite(args.suite, seed=args.seed, workers=args.workers, time_limit=args.time_limit)
        if args.no_timing:
            for row in rows:
                row["millis"] = 0
        ok = all(r["ok"] for r in rows)
        return {"suite": args.suite, "ok": ok, "rows": rows}, 0 if ok else 1

    if args.verb in K_VERBS and args.k is None:
        raise UsageError(f"{args.verb} needs --k")
    if args.k is not None and args.k < 0:
        raise UsageError("--k must be non-negative")
    g, spec = _load_graph(args)
    timing = not args.no_timing

    if args.verb == "gen":
        return {"n": g.n, "edges": [list(e) for e in g.edges()]}, 0
    if args.verb == "formula":
        out = {"k": args.k, **_formula(g, spec, args.k)}
        return out, 0
    if args.verb == "krpds-verify":
        if not args.placement:
            raise UsageError("krpds-verify needs --placement")
        placement = Placement.parse(args.placement)
        try:
            verdict = is_krpds(g, placement, args.k)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return verdict.to_dict(), 0 if verdict.ok else 1
    if args.verb == "bounds":
        rep = bounds_report(g, args.k, _options(args))
        return rep.to_list(), 0

    opts = _options(args)
    if args.verb == "pd":
        rep = pd_number(g, opts)
    elif args.verb == "q":
        rep = q_number(g, opts)
    elif args.verb == "ftpd":
        rep = ftpd_number(g, args.k, opts)
    else:
        rep = krpds_number(g, args.k, opts)
    return rep.to_dict(timing=timing), 0


def _flatten(d: dict, prefix: str = "") -> dict:
    flat = {}
    for key, val in d.items():
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            flat.update(_flatten(val, name + "."))
        else:
            flat[name] = val
    return flat


def _cell(val) -> str:
    if val is None:
        return ""
    if isinstance(val, (list, dict)):
        return json.dumps(val, separators=(",", ":"))
    return str(val)


def _rows(payload) -> list[dict]:
    if isinstance(payload, list):
        return [_flatten(r) for r in payload]
    if isinstance(payload, dict) and isinstance(payload.get("rows"), list):
        return [_flatten(r) for r in payload["rows"]]
    return [_flatten(payload)]


def render(payload, fmt: str) -> str:
    """Serialize a JSON-style payload; tsv and human are derived from the same payload."""
    if fmt == "json":
        return json.dumps(payload)
    rows = _rows(payload)
    if fmt == "tsv":
        header = list(rows[0]) if rows else []
        lines = ["\t".join(header)] + ["\t".join(_cell(r.get(h)) for h in header) for r in rows]
        return "\n".join(lines)
    blocks = []
    if isinstance(payload, dict) and "suite" in payload:
        blocks.append(f"suite: {payload['suite']}  ok: {payload['ok']}")
    for r in rows:
        width = max((len(k) for k in r), default=0)
        blocks.append("\n".join(f"{k.ljust(width)}  {_cell(v)}" for k, v in r.items()))
    return "\n\n".join(blocks)


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        payload, status = _execute(args)
    except (UsageError, GraphParseError, cf.NotApplicable, ValueError) as exc:
        print(f"robustpd {args.verb}: error: {exc}", file=sys.stderr)
        return 2
    print(render(payload, args.out))
    return status


if __name__ == "__main__":
    sys.exit(main())
