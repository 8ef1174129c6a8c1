"""Command-line interface: one binary, one subcommand per capability.

Exit codes: 0 success, 1 domain error (invalid net, malformed outcome,
budget exceeded), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import dominance, genbench, model, ordering
from .oracle import build_graph, entails
from .model import format_outcome, parse_outcome
from .rank import rank


def _load_net(path: str) -> model.CPNet:
    with open(path) as handle:
        return model.parse(handle.read())


def _rank_str(value, decimal: bool) -> str:
    if decimal:
        return f"{value} (~{float(value):.6f})"
    return str(value)


def _cmd_validate(args) -> int:
    net = _load_net(args.net)
    model.validate(net, allow_indifference=args.indifference)
    print("valid")
    return 0


def _cmd_rank(args) -> int:
    net = _load_net(args.net)
    model.validate(net, allow_indifference=True)
    o = parse_outcome(args.outcome, net)
    print(_rank_str(rank(net, o), args.decimal))
    return 0


def _cmd_order(args) -> int:
    net = _load_net(args.net)
    model.validate(net, allow_indifference=True)
    subset = None
    if args.subset:
        subset = [parse_outcome(text, net) for text in args.subset]
    result = ordering.consistent_order(
        net, subset=subset, strict=args.strict, budget=args.budget
    )
    if args.strict:
        for o in result:
            print(f"{format_outcome(o)} {_rank_str(rank(net, o), args.decimal)}")
    else:
        for group in result:
            if len(group) == 1:
                o = group[0]
                print(
                    f"{format_outcome(o)} "
                    f"{_rank_str(rank(net, o), args.decimal)}"
                )
            else:
                print("[")
                for o in group:
                    print(
                        f"  {format_outcome(o)} "
                        f"{_rank_str(rank(net, o), args.decimal)}"
                    )
                print("]")
    return 0


def _cmd_dominate(args) -> int:
    net = _load_net(args.net)
    model.validate(net, allow_indifference=args.mode == "indifference")
    o = parse_outcome(args.o, net)
    o_prime = parse_outcome(args.oprime, net)
    config = dominance.PruningConfig(
        measures=dominance.parse_measures(args.measures),
        leaf_strategy=args.strategy,
        mode=args.mode,
    )
    result = dominance.dominates(net, o, o_prime, config)
    print("true" if result.answer else "false")
    print(f"outcomes traversed: {result.outcomes_traversed}")
    if result.witness:
        print("witness: " + " -> ".join(format_outcome(step) for step in result.witness))
    if result.zero_traversal_reason:
        print(f"zero-traversal reason: {result.zero_traversal_reason}")
    return 0


def _cmd_oracle(args) -> int:
    net = _load_net(args.net)
    model.validate(net, allow_indifference=True)
    o = parse_outcome(args.o, net)
    o_prime = parse_outcome(args.oprime, net)
    graph = build_graph(net, budget=args.budget)
    print(entails(graph, o, o_prime).value)
    return 0


def _cmd_generate(args) -> int:
    spec = genbench.GenSpec(
        n=args.n,
        d_U=args.du,
        seed=args.seed,
        edge_density=args.edge_density,
        indifference_rate=args.indifference_rate,
    )
    text = model.serialize(genbench.generate_net(spec))
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _parse_grid(text: str) -> list[tuple[int, int]]:
    # "3:2,4:2,5:3" -> [(3, 2), (4, 2), (5, 3)]
    cells = []
    for part in text.split(","):
        n_str, _, d_str = part.partition(":")
        try:
            cells.append((int(n_str), int(d_str)))
        except ValueError:
            raise ValueError(f"malformed grid cell {part!r}, expected n:d_U") from None
    return cells


def _cmd_bench(args) -> int:
    methods = genbench.METHOD_COMBINATIONS
    if args.methods:
        methods = tuple(
            dominance.parse_measures(part) for part in args.methods.split(";")
        )
    _, stats = genbench.run_experiment(
        grid=_parse_grid(args.grid),
        nets_per_cell=args.nets,
        queries_per_net=args.queries,
        methods=methods,
        seed=args.seed,
        out_dir=args.out,
        leaf_strategy=args.strategy,
        indifference_rate=args.indifference_rate,
    )
    for s in stats:
        print(
            f"n={s.n} d_U={s.d_U} {s.method}: "
            f"mean_ot={s.mean_ot:.3f} se_ot={s.se_ot:.3f} "
            f"z_p={s.z_p:.4f} prop_false={s.prop_false:.4f}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpnets",
        description="Preference reasoning over conditional preference networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_net(p):
        p.add_argument("--net", required=True, help="path to a net file")

    def add_budget(p):
        p.add_argument(
            "--budget", type=int, default=None,
            help="outcome enumeration budget (default from CPNET_BUDGET env)",
        )

    p = sub.add_parser("validate", help="check a net file for structural validity")
    add_net(p)
    p.add_argument("--indifference", action="store_true",
                   help="allow tied preference positions")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("rank", help="print the exact rank of an outcome")
    add_net(p)
    p.add_argument("--outcome", required=True, help="outcome literal, e.g. 2,1,3,1")
    p.add_argument("--decimal", action="store_true",
                   help="append an approximate decimal value")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("order", help="print a rank-consistent ordering")
    add_net(p)
    p.add_argument("--subset", nargs="*", default=None,
                   help="restrict to these outcome literals")
    p.add_argument("--strict", action="store_true",
                   help="break rank ties lexicographically instead of grouping")
    p.add_argument("--decimal", action="store_true")
    add_budget(p)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("dominate", help="answer a dominance query by search")
    add_net(p)
    p.add_argument("--o", required=True, help="candidate outcome literal")
    p.add_argument("--oprime", required=True, help="reference outcome literal")
    p.add_argument("--measures", default="none",
                   help="comma-separated subset of rank,penalty,suffix (or 'none')")
    p.add_argument("--strategy", choices=["fifo", "rank-priority"], default="fifo")
    p.add_argument("--mode", choices=["strict", "indifference"], default="strict")
    p.set_defaults(func=_cmd_dominate)

    p = sub.add_parser("oracle", help="classify an outcome pair by full-graph reachability")
    add_net(p)
    p.add_argument("--o", required=True)
    p.add_argument("--oprime", required=True)
    add_budget(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("generate", help="generate a random net")
    p.add_argument("--n", type=int, required=True, help="variable count")
    p.add_argument("--du", type=int, required=True, help="maximum domain size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--edge-density", type=float, default=None)
    p.add_argument("--indifference-rate", type=float, default=0.0)
    p.add_argument("--out", default=None, help="write the net here instead of stdout")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("bench", help="run the pruning-efficiency experiment")
    p.add_argument("--grid", required=True,
                   help="comma-separated n:d_U cells, e.g. 3:2,4:2,5:3")
    p.add_argument("--nets", type=int, default=10, help="nets per grid cell")
    p.add_argument("--queries", type=int, default=10, help="queries per net")
    p.add_argument("--methods", default=None,
                   help="semicolon-separated measure lists, e.g. 'rank;rank,suffix'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=["fifo", "rank-priority"], default="fifo")
    p.add_argument("--indifference-rate", type=float, default=0.0)
    p.add_argument("--out", default=None, help="directory for CSV/manifest output")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (model.ModelError, ValueError, OSError, RuntimeError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
