"""Random net/query generation and the pruning-efficiency benchmark harness.

The generator produces seed-stable acyclic nets whose every edge is
preferentially relevant (some pair of parent assignments differing only on
that parent yields different child preference rows).  The harness runs each
dominance query under every requested measure combination, records outcomes
traversed and wall time, enforces cross-method answer agreement, and
aggregates per-cell means, standard errors, zero-traversal proportions, and
false-answer proportions into CSV files with a JSON manifest sidecar.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
import random
import statistics
import time
from dataclasses import dataclass
from pathlib import Path

from .dominance import PruningConfig, dominates, method_label
from .model import CPNet, Outcome, validate

# The seven non-empty measure combinations, in canonical label order.
METHOD_COMBINATIONS = (
    frozenset({"rank"}),
    frozenset({"penalty"}),
    frozenset({"suffix"}),
    frozenset({"rank", "penalty"}),
    frozenset({"rank", "suffix"}),
    frozenset({"penalty", "suffix"}),
    frozenset({"rank", "penalty", "suffix"}),
)

RAW_COLUMNS = (
    "n", "d_U", "cpnet_id", "query_id", "method",
    "answer", "outcomes_traversed", "time_ns", "zero_reason",
)
AGG_COLUMNS = (
    "n", "d_U", "method",
    "mean_ot", "se_ot", "mean_time_ns", "se_time_ns", "z_p", "prop_false",
)


class MethodDisagreement(RuntimeError):
    """Two measure combinations answered one query differently — a bug."""


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one random net.

    ``edge_density`` defaults to 4/(n-1), giving a mean parent count near 2;
    parent sets are capped at ``max_parents`` to keep CPTs small.  With
    ``indifference_rate`` > 0, adjacent preference positions merge with that
    probability and the resulting ties are propagated so children keep
    identical rows across tied parent values.
    """

    n: int
    d_U: int
    seed: int | str = 0
    edge_density: float | None = None
    indifference_rate: float = 0.0
    max_parents: int = 5


@dataclass(frozen=True)
class QueryRecord:
    n: int
    d_U: int
    cpnet_id: str
    query_id: int
    method: str
    answer: bool
    outcomes_traversed: int
    time_ns: int
    zero_reason: str


@dataclass(frozen=True)
class BatchStats:
    n: int
    d_U: int
    method: str
    mean_ot: float
    se_ot: float
    mean_time_ns: float
    se_time_ns: float
    z_p: float
    prop_false: float


def _random_row(rng: random.Random, size: int, tie_rate: float) -> tuple[int, ...]:
    """A random preference-position tuple; adjacent positions merge with
    probability ``tie_rate``."""
    order = rng.sample(range(size), size)
    sigma = [0] * size
    position = 1
    sigma[order[0]] = 1
    for value in order[1:]:
        if not (tie_rate > 0 and rng.random() < tie_rate):
            position += 1
        sigma[value] = position
    return tuple(sigma)


def _value_classes(size: int, table: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Partition a variable's values: two values share a class when a chain
    of in-any-row ties connects them.  Index k holds value k+1's class id."""
    parent = list(range(size))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for sigma in table:
        for a in range(size):
            for b in range(a + 1, size):
                if sigma[a] == sigma[b]:
                    parent[find(a)] = find(b)
    return tuple(find(k) for k in range(size))


def _build_table(
    rng: random.Random,
    size: int,
    parent_sizes: list[int],
    parent_classes: list[tuple[int, ...]],
    tie_rate: float,
) -> tuple[tuple[int, ...], ...]:
    """Rows in mixed-radix parent-assignment order; assignments equivalent
    under the parents' tie classes share one row (the consistency rule)."""
    rows_by_key: dict[tuple[int, ...], tuple[int, ...]] = {}
    table = []
    for u in itertools.product(*(range(s) for s in parent_sizes)):
        key = tuple(cls[v] for cls, v in zip(parent_classes, u))
        if key not in rows_by_key:
            rows_by_key[key] = _random_row(rng, size, tie_rate)
        table.append(rows_by_key[key])
    return tuple(table)


def _slot_relevant(
    table: tuple[tuple[int, ...], ...], parent_sizes: list[int], slot: int
) -> bool:
    """Does varying only parent ``slot`` ever change the preference row?"""
    groups: dict[tuple[int, ...], tuple[int, ...]] = {}
    for u, row in zip(itertools.product(*(range(s) for s in parent_sizes)), table):
        key = u[:slot] + u[slot + 1 :]
        if key in groups:
            if groups[key] != row:
                return True
        else:
            groups[key] = row
    return False


def generate_net(spec: GenSpec) -> CPNet:
    """Deterministic random net; always valid, every edge relevant.

    Candidate edges i -> j (i < j) are kept with probability edge_density.
    CPTs are built in topological order; a parent whose edge turns out
    irrelevant gets its rows re-rolled a bounded number of times and is
    dropped if relevance remains unattainable (e.g. all its values tied).
    """
    if spec.n < 1:
        raise ValueError("need at least one variable")
    if spec.d_U < 2:
        raise ValueError("maximum domain size must be at least 2")
    rng = random.Random(spec.seed)
    n = spec.n
    density = spec.edge_density
    if density is None:
        density = min(1.0, 4.0 / (n - 1)) if n > 1 else 0.0
    domain_sizes = tuple(rng.randint(2, spec.d_U) for _ in range(n))

    parents: list[list[int]] = []
    for j in range(n):
        chosen = [i for i in range(j) if rng.random() < density]
        if len(chosen) > spec.max_parents:
            chosen = sorted(rng.sample(chosen, spec.max_parents))
        parents.append(chosen)

    cpts: list[tuple[tuple[int, ...], ...]] = []
    classes: list[tuple[int, ...]] = []
    for j in range(n):
        size = domain_sizes[j]
        pa = parents[j]
        while True:
            # A parent with all values tied together can never be relevant.
            pa = [p for p in pa if len(set(classes[p])) > 1]
            psizes = [domain_sizes[p] for p in pa]
            pclasses = [classes[p] for p in pa]
            failing: list[int] = []
            for _ in range(64):
                table = _build_table(rng, size, psizes, pclasses, spec.indifference_rate)
                failing = [
                    slot for slot in range(len(pa))
                    if not _slot_relevant(table, psizes, slot)
                ]
                if not failing:
                    break
            if failing:
                del pa[failing[0]]
                continue
            break
        parents[j] = pa
        cpts.append(table)
        classes.append(_value_classes(size, table))

    adjacency = tuple(
        tuple(1 if i in parents[j] else 0 for j in range(n)) for i in range(n)
    )
    net = CPNet(n=n, adjacency=adjacency, domain_sizes=domain_sizes, cpts=tuple(cpts))
    validate(net, allow_indifference=spec.indifference_rate > 0)
    return net


def edge_relevant(net: CPNet, x: int, y: int) -> bool:
    """Audit one edge x -> y: some pair of parent assignments differing only
    on x must give different preference rows for y."""
    slot = net.parents(y).index(x)
    groups: dict[tuple[int, ...], tuple[int, ...]] = {}
    for u in net.parent_assignments(y):
        key = u[:slot] + u[slot + 1 :]
        row = net.cpt_row(y, u)
        if key in groups:
            if groups[key] != row:
                return True
        else:
            groups[key] = row
    return False


def random_outcome(rng: random.Random, net: CPNet) -> Outcome:
    return tuple(rng.randint(1, size) for size in net.domain_sizes)


def generate_queries(
    net: CPNet, count: int, seed: int | str
) -> list[tuple[Outcome, Outcome]]:
    """Uniformly random outcome pairs; pairs may coincide (the o = o' case
    is part of the zero-traversal accounting)."""
    if count < 1:
        raise ValueError("need at least one query")
    rng = random.Random(seed)
    return [
        (random_outcome(rng, net), random_outcome(rng, net)) for _ in range(count)
    ]


def _mean_se(values: list[float]) -> tuple[float, float]:
    mean = statistics.fmean(values)
    se = statistics.stdev(values) / math.sqrt(len(values)) if len(values) > 1 else 0.0
    return mean, se


def aggregate(records: list[QueryRecord]) -> list[BatchStats]:
    """Reduce raw records to per-(n, d_U, method) statistics."""
    cells: dict[tuple[int, int, str], list[QueryRecord]] = {}
    for record in records:
        cells.setdefault((record.n, record.d_U, record.method), []).append(record)
    stats = []
    for (n, d_U, method), group in sorted(cells.items()):
        mean_ot, se_ot = _mean_se([r.outcomes_traversed for r in group])
        mean_t, se_t = _mean_se([r.time_ns for r in group])
        stats.append(
            BatchStats(
                n=n,
                d_U=d_U,
                method=method,
                mean_ot=mean_ot,
                se_ot=se_ot,
                mean_time_ns=mean_t,
                se_time_ns=se_t,
                z_p=sum(1 for r in group if r.zero_reason) / len(group),
                prop_false=sum(1 for r in group if not r.answer) / len(group),
            )
        )
    return stats


def run_experiment(
    grid: list[tuple[int, int]],
    nets_per_cell: int,
    queries_per_net: int,
    methods: tuple[frozenset[str], ...] = METHOD_COMBINATIONS,
    seed: int = 0,
    out_dir: str | Path | None = None,
    leaf_strategy: str = "fifo",
    indifference_rate: float = 0.0,
) -> tuple[list[QueryRecord], list[BatchStats]]:
    """Run every query under every method over the (n, d_U) grid.

    Traversal counts are deterministic under (grid, seeds); time columns are
    not.  One warm-up query per (net, method) is run untimed.  All methods
    must agree on every answer; a mismatch raises MethodDisagreement with
    the offending net and query, since every combination is complete.
    """
    mode = "indifference" if indifference_rate > 0 else "strict"
    for measures in methods:
        if mode == "indifference" and "penalty" in measures:
            raise ValueError("penalty-based methods cannot run in indifference mode")
    records: list[QueryRecord] = []
    for n, d_U in grid:
        for net_idx in range(nets_per_cell):
            tag = f"{seed}:{n}:{d_U}:{net_idx}"
            net = generate_net(
                GenSpec(
                    n=n, d_U=d_U, seed="net:" + tag,
                    indifference_rate=indifference_rate,
                )
            )
            queries = generate_queries(net, queries_per_net, "query:" + tag)
            cpnet_id = f"{n}-{d_U}-{net_idx}"
            answers: list[dict[str, bool]] = [{} for _ in queries]
            for measures in methods:
                label = method_label(measures)
                config = PruningConfig(
                    measures=measures, leaf_strategy=leaf_strategy, mode=mode
                )
                dominates(net, queries[0][0], queries[0][1], config)  # warm-up
                for query_id, (o, o_prime) in enumerate(queries):
                    start = time.perf_counter_ns()
                    result = dominates(net, o, o_prime, config)
                    elapsed = time.perf_counter_ns() - start
                    answers[query_id][label] = result.answer
                    records.append(
                        QueryRecord(
                            n=n,
                            d_U=d_U,
                            cpnet_id=cpnet_id,
                            query_id=query_id,
                            method=label,
                            answer=result.answer,
                            outcomes_traversed=result.outcomes_traversed,
                            time_ns=elapsed,
                            zero_reason=result.zero_traversal_reason or "",
                        )
                    )
            for query_id, per_method in enumerate(answers):
                if len(set(per_method.values())) > 1:
                    raise MethodDisagreement(
                        f"net {cpnet_id}, query {query_id} "
                        f"{queries[query_id]}: {per_method}"
                    )
    stats = aggregate(records)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_raw_csv(records, out / "raw.csv")
        write_aggregate_csv(stats, out / "aggregate.csv")
        write_manifest(
            out / "manifest.json",
            grid=grid,
            nets_per_cell=nets_per_cell,
            queries_per_net=queries_per_net,
            methods=[method_label(m) for m in methods],
            seed=seed,
            leaf_strategy=leaf_strategy,
            indifference_rate=indifference_rate,
        )
    return records, stats


def write_raw_csv(records: list[QueryRecord], path: str | Path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(RAW_COLUMNS)
        for r in records:
            writer.writerow([
                r.n, r.d_U, r.cpnet_id, r.query_id, r.method,
                "true" if r.answer else "false",
                r.outcomes_traversed, r.time_ns, r.zero_reason,
            ])


def write_aggregate_csv(stats: list[BatchStats], path: str | Path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(AGG_COLUMNS)
        for s in stats:
            writer.writerow([
                s.n, s.d_U, s.method,
                repr(s.mean_ot), repr(s.se_ot),
                repr(s.mean_time_ns), repr(s.se_time_ns),
                repr(s.z_p), repr(s.prop_false),
            ])


def write_manifest(path: str | Path, **info) -> None:
    with open(path, "w") as handle:
        json.dump(info, handle, indent=2, sort_keys=True)
        handle.write("\n")
