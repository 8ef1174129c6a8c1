"""Preference reasoning over conditional preference networks.

Exact rational outcome ranks, rank-consistent orderings, dominance-query
search with combinable pruning measures, a brute-force reachability oracle
for small nets, and a seeded generator/benchmark harness.
"""

from .dominance import (
    PruningConfig,
    SearchResult,
    dominates,
    indifference_query,
    penalty,
)
from .genbench import GenSpec, generate_net, generate_queries, run_experiment
from .model import CPNet, Outcome, parse, serialize, validate
from .oracle import Relation, build_graph, entails
from .ordering import consistent_order, constrained_order
from .rank import least_rank_difference, least_rank_improvement, max_rank, rank

__all__ = [
    "CPNet",
    "GenSpec",
    "Outcome",
    "PruningConfig",
    "Relation",
    "SearchResult",
    "build_graph",
    "consistent_order",
    "constrained_order",
    "dominates",
    "entails",
    "generate_net",
    "generate_queries",
    "indifference_query",
    "least_rank_difference",
    "least_rank_improvement",
    "max_rank",
    "parse",
    "penalty",
    "rank",
    "run_experiment",
    "serialize",
    "validate",
]
