"""Ground-truth preference graph for small nets.

Builds the full graph over all outcomes (directed edges for single-variable
improving flips, undirected edges for indifferent flips) and answers
entailment by reachability.  Intended as a test instrument: construction is
budgeted and refuses to approximate.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .model import CPNet, Outcome, all_outcomes, check_outcome

DEFAULT_BUDGET = 4096


def outcome_budget() -> int:
    """Enumeration budget; the CPNET_BUDGET env var overrides the default."""
    value = os.environ.get("CPNET_BUDGET")
    return int(value) if value else DEFAULT_BUDGET


class BudgetExceeded(RuntimeError):
    pass


class Relation(str, Enum):
    """Classification of an outcome pair; exhaustive and mutually exclusive."""

    STRICT = "strictly-preferred"
    REVERSE = "reverse"
    INDIFFERENT = "indifferent"
    INCOMPARABLE = "incomparable"
    EQUAL = "equal"


@dataclass
class PreferenceGraph:
    """Preference graph on the full outcome set of one net.

    ``improving[o]`` holds the outcomes one improving flip better than ``o``
    (the edge points toward the preferred outcome); ``indifferent[o]`` holds
    the tied single-variable flips (symmetric).
    """

    net: CPNet
    improving: dict[Outcome, list[Outcome]] = field(default_factory=dict)
    indifferent: dict[Outcome, list[Outcome]] = field(default_factory=dict)

    def nodes(self) -> list[Outcome]:
        return list(self.improving)


def build_graph(net: CPNet, budget: int | None = None) -> PreferenceGraph:
    """Construct the complete preference graph; O(|Omega| * n * d) edges."""
    limit = budget if budget is not None else outcome_budget()
    count = net.outcome_count()
    if count > limit:
        raise BudgetExceeded(f"{count} outcomes exceed budget {limit}")
    graph = PreferenceGraph(net=net)
    for o in all_outcomes(net):
        better: list[Outcome] = []
        tied: list[Outcome] = []
        for i in range(1, net.n + 1):
            sigma = net.cpt_row(i, net.parent_assignment(i, o))
            current = sigma[o[i - 1] - 1]
            for value in range(1, net.domain_sizes[i - 1] + 1):
                if value == o[i - 1]:
                    continue
                flipped = o[: i - 1] + (value,) + o[i:]
                if sigma[value - 1] < current:
                    better.append(flipped)
                elif sigma[value - 1] == current:
                    tied.append(flipped)
        graph.improving[o] = better
        graph.indifferent[o] = tied
    return graph


def _indifference_component(graph: PreferenceGraph, start: Outcome) -> set[Outcome]:
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nxt in graph.indifferent[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _reachable(graph: PreferenceGraph, start: Outcome, goal: Outcome) -> bool:
    """True if goal is reachable via improving edges plus indifferent edges."""
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            return True
        for nxt in graph.improving[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
        for nxt in graph.indifferent[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return goal in seen


def entails(graph: PreferenceGraph, o: Outcome, o_prime: Outcome) -> Relation:
    """Classify the pair: is ``o`` entailed preferred to ``o_prime``?

    Strict preference is a path o_prime ~> o that uses at least one improving
    edge; indifference is a purely tie-edged path.  A path reaching ``o``
    from outside its indifference component necessarily uses an improving
    edge, so component membership settles which case applies.
    """
    check_outcome(graph.net, o)
    check_outcome(graph.net, o_prime)
    if o == o_prime:
        return Relation.EQUAL
    if o in _indifference_component(graph, o_prime):
        return Relation.INDIFFERENT
    if _reachable(graph, o_prime, o):
        return Relation.STRICT
    if _reachable(graph, o, o_prime):
        return Relation.REVERSE
    return Relation.INCOMPARABLE


def strictly_dominated_by(graph: PreferenceGraph, o: Outcome) -> set[Outcome]:
    """All outcomes b with b strictly entailed preferred to ``o``."""
    # Forward closure from o, then strip the purely-indifferent part.
    seen = {o}
    queue = deque([o])
    while queue:
        node = queue.popleft()
        for nxt in graph.improving[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
        for nxt in graph.indifferent[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen - _indifference_component(graph, o)


def verify_consistent_ordering(
    graph: PreferenceGraph, ordering: list[Outcome]
) -> tuple[bool, tuple[Outcome, Outcome] | None]:
    """Check no entailed pair is inverted; ordering is most-preferred first.

    Returns (True, None) on success, or (False, (earlier, later)) where the
    later element is entailed preferred to the earlier one.
    """
    position = {o: idx for idx, o in enumerate(ordering)}
    for o in ordering:
        for better in strictly_dominated_by(graph, o):
            if better in position and position[better] > position[o]:
                return False, (o, better)
    return True, None
