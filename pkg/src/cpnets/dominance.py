"""Dominance-query search with combinable pruning measures.

The query "is o entailed preferred to o_prime?" is answered by growing a
search tree rooted at o_prime, expanding single-variable improving flips
(plus indifferent flips when the net has ties) with a visited set.  Any
subset of three sound pruning measures may be enabled:

* rank: discard a candidate whose rank plus the applicable lower bound on
  the remaining entailed rank gap already overshoots the target's rank;
* suffix: once a leaf shares a topological suffix with the target, discard
  flips that break that suffix;
* penalty: discard candidates whose importance-weighted penalty evaluation
  goes negative (strict CPTs only).

All measures preserve completeness, so every configuration returns the same
answer.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .model import CPNet, Outcome, check_outcome
from .rank import least_rank_difference, min_rank_difference, rank

MEASURES = ("rank", "penalty", "suffix")


class ConfigError(ValueError):
    """Contradictory pruning configuration for the given net/mode."""


class IndifferenceUnsupported(ConfigError):
    """Penalty evaluation requested on a net with tied CPT rows."""


@dataclass(frozen=True)
class PruningConfig:
    measures: frozenset[str] = frozenset()
    leaf_strategy: str = "fifo"  # or "rank-priority"
    mode: str = "strict"  # or "indifference"

    def __post_init__(self):
        unknown = self.measures - set(MEASURES)
        if unknown:
            raise ConfigError(f"unknown measures {sorted(unknown)}")
        if self.leaf_strategy not in ("fifo", "rank-priority"):
            raise ConfigError(f"unknown leaf strategy {self.leaf_strategy!r}")
        if self.mode not in ("strict", "indifference"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.mode == "indifference" and "penalty" in self.measures:
            raise ConfigError("penalty pruning is undefined for indifference mode")


@dataclass
class SearchResult:
    answer: bool
    outcomes_traversed: int
    witness: tuple[Outcome, ...] | None = None
    zero_traversal_reason: str | None = None
    # Tree parent of every outcome added to the search tree, in insertion
    # order; exposes the traversal for tests and diagnostics.
    parents: dict[Outcome, Outcome] = field(default_factory=dict)

    @property
    def traversed(self) -> tuple[Outcome, ...]:
        return tuple(self.parents)


def improving_flips(net: CPNet, o: Outcome) -> list[Outcome]:
    """Single-variable flips of ``o`` to a strictly preferred value."""
    flips = []
    for i in range(1, net.n + 1):
        sigma = net.cpt_row(i, net.parent_assignment(i, o))
        current = sigma[o[i - 1] - 1]
        for value in range(1, net.domain_sizes[i - 1] + 1):
            if value != o[i - 1] and sigma[value - 1] < current:
                flips.append(o[: i - 1] + (value,) + o[i:])
    return flips


def indifferent_flips(net: CPNet, o: Outcome) -> list[Outcome]:
    """Single-variable flips of ``o`` to a tied value (empty for strict nets)."""
    flips = []
    for i in range(1, net.n + 1):
        sigma = net.cpt_row(i, net.parent_assignment(i, o))
        current = sigma[o[i - 1] - 1]
        for value in range(1, net.domain_sizes[i - 1] + 1):
            if value != o[i - 1] and sigma[value - 1] == current:
                flips.append(o[: i - 1] + (value,) + o[i:])
    return flips


@lru_cache(maxsize=65536)
def importance_weights(net: CPNet) -> tuple[int, ...]:
    """Per-variable importance weights for the penalty function.

    w_X = 1 + sum over children Y of w_Y * (n_Y - 1), so w of a childless
    variable is 1.  The additive 1 is what makes penalty pruning sound: an
    improving flip of X lowers X's own term by at least w_X while raising
    the children's terms by at most w_X - 1, so every improving flip
    decreases the total penalty by at least 1.
    """
    weights = [0] * net.n
    for i in range(net.n, 0, -1):
        weights[i - 1] = 1 + sum(
            weights[y - 1] * (net.domain_sizes[y - 1] - 1) for y in net.children(i)
        )
    return tuple(weights)


def penalty(net: CPNet, o: Outcome) -> int:
    """Importance-weighted penalty; 0 exactly for an optimal outcome."""
    if net.has_ties:
        raise IndifferenceUnsupported("penalty needs strict CPT rows")
    weights = importance_weights(net)
    total = 0
    for i in range(1, net.n + 1):
        sigma = net.cpt_row(i, net.parent_assignment(i, o))
        total += weights[i - 1] * (sigma[o[i - 1] - 1] - 1)
    return total


def hamming(o1: Outcome, o2: Outcome) -> int:
    return sum(1 for a, b in zip(o1, o2) if a != b)


def eval_f(net: CPNet, o_target: Outcome, o_star: Outcome) -> int:
    """Penalty evaluation pen(o*) - pen(target) - HD(o*, target).

    Negative values cannot lie on an improving flipping sequence toward the
    target, so they are prunable.
    """
    return penalty(net, o_star) - penalty(net, o_target) - hamming(o_star, o_target)


def suffix_prunes(net: CPNet, leaf: Outcome, candidate: Outcome, target: Outcome) -> bool:
    """True if expanding ``leaf`` with ``candidate`` breaks a shared suffix.

    The variables are in topological order; once the leaf agrees with the
    target on variables k..n, flips changing any of those may be discarded
    without losing completeness.
    """
    n = net.n
    k = 1
    for j in range(n - 1, -1, -1):
        if leaf[j] != target[j]:
            k = j + 2
            break
    if k > n:
        return False
    for j in range(k - 1, n):
        if candidate[j] != leaf[j]:
            return True
    return False


def _initial_reason(
    net: CPNet, o: Outcome, o_prime: Outcome, measures: frozenset[str], mode: str
) -> str | None:
    """Zero-traversal verdict, if one applies before any tree node exists."""
    if o == o_prime:
        return "equal-outcomes"
    if "penalty" in measures and eval_f(net, o, o_prime) < 0:
        return "penalty-initial"
    if "rank" in measures:
        if mode == "strict":
            if rank(net, o) - rank(net, o_prime) < least_rank_difference(net, o, o_prime):
                return "rank-initial"
        else:
            if rank(net, o_prime) >= rank(net, o):
                return "rank-initial"
    return None


def initial_verdict(
    net: CPNet,
    o: Outcome,
    o_prime: Outcome,
    measures: frozenset[str],
    mode: str = "strict",
) -> str | None:
    """Zero-traversal reason a search would report, or None if it must search.

    Exposed separately so zero-traversal statistics can be gathered over
    large query batches without paying for the searches themselves.
    """
    check_outcome(net, o)
    check_outcome(net, o_prime)
    return _initial_reason(net, o, o_prime, measures, mode)


def _rank_prunes(
    net: CPNet, candidate: Outcome, o: Outcome, r_target: Fraction, mode: str
) -> bool:
    r_cand = rank(net, candidate)
    if mode == "strict":
        return r_cand + least_rank_difference(net, o, candidate) > r_target
    if r_cand > r_target:
        return True
    return r_cand < r_target and r_cand + min_rank_difference(net, candidate, o) > r_target


def dominates(
    net: CPNet, o: Outcome, o_prime: Outcome, config: PruningConfig | None = None
) -> SearchResult:
    """Answer the dominance query "o entailed preferred to o_prime?".

    The answer is independent of the pruning configuration; only the tree
    size (``outcomes_traversed``, root excluded) varies.  A true answer
    carries the found improving flipping sequence as its witness.
    """
    config = config or PruningConfig()
    check_outcome(net, o)
    check_outcome(net, o_prime)
    if net.has_ties and config.mode != "indifference":
        raise ConfigError("net has tied CPT rows; use mode='indifference'")

    reason = _initial_reason(net, o, o_prime, config.measures, config.mode)
    if reason is not None:
        return SearchResult(False, 0, zero_traversal_reason=reason)

    r_target = rank(net, o) if "rank" in config.measures else None
    use_indifferent = config.mode == "indifference"

    # A search state is (outcome, improved): the flag records whether the
    # path from the root contains at least one improving flip.  In strict
    # mode every edge improves, so the flag is True for every non-root node;
    # in indifference mode a purely-indifferent path must not count as
    # strict dominance, and a state may be revisited once its flag upgrades.
    root = (o_prime, False)
    state_parents: dict[tuple[Outcome, bool], tuple[Outcome, bool]] = {}
    visited: dict[Outcome, bool] = {o_prime: False}
    traversed = 0
    parents: dict[Outcome, Outcome] = {}
    if config.leaf_strategy == "fifo":
        frontier: deque[tuple[Outcome, bool]] = deque([root])
        pop = frontier.popleft
        push = frontier.append
    else:
        heap: list[tuple[Fraction, tuple[Outcome, bool]]] = [
            (-rank(net, o_prime), root)
        ]
        frontier = heap  # type: ignore[assignment]
        pop = lambda: heapq.heappop(heap)[1]
        push = lambda state: heapq.heappush(heap, (-rank(net, state[0]), state))

    def finish_true(state: tuple[Outcome, bool]) -> SearchResult:
        witness = [state[0]]
        while state != root:
            state = state_parents[state]
            witness.append(state[0])
        witness.reverse()
        return SearchResult(True, traversed, tuple(witness), parents=parents)

    while frontier:
        leaf = pop()
        leaf_outcome, improved = leaf
        candidates = [(c, True) for c in improving_flips(net, leaf_outcome)]
        if use_indifferent:
            candidates += [
                (c, improved) for c in indifferent_flips(net, leaf_outcome)
            ]
        for candidate, flag in candidates:
            seen = visited.get(candidate)
            if seen is not None and (seen or not flag):
                continue
            if candidate == o and flag:
                traversed += 1
                parents.setdefault(candidate, leaf_outcome)
                state_parents[(candidate, flag)] = leaf
                return finish_true((candidate, flag))
            # Cheapest sound rejection first: rank, suffix, penalty.
            if r_target is not None and _rank_prunes(
                net, candidate, o, r_target, config.mode
            ):
                continue
            if "suffix" in config.measures and suffix_prunes(
                net, leaf_outcome, candidate, o
            ):
                continue
            if "penalty" in config.measures and eval_f(net, o, candidate) < 0:
                continue
            visited[candidate] = flag
            traversed += 1
            parents.setdefault(candidate, leaf_outcome)
            state_parents[(candidate, flag)] = leaf
            push((candidate, flag))
    return SearchResult(False, traversed, parents=parents)


def indifference_query(net: CPNet, o: Outcome, o_prime: Outcome) -> bool:
    """Is the net's entailed relation between the outcomes indifference?

    Unequal ranks settle the answer immediately; otherwise search over
    indifferent flips only (every tree node shares the common rank, so rank
    pruning has nothing to offer here).
    """
    check_outcome(net, o)
    check_outcome(net, o_prime)
    if o == o_prime:
        return True
    if rank(net, o) != rank(net, o_prime):
        return False
    visited = {o_prime}
    frontier = deque([o_prime])
    while frontier:
        leaf = frontier.popleft()
        for candidate in indifferent_flips(net, leaf):
            if candidate == o:
                return True
            if candidate not in visited:
                visited.add(candidate)
                frontier.append(candidate)
    return False


def method_label(measures: frozenset[str]) -> str:
    """Canonical label for a measure subset, e.g. "rank+suffix" or "none"."""
    chosen = [m for m in MEASURES if m in measures]
    return "+".join(chosen) if chosen else "none"


def parse_measures(text: str) -> frozenset[str]:
    """Parse a measure list like "rank,penalty"; "none" or "" is the empty set."""
    text = text.strip()
    if text in ("", "none"):
        return frozenset()
    parts = [part.strip() for part in text.replace("+", ",").split(",")]
    unknown = set(parts) - set(MEASURES)
    if unknown:
        raise ConfigError(f"unknown measures {sorted(unknown)}")
    return frozenset(parts)
