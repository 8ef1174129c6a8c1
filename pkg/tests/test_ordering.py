"""Rank-induced orderings of the full outcome set and of subsets."""

import pytest
from hypothesis import given, settings, strategies as st

from cpnets.genbench import GenSpec, generate_net
from cpnets.model import ModelError, all_outcomes
from cpnets.oracle import BudgetExceeded, build_graph, verify_consistent_ordering
from cpnets.ordering import consistent_order, constrained_order

# The demo net's complete ordering, most preferred first.  Equal-rank
# outcomes form two-element tie groups (six of them), members listed
# lexicographically.
FULL_ORDER = [
    [(1, 1, 1, 1)],
    [(1, 1, 1, 2)],
    [(1, 1, 2, 2)],
    [(1, 1, 2, 1)],
    [(1, 1, 3, 2)],
    [(1, 1, 3, 1)],
    [(1, 2, 2, 2), (2, 1, 3, 2)],
    [(1, 2, 2, 1), (2, 1, 3, 1)],
    [(1, 2, 3, 2), (2, 1, 1, 1)],
    [(1, 2, 3, 1), (2, 1, 1, 2)],
    [(1, 2, 1, 1), (2, 1, 2, 2)],
    [(1, 2, 1, 2), (2, 1, 2, 1)],
    [(2, 2, 3, 2)],
    [(2, 2, 3, 1)],
    [(2, 2, 2, 2)],
    [(2, 2, 2, 1)],
    [(2, 2, 1, 1)],
    [(2, 2, 1, 2)],
]


def example_constraints(o):
    """The worked plausibility constraints: A=1 forced, three combinations
    forbidden."""
    a, b, c, d = o
    if a != 1:
        return False
    if b == 1 and c == 1:
        return False
    if b == 2 and c == 2:
        return False
    return not (b == 2 and c == 3 and d == 2)


EXPECTED_CHAIN = [
    (1, 1, 2, 2),
    (1, 1, 2, 1),
    (1, 1, 3, 2),
    (1, 1, 3, 1),
    (1, 2, 3, 1),
    (1, 2, 1, 1),
    (1, 2, 1, 2),
]


def test_full_ordering_matches_published_sequence(net):
    assert consistent_order(net) == FULL_ORDER


def test_full_ordering_has_six_tie_pairs(net):
    groups = consistent_order(net)
    assert [len(g) for g in groups].count(2) == 6
    assert sum(len(g) for g in groups) == 24


def test_strict_flattening(net):
    flat = consistent_order(net, strict=True)
    assert flat == [o for group in FULL_ORDER for o in group]


def test_singleton_subset(net):
    assert consistent_order(net, subset=[(2, 1, 3, 1)]) == [[(2, 1, 3, 1)]]


def test_three_outcome_subset(net):
    # Ranks 77/12 > 61/12 > 39/12.
    subset = [(2, 1, 3, 2), (1, 1, 2, 2), (2, 2, 1, 1)]
    assert consistent_order(net, subset=subset, strict=True) == [
        (1, 1, 2, 2),
        (2, 1, 3, 2),
        (2, 2, 1, 1),
    ]


def test_invalid_subset_member(net):
    with pytest.raises(ModelError):
        consistent_order(net, subset=[(1, 1, 4, 1)])


def test_constrained_chain_from_predicate(net):
    assert constrained_order(net, example_constraints, strict=True) == EXPECTED_CHAIN


def test_constrained_chain_from_explicit_set(net):
    permitted = [o for o in all_outcomes(net) if example_constraints(o)]
    assert constrained_order(net, permitted, strict=True) == EXPECTED_CHAIN


def test_constrained_with_full_set_equals_consistent(net):
    assert constrained_order(net, lambda o: True) == consistent_order(net)


def test_empty_constraint_set(net):
    with pytest.raises(ValueError):
        constrained_order(net, lambda o: False)


def test_equal_rank_pair_tie_broken_deterministically(net):
    pair = [(2, 1, 3, 2), (1, 2, 2, 2)]
    assert constrained_order(net, pair, strict=True) == [(1, 2, 2, 2), (2, 1, 3, 2)]
    assert constrained_order(net, list(reversed(pair)), strict=True) == [
        (1, 2, 2, 2),
        (2, 1, 3, 2),
    ]


def test_enumeration_budget(net):
    big = generate_net(GenSpec(n=13, d_U=2, seed=0))
    with pytest.raises(BudgetExceeded):
        consistent_order(big)
    with pytest.raises(BudgetExceeded):
        constrained_order(big, lambda o: True)
    # An explicit subset never needs the enumeration.
    outcome = tuple(1 for _ in range(13))
    assert consistent_order(big, subset=[outcome]) == [[outcome]]


def test_restriction_property(net):
    permitted = [o for o in all_outcomes(net) if example_constraints(o)]
    full = consistent_order(net, strict=True)
    filtered = [o for o in full if o in set(permitted)]
    assert constrained_order(net, permitted, strict=True) == filtered


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 5), d_U=st.integers(2, 3))
def test_orderings_never_invert_entailed_pairs(seed, n, d_U):
    net = generate_net(GenSpec(n=n, d_U=d_U, seed=seed))
    graph = build_graph(net)
    flat = consistent_order(net, strict=True)
    ok, witness = verify_consistent_ordering(graph, flat)
    assert ok, witness
