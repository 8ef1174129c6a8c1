"""Search-tree dominance queries and the three pruning measures."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cpnets.dominance import (
    ConfigError,
    IndifferenceUnsupported,
    MEASURES,
    PruningConfig,
    dominates,
    eval_f,
    hamming,
    importance_weights,
    improving_flips,
    indifferent_flips,
    initial_verdict,
    method_label,
    parse_measures,
    penalty,
    suffix_prunes,
)
from cpnets.genbench import GenSpec, generate_net
from cpnets.model import CPNet, all_outcomes
from cpnets.oracle import Relation, build_graph, entails

ALL_SUBSETS = [
    frozenset(combo)
    for size in range(4)
    for combo in itertools.combinations(MEASURES, size)
]

TIED = CPNet(n=1, adjacency=((0,),), domain_sizes=(2,), cpts=(((1, 1),),))


class TestFlips:
    def test_improving_flips_of_search_root(self, net):
        assert sorted(improving_flips(net, (2, 1, 2, 2))) == [
            (1, 1, 2, 2),
            (2, 1, 1, 2),
            (2, 1, 3, 2),
        ]

    def test_improving_flips_second_example(self, net):
        assert sorted(improving_flips(net, (2, 1, 1, 1))) == [
            (1, 1, 1, 1),
            (2, 1, 3, 1),
        ]

    def test_optimum_has_no_improving_flips(self, net):
        assert improving_flips(net, (1, 1, 1, 1)) == []

    def test_strict_net_has_no_indifferent_flips(self, net):
        for o in all_outcomes(net):
            assert indifferent_flips(net, o) == []

    def test_indifferent_flip_between_tied_values(self):
        assert indifferent_flips(TIED, (2,)) == [(1,)]
        assert indifferent_flips(TIED, (1,)) == [(2,)]

    def test_indifferent_flip_in_long_tied_row(self):
        # Row x1 > x2 ~ x3 ~ x4 > x5 > x6 ~ x7 > x8: from x6, the x7 flip is
        # indifferent.
        net = CPNet(
            n=1,
            adjacency=((0,),),
            domain_sizes=(8,),
            cpts=(((1, 2, 2, 2, 3, 4, 4, 5),),),
        )
        assert (7,) in indifferent_flips(net, (6,))
        assert (8,) not in indifferent_flips(net, (6,))


class TestPenalty:
    def test_importance_weights(self, net):
        # Sinks get weight 1; w_X = 1 + sum of w_Y * (n_Y - 1) upstream.
        assert importance_weights(net) == (5, 5, 2, 1)

    def test_optimal_outcome_has_zero_penalty(self, net):
        assert penalty(net, (1, 1, 1, 1)) == 0

    def test_hand_evaluated_penalty(self, net):
        # Degrees of penalty (1, 1, 2, 1) against weights (5, 5, 2, 1).
        assert penalty(net, (2, 2, 1, 2)) == 5 + 5 + 4 + 1

    def test_eval_f_of_target_is_zero(self, net):
        assert eval_f(net, (2, 1, 3, 1), (2, 1, 3, 1)) == 0

    def test_penalty_rejects_tied_nets(self):
        with pytest.raises(IndifferenceUnsupported):
            penalty(TIED, (1,))

    def test_every_improving_flip_drops_penalty(self, graph):
        # The soundness premise of penalty pruning.
        net = graph.net
        for o, better_list in graph.improving.items():
            for better in better_list:
                assert penalty(net, better) <= penalty(net, o) - 1

    def test_hamming(self):
        assert hamming((1, 2, 3), (1, 2, 3)) == 0
        assert hamming((1, 2, 3), (2, 2, 1)) == 2


class TestSuffixFixing:
    def test_leaf_equal_to_target_prunes_everything(self, net):
        leaf = target = (2, 1, 3, 1)
        for candidate in improving_flips(net, leaf):
            assert suffix_prunes(net, leaf, candidate, target)

    def test_shared_last_variable(self, net):
        leaf, target = (2, 2, 2, 1), (1, 1, 1, 1)  # agree only on variable 4
        broken = (2, 2, 2, 2)
        kept = (1, 2, 2, 1)
        assert suffix_prunes(net, leaf, broken, target)
        assert not suffix_prunes(net, leaf, kept, target)

    def test_no_shared_suffix_prunes_nothing(self, net):
        leaf, target = (1, 1, 1, 2), (1, 1, 1, 1)  # differ on the last variable
        for candidate in improving_flips(net, leaf):
            assert not suffix_prunes(net, leaf, candidate, target)


class TestConfig:
    def test_unknown_measure(self):
        with pytest.raises(ConfigError):
            PruningConfig(measures=frozenset({"psychic"}))

    def test_unknown_strategy(self):
        with pytest.raises(ConfigError):
            PruningConfig(leaf_strategy="lifo")

    def test_penalty_in_indifference_mode(self):
        with pytest.raises(ConfigError):
            PruningConfig(measures=frozenset({"penalty"}), mode="indifference")

    def test_tied_net_needs_indifference_mode(self):
        with pytest.raises(ConfigError):
            dominates(TIED, (1,), (2,))

    def test_parse_measures(self):
        assert parse_measures("none") == frozenset()
        assert parse_measures("rank,suffix") == {"rank", "suffix"}
        assert parse_measures("rank+penalty") == {"rank", "penalty"}
        with pytest.raises(ConfigError):
            parse_measures("rank,laser")

    def test_method_label_round_trip(self):
        for measures in ALL_SUBSETS:
            assert parse_measures(method_label(measures)) == measures


class TestDominates:
    def test_worked_trace_with_rank_pruning(self, net):
        result = dominates(
            net,
            (2, 1, 3, 1),
            (2, 1, 2, 2),
            PruningConfig(measures=frozenset({"rank"})),
        )
        assert result.answer is True
        assert result.outcomes_traversed == 3
        assert result.witness == (
            (2, 1, 2, 2),
            (2, 1, 1, 2),
            (2, 1, 1, 1),
            (2, 1, 3, 1),
        )
        # Layer structure: one survivor per expansion level.
        root_children = [c for c, p in result.parents.items() if p == (2, 1, 2, 2)]
        assert root_children == [(2, 1, 1, 2)]
        second = [c for c, p in result.parents.items() if p == (2, 1, 1, 2)]
        assert second == [(2, 1, 1, 1)]

    def test_equal_outcomes(self, net):
        for measures in ALL_SUBSETS:
            result = dominates(
                net, (1, 2, 1, 1), (1, 2, 1, 1), PruningConfig(measures=measures)
            )
            assert result.answer is False
            assert result.outcomes_traversed == 0
            assert result.zero_traversal_reason == "equal-outcomes"

    def test_rank_initial_condition(self, net):
        result = dominates(
            net,
            (2, 2, 1, 1),
            (1, 1, 2, 2),
            PruningConfig(measures=frozenset({"rank"})),
        )
        assert result.answer is False
        assert result.outcomes_traversed == 0
        assert result.zero_traversal_reason == "rank-initial"

    def test_penalty_initial_condition(self, net):
        # Asking whether a worse outcome beats the optimum: pen gap -1,
        # Hamming distance 1, so f < 0 before any node is created.
        result = dominates(
            net,
            (1, 1, 1, 2),
            (1, 1, 1, 1),
            PruningConfig(measures=frozenset({"penalty"})),
        )
        assert result.answer is False
        assert result.outcomes_traversed == 0
        assert result.zero_traversal_reason == "penalty-initial"
        assert initial_verdict(
            net, (1, 1, 1, 2), (1, 1, 1, 1), frozenset({"penalty"})
        ) == "penalty-initial"

    def test_all_configs_agree_with_oracle_on_demo(self, net, graph):
        outcomes = list(all_outcomes(net))
        for o in outcomes:
            for o_prime in outcomes:
                expected = entails(graph, o, o_prime) is Relation.STRICT
                for measures in ALL_SUBSETS:
                    result = dominates(
                        net, o, o_prime, PruningConfig(measures=measures)
                    )
                    assert result.answer == expected, (o, o_prime, measures)

    def test_rank_priority_strategy_agrees(self, net, graph):
        outcomes = list(all_outcomes(net))
        config = PruningConfig(
            measures=frozenset({"rank"}), leaf_strategy="rank-priority"
        )
        for o in outcomes[::3]:
            for o_prime in outcomes[::3]:
                expected = entails(graph, o, o_prime) is Relation.STRICT
                assert dominates(net, o, o_prime, config).answer == expected

    def test_traversed_set_inclusion_under_extra_measures(self, net, graph):
        # On false queries with fifo expansion, adding a measure never adds
        # a traversed outcome.
        outcomes = list(all_outcomes(net))
        for o in outcomes[::2]:
            for o_prime in outcomes[::2]:
                if entails(graph, o, o_prime) is Relation.STRICT:
                    continue
                for base in ALL_SUBSETS:
                    base_set = set(
                        dominates(net, o, o_prime, PruningConfig(measures=base)).traversed
                    )
                    for extra in MEASURES:
                        if extra in base:
                            continue
                        bigger = frozenset(base | {extra})
                        extra_set = set(
                            dominates(
                                net, o, o_prime, PruningConfig(measures=bigger)
                            ).traversed
                        )
                        assert extra_set <= base_set, (o, o_prime, base, extra)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10**6))
    def test_witnesses_are_valid_flipping_sequences(self, seed):
        net = generate_net(GenSpec(n=4, d_U=3, seed=seed))
        rng_queries = [
            (o, o_prime)
            for o in itertools.islice(all_outcomes(net), 0, None, 5)
            for o_prime in itertools.islice(all_outcomes(net), 0, None, 7)
        ]
        for o, o_prime in rng_queries:
            result = dominates(net, o, o_prime, PruningConfig())
            if not result.answer:
                continue
            assert result.witness[0] == o_prime and result.witness[-1] == o
            for step, nxt in zip(result.witness, result.witness[1:]):
                assert nxt in improving_flips(net, step)
