"""Rank-induced consistent orderings of the outcome set or any subset."""

from __future__ import annotations

from itertools import groupby
from typing import Callable, Iterable

from .model import CPNet, Outcome, all_outcomes, check_outcome
from .oracle import BudgetExceeded, outcome_budget
from .rank import rank

# A permitted-outcome constraint: either an explicit collection of outcomes
# or a predicate over outcomes (evaluated against the full enumeration).
ConstraintSet = Iterable[Outcome] | Callable[[Outcome], bool]


def consistent_order(
    net: CPNet,
    subset: Iterable[Outcome] | None = None,
    strict: bool = False,
    budget: int | None = None,
) -> list[Outcome] | list[list[Outcome]]:
    """Order outcomes by descending rank.

    With ``strict`` the result is a flat list, rank ties broken
    lexicographically on the value tuples; otherwise equal-rank outcomes are
    grouped, each tie group itself sorted lexicographically.  Only the
    members' ranks are computed, so subsets never pay for the full outcome
    set.
    """
    if subset is None:
        limit = budget if budget is not None else outcome_budget()
        if net.outcome_count() > limit:
            raise BudgetExceeded(
                f"{net.outcome_count()} outcomes exceed budget {limit}"
            )
        members = list(all_outcomes(net))
    else:
        members = list(subset)
        for o in members:
            check_outcome(net, o)
    ranked = sorted(members, key=lambda o: (-rank(net, o), o))
    if strict:
        return ranked
    return [list(group) for _, group in groupby(ranked, key=lambda o: rank(net, o))]


def constrained_order(
    net: CPNet,
    constraints: ConstraintSet,
    strict: bool = False,
    budget: int | None = None,
) -> list[Outcome] | list[list[Outcome]]:
    """Consistent ordering of the permitted outcomes only.

    Equals :func:`consistent_order` restricted to the permitted set; a
    predicate constraint is evaluated over the (budgeted) full enumeration.
    """
    if callable(constraints):
        limit = budget if budget is not None else outcome_budget()
        if net.outcome_count() > limit:
            raise BudgetExceeded(
                f"{net.outcome_count()} outcomes exceed budget {limit}"
            )
        permitted = [o for o in all_outcomes(net) if constraints(o)]
    else:
        permitted = list(constraints)
    if not permitted:
        raise ValueError("constraint set permits no outcomes")
    return consistent_order(net, subset=permitted, strict=strict)
