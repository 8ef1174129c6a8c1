"""Exact outcome ranks and the per-variable lower bounds derived from them.

All arithmetic uses :class:`fractions.Fraction`; rank equality is meaningful
and exact, which downstream modules (ordering ties, indifference queries)
depend on.  Per-net derived quantities are memoized, keyed on the immutable
net, so repeated queries against the same net are cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .model import CPNet, Outcome, check_outcome


class EqualOutcomes(ValueError):
    """Raised where a computation needs two distinct outcomes."""


@dataclass(frozen=True)
class VariableStats:
    """Structure-only quantities, one entry per variable (index i-1).

    ``ancestral_factors[i]`` is the product of reciprocal domain sizes over
    the ancestors of variable i+1; ``descendent_paths[i]`` counts distinct
    directed paths of any length starting at i+1.
    """

    ancestors: tuple[frozenset[int], ...]
    children: tuple[tuple[int, ...], ...]
    descendent_paths: tuple[int, ...]
    ancestral_factors: tuple[Fraction, ...]


def _check_index(net: CPNet, i: int) -> None:
    if not 1 <= i <= net.n:
        raise IndexError(f"variable index {i} outside 1..{net.n}")


def ancestors(net: CPNet, i: int) -> frozenset[int]:
    """Variables with a directed path to variable ``i``.

    Accumulates columns of successive matrix powers via repeated
    matrix-vector products; a nonzero accumulated entry marks an ancestor.
    """
    _check_index(net, i)
    n = net.n
    acc = [0] * n
    vec = [net.adjacency[j][i - 1] for j in range(n)]
    while sum(vec) > 0:
        acc = [a + v for a, v in zip(acc, vec)]
        vec = [
            sum(net.adjacency[j][k] * vec[k] for k in range(n)) for j in range(n)
        ]
    return frozenset(j + 1 for j in range(n) if acc[j])


def descendent_paths(net: CPNet, i: int) -> int:
    """Number of distinct directed paths of any length starting at ``i``."""
    _check_index(net, i)
    n = net.n
    vec = list(net.adjacency[i - 1])
    count = 0
    while sum(vec) > 0:
        count += sum(vec)
        vec = [
            sum(vec[k] * net.adjacency[k][j] for k in range(n)) for j in range(n)
        ]
    return count


@lru_cache(maxsize=65536)
def stats(net: CPNet) -> VariableStats:
    """Cached ancestor sets, children, path counts, and ancestral factors.

    Computed by recursion over the DAG (ancestors accumulate along the
    topological order, and d_X = sum over children Y of d_Y + 1) rather
    than by the definitional matrix products of :func:`ancestors` and
    :func:`descendent_paths`; the two agree bit-exactly (tested) and the
    recursion stays fast for large nets.
    """
    children = tuple(net.children(i) for i in range(1, net.n + 1))
    anc_list: list[frozenset[int]] = []
    for i in range(1, net.n + 1):
        found: set[int] = set()
        for p in net.parents(i):
            found.add(p)
            found |= anc_list[p - 1]
        anc_list.append(frozenset(found))
    anc = tuple(anc_list)
    path_list = [0] * net.n
    for i in range(net.n, 0, -1):
        path_list[i - 1] = sum(path_list[y - 1] + 1 for y in children[i - 1])
    paths = tuple(path_list)
    factors = []
    for i in range(1, net.n + 1):
        af = Fraction(1)
        for j in anc[i - 1]:
            af /= net.domain_sizes[j - 1]
        factors.append(af)
    return VariableStats(
        ancestors=anc,
        children=children,
        descendent_paths=paths,
        ancestral_factors=tuple(factors),
    )


def preference_position(
    net: CPNet, i: int, value: int, u: tuple[int, ...]
) -> Fraction:
    """Scale factor in (0, 1] for choosing ``value`` of variable ``i``.

    With m distinct positions in the relevant CPT row (m = domain size when
    the row is strict), the value at position k scores (m - k + 1) / m.
    """
    _check_index(net, i)
    sigma = net.cpt_row(i, u)
    if not 1 <= value <= len(sigma):
        raise IndexError(f"value {value} outside domain of variable {i}")
    k = sigma[value - 1]
    m = max(sigma)
    return Fraction(m - k + 1, m)


@lru_cache(maxsize=1 << 20)
def _rank_cached(net: CPNet, o: Outcome) -> Fraction:
    st = stats(net)
    total = Fraction(0)
    for i in range(1, net.n + 1):
        u = net.parent_assignment(i, o)
        weight = st.ancestral_factors[i - 1] * (st.descendent_paths[i - 1] + 1)
        total += weight * preference_position(net, i, o[i - 1], u)
    return total


def rank(net: CPNet, o: Outcome) -> Fraction:
    """Exact rank of ``o``: sum over variables of AF * (d + 1) * position.

    Handles strict and tied CPT rows uniformly (tied rows contribute via the
    generalized preference position).
    """
    check_outcome(net, o)
    return _rank_cached(net, o)


def max_rank(net: CPNet) -> Fraction:
    """Upper bound sum of AF_X * (d_X + 1); the rank of an optimal outcome."""
    st = stats(net)
    return sum(
        (
            st.ancestral_factors[i] * (st.descendent_paths[i] + 1)
            for i in range(net.n)
        ),
        Fraction(0),
    )


@lru_cache(maxsize=65536)
def least_rank_improvement(net: CPNet) -> tuple[Fraction, ...]:
    """Per-variable lower bound on the rank gain of a single improving flip.

    L(X) = AF_X (d_X + 1) / n_X  -  sum over children Y of
           AF_Y (d_Y + 1) (n_Y - 1) / n_Y;  strictly positive for every X.
    """
    st = stats(net)
    table = []
    for i in range(1, net.n + 1):
        value = (
            st.ancestral_factors[i - 1]
            * (st.descendent_paths[i - 1] + 1)
            / net.domain_sizes[i - 1]
        )
        for y in st.children[i - 1]:
            n_y = net.domain_sizes[y - 1]
            value -= (
                st.ancestral_factors[y - 1]
                * (st.descendent_paths[y - 1] + 1)
                * Fraction(n_y - 1, n_y)
            )
        table.append(value)
    return tuple(table)


def least_rank_difference(net: CPNet, o1: Outcome, o2: Outcome) -> Fraction:
    """Sum of L(X) over the variables where the outcomes differ."""
    table = least_rank_improvement(net)
    return sum(
        (table[i] for i in range(net.n) if o1[i] != o2[i]),
        Fraction(0),
    )


def min_rank_difference(net: CPNet, o1: Outcome, o2: Outcome) -> Fraction:
    """Minimum of L(X) over the differing variables; undefined for o1 == o2."""
    if o1 == o2:
        raise EqualOutcomes("minimum rank difference needs distinct outcomes")
    table = least_rank_improvement(net)
    return min(table[i] for i in range(net.n) if o1[i] != o2[i])
