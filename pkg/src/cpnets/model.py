"""CP-net data model, validation, and line-based textual serialization.

A CP-net is stored as an adjacency matrix over variables ``1..n`` (kept in
topological index order, so an edge i -> j requires i < j) together with one
conditional preference table per variable.  A CPT maps each full assignment of
values to the variable's parents to a preference-position tuple ``sigma``:
``sigma[k-1]`` is the preference position of the variable's k-th value under
that parent assignment (1 = most preferred).  Ties share a position and
positions are contiguous from 1.

Outcomes are plain tuples of 1-based value indices, one entry per variable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator


class ModelError(ValueError):
    """Base class for CP-net structural errors."""


class CyclicStructure(ModelError):
    pass


class NonTopologicalOrder(ModelError):
    pass


class MissingCPTRow(ModelError):
    pass


class MalformedPositions(ModelError):
    pass


class IndifferenceInconsistency(ModelError):
    pass


class ParseError(ModelError):
    """Malformed net text.  Carries the 1-based line number."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


Outcome = tuple[int, ...]


@dataclass(frozen=True)
class CPNet:
    """Immutable CP-net: structure plus conditional preference tables.

    ``cpts[i-1]`` is a tuple of sigma tuples for variable ``i``, one row per
    parent assignment, indexed by :meth:`row_index` (mixed-radix over the
    parent domains, parents in ascending variable order).
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    domain_sizes: tuple[int, ...]
    cpts: tuple[tuple[tuple[int, ...], ...], ...]

    def parents(self, i: int) -> tuple[int, ...]:
        """1-based indices of the parents of variable ``i``, ascending."""
        return tuple(j for j in range(1, self.n + 1) if self.adjacency[j - 1][i - 1])

    def children(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.n + 1) if self.adjacency[i - 1][j - 1])

    def domain_size(self, i: int) -> int:
        return self.domain_sizes[i - 1]

    def row_index(self, i: int, u: tuple[int, ...]) -> int:
        """Flat CPT row index for parent assignment ``u`` of variable ``i``."""
        parents = self.parents(i)
        if len(u) != len(parents):
            raise MissingCPTRow(
                f"variable {i}: parent assignment {u} has {len(u)} entries, "
                f"expected {len(parents)}"
            )
        idx = 0
        for value, parent in zip(u, parents):
            size = self.domain_sizes[parent - 1]
            if not 1 <= value <= size:
                raise MissingCPTRow(
                    f"variable {i}: parent {parent} value {value} outside 1..{size}"
                )
            idx = idx * size + (value - 1)
        return idx

    def cpt_row(self, i: int, u: tuple[int, ...]) -> tuple[int, ...]:
        """Preference-position tuple for variable ``i`` under parents ``u``."""
        return self.cpts[i - 1][self.row_index(i, u)]

    def parent_assignment(self, i: int, o: Outcome) -> tuple[int, ...]:
        """Values taken by the parents of ``i`` in outcome ``o``."""
        return tuple(o[p - 1] for p in self.parents(i))

    def parent_assignments(self, i: int) -> Iterator[tuple[int, ...]]:
        """All parent assignments of ``i`` in CPT row order."""
        return itertools.product(
            *(range(1, self.domain_sizes[p - 1] + 1) for p in self.parents(i))
        )

    @property
    def has_ties(self) -> bool:
        """True if any CPT row places two values in the same position."""
        return any(
            len(set(sigma)) < len(sigma) for table in self.cpts for sigma in table
        )

    def outcome_count(self) -> int:
        count = 1
        for size in self.domain_sizes:
            count *= size
        return count


def all_outcomes(net: CPNet) -> Iterator[Outcome]:
    """Lazily enumerate every outcome of ``net``."""
    return itertools.product(*(range(1, size + 1) for size in net.domain_sizes))


def check_outcome(net: CPNet, o: Outcome) -> None:
    if len(o) != net.n:
        raise ModelError(f"outcome {o} has {len(o)} entries, expected {net.n}")
    for i, value in enumerate(o, start=1):
        if not 1 <= value <= net.domain_sizes[i - 1]:
            raise ModelError(
                f"outcome {o}: variable {i} value {value} outside "
                f"1..{net.domain_sizes[i - 1]}"
            )


def _check_shapes(net: CPNet) -> None:
    if net.n < 1:
        raise ModelError("need at least one variable")
    if len(net.adjacency) != net.n or any(len(row) != net.n for row in net.adjacency):
        raise ModelError(f"adjacency must be {net.n}x{net.n}")
    if any(cell not in (0, 1) for row in net.adjacency for cell in row):
        raise ModelError("adjacency entries must be 0 or 1")
    if len(net.domain_sizes) != net.n:
        raise ModelError("domain_sizes length must equal n")
    if any(size < 2 for size in net.domain_sizes):
        raise ModelError("every domain size must be at least 2")
    if len(net.cpts) != net.n:
        raise ModelError("need one CPT per variable")


def _check_acyclic(net: CPNet) -> None:
    # Iterative DFS cycle detection on the raw adjacency (which may violate
    # the topological index convention, so we cannot rely on i < j here).
    color = [0] * net.n  # 0 unvisited, 1 on stack, 2 done
    for start in range(net.n):
        if color[start]:
            continue
        stack: list[tuple[int, int]] = [(start, 0)]
        color[start] = 1
        while stack:
            node, child = stack[-1]
            advanced = False
            for j in range(child, net.n):
                if net.adjacency[node][j]:
                    stack[-1] = (node, j + 1)
                    if color[j] == 1:
                        raise CyclicStructure(
                            f"cycle through variables {node + 1} and {j + 1}"
                        )
                    if color[j] == 0:
                        color[j] = 1
                        stack.append((j, 0))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()


def _check_sigma(net: CPNet, i: int, sigma: tuple[int, ...], allow_ties: bool) -> None:
    size = net.domain_sizes[i - 1]
    if len(sigma) != size:
        raise MalformedPositions(
            f"variable {i}: sigma {sigma} has {len(sigma)} entries, expected {size}"
        )
    distinct = set(sigma)
    if not allow_ties:
        if distinct != set(range(1, size + 1)):
            raise MalformedPositions(
                f"variable {i}: sigma {sigma} is not a permutation of 1..{size}"
            )
    else:
        if distinct != set(range(1, len(distinct) + 1)):
            raise MalformedPositions(
                f"variable {i}: sigma {sigma} positions must be contiguous from 1"
            )


def _tied_value_pairs(table: tuple[tuple[int, ...], ...]) -> set[tuple[int, int]]:
    """Value pairs (1-based, a < b) tied in at least one row of ``table``."""
    pairs = set()
    for sigma in table:
        for a in range(len(sigma)):
            for b in range(a + 1, len(sigma)):
                if sigma[a] == sigma[b]:
                    pairs.add((a + 1, b + 1))
    return pairs


def _check_indifference_consistency(net: CPNet) -> None:
    # If two values of X are tied in any row of CPT(X), flipping X between
    # them must not change the preference row of any child Y.  This is the
    # conservative reading: the tie is honoured in every parent context.
    for x in range(1, net.n + 1):
        tied = _tied_value_pairs(net.cpts[x - 1])
        if not tied:
            continue
        for y in net.children(x):
            parents = net.parents(y)
            slot = parents.index(x)
            for u in net.parent_assignments(y):
                for a, b in tied:
                    if u[slot] != a:
                        continue
                    u_swapped = u[:slot] + (b,) + u[slot + 1 :]
                    if net.cpt_row(y, u) != net.cpt_row(y, u_swapped):
                        raise IndifferenceInconsistency(
                            f"CPT({y}) differs between parent assignments {u} and "
                            f"{u_swapped}, but values {a},{b} of variable {x} are tied"
                        )


def validate(net: CPNet, allow_indifference: bool = False) -> None:
    """Check structural validity; raises a :class:`ModelError` subclass.

    With ``allow_indifference`` the sigma tuples may contain ties, and the
    consistency condition on indifferent parent values is enforced.
    """
    _check_shapes(net)
    _check_acyclic(net)
    for i in range(1, net.n + 1):
        for j in net.children(i):
            if i >= j:
                raise NonTopologicalOrder(
                    f"edge {i} -> {j} violates topological index order"
                )
    for i in range(1, net.n + 1):
        expected_rows = 1
        for p in net.parents(i):
            expected_rows *= net.domain_sizes[p - 1]
        if len(net.cpts[i - 1]) != expected_rows:
            raise MissingCPTRow(
                f"variable {i}: CPT has {len(net.cpts[i - 1])} rows, "
                f"expected {expected_rows}"
            )
        for sigma in net.cpts[i - 1]:
            _check_sigma(net, i, sigma, allow_ties=allow_indifference)
    if allow_indifference and net.has_ties:
        _check_indifference_consistency(net)


def is_valid(net: CPNet, allow_indifference: bool = False) -> bool:
    try:
        validate(net, allow_indifference=allow_indifference)
    except ModelError:
        return False
    return True


# ---------------------------------------------------------------------------
# Text format
#
#   cpnet <n>
#   domains <n_1> ... <n_n>
#   <n adjacency rows of 0/1>
#   cpt <i>
#   <u_1,...,u_l> : <sigma_1,...,sigma_k>     (one line per parent assignment,
#                                              empty parent tuple written "-")
# ---------------------------------------------------------------------------


def serialize(net: CPNet) -> str:
    lines = [f"cpnet {net.n}"]
    lines.append("domains " + " ".join(str(s) for s in net.domain_sizes))
    for row in net.adjacency:
        lines.append(" ".join(str(cell) for cell in row))
    for i in range(1, net.n + 1):
        lines.append(f"cpt {i}")
        for u in net.parent_assignments(i):
            left = ",".join(str(v) for v in u) if u else "-"
            sigma = net.cpt_row(i, u)
            lines.append(f"{left} : " + ",".join(str(p) for p in sigma))
    return "\n".join(lines) + "\n"


def _int_tuple(text: str, lineno: int, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ParseError(f"malformed {what} {text!r}", lineno) from None


def parse(text: str) -> CPNet:
    """Parse the line-based net format; semantic checks are left to validate."""
    lines = [
        (lineno, line.strip())
        for lineno, line in enumerate(text.splitlines(), start=1)
        if line.strip()
    ]
    pos = 0

    def next_line(expect: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] + 1 if lines else 1
            raise ParseError(f"unexpected end of input, expected {expect}", last)
        item = lines[pos]
        pos += 1
        return item

    lineno, header = next_line("'cpnet <n>' header")
    parts = header.split()
    if len(parts) != 2 or parts[0] != "cpnet" or not parts[1].isdigit():
        raise ParseError("expected 'cpnet <n>' header", lineno)
    n = int(parts[1])
    if n < 1:
        raise ParseError("variable count must be positive", lineno)

    lineno, domains_line = next_line("'domains' line")
    parts = domains_line.split()
    if parts[:1] != ["domains"] or len(parts) != n + 1:
        raise ParseError(f"expected 'domains' with {n} sizes", lineno)
    try:
        domain_sizes = tuple(int(p) for p in parts[1:])
    except ValueError:
        raise ParseError("domain sizes must be integers", lineno) from None

    adjacency = []
    for _ in range(n):
        lineno, row_line = next_line("adjacency row")
        parts = row_line.split()
        if len(parts) != n or any(p not in ("0", "1") for p in parts):
            raise ParseError(f"expected adjacency row of {n} 0/1 entries", lineno)
        adjacency.append(tuple(int(p) for p in parts))
    adjacency_t = tuple(adjacency)

    # Parents are derivable from the adjacency alone, so CPT row counts are
    # known before the rows are read.
    cpts: list[tuple[tuple[int, ...], ...]] = []
    for i in range(1, n + 1):
        lineno, cpt_header = next_line(f"'cpt {i}' header")
        if cpt_header.split() != ["cpt", str(i)]:
            raise ParseError(f"expected 'cpt {i}' header", lineno)
        parent_idx = [j for j in range(1, n + 1) if adjacency_t[j - 1][i - 1]]
        rows = 1
        for p in parent_idx:
            rows *= domain_sizes[p - 1]
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        for _ in range(rows):
            lineno, row_line = next_line("CPT row")
            if ":" not in row_line:
                raise ParseError("expected '<parents> : <positions>'", lineno)
            left, right = (part.strip() for part in row_line.split(":", 1))
            u = () if left == "-" else _int_tuple(left, lineno, "parent assignment")
            if len(u) != len(parent_idx):
                raise ParseError(
                    f"parent assignment has {len(u)} entries, "
                    f"expected {len(parent_idx)}",
                    lineno,
                )
            if u in seen:
                raise ParseError(f"duplicate CPT row for parents {u}", lineno)
            seen[u] = _int_tuple(right, lineno, "position tuple")
        table = []
        for u in itertools.product(
            *(range(1, domain_sizes[p - 1] + 1) for p in parent_idx)
        ):
            if u not in seen:
                raise MissingCPTRow(f"variable {i}: no CPT row for parents {u}")
            table.append(seen[u])
        cpts.append(tuple(table))

    if pos < len(lines):
        raise ParseError("trailing content after last CPT", lines[pos][0])
    return CPNet(n=n, adjacency=adjacency_t, domain_sizes=domain_sizes, cpts=tuple(cpts))


def parse_outcome(text: str, net: CPNet | None = None) -> Outcome:
    """Parse a comma-separated outcome literal such as ``2,1,3,1``."""
    try:
        o = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ModelError(f"malformed outcome literal {text!r}") from None
    if net is not None:
        check_outcome(net, o)
    return o


def format_outcome(o: Outcome) -> str:
    return ",".join(str(v) for v in o)
