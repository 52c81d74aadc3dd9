"""Column multigraph construction, perfect-matching peeling and bottleneck assignment.

The column multigraph of a grid permutation has one left and one right
vertex per grid column. Every token whose source row lies in a window
``[a, b]`` contributes an edge from its source column to its destination
column, labelled with ``(source row, destination row)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .core import Grid, Permutation
from .exceptions import NonSquareInput, WindowOutOfRange


class ColumnEdge(NamedTuple):
    left: int
    right: int
    src_row: int
    dst_row: int

    @property
    def label(self) -> tuple[int, int]:
        return (self.src_row, self.dst_row)


@dataclass(frozen=True)
class ColumnMultigraph:
    n: int
    edges: tuple[ColumnEdge, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def left_degrees(self) -> list[int]:
        deg = [0] * (self.n + 1)
        for e in self.edges:
            deg[e.left] += 1
        return deg[1:]

    def right_degrees(self) -> list[int]:
        deg = [0] * (self.n + 1)
        for e in self.edges:
            deg[e.right] += 1
        return deg[1:]

    def is_regular(self, d: int) -> bool:
        return all(x == d for x in self.left_degrees()) and all(x == d for x in self.right_degrees())

    def window(self, a: int, b: int) -> ColumnMultigraph:
        """Sub-multigraph of edges whose source row lies in ``[a, b]``."""
        return ColumnMultigraph(self.n, tuple(e for e in self.edges if a <= e.src_row <= b))

    def without(self, removed: Iterable[ColumnEdge]) -> ColumnMultigraph:
        gone = set(removed)
        return ColumnMultigraph(self.n, tuple(e for e in self.edges if e not in gone))


@dataclass(frozen=True)
class ColumnPerfectMatching:
    """One edge per column on each side, stored in ascending left-column order."""

    edges: tuple[ColumnEdge, ...]

    def labels(self) -> list[tuple[int, int]]:
        return [e.label for e in self.edges]

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)


def build_column_graph(grid: Grid, pi: Permutation, a: int, b: int) -> ColumnMultigraph:
    """Column multigraph restricted to tokens whose source row is in ``[a, b]``."""
    if not 1 <= a <= b <= grid.m:
        raise WindowOutOfRange(f"window [{a}, {b}] is outside rows 1..{grid.m}")
    edges = []
    for i in range(a, b + 1):
        for j in range(1, grid.n + 1):
            i2, j2 = pi[(i, j)]
            edges.append(ColumnEdge(j, j2, i, i2))
    return ColumnMultigraph(grid.n, tuple(edges))


def max_bipartite_matching(adj: Sequence[Sequence[int]], n_right: int) -> list[int]:
    """Maximum-cardinality matching by augmenting paths (Kuhn).

    ``adj[u]`` lists the right vertices of left vertex ``u``. Left vertices
    are augmented in ascending order and neighbours scanned in the order
    given, so the result is deterministic. Returns ``match[u]`` (``-1`` when
    unmatched).
    """
    match_right = [-1] * n_right
    match_left = [-1] * len(adj)

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                match_left[u] = v
                return True
        return False

    for u in range(len(adj)):
        augment(u, [False] * n_right)
    return match_left


def _perfect_matching(n: int, edges: Sequence[ColumnEdge]) -> ColumnPerfectMatching | None:
    if len(edges) < n:
        return None
    best: dict[tuple[int, int], ColumnEdge] = {}
    for e in edges:
        key = (e.left, e.right)
        cur = best.get(key)
        if cur is None or (e.src_row, e.dst_row) < (cur.src_row, cur.dst_row):
            best[key] = e
    adj: list[list[int]] = [[] for _ in range(n)]
    right_seen = [False] * n
    for left, right in best:
        adj[left - 1].append(right - 1)
        right_seen[right - 1] = True
    if not all(adj) or not all(right_seen):
        return None
    for row in adj:
        row.sort()
    match = max_bipartite_matching(adj, n)
    if -1 in match:
        return None
    return ColumnPerfectMatching(tuple(best[(j + 1, match[j] + 1)] for j in range(n)))


def find_perfect_matching(g: ColumnMultigraph) -> ColumnPerfectMatching | None:
    """A perfect matching of ``g`` or ``None`` if Hall's condition fails.

    Among parallel edges the one with the smallest ``(src_row, dst_row)``
    label is used.
    """
    return _perfect_matching(g.n, g.edges)


def peel_all_matchings(g: ColumnMultigraph) -> list[ColumnPerfectMatching]:
    """Extract perfect matchings and delete their edges until none is left.

    On a ``d``-regular multigraph this returns ``d`` matchings that
    partition the edges.
    """
    edges = list(g.edges)
    found = []
    while True:
        pm = _perfect_matching(g.n, edges)
        if pm is None:
            return found
        found.append(pm)
        used = set(pm.edges)
        edges = [e for e in edges if e not in used]


def delta(matching: ColumnPerfectMatching | Iterable[ColumnEdge], r: int) -> int:
    """Total row distance of a matching's source and destination rows from row ``r``."""
    return sum(abs(e.src_row - r) + abs(e.dst_row - r) for e in matching)


@dataclass(frozen=True)
class BottleneckAssignment:
    """``columns[k]`` is the column (0-based) paired with row ``k``."""

    columns: tuple[int, ...]
    bottleneck: float

    def pairs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.columns))


def _square_rows(weights) -> list[list]:
    # plain nested lists skip numpy: small matrices are solved in bulk by callers
    if isinstance(weights, list) and all(type(r) is list for r in weights):
        n = len(weights)
        if all(len(r) == n for r in weights) and (n == 0 or not isinstance(weights[0][0], (list, tuple))):
            return weights
        raise NonSquareInput("expected a square matrix of numbers")
    w = np.asarray(weights)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise NonSquareInput(f"expected a square matrix, got shape {w.shape}")
    return w.tolist()


def mcbbm(weights) -> BottleneckAssignment:
    """Perfect pairing of a square weight matrix minimizing the largest chosen weight.

    Binary search over the distinct weights (from the largest row or column
    minimum upwards); each threshold is tested with a
    maximum-cardinality matching restricted to entries ``<=`` the threshold.
    The pairing returned is the one the ascending augmenting search finds at
    the optimal threshold.

    Raises
    ------
    NonSquareInput
        If ``weights`` is not a square 2-d matrix.
    """
    rows = _square_rows(weights)
    size = len(rows)
    if size == 0:
        return BottleneckAssignment((), 0)
    # every row and every column must use some entry, so no threshold below
    # the largest row or column minimum can be feasible
    floor = max(max(min(row) for row in rows), max(min(col) for col in zip(*rows)))
    levels = sorted(set(x for row in rows for x in row if x >= floor))

    def attempt(limit):
        adj = [[c for c in range(size) if rows[k][c] <= limit] for k in range(size)]
        match = max_bipartite_matching(adj, size)
        return None if -1 in match else match

    best = attempt(levels[0])
    if best is not None:  # the bound is often tight
        return BottleneckAssignment(tuple(best), levels[0])
    lo, hi = 1, len(levels) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        match = attempt(levels[mid])
        if match is None:
            lo = mid + 1
        else:
            hi, best = mid, match
    if best is None:
        best = attempt(levels[hi])
    return BottleneckAssignment(tuple(best), levels[hi])
