"""Three-round grid routing and the locality-aware choice of column permutations.

Every router here routes columns, then rows, then columns again. They differ
only in how each column is permuted during the first round:

* :func:`naive_grid_route` takes the perfect matchings of the column
  multigraph in the order peeling finds them;
* :func:`local_grid_route` collects matchings with a doubling window search
  and pairs them with rows by a bottleneck assignment on ``delta`` so that
  no matching is parked far from the rows its tokens come from and go to.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .ats import layerize, token_swap
from .core import Grid, Permutation, SwapSchedule, compact_schedule, transpose
from .exceptions import HallViolation
from .matching import (
    ColumnEdge,
    ColumnMultigraph,
    ColumnPerfectMatching,
    build_column_graph,
    mcbbm,
    peel_all_matchings,
)
from .path import odd_even_route

ALGORITHMS = ("local", "naive", "ats")


@dataclass(frozen=True)
class ColumnPermutationSet:
    """First-round row assignment: ``rows[j - 1][i - 1]`` is where token ``(i, j)`` is sent in column ``j``."""

    rows: tuple[tuple[int, ...], ...]

    def __call__(self, j: int, i: int) -> int:
        return self.rows[j - 1][i - 1]

    @classmethod
    def identity(cls, grid: Grid) -> ColumnPermutationSet:
        return cls(tuple(tuple(range(1, grid.m + 1)) for _ in range(grid.n)))

    @classmethod
    def from_assignment(
        cls, grid: Grid, matchings: Sequence[ColumnPerfectMatching], rows: Sequence[int]
    ) -> ColumnPermutationSet:
        """Send every token of ``matchings[k]`` to row ``rows[k]`` within its column."""
        sigma = [[0] * grid.m for _ in range(grid.n)]
        for pm, r in zip(matchings, rows):
            for e in pm.edges:
                sigma[e.left - 1][e.src_row - 1] = r
        return cls(tuple(tuple(col) for col in sigma))


def check_hall(grid: Grid, pi: Permutation, sigmas: ColumnPermutationSet) -> None:
    """Raise :class:`HallViolation` unless ``sigmas`` leaves every row with distinct destination columns."""
    if len(sigmas.rows) != grid.n:
        raise HallViolation(f"expected {grid.n} column permutations, got {len(sigmas.rows)}")
    full = list(range(1, grid.m + 1))
    for j, col in enumerate(sigmas.rows, start=1):
        if sorted(col) != full:
            raise HallViolation(f"sigma for column {j} is not a bijection on rows 1..{grid.m}")
    seen = [set() for _ in range(grid.m + 1)]
    for j, col in enumerate(sigmas.rows, start=1):
        for i, r in enumerate(col, start=1):
            dest_col = pi[(i, j)][1]
            if dest_col in seen[r]:
                raise HallViolation(f"row {r} receives two tokens bound for column {dest_col}")
            seen[r].add(dest_col)


def _parallel_lines(targets: Sequence[Sequence[int]], along_row: bool) -> SwapSchedule:
    """Route independent rows (or columns) side by side; layer ``t`` unions every line's round ``t``."""
    layers: list[list] = []
    for line, target in enumerate(targets, start=1):
        for t, path_layer in enumerate(odd_even_route(target)):
            if t == len(layers):
                layers.append([])
            if along_row:
                layers[t].extend([((line, p), (line, q)) for p, q in path_layer])
            else:
                layers[t].extend([((p, line), (q, line)) for p, q in path_layer])
    return SwapSchedule._trusted(tuple(tuple(layer) for layer in layers))


def grid_route_rounds(
    grid: Grid, pi: Permutation, sigmas: ColumnPermutationSet
) -> tuple[SwapSchedule, SwapSchedule, SwapSchedule]:
    """The column, row and column rounds of the three-round scheme, separately.

    Raises
    ------
    HallViolation
        If ``sigmas`` does not make the row round feasible.
    """
    check_hall(grid, pi, sigmas)
    m, n = grid.m, grid.n
    # after round 1 cell (sigma_j(i), j) holds the token bound for pi(i, j)
    cell = [[None] * (n + 1) for _ in range(m + 1)]
    col_targets = []
    for j in range(1, n + 1):
        sigma = sigmas.rows[j - 1]
        col_targets.append(sigma)
        for i in range(1, m + 1):
            cell[sigma[i - 1]][j] = pi[(i, j)]
    round1 = _parallel_lines(col_targets, along_row=False)

    row_targets = [[cell[r][j][1] for j in range(1, n + 1)] for r in range(1, m + 1)]
    round2 = _parallel_lines(row_targets, along_row=True)

    col_targets = [[None] * m for _ in range(n)]
    for r in range(1, m + 1):
        for j in range(1, n + 1):
            i2, j2 = cell[r][j]
            col_targets[j2 - 1][r - 1] = i2
    round3 = _parallel_lines(col_targets, along_row=False)
    return round1, round2, round3


def grid_route(grid: Grid, pi: Permutation, sigmas: ColumnPermutationSet) -> SwapSchedule:
    """Column-row-column routing of ``pi`` with first-round column permutations ``sigmas``.

    Depth is at most ``2m + n``.
    """
    r1, r2, r3 = grid_route_rounds(grid, pi, sigmas)
    return r1 + r2 + r3


def doubling_search(graph: ColumnMultigraph, m: int) -> list[ColumnPerfectMatching]:
    """Collect ``m`` perfect matchings of the full column multigraph, preferring row-local ones.

    Windows of ``w + 1`` consecutive source rows are swept top to bottom and
    every perfect matching of a window's remaining edges is peeled off; the
    window size then grows (``w``: 0, 1, 2, 4, ...) until ``m`` matchings
    have been found. The residual graph stays regular, so the sweep with a
    window covering all rows always finishes the decomposition.
    """
    n = graph.n
    by_row: dict[int, list[ColumnEdge]] = {r: [] for r in range(1, m + 1)}
    for e in graph.edges:
        by_row[e.src_row].append(e)
    found: list[ColumnPerfectMatching] = []
    w = 0
    while len(found) < m:
        r = 1
        for _ in range(m // (w + 1) + 1):
            if r > m:
                break
            b = min(r + w, m)
            window = [e for row in range(r, b + 1) for e in by_row[row]]
            for pm in peel_all_matchings(ColumnMultigraph(n, tuple(window))):
                found.append(pm)
                for e in pm.edges:
                    by_row[e.src_row].remove(e)
            r += w + 1
        w = 1 if w == 0 else 2 * w
    return found


def delta_matrix(matchings: Sequence[ColumnPerfectMatching], m: int) -> np.ndarray:
    """``out[k, r - 1] = delta(matchings[k], r)``, vectorized over rows."""
    labels = np.array([[(e.src_row, e.dst_row) for e in pm.edges] for pm in matchings], dtype=np.int64)
    rows = np.arange(1, m + 1).reshape(1, -1, 1, 1)
    return np.abs(labels[:, None, :, :] - rows).sum(axis=(2, 3))


def local_sigmas(grid: Grid, pi: Permutation) -> ColumnPermutationSet:
    """Column permutations chosen by the doubling search and the bottleneck row assignment."""
    graph = build_column_graph(grid, pi, 1, grid.m)
    matchings = doubling_search(graph, grid.m)
    assignment = mcbbm(delta_matrix(matchings, grid.m))
    rows = [c + 1 for c in assignment.columns]
    return ColumnPermutationSet.from_assignment(grid, matchings, rows)


def naive_sigmas(grid: Grid, pi: Permutation) -> ColumnPermutationSet:
    """Column permutations from peeling the full multigraph; matching ``k`` goes to row ``k``."""
    matchings = peel_all_matchings(build_column_graph(grid, pi, 1, grid.m))
    return ColumnPermutationSet.from_assignment(grid, matchings, range(1, grid.m + 1))


def local_grid_route(grid: Grid, pi: Permutation) -> SwapSchedule:
    return grid_route(grid, pi, local_sigmas(grid, pi))


def naive_grid_route(grid: Grid, pi: Permutation) -> SwapSchedule:
    return grid_route(grid, pi, naive_sigmas(grid, pi))


def _transposed(router, grid: Grid, pi: Permutation) -> SwapSchedule:
    gt, pit = transpose(grid, pi)
    return router(gt, pit).transpose()


@dataclass(frozen=True)
class RouteResult:
    """A routed schedule plus how it was obtained.

    ``algorithm`` names the winning candidate (``local``, ``local_transposed``,
    ``naive``, ``naive_transposed`` or ``ats``); ``candidates`` maps every
    evaluated candidate to its uncompacted depth.
    """

    schedule: SwapSchedule
    algorithm: str
    elapsed: float
    depth_uncompacted: int
    candidates: dict[str, int] = field(default_factory=dict)

    @property
    def depth(self) -> int:
        return self.schedule.depth

    @property
    def size(self) -> int:
        return self.schedule.size


def route(
    grid: Grid,
    pi: Permutation,
    *,
    algorithm: str = "local",
    use_transpose: bool = True,
    naive_fallback: bool = True,
    compact: bool = False,
) -> RouteResult:
    """Route ``pi`` on ``grid`` and keep the shallowest candidate schedule.

    With ``algorithm="local"`` the locality-aware router runs on the grid
    and, if ``use_transpose``, on its transpose (row-column-row order); with
    ``naive_fallback`` the naive router competes too. Ties go to the
    untransposed orientation, then to the locality-aware router.
    ``algorithm="naive"`` uses only the naive router (both orientations when
    ``use_transpose``) and ``algorithm="ats"`` the layerized token-swapping
    baseline. ``compact`` is applied to the winner.
    """
    if pi.grid != grid:
        raise ValueError("permutation belongs to a different grid")
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")

    start = time.perf_counter()
    candidates: list[tuple[str, SwapSchedule]] = []
    if algorithm == "ats":
        candidates.append(("ats", layerize(token_swap(grid, pi))))
    else:
        primary = local_grid_route if algorithm == "local" else naive_grid_route
        candidates.append((algorithm, primary(grid, pi)))
        if use_transpose:
            candidates.append((f"{algorithm}_transposed", _transposed(primary, grid, pi)))
        if algorithm == "local" and naive_fallback:
            candidates.append(("naive", naive_grid_route(grid, pi)))
    # min() keeps the first of equal depths, and candidates are listed in tie-break order
    name, schedule = min(candidates, key=lambda c: c[1].depth)
    depth_uncompacted = schedule.depth
    if compact:
        schedule = compact_schedule(schedule)
    elapsed = time.perf_counter() - start
    return RouteResult(
        schedule=schedule,
        algorithm=name,
        elapsed=elapsed,
        depth_uncompacted=depth_uncompacted,
        candidates={c: s.depth for c, s in candidates},
    )
