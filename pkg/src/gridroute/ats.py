"""Approximate token swapping baseline and its greedy layerization.

Every vertex whose token is not home points at one neighbour on a shortest
path towards the token's destination, the lexicographically smallest such
neighbour. This pointer ("desire") graph drives each step:

* if it has cycles, every cycle is rotated so all of its tokens move one
  step closer (cycles in order of their smallest vertex, each rotated
  starting from that vertex);
* otherwise the chain from the first unhappy vertex (row-major) ends at a
  vertex whose token is home, and only that last edge is swapped.

Pointers are kept up to date incrementally: a swap only changes the
pointers of its two endpoints, so any new cycle runs through one of them.
"""

from __future__ import annotations

import heapq

from .core import Grid, Permutation, Swap, SwapSchedule, asap_layers


def token_swap(grid: Grid, pi: Permutation) -> list[Swap]:
    """Serial swap sequence realizing ``pi`` on ``grid``."""
    m, n = grid.m, grid.n
    size = grid.size
    home = [grid.index(v) for v in pi.images]  # home[token]
    occ = list(range(size))  # occ[vertex] = token

    def hop(v: int) -> int:
        d = home[occ[v]]
        if d == v:
            return -1
        vi, vj = divmod(v, n)
        di, dj = divmod(d, n)
        if di < vi:
            return v - n
        if dj < vj:
            return v - 1
        if dj > vj:
            return v + 1
        return v + n

    nxt = [hop(v) for v in range(size)]
    unhappy = [v for v in range(size) if nxt[v] != -1]  # min-heap with stale entries
    heapq.heapify(unhappy)
    changed = set(range(size))
    swaps: list[tuple[int, int]] = []

    def swap(a: int, b: int) -> None:
        occ[a], occ[b] = occ[b], occ[a]
        swaps.append((a, b))
        for v in (a, b):
            nxt[v] = hop(v)
            changed.add(v)
            if nxt[v] != -1:
                heapq.heappush(unhappy, v)

    # hang guard only
    budget = 4 * size * (m + n) + 16
    while True:
        while unhappy and nxt[unhappy[0]] == -1:
            heapq.heappop(unhappy)
        if not unhappy:
            break
        budget -= 1
        if budget < 0:
            raise RuntimeError("token swapping failed to converge")
        cycles = find_cycles(nxt, sorted(changed))
        changed.clear()
        if cycles:
            for cycle in cycles:
                for k in range(len(cycle) - 2, -1, -1):
                    swap(cycle[k], cycle[k + 1])
            continue
        v = unhappy[0]
        while nxt[nxt[v]] != -1:
            v = nxt[v]
        swap(v, nxt[v])
    return [(grid.vertex(a), grid.vertex(b)) for a, b in swaps]


def find_cycles(nxt: list[int], starts=None) -> list[list[int]]:
    """Cycles of a pointer graph (``nxt[v] == -1`` marks a sink) reachable from ``starts``.

    Each cycle is listed from its smallest vertex; cycles are sorted by that vertex.
    """
    if starts is None:
        starts = range(len(nxt))
    state: dict[int, int] = {}  # 1 on the current walk, 2 finished
    cycles = []
    for s in starts:
        if s in state or nxt[s] == -1:
            continue
        walk = []
        v = s
        while v != -1 and v not in state:
            state[v] = 1
            walk.append(v)
            v = nxt[v]
        if v != -1 and state[v] == 1:
            cycle = walk[walk.index(v):]
            k = cycle.index(min(cycle))
            cycles.append(cycle[k:] + cycle[:k])
        for u in walk:
            state[u] = 2
    cycles.sort(key=lambda c: c[0])
    return cycles


def layerize(seq) -> SwapSchedule:
    """Pack a serial swap sequence into parallel layers as early as dependencies allow."""
    return asap_layers(seq)
