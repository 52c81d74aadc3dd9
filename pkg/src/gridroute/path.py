"""Odd-even transposition routing on a path of ``k`` vertices."""

from __future__ import annotations

from typing import Sequence

PathLayer = tuple[tuple[int, int], ...]


def _odd_even(target: Sequence[int], odd_first: bool) -> list[PathLayer]:
    arr = list(target)
    k = len(arr)
    rounds: list[PathLayer] = []
    # 0-based left end of the first edge; 1-based edge (1, 2) is odd
    start = 0 if odd_first else 1
    idle = 0
    for _ in range(k):
        layer = []
        for p in range(start, k - 1, 2):
            a, b = arr[p], arr[p + 1]
            if a > b:
                arr[p], arr[p + 1] = b, a
                layer.append((p + 1, p + 2))
        rounds.append(tuple(layer))
        if layer:
            idle = 0
        else:
            idle += 1
            if idle == 2:  # both parities idle: sorted
                break
        start ^= 1
    while rounds and not rounds[0]:
        rounds.pop(0)
    while rounds and not rounds[-1]:
        rounds.pop()
    return rounds


def odd_even_route(target: Sequence[int]) -> list[PathLayer]:
    """Route tokens on a path so the token at position ``p`` ends at ``target[p - 1]``.

    ``target`` is a bijection on ``1..k`` given as a sequence. Returns rounds of
    swaps on 1-based path edges ``(p, p + 1)``. Both start parities are tried
    and the shorter schedule wins (odd edges first on ties); the result never
    has more than ``k`` rounds.
    """
    k = len(target)
    if k == 0:
        raise ValueError("a path needs at least one vertex")
    if sorted(target) != list(range(1, k + 1)):
        raise ValueError(f"target {list(target)!r} is not a bijection on 1..{k}")
    odd_first = _odd_even(target, True)
    # no schedule beats the longest distance a token must travel
    if len(odd_first) <= max(abs(t - p) for p, t in enumerate(target, 1)):
        return odd_first
    even_first = _odd_even(target, False)
    return even_first if len(even_first) < len(odd_first) else odd_first

