"""Input coercion helpers shared by the estimator, the file readers and the CLI."""

from __future__ import annotations

import re

import numpy as np

from .core import Grid, Permutation
from .exceptions import InvalidPermutation

_GRID_RE = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")


def check_grid(grid) -> Grid:
    """Accept a :class:`Grid`, an ``(m, n)`` pair or an ``"MxN"`` string."""
    if isinstance(grid, Grid):
        return grid
    if isinstance(grid, str):
        match = _GRID_RE.match(grid)
        if not match:
            raise ValueError(f"grid must look like MxN, got {grid!r}")
        return Grid(int(match[1]), int(match[2]))
    try:
        m, n = grid
    except (TypeError, ValueError):
        raise ValueError(f"cannot interpret {grid!r} as grid dimensions") from None
    return Grid(int(m), int(n))


def check_permutation(X, grid=None) -> Permutation:
    """Coerce ``X`` into a :class:`Permutation`.

    ``X`` may already be a permutation, an ``(m, n)`` integer array whose
    entry ``[i, j]`` is the 0-based row-major destination of the token at
    ``(i, j)``, or a flat sequence of such indices when ``grid`` is given.

    Raises
    ------
    InvalidPermutation
        If the destinations do not form a bijection.
    """
    if isinstance(X, Permutation):
        if grid is not None and X.grid != check_grid(grid):
            raise ValueError(f"permutation is on a {X.grid.m}x{X.grid.n} grid, expected {grid}")
        return X
    arr = np.asarray(X)
    if arr.dtype.kind not in "iu":
        if arr.dtype.kind == "f" and arr.size and np.all(np.mod(arr, 1) == 0):
            arr = arr.astype(np.int64)
        elif arr.size:
            raise InvalidPermutation(f"destination indices must be integers, got dtype {arr.dtype}")
    if grid is not None:
        g = check_grid(grid)
        if arr.size != g.size:
            raise InvalidPermutation(f"expected {g.size} destinations for a {g.m}x{g.n} grid, got {arr.size}")
    elif arr.ndim == 2:
        g = Grid(*arr.shape)
    else:
        raise ValueError("pass a 2-d (m, n) array of destinations or give the grid explicitly")
    return Permutation.from_indices(g, arr.ravel().tolist())


def check_grid_data(X, grid: Grid) -> np.ndarray:
    """Array whose trailing two axes have the grid's shape, as :class:`numpy.ndarray`."""
    arr = np.asarray(X)
    if arr.ndim < 2 or arr.shape[-2:] != grid.shape:
        raise ValueError(f"expected trailing dimensions {grid.shape}, got array of shape {arr.shape}")
    return arr
