"""JSON file formats for permutations and schedules (0-based coordinates).

Permutation file::

    {"rows": m, "cols": n, "perm": [d_0, ..., d_{mn-1}]}

where ``perm[i * n + j]`` is the row-major index of the destination of the
token at 0-based ``(i, j)``.

Schedule file::

    {"rows": m, "cols": n, "algorithm": "...", "depth": t, "swaps": s,
     "layers": [[[[i, j], [i2, j2]], ...], ...]}
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .core import Grid, Permutation, SwapSchedule
from .exceptions import GridRouteError


class FormatError(GridRouteError):
    """A file is not valid JSON or does not follow the expected layout."""


def _load_json(path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return data


def _dims(data: dict, path) -> Grid:
    rows, cols = data.get("rows"), data.get("cols")
    if not all(isinstance(x, int) and not isinstance(x, bool) and x >= 1 for x in (rows, cols)):
        raise FormatError(f"{path}: 'rows' and 'cols' must be positive integers")
    return Grid(rows, cols)


def atomic_write_text(path, text: str) -> None:
    """Write via a temporary file in the same directory and rename into place."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def permutation_to_dict(pi: Permutation) -> dict:
    return {"rows": pi.grid.m, "cols": pi.grid.n, "perm": pi.to_indices()}


def write_permutation(path, pi: Permutation) -> None:
    atomic_write_text(path, json.dumps(permutation_to_dict(pi)) + "\n")


def read_permutation(path) -> Permutation:
    """Load a permutation file.

    Raises
    ------
    FormatError
        On unreadable or malformed files.
    InvalidPermutation
        If ``perm`` is well-formed but not a bijection.
    """
    data = _load_json(path)
    grid = _dims(data, path)
    perm = data.get("perm")
    if not isinstance(perm, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in perm):
        raise FormatError(f"{path}: 'perm' must be a list of integers")
    return Permutation.from_indices(grid, perm)


def schedule_to_dict(grid: Grid, schedule: SwapSchedule, algorithm: str = "") -> dict:
    layers = [
        [[[u[0] - 1, u[1] - 1], [v[0] - 1, v[1] - 1]] for u, v in layer] for layer in schedule.layers
    ]
    return {
        "rows": grid.m,
        "cols": grid.n,
        "algorithm": algorithm,
        "layers": layers,
        "depth": schedule.depth,
        "swaps": schedule.size,
    }


def write_schedule(path, grid: Grid, schedule: SwapSchedule, algorithm: str = "") -> None:
    atomic_write_text(path, json.dumps(schedule_to_dict(grid, schedule, algorithm)) + "\n")


def read_schedule(path) -> tuple[Grid, SwapSchedule]:
    """Load a schedule file; layer validity against the grid is not checked here."""
    data = _load_json(path)
    grid = _dims(data, path)
    raw = data.get("layers")
    if not isinstance(raw, list):
        raise FormatError(f"{path}: 'layers' must be a list")
    layers = []
    try:
        for layer in raw:
            swaps = []
            for (a, b), (c, d) in layer:
                if not all(isinstance(x, int) and not isinstance(x, bool) for x in (a, b, c, d)):
                    raise TypeError
                swaps.append(((a + 1, b + 1), (c + 1, d + 1)))
            layers.append(tuple(swaps))
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{path}: every swap must be [[i, j], [i2, j2]] with integer coordinates") from exc
    return grid, SwapSchedule(tuple(layers))
