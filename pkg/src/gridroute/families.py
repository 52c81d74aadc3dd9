"""Seeded random permutation families for benchmarks.

``uniform`` shuffles all vertices. ``block_local`` tiles the grid with
disjoint ``block_h x block_w`` blocks (ragged at the far edges) and shuffles
inside each tile, so every cycle stays in one tile. ``overlapping_block``
slides a block window by ``stride`` in row-major order and composes an
independent shuffle at every stop, so cycles may cross window borders.
``identity`` is the trivial family used for smoke runs.

Randomness comes from :func:`numpy.random.default_rng` (PCG64).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .core import Grid, Permutation
from .exceptions import InvalidSpec

KINDS = ("uniform", "block_local", "overlapping_block", "identity")
RNG_NAME = "numpy.random.PCG64"


@dataclass(frozen=True)
class FamilySpec:
    kind: str = "uniform"
    block_h: int = 1
    block_w: int = 1
    stride: int = 1
    seed: int = 0

    @property
    def name(self) -> str:
        """Compact label, parseable by :func:`parse_family`."""
        if self.kind == "block_local":
            return f"block_local:{self.block_h}x{self.block_w}"
        if self.kind == "overlapping_block":
            return f"overlapping_block:{self.block_h}x{self.block_w}:{self.stride}"
        return self.kind

    def with_seed(self, seed: int) -> FamilySpec:
        return FamilySpec(self.kind, self.block_h, self.block_w, self.stride, seed)

    def validate(self, grid: Grid) -> None:
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        if self.kind in ("block_local", "overlapping_block"):
            if self.block_h < 1 or self.block_w < 1:
                raise InvalidSpec("block dimensions must be positive")
            if self.block_h > grid.m or self.block_w > grid.n:
                raise InvalidSpec(
                    f"{self.block_h}x{self.block_w} blocks do not fit a {grid.m}x{grid.n} grid"
                )
        if self.kind == "overlapping_block":
            if not 1 <= self.stride <= min(self.block_h, self.block_w):
                raise InvalidSpec(f"stride {self.stride} must lie in 1..min(block dims)")


_FAMILY_RE = re.compile(r"^(?P<kind>[a-z_]+)(?::(?P<h>\d+)x(?P<w>\d+)(?::(?P<stride>\d+))?)?$")


def parse_family(text: str, seed: int = 0) -> FamilySpec:
    """Parse ``uniform``, ``identity``, ``block_local:HxW`` or ``overlapping_block:HxW:S``."""
    match = _FAMILY_RE.match(text.strip())
    if not match:
        raise InvalidSpec(f"cannot parse family {text!r}")
    kind = match["kind"]
    if kind not in KINDS:
        raise InvalidSpec(f"unknown family kind {kind!r}")
    if kind in ("block_local", "overlapping_block"):
        if match["h"] is None:
            raise InvalidSpec(f"family {kind} needs block dimensions, e.g. {kind}:2x2")
        h, w = int(match["h"]), int(match["w"])
        stride = int(match["stride"]) if match["stride"] else 1
        if kind == "block_local" and match["stride"]:
            raise InvalidSpec("block_local takes no stride")
        return FamilySpec(kind, h, w, stride, seed)
    if match["h"] is not None:
        raise InvalidSpec(f"family {kind} takes no parameters")
    return FamilySpec(kind, seed=seed)


def _shuffle_cells(placement: list[int], cells: list[int], rng: np.random.Generator) -> None:
    tokens = [placement[c] for c in cells]
    order = rng.permutation(len(cells))
    for c, k in zip(cells, order):
        placement[c] = tokens[k]


def generate(grid: Grid, spec: FamilySpec) -> Permutation:
    """Draw a permutation of ``grid`` from the family described by ``spec``.

    Raises
    ------
    InvalidSpec
        If the family is unknown or its blocks do not fit the grid.
    """
    spec.validate(grid)
    m, n = grid.m, grid.n
    rng = np.random.default_rng(spec.seed)
    # placement[cell] = token (start index) sitting on the cell at the end
    placement = list(range(grid.size))

    if spec.kind == "uniform":
        _shuffle_cells(placement, list(range(grid.size)), rng)
    elif spec.kind == "block_local":
        for r0 in range(0, m, spec.block_h):
            for c0 in range(0, n, spec.block_w):
                cells = [
                    r * n + c
                    for r in range(r0, min(r0 + spec.block_h, m))
                    for c in range(c0, min(c0 + spec.block_w, n))
                ]
                _shuffle_cells(placement, cells, rng)
    elif spec.kind == "overlapping_block":
        for r0 in range(0, m - spec.block_h + 1, spec.stride):
            for c0 in range(0, n - spec.block_w + 1, spec.stride):
                cells = [
                    r * n + c
                    for r in range(r0, r0 + spec.block_h)
                    for c in range(c0, c0 + spec.block_w)
                ]
                _shuffle_cells(placement, cells, rng)

    dest = [0] * grid.size
    for cell, token in enumerate(placement):
        dest[token] = cell
    return Permutation.from_indices(grid, dest)
