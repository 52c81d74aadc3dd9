"""Grid, permutation and swap-schedule types plus schedule simulation.

Vertices are 1-based ``(row, col)`` tuples. Tokens are named after the
vertex they start on, so a :class:`Permutation` maps a token's start vertex
to its destination and a :class:`Placement` maps it to where it currently is.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .exceptions import InvalidLayer, InvalidPermutation

Vertex = tuple[int, int]
Swap = tuple[Vertex, Vertex]
Layer = tuple[Swap, ...]


@dataclass(frozen=True)
class Grid:
    """The ``m x n`` grid graph: ``m`` rows, ``n`` columns."""

    m: int
    n: int

    def __post_init__(self):
        for name in ("m", "n"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValueError(f"grid dimension {name} must be a positive integer, got {value!r}")

    @property
    def size(self) -> int:
        return self.m * self.n

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    def vertices(self) -> list[Vertex]:
        """All vertices in row-major order."""
        return [(i, j) for i in range(1, self.m + 1) for j in range(1, self.n + 1)]

    def index(self, v: Vertex) -> int:
        """0-based row-major index of ``v``."""
        return (v[0] - 1) * self.n + (v[1] - 1)

    def vertex(self, k: int) -> Vertex:
        return (k // self.n + 1, k % self.n + 1)

    def __contains__(self, v) -> bool:
        try:
            i, j = v
        except (TypeError, ValueError):
            return False
        return 1 <= i <= self.m and 1 <= j <= self.n

    def is_edge(self, u: Vertex, v: Vertex) -> bool:
        return u in self and v in self and abs(u[0] - v[0]) + abs(u[1] - v[1]) == 1

    def edges(self) -> list[Swap]:
        out = []
        for i, j in self.vertices():
            if j < self.n:
                out.append(((i, j), (i, j + 1)))
            if i < self.m:
                out.append(((i, j), (i + 1, j)))
        return out

    def neighbors(self, v: Vertex) -> list[Vertex]:
        """Grid neighbours of ``v`` in lexicographic order."""
        i, j = v
        cand = [(i - 1, j), (i, j - 1), (i, j + 1), (i + 1, j)]
        return [u for u in cand if 1 <= u[0] <= self.m and 1 <= u[1] <= self.n]

    @staticmethod
    def distance(u: Vertex, v: Vertex) -> int:
        return abs(u[0] - v[0]) + abs(u[1] - v[1])

    def transpose(self) -> Grid:
        return Grid(self.n, self.m)


class _VertexMap:
    """Bijection from tokens (start vertices) to grid vertices, stored row-major."""

    __slots__ = ("grid", "_images")

    def __init__(self, grid: Grid, images: Sequence[Vertex]):
        images = tuple((int(i), int(j)) for i, j in images)
        if len(images) != grid.size:
            raise InvalidPermutation(
                f"expected {grid.size} images for a {grid.m}x{grid.n} grid, got {len(images)}"
            )
        seen = set()
        for v in images:
            if v not in grid:
                raise InvalidPermutation(f"image {v} is not a vertex of the {grid.m}x{grid.n} grid")
            if v in seen:
                raise InvalidPermutation(f"vertex {v} is the image of more than one token")
            seen.add(v)
        self.grid = grid
        self._images = images

    @classmethod
    def identity(cls, grid: Grid):
        return cls(grid, grid.vertices())

    @classmethod
    def from_mapping(cls, grid: Grid, mapping: Mapping[Vertex, Vertex]):
        """Build from a dict; vertices missing from ``mapping`` are fixed."""
        extra = [v for v in mapping if v not in grid]
        if extra:
            raise InvalidPermutation(f"{extra[0]} is not a vertex of the grid")
        return cls(grid, [mapping.get(v, v) for v in grid.vertices()])

    @classmethod
    def from_indices(cls, grid: Grid, indices: Sequence[int]):
        """Build from 0-based row-major destination indices."""
        images = []
        for k in indices:
            k = int(k)
            if not 0 <= k < grid.size:
                raise InvalidPermutation(f"index {k} out of range for {grid.size} vertices")
            images.append(grid.vertex(k))
        return cls(grid, images)

    def to_indices(self) -> list[int]:
        return [self.grid.index(v) for v in self._images]

    @property
    def images(self) -> tuple[Vertex, ...]:
        return self._images

    def __getitem__(self, v: Vertex) -> Vertex:
        return self._images[self.grid.index(v)]

    def __call__(self, v: Vertex) -> Vertex:
        return self[v]

    def items(self) -> Iterator[tuple[Vertex, Vertex]]:
        return zip(self.grid.vertices(), self._images)

    def is_identity(self) -> bool:
        return all(u == v for u, v in self.items())

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.grid == other.grid and self._images == other._images

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.grid, self._images))

    def __repr__(self) -> str:
        moved = {u: v for u, v in self.items() if u != v}
        return f"{type(self).__name__}({self.grid.m}x{self.grid.n}, moved={moved})"


class Permutation(_VertexMap):
    """Routing target: ``pi[v]`` is the destination of the token starting at ``v``."""

    __slots__ = ()

    def inverse(self) -> Permutation:
        inv = [None] * self.grid.size
        for u, v in self.items():
            inv[self.grid.index(v)] = u
        return Permutation(self.grid, inv)


class Placement(_VertexMap):
    """Simulation state: ``placement[t]`` is the vertex currently holding token ``t``."""

    __slots__ = ()


def _normalize_swap(swap) -> Swap:
    u, v = swap
    u = (int(u[0]), int(u[1]))
    v = (int(v[0]), int(v[1]))
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class SwapSchedule:
    """Ordered layers of parallel swaps.

    Swaps are stored as ``(u, v)`` with ``u < v`` and layers keep their
    construction order. Validity against a grid is checked by
    :meth:`validate` and :func:`apply_schedule`, not at construction.
    """

    layers: tuple[Layer, ...] = ()

    def __post_init__(self):
        layers = tuple(tuple(_normalize_swap(s) for s in layer) for layer in self.layers)
        object.__setattr__(self, "layers", layers)

    @classmethod
    def _trusted(cls, layers: tuple[Layer, ...]) -> SwapSchedule:
        # layers already hold ordered int swaps
        obj = object.__new__(cls)
        object.__setattr__(obj, "layers", layers)
        return obj

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def size(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def __len__(self) -> int:
        return len(self.layers)

    def __iter__(self) -> Iterator[Layer]:
        return iter(self.layers)

    def swaps(self) -> list[Swap]:
        """All swaps flattened in execution order."""
        return [s for layer in self.layers for s in layer]

    def __add__(self, other: SwapSchedule) -> SwapSchedule:
        return SwapSchedule._trusted(self.layers + other.layers)

    def drop_empty(self) -> SwapSchedule:
        return SwapSchedule._trusted(tuple(layer for layer in self.layers if layer))

    def validate(self, grid: Grid) -> None:
        for t, layer in enumerate(self.layers):
            _check_layer(grid, layer, t)

    def transpose(self) -> SwapSchedule:
        """Map every swap through ``(i, j) -> (j, i)``."""
        # transposing two adjacent vertices keeps them in order
        return SwapSchedule._trusted(
            tuple(tuple(((u[1], u[0]), (v[1], v[0])) for u, v in layer) for layer in self.layers)
        )


def _check_layer(grid: Grid, layer: Iterable[Swap], t: int) -> None:
    used = set()
    for u, v in layer:
        if not grid.is_edge(u, v):
            raise InvalidLayer(f"layer {t}: {u}-{v} is not an edge of the {grid.m}x{grid.n} grid")
        if u in used or v in used:
            raise InvalidLayer(f"layer {t}: vertex reused by swap {u}-{v}")
        used.add(u)
        used.add(v)


def apply_schedule(grid: Grid, schedule: SwapSchedule, start: Placement | None = None) -> Placement:
    """Run ``schedule`` from ``start`` (identity by default) and return the final placement.

    Raises
    ------
    InvalidLayer
        If a layer reuses a vertex or swaps a non-adjacent pair.
    """
    if start is None:
        start = Placement.identity(grid)
    if start.grid != grid:
        raise ValueError("start placement belongs to a different grid")
    pos = list(start.images)
    occupant = [0] * grid.size
    for token, v in enumerate(pos):
        occupant[grid.index(v)] = token
    for t, layer in enumerate(schedule.layers):
        _check_layer(grid, layer, t)
        for u, v in layer:
            a, b = grid.index(u), grid.index(v)
            ta, tb = occupant[a], occupant[b]
            occupant[a], occupant[b] = tb, ta
            pos[ta], pos[tb] = v, u
    return Placement(grid, pos)


@dataclass(frozen=True)
class Verification:
    """Outcome of :func:`verify_schedule`; truthy iff the schedule realizes the permutation."""

    ok: bool
    failing_vertex: Vertex | None = None
    reached: Vertex | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_schedule(grid: Grid, pi: Permutation, schedule: SwapSchedule) -> Verification:
    """Check that ``schedule`` sends the token of every vertex ``v`` to ``pi(v)``.

    The first failing vertex is reported in row-major order.
    """
    if pi.grid != grid:
        raise ValueError("permutation belongs to a different grid")
    final = apply_schedule(grid, schedule)
    for v, (want, got) in zip(grid.vertices(), zip(pi.images, final.images)):
        if want != got:
            return Verification(False, v, got)
    return Verification(True)


def transpose(grid: Grid, pi: Permutation) -> tuple[Grid, Permutation]:
    """Return ``(G^T, pi^T)`` where ``pi^T(j, i) = (j', i')`` iff ``pi(i, j) = (i', j')``."""
    gt = grid.transpose()
    images = [None] * gt.size
    for (i, j), (i2, j2) in pi.items():
        images[gt.index((j, i))] = (j2, i2)
    return gt, Permutation(gt, images)


def asap_layers(swaps: Iterable[Swap]) -> SwapSchedule:
    """List-schedule ``swaps`` as early as possible while keeping the order of swaps sharing a vertex.

    Each swap lands one layer after the last layer that touched either of
    its endpoints, so applying the result equals applying ``swaps`` serially.
    """
    last: dict[Vertex, int] = {}
    layers: list[list[Swap]] = []
    for u, v in swaps:
        if v < u:
            u, v = v, u
        t = max(last.get(u, -1), last.get(v, -1)) + 1
        if t == len(layers):
            layers.append([])
        layers[t].append((u, v))
        last[u] = last[v] = t
    return SwapSchedule._trusted(tuple(tuple(layer) for layer in layers))


def compact_schedule(schedule: SwapSchedule) -> SwapSchedule:
    """Drop empty layers and hoist swaps into earlier layers where their endpoints are free.

    The placement function is unchanged and depth never increases.
    """
    return asap_layers(schedule.swaps())
