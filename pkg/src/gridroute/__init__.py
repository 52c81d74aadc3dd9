"""Locality-aware qubit routing on grid coupling graphs.

Routers turn a permutation of grid vertices into layers of parallel swaps.
The main router is locality-aware; a naive variant and a token-swapping
baseline are included for comparison.
"""

__version__ = "0.1.0"

from .ats import layerize, token_swap
from .core import (
    Grid,
    Permutation,
    Placement,
    SwapSchedule,
    Verification,
    apply_schedule,
    compact_schedule,
    transpose,
    verify_schedule,
)
from .estimator import GridRouter
from .exceptions import (
    GridRouteError,
    HallViolation,
    InvalidLayer,
    InvalidPermutation,
    InvalidSpec,
    NonSquareInput,
    WindowOutOfRange,
)
from .families import FamilySpec, generate, parse_family
from .grid import (
    ColumnPermutationSet,
    RouteResult,
    grid_route,
    local_grid_route,
    naive_grid_route,
    route,
)
from .matching import (
    build_column_graph,
    delta,
    find_perfect_matching,
    mcbbm,
    peel_all_matchings,
)
from .path import odd_even_route

__all__ = [
    "ColumnPermutationSet",
    "FamilySpec",
    "Grid",
    "GridRouteError",
    "GridRouter",
    "HallViolation",
    "InvalidLayer",
    "InvalidPermutation",
    "InvalidSpec",
    "NonSquareInput",
    "Permutation",
    "Placement",
    "RouteResult",
    "SwapSchedule",
    "Verification",
    "WindowOutOfRange",
    "apply_schedule",
    "build_column_graph",
    "compact_schedule",
    "delta",
    "find_perfect_matching",
    "generate",
    "grid_route",
    "layerize",
    "local_grid_route",
    "mcbbm",
    "naive_grid_route",
    "odd_even_route",
    "parse_family",
    "peel_all_matchings",
    "route",
    "token_swap",
    "transpose",
    "verify_schedule",
]
