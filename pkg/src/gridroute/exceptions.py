"""Exception types raised by the routers and their helpers."""


class GridRouteError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidPermutation(GridRouteError):
    """The destination map is not a bijection on the grid vertices."""


class InvalidLayer(GridRouteError):
    """A schedule layer reuses a vertex or swaps across a non-edge."""


class WindowOutOfRange(GridRouteError):
    pass


class NonSquareInput(GridRouteError):
    pass


class HallViolation(GridRouteError):
    """Column permutations leave two tokens bound for the same column in one row."""


class InvalidSpec(GridRouteError):
    pass
