"""scikit-learn style front end for the routers."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .core import apply_schedule, verify_schedule
from .grid import ALGORITHMS, route
from .validation import check_grid_data, check_permutation


class GridRouter(TransformerMixin, BaseEstimator):
    """Find a swap schedule for a grid permutation, then move grid-shaped data along it.

    Parameters
    ----------
    algorithm : {"local", "naive", "ats"}, default="local"
        Router to use. ``"local"`` is the locality-aware three-round router.
    use_transpose : bool, default=True
        Also route the transposed instance (row-column-row order) and keep the
        shallower schedule.
    naive_fallback : bool, default=True
        With ``algorithm="local"``, fall back to the naive router when it is shallower.
    compact : bool, default=False
        Hoist swaps into earlier layers after routing.

    Attributes
    ----------
    grid_ : Grid
    permutation_ : Permutation
    schedule_ : SwapSchedule
    algorithm_ : str
        Candidate that produced ``schedule_`` (e.g. ``"local_transposed"``).
    depth_ : int
    n_swaps_ : int
    fit_time_ : float
        Seconds spent computing the schedule.

    Examples
    --------
    >>> import numpy as np
    >>> X = np.array([[1, 0], [2, 3]])  # swap the two top vertices
    >>> router = GridRouter().fit(X)
    >>> router.depth_
    1
    >>> router.transform(np.array([[10, 20], [30, 40]])).tolist()
    [[20, 10], [30, 40]]
    """

    def __init__(self, algorithm="local", use_transpose=True, naive_fallback=True, compact=False):
        self.algorithm = algorithm
        self.use_transpose = use_transpose
        self.naive_fallback = naive_fallback
        self.compact = compact

    def fit(self, X, y=None, grid=None):
        """Route the permutation ``X``.

        ``X`` is an ``(m, n)`` array of 0-based row-major destination indices
        or a :class:`~gridroute.core.Permutation`; ``y`` is ignored.
        """
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        pi = check_permutation(X, grid)
        result = route(
            pi.grid,
            pi,
            algorithm=self.algorithm,
            use_transpose=bool(self.use_transpose),
            naive_fallback=bool(self.naive_fallback),
            compact=bool(self.compact),
        )
        self.grid_ = pi.grid
        self.permutation_ = pi
        self.schedule_ = result.schedule
        self.algorithm_ = result.algorithm
        self.depth_ = result.depth
        self.n_swaps_ = result.size
        self.fit_time_ = result.elapsed
        return self

    def _moves(self):
        final = apply_schedule(self.grid_, self.schedule_)
        src = np.arange(self.grid_.size)
        dst = np.array(final.to_indices())
        return src, dst

    def transform(self, X):
        """Carry values laid out on the grid along the schedule.

        The trailing two axes of ``X`` must be ``(m, n)``; the value at
        vertex ``v`` ends up at ``permutation_(v)``.
        """
        check_is_fitted(self, "schedule_")
        arr = check_grid_data(X, self.grid_)
        src, dst = self._moves()
        flat = arr.reshape(arr.shape[:-2] + (-1,))
        out = np.empty_like(flat)
        out[..., dst] = flat[..., src]
        return out.reshape(arr.shape)

    def inverse_transform(self, X):
        check_is_fitted(self, "schedule_")
        arr = check_grid_data(X, self.grid_)
        src, dst = self._moves()
        flat = arr.reshape(arr.shape[:-2] + (-1,))
        out = np.empty_like(flat)
        out[..., src] = flat[..., dst]
        return out.reshape(arr.shape)

    def score(self, X=None, y=None):
        """Negative schedule depth, so that larger is better."""
        check_is_fitted(self, "schedule_")
        return -float(self.depth_)

    def verify(self):
        check_is_fitted(self, "schedule_")
        return verify_schedule(self.grid_, self.permutation_, self.schedule_)
