"""scikit-learn style wrappers around the coloring algorithms.

Each estimator takes an ``(n, 2)`` array of planar points; repeated rows are
distinct vertices at the same place. Colorings are transductive, so the
estimators expose ``fit`` and ``fit_predict`` but no ``predict``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .coloring import (color_4omega, color_568, color_fractional, color_greedy_baseline,
                       palette_568, validate)
from .udg import WeightedPointSet, build_graph, clique_number


def check_points(X) -> np.ndarray:
    """Validate ``X`` as a finite float array of shape ``(n, 2)``, ``n >= 1``."""
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if X.shape[1] != 2:
        raise ValueError(f"expected planar points of shape (n, 2), got {X.shape}")
    return X


def _check_omega(omega):
    if omega == "auto":
        return
    if isinstance(omega, (bool, np.bool_)) or not isinstance(omega, (int, np.integer)) or omega < 1:
        raise ValueError(f"omega must be 'auto' or a positive integer, got {omega!r}")


class _IntegralColoring(ClusterMixin, BaseEstimator):
    """Shared ``fit`` for the algorithms that return one color per vertex.

    Attributes set by ``fit``: ``graph_``, ``omega_``, ``colors_`` (also
    ``labels_``), ``n_colors_``, ``palette_size_``, ``n_rounds_``,
    ``trace_`` and ``validation_``.
    """

    def _run(self, g, omega):
        raise NotImplementedError

    def _needs_omega(self) -> bool:
        return True

    def fit(self, X, y=None):
        X = check_points(X)
        g = build_graph(WeightedPointSet.from_points(X))
        if self._needs_omega():
            _check_omega(self.omega)
            self.omega_ = clique_number(g) if self.omega == "auto" else int(self.omega)
        else:
            self.omega_ = clique_number(g)
        coloring, trace = self._run(g, self.omega_)
        self.graph_ = g
        self.colors_ = coloring.colors
        self.labels_ = coloring.colors
        self.n_colors_ = coloring.n_colors
        self.palette_size_ = coloring.palette_size
        self.trace_ = trace
        self.n_rounds_ = trace.rounds_executed
        self.validation_ = validate(g, coloring)
        return self

    def bound(self) -> int:
        """Guaranteed palette size for the fitted ``omega_``."""
        check_is_fitted(self, "omega_")
        return self.palette_size_


class StripeColoring(_IntegralColoring):
    """Location-aware coloring with at most ``4 * omega`` colors.

    Parameters
    ----------
    omega : int or "auto", default="auto"
        Clique number handed to the nodes. ``"auto"`` computes it exactly.
    seed : int, default=0
        Seeds the node identifiers.

    Examples
    --------
    >>> import numpy as np
    >>> est = StripeColoring().fit(np.array([[0, 0], [0.5, 0], [1, 0]]))
    >>> est.n_colors_ <= 4 * est.omega_
    True
    """

    def __init__(self, omega="auto", seed=0):
        self.omega = omega
        self.seed = seed

    def _run(self, g, omega):
        return color_4omega(g, omega, seed=self.seed)


class DegreeSplitColoring(_IntegralColoring):
    """Coordinate-free coloring with at most ``ceil(5.68 * omega)`` colors.

    Parameters
    ----------
    omega : int or "auto", default="auto"
    seed : int, default=0
        Seeds identifiers and every node's random proposals.
    """

    def __init__(self, omega="auto", seed=0):
        self.omega = omega
        self.seed = seed

    def _run(self, g, omega):
        return color_568(g, omega, seed=self.seed)

    def bound(self) -> int:
        check_is_fitted(self, "omega_")
        return palette_568(self.omega_)


class GreedyListColoring(_IntegralColoring):
    """Randomized ``Delta + 1`` baseline.

    Parameters
    ----------
    seed : int, default=0
    """

    def __init__(self, seed=0):
        self.seed = seed

    def _needs_omega(self) -> bool:
        return False

    def _run(self, g, omega):
        return color_greedy_baseline(g, seed=self.seed)


class FractionalStripeColoring(BaseEstimator):
    """Fractional ``(p:q)``-coloring from shifted rectangle systems.

    Parameters
    ----------
    omega : int or "auto", default="auto"
    r : int, default=20000
        Number of shifted systems; ``p = r * omega``.
    eps : float, default=1e-4
        Inverse rectangle length.
    mode : {"central", "simulate"}, default="central"
    seed : int, default=0

    Attributes
    ----------
    sets_ : ndarray of shape (n_vertices, q_)
        Sorted color sets.
    p_, q_ : int
    ratio_ : float
        ``p_ / q_``.
    """

    def __init__(self, omega="auto", r=20000, eps=1e-4, mode="central", seed=0):
        self.omega = omega
        self.r = r
        self.eps = eps
        self.mode = mode
        self.seed = seed

    def fit(self, X, y=None):
        X = check_points(X)
        _check_omega(self.omega)
        g = build_graph(WeightedPointSet.from_points(X))
        self.omega_ = clique_number(g) if self.omega == "auto" else int(self.omega)
        fc = color_fractional(g, self.omega_, r=self.r, eps=self.eps, mode=self.mode, seed=self.seed)
        self.graph_ = g
        self.sets_ = fc.sets
        self.p_, self.q_ = fc.p, fc.q
        self.ratio_ = fc.ratio
        self.validation_ = validate(g, fc)
        return self

    def fit_predict(self, X, y=None) -> np.ndarray:
        return self.fit(X).sets_


class UnitDiskAdjacency(TransformerMixin, BaseEstimator):
    """Transform points into the sparse adjacency matrix of their unit-disk graph."""

    def fit(self, X, y=None):
        self.n_features_in_ = check_points(X).shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        return build_graph(WeightedPointSet.from_points(check_points(X))).adjacency_matrix()
