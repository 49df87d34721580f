"""Optimal coloring of unit-disk graphs confined to a thin horizontal strip.

If all y-coordinates lie within ``sqrt(3)/2`` of each other, two points
at distance more than 1 differ by more than 1/2 in x. Hence "left of and
not adjacent" is transitive, i.e. a partial order whose chains are exactly
the independent sets. A minimum chain cover (Dilworth) then has as many
chains as the largest antichain, which is the clique number. The cover is
read off a maximum matching of the strict order.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from ..geometry import STRIPE_HEIGHT

# tolerance on the strip-height precondition
_HEIGHT_TOL = 1e-12


class StripPreconditionError(ValueError):
    pass


def canonical_order(positions: np.ndarray, ids) -> np.ndarray:
    """Indices sorted by x, then y, then id."""
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    return np.lexsort((np.asarray(ids), positions[:, 1], positions[:, 0]))


def color_strip(positions, ids=None) -> np.ndarray:
    """Color points of one strip with exactly as many colors as the size of
    the largest clique among them.

    Returns one color per input point, in input order. Colors are numbered
    by the leftmost point of their class, so the result depends only on the
    point multiset and the ids used to break ties between equal points.
    """
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    n = len(positions)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    if ids is None:
        ids = np.arange(n)
    if np.ptp(positions[:, 1]) > STRIPE_HEIGHT + _HEIGHT_TOL:
        raise StripPreconditionError(
            f"y-extent {np.ptp(positions[:, 1]):.6g} exceeds the strip height {STRIPE_HEIGHT:.6g}")
    order = canonical_order(positions, ids)
    p = positions[order]
    diff = p[:, None, :] - p[None, :, :]
    far = np.triu(np.einsum("ijk,ijk->ij", diff, diff) > 1.0, k=1)
    colors_sorted = np.full(n, -1, dtype=np.int64)
    if far.any():
        succ = maximum_bipartite_matching(csr_matrix(far), perm_type="column")
    else:
        succ = np.full(n, -1)
    has_pred = np.zeros(n, dtype=bool)
    has_pred[succ[succ >= 0]] = True
    color = 0
    for head in range(n):
        if has_pred[head]:
            continue
        v = head
        while v >= 0:
            colors_sorted[v] = color
            v = succ[v]
        color += 1
    out = np.empty(n, dtype=np.int64)
    out[order] = colors_sorted
    return out


def greedy_strip(positions, ids=None) -> np.ndarray:
    """Leftmost-first first-fit coloring (not always optimal; kept for
    comparison against :func:`color_strip`)."""
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    n = len(positions)
    if ids is None:
        ids = np.arange(n)
    order = canonical_order(positions, ids)
    out = np.full(n, -1, dtype=np.int64)
    for k, v in enumerate(order):
        prev = order[:k]
        d = positions[prev] - positions[v]
        used = set(out[prev[np.einsum("ij,ij->i", d, d) <= 1.0]].tolist())
        c = 0
        while c in used:
            c += 1
        out[v] = c
    return out
