"""Unit-disk graphs on weighted planar point sets.

Two vertices are adjacent when their distance is at most 1 (closed
threshold, compared on squared distances). A site of multiplicity ``m``
expands to ``m`` co-located, mutually adjacent vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching
from scipy.spatial import cKDTree

# slack for the kd-tree prefilter; the exact test is on squared distances
_KD_SLACK = 1e-9
# tolerance for candidate disks whose center is an irrational construction
DISK_TOL = 1e-9


@dataclass(frozen=True)
class WeightedPointSet:
    """Ordered planar sites with positive integer multiplicities."""

    positions: np.ndarray
    multiplicities: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float).reshape(-1, 2)
        if self.multiplicities is None:
            mult = np.ones(len(pos), dtype=np.int64)
        else:
            mult = np.asarray(self.multiplicities)
            if mult.shape != (len(pos),):
                raise ValueError("one multiplicity per site is required")
            if not np.all(np.equal(np.mod(mult, 1), 0)):
                raise ValueError("multiplicities must be integers")
            mult = mult.astype(np.int64)
        if not np.all(np.isfinite(pos)):
            raise ValueError("coordinates must be finite")
        if np.any(mult < 1):
            raise ValueError("multiplicities must be >= 1")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "multiplicities", mult)

    @classmethod
    def from_points(cls, points, multiplicities=None) -> "WeightedPointSet":
        return cls(np.asarray(points, dtype=float).reshape(-1, 2), multiplicities)

    def __len__(self) -> int:
        return len(self.positions)

    @property
    def total_weight(self) -> int:
        return int(self.multiplicities.sum())

    def expanded(self) -> np.ndarray:
        return np.repeat(self.positions, self.multiplicities, axis=0)


def site_pairs(positions: np.ndarray, radius: float = 1.0) -> np.ndarray:
    """All index pairs ``i < j`` with ``|p_i - p_j|^2 <= radius^2``."""
    positions = np.asarray(positions, dtype=float)
    if len(positions) < 2:
        return np.empty((0, 2), dtype=np.int64)
    tree = cKDTree(positions)
    pairs = tree.query_pairs(radius + _KD_SLACK, output_type="ndarray")
    if len(pairs) == 0:
        return np.empty((0, 2), dtype=np.int64)
    d = positions[pairs[:, 0]] - positions[pairs[:, 1]]
    keep = np.einsum("ij,ij->i", d, d) <= radius * radius
    pairs = pairs[keep]
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    return pairs[order].astype(np.int64)


@dataclass
class UnitDiskGraph:
    """Expanded vertex graph stored in CSR form.

    ``neighbors(v)`` is sorted; ``site[v]`` maps a vertex back to the site
    of the input point set it came from.
    """

    points: WeightedPointSet
    positions: np.ndarray
    site: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    _dists: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.positions)

    def __len__(self) -> int:
        return self.n

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def neighbor_distances(self, v: int) -> np.ndarray:
        return self._dists[self.indptr[v]:self.indptr[v + 1]]

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def edges(self) -> np.ndarray:
        """Edge list ``(u, v)`` with ``u < v``."""
        rows = np.repeat(np.arange(self.n), self.degrees)
        keep = rows < self.indices
        return np.column_stack([rows[keep], self.indices[keep]])

    def edge_lengths(self) -> np.ndarray:
        rows = np.repeat(np.arange(self.n), self.degrees)
        return self._dists[rows < self.indices]

    def adjacency_matrix(self) -> csr_matrix:
        data = np.ones(len(self.indices), dtype=np.int8)
        return csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def subgraph_positions(self, vertices) -> np.ndarray:
        return self.positions[np.asarray(vertices, dtype=np.int64)]


def build_graph(ps) -> UnitDiskGraph:
    """Build the unit-disk graph of a point set (``WeightedPointSet`` or an
    ``(n, 2)`` array of unit-multiplicity points)."""
    if not isinstance(ps, WeightedPointSet):
        ps = WeightedPointSet.from_points(ps)
    mult = ps.multiplicities
    offsets = np.concatenate([[0], np.cumsum(mult)])
    n = int(offsets[-1])
    site = np.repeat(np.arange(len(ps)), mult)
    positions = ps.positions[site]

    rows, cols = [], []
    # co-located copies of one site
    for s in np.flatnonzero(mult > 1):
        block = np.arange(offsets[s], offsets[s + 1])
        a, b = np.meshgrid(block, block, indexing="ij")
        off = a != b
        rows.append(a[off])
        cols.append(b[off])
    pairs = site_pairs(ps.positions)
    if len(pairs):
        if np.all(mult == 1):
            rows += [pairs[:, 0], pairs[:, 1]]
            cols += [pairs[:, 1], pairs[:, 0]]
        else:
            for a_site, b_site in pairs:
                va = np.arange(offsets[a_site], offsets[a_site + 1])
                vb = np.arange(offsets[b_site], offsets[b_site + 1])
                a, b = np.meshgrid(va, vb, indexing="ij")
                rows += [a.ravel(), b.ravel()]
                cols += [b.ravel(), a.ravel()]
    if rows:
        r = np.concatenate(rows).astype(np.int64)
        c = np.concatenate(cols).astype(np.int64)
    else:
        r = c = np.empty(0, dtype=np.int64)
    order = np.lexsort((c, r))
    r, c = r[order], c[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, r + 1, 1)
    indptr = np.cumsum(indptr)
    d = positions[r] - positions[c]
    dists = np.sqrt(np.einsum("ij,ij->i", d, d))
    return UnitDiskGraph(ps, positions, site, indptr, c, dists)


def _closed_neighborhood(g: UnitDiskGraph, u: int) -> np.ndarray:
    nb = g.neighbors(u)
    return np.concatenate([[u], nb])


def clique_number(g: UnitDiskGraph) -> int:
    """Exact clique number by the lens method.

    Every clique lies in the lens of its farthest pair ``(u, v)``; within a
    lens the two halves cut by the line ``uv`` are cliques, so the lens
    complement is bipartite and the largest clique in the lens is
    ``|lens| - maximum matching`` (Konig).
    """
    if g.n == 0:
        return 0
    best = 1
    for u in range(g.n):
        if g.degree(u) + 1 <= best:
            continue
        verts = _closed_neighborhood(g, u)
        pos = g.positions[verts]
        diff = pos[:, None, :] - pos[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        # candidate partners: neighbors v > u, keyed by lens size
        cand = np.flatnonzero(verts > u)
        if len(cand) == 0:
            continue
        radii = d2[0, cand]
        lens = (d2[0][None, :] <= radii[:, None]) & (d2[cand] <= radii[:, None])
        sizes = lens.sum(axis=1)
        for k in np.argsort(-sizes, kind="stable"):
            size = int(sizes[k])
            if size <= best:
                break
            j = cand[k]
            members = np.flatnonzero(lens[k])
            if radii[k] == 0.0:
                best = size
                continue
            best = max(best, _lens_clique(pos, d2, 0, j, members))
    return best


def _lens_clique(pos, d2, i, j, members) -> int:
    p, q = pos[i], pos[j]
    w = pos[members] - p
    cross = (q[0] - p[0]) * w[:, 1] - (q[1] - p[1]) * w[:, 0]
    upper = members[cross >= 0]
    lower = members[cross < 0]
    if len(upper) == 0 or len(lower) == 0:
        return len(members)
    far = d2[np.ix_(upper, lower)] > 1.0
    if not far.any():
        return len(members)
    matching = maximum_bipartite_matching(csr_matrix(far), perm_type="column")
    return len(members) - int(np.count_nonzero(matching >= 0))


def max_disk_weight(positions, weights, radius: float = 0.5, anchors=None) -> int:
    """Largest total weight inside a closed disk of the given radius.

    Candidate centers are every site plus the (at most two) centers of
    radius-``radius`` circles through each pair of sites at distance at
    most ``2 * radius``. ``anchors`` restricts the first site of each pair
    (and the site-centered candidates) to a subset.
    """
    positions = np.asarray(positions, dtype=float)
    weights = np.asarray(weights)
    if len(positions) == 0:
        return 0
    tree = cKDTree(positions)
    diam = 2.0 * radius
    r2 = radius * radius + DISK_TOL
    anchor_ids = range(len(positions)) if anchors is None else anchors
    best = 0
    for a in anchor_ids:
        local = np.asarray(tree.query_ball_point(positions[a], diam + _KD_SLACK), dtype=np.int64)
        lp = positions[local]
        lw = weights[local]
        centers = [positions[a][None, :]]
        others = lp - positions[a]
        h2 = np.einsum("ij,ij->i", others, others)
        ok = (h2 > 0) & (h2 <= diam * diam)
        if ok.any():
            half = others[ok] / 2.0
            hl2 = h2[ok] / 4.0
            t = np.sqrt(np.maximum(radius * radius - hl2, 0.0) / hl2)
            perp = np.column_stack([-half[:, 1], half[:, 0]]) * t[:, None]
            mid = positions[a] + half
            centers += [mid + perp, mid - perp]
        c = np.vstack(centers)
        diff = c[:, None, :] - lp[None, :, :]
        inside = np.einsum("ijk,ijk->ij", diff, diff) <= r2
        best = max(best, int((inside * lw[None, :]).sum(axis=1).max()))
    return best


def disk_clique_number(g: UnitDiskGraph) -> int:
    """Maximum total multiplicity inside a closed disk of radius 1/2."""
    ps = g.points
    return max_disk_weight(ps.positions, ps.multiplicities, 0.5)


@dataclass(frozen=True)
class DegreeProfile:
    vertex: int
    radii: np.ndarray
    counts: np.ndarray

    @property
    def degree(self) -> int:
        return int(self.counts.sum())

    def d(self, r: float) -> int:
        """Number of neighbors within closed distance ``r``."""
        return int(self.counts[self.radii <= r].sum())

    def items(self):
        return list(zip(self.radii.tolist(), self.counts.tolist()))


def degree_profile(g: UnitDiskGraph, v: int) -> DegreeProfile:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for a graph on {g.n} vertices")
    radii, counts = np.unique(g.neighbor_distances(v), return_counts=True)
    return DegreeProfile(v, radii, counts)


def average_degree(g: UnitDiskGraph) -> float:
    if g.n < 1:
        raise ValueError("average degree of an empty graph is undefined")
    return float(g.degrees.sum()) / g.n


def site_degrees(ps: WeightedPointSet) -> np.ndarray:
    """Per-site vertex degree computed on multiplicities, without expanding.

    Each of the ``m`` copies of a site has degree
    ``(total weight within closed distance 1) - 1``.
    """
    w = ps.multiplicities
    deg = w.copy() - 1
    pairs = site_pairs(ps.positions)
    if len(pairs):
        np.add.at(deg, pairs[:, 0], w[pairs[:, 1]])
        np.add.at(deg, pairs[:, 1], w[pairs[:, 0]])
    return deg


def weighted_average_degree(ps: WeightedPointSet) -> float:
    w = ps.multiplicities
    return float((w * site_degrees(ps)).sum() / w.sum())


@dataclass
class CheckReport:
    """Outcome of one structural inequality checked over a graph."""

    name: str
    passed: bool
    worst: float
    bound: float
    witness: object = None

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: worst {self.worst:.6g} vs bound {self.bound:.6g}"


_EPS = 1e-9


def reuleaux_sums(g: UnitDiskGraph) -> np.ndarray:
    """``S(v) = sum over neighbors u of (2 - |u - v|)`` for every vertex."""
    rows = np.repeat(np.arange(g.n), g.degrees)
    return np.bincount(rows, weights=2.0 - g._dists, minlength=g.n)


def check_reuleaux_inequality(g: UnitDiskGraph, omega: int) -> CheckReport:
    s = reuleaux_sums(g)
    worst_v = int(np.argmax(s)) if g.n else None
    worst = float(s.max()) if g.n else 0.0
    bound = 6.0 * omega
    return CheckReport("reuleaux-sum", worst <= bound + _EPS, worst, bound, worst_v)


def radius_degrees(g: UnitDiskGraph, r: float) -> np.ndarray:
    """``d_r(v)``: neighbors within closed distance r, for every vertex."""
    rows = np.repeat(np.arange(g.n), g.degrees)
    d = g.positions[rows] - g.positions[g.indices]
    close = np.einsum("ij,ij->i", d, d) <= r * r
    return np.bincount(rows[close], minlength=g.n)


def check_cor_radius(g: UnitDiskGraph, omega: int, r: float) -> CheckReport:
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r}")
    deg = g.degrees
    dr = radius_degrees(g, r)
    lhs = deg + (1.0 - r) * dr
    bound = 6.0 * omega
    passed = bool(np.all(lhs <= bound + _EPS))
    if r == 0.5:
        passed = passed and bool(np.all(dr <= 12 * omega - 2 * deg))
    worst_v = int(np.argmax(lhs)) if g.n else None
    worst = float(lhs.max()) if g.n else 0.0
    return CheckReport(f"radius-degree r={r:g}", passed, worst, bound, worst_v)


def check_max_degree(g: UnitDiskGraph, omega: int) -> CheckReport:
    worst = int(g.degrees.max()) if g.n else 0
    bound = 6 * omega - 6
    return CheckReport("max-degree", worst <= bound, worst, bound,
                       int(np.argmax(g.degrees)) if g.n else None)


def check_average_degree(g: UnitDiskGraph, omega: int, factor: float = 5.68) -> CheckReport:
    avg = average_degree(g)
    return CheckReport("average-degree", avg <= factor * omega + _EPS, avg, factor * omega)


def check_pairwise_edges(g: UnitDiskGraph, omega: int, factor: float = 5.675) -> CheckReport:
    """``(d(u) + d(v)) / 2 <= factor * omega`` over edges of length in [1/2, 1]."""
    edges = g.edges()
    bound = factor * omega
    if len(edges) == 0:
        return CheckReport("pairwise-degree", True, 0.0, bound)
    d = g.positions[edges[:, 0]] - g.positions[edges[:, 1]]
    long = np.einsum("ij,ij->i", d, d) >= 0.25
    if not long.any():
        return CheckReport("pairwise-degree", True, 0.0, bound)
    e = edges[long]
    mean = (g.degrees[e[:, 0]] + g.degrees[e[:, 1]]) / 2.0
    k = int(np.argmax(mean))
    return CheckReport("pairwise-degree", bool(mean[k] <= bound + _EPS), float(mean[k]),
                       bound, tuple(int(x) for x in e[k]))


def structural_checks(g: UnitDiskGraph, omega: int | None = None,
                      omega_d: int | None = None) -> list[CheckReport]:
    """Every degree inequality the coloring bounds rely on, at once."""
    if omega is None:
        omega = clique_number(g)
    if omega_d is None:
        omega_d = disk_clique_number(g)
    reports = [check_reuleaux_inequality(g, omega)]
    reports += [check_cor_radius(g, omega, r) for r in (0.0, 0.25, 0.5, 0.75, 1.0)]
    reports.append(check_max_degree(g, omega))
    if g.n:
        reports.append(check_average_degree(g, omega))
    reports.append(check_pairwise_edges(g, omega))
    reports.append(CheckReport("disk-clique", omega_d <= omega, omega_d, omega))
    return reports


def bfs_distances(g: UnitDiskGraph, source: int) -> np.ndarray:
    """Hop distances from ``source`` (-1 when unreachable)."""
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    frontier = [source]
    k = 0
    while frontier:
        k += 1
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if dist[w] < 0:
                    dist[w] = k
                    nxt.append(int(w))
        frontier = nxt
    return dist


def connected_components(g: UnitDiskGraph, vertices=None) -> list[np.ndarray]:
    """Components of the subgraph induced by ``vertices`` (default: all)."""
    from scipy.sparse.csgraph import connected_components as _cc

    if vertices is None:
        vertices = np.arange(g.n)
    vertices = np.asarray(vertices, dtype=np.int64)
    if len(vertices) == 0:
        return []
    sub = g.adjacency_matrix()[vertices][:, vertices]
    k, labels = _cc(sub, directed=False)
    return [vertices[labels == c] for c in range(k)]


def hop_diameter(g: UnitDiskGraph, vertices) -> int:
    vertices = np.asarray(vertices, dtype=np.int64)
    from scipy.sparse.csgraph import shortest_path

    sub = g.adjacency_matrix()[vertices][:, vertices]
    d = shortest_path(sub, unweighted=True, directed=False)
    finite = d[np.isfinite(d)]
    return int(finite.max()) if len(finite) else 0

