"""Finite metric spaces and simple graphs.

Graph metrics are integer edge counts and are compared exactly.  Abstract
metrics may be float; those comparisons use an absolute tolerance of 1e-9.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import BudgetExceeded, DisconnectedGraph, InvalidInput
from .median_core import FiniteMedianAlgebra, Verdict

TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: tuple
    labels: tuple | None = None

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            i, j = (int(x) for x in e)
            if i == j:
                raise InvalidInput(f"loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise InvalidInput(f"edge {e} refers to a missing vertex")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise InvalidInput("one label per vertex required")
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))

    @cached_property
    def neighbors(self) -> tuple:
        nb = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nb[i].append(j)
            nb[j].append(i)
        return tuple(tuple(sorted(x)) for x in nb)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges:
            adj[i, j] = adj[j, i] = True
        return adj

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        k, _ = connected_components(csr_matrix(self.adjacency()), directed=False)
        return k == 1

    @cached_property
    def distances(self) -> np.ndarray:
        """All-pairs shortest path lengths; raises on disconnected graphs."""
        if self.n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        d = shortest_path(csr_matrix(self.adjacency().astype(np.int8)),
                          directed=False, unweighted=True)
        if np.isinf(d).any():
            raise DisconnectedGraph("graph is disconnected; its path metric is undefined")
        out = d.astype(np.int64)
        out.setflags(write=False)
        return out

    def metric(self) -> "FiniteMetricSpace":
        return FiniteMetricSpace(self.distances, self.labels, check=False)

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep = sorted(set(keep))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos]
        labels = tuple(self.labels[v] for v in keep) if self.labels else tuple(str(v) for v in keep)
        return Graph(len(keep), tuple(edges), labels)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def complete_bipartite(m: int, n: int) -> Graph:
    return Graph(m + n, tuple((i, m + j) for i in range(m) for j in range(n)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def hypercube_graph(n: int) -> Graph:
    edges = [(v, v ^ (1 << i)) for v in range(1 << n) for i in range(n) if not v & (1 << i)]
    labels = [format(v, f"0{n}b") for v in range(1 << n)] if n else ["()"]
    return Graph(1 << n, tuple(edges), tuple(labels))


def grid_graph(rows: int, cols: int) -> Graph:
    return box_product(path_graph(rows), path_graph(cols))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def box_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex ``(u, v)`` gets index ``u * h.n + v``."""
    edges = []
    for u in range(g.n):
        for a, b in h.edges:
            edges.append((u * h.n + a, u * h.n + b))
    for a, b in g.edges:
        for v in range(h.n):
            edges.append((a * h.n + v, b * h.n + v))
    labels = tuple(f"({g.label(u)},{h.label(v)})" for u in range(g.n) for v in range(h.n))
    return Graph(g.n * h.n, tuple(edges), labels)


def prufer_tree(seq: Sequence[int]) -> Graph:
    """Labelled tree on ``len(seq) + 2`` vertices from its Prüfer sequence."""
    n = len(seq) + 2
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    edges.append((u, v))
    return Graph(n, tuple(edges))


def random_tree(n: int, rng) -> Graph:
    if n <= 2:
        return path_graph(n)
    return prufer_tree([int(x) for x in rng.integers(0, n, size=n - 2)])


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    dist: np.ndarray
    labels: tuple | None = None
    check: bool = True

    def __post_init__(self):
        d = np.asarray(self.dist)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise InvalidInput("distance matrix must be square")
        if np.issubdtype(d.dtype, np.integer):
            d = d.astype(np.int64)
        elif np.all(np.isfinite(d)) and np.all(d == np.round(d)):
            d = np.round(d).astype(np.int64)
        else:
            d = d.astype(np.float64)
        d = d.copy()
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)
        if self.labels is not None:
            if len(self.labels) != len(d):
                raise InvalidInput("one label per point required")
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if self.check:
            bad = validate_metric(d)
            if bad is not None:
                raise InvalidInput(f"not a metric: {bad}")

    @property
    def n(self) -> int:
        return len(self.dist)

    @property
    def exact(self) -> bool:
        return np.issubdtype(self.dist.dtype, np.integer)

    @cached_property
    def rows(self) -> list:
        """The distance matrix as nested Python lists, for scalar-heavy loops."""
        return self.dist.tolist()

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def index(self, x) -> int:
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            if 0 <= x < self.n:
                return int(x)
            raise InvalidInput(f"unknown point {x}")
        if self.labels and str(x) in self.labels:
            return self.labels.index(str(x))
        raise InvalidInput(f"unknown point {x!r}")

    def relabel(self, perm: Sequence[int]) -> "FiniteMetricSpace":
        """Space whose point ``i`` is the old point ``perm[i]``."""
        p = np.asarray(perm)
        labels = tuple(self.label(i) for i in p)
        return FiniteMetricSpace(self.dist[np.ix_(p, p)], labels, check=False)


def validate_metric(d: np.ndarray):
    """Return a description of the first metric-axiom failure, or None."""
    n = len(d)
    tol = 0 if np.issubdtype(d.dtype, np.integer) else TOL
    if np.any(np.abs(np.diag(d)) > tol):
        return "nonzero diagonal"
    if np.any(np.abs(d - d.T) > tol):
        return "asymmetric"
    off = ~np.eye(n, dtype=bool)
    if np.any(d[off] <= tol):
        return "distinct points at distance zero"
    for a in range(n):
        # d(a, c) <= d(a, b) + d(b, c) for all b, c
        viol = d[a][None, :] > d[a][:, None] + d + tol
        if viol.any():
            b, c = np.argwhere(viol)[0]
            return f"triangle inequality fails at ({a}, {int(b)}, {int(c)})"
    return None


def _eq(x, y, exact: bool):
    return x == y if exact else np.abs(x - y) <= TOL


def metric_interval(space: FiniteMetricSpace, a, b) -> frozenset:
    a, b = space.index(a), space.index(b)
    d = space.dist
    hit = _eq(d[a] + d[b], d[a, b], space.exact)
    return frozenset(int(c) for c in np.nonzero(hit)[0])


class MedianCheck(NamedTuple):
    ok: bool
    algebra: FiniteMedianAlgebra | None
    witness: tuple | None          # (a, b, c, frozenset of triple-intersection)

    def __bool__(self):
        return self.ok


def check_metric_median(space: FiniteMetricSpace, chunk: int = 1 << 22) -> MedianCheck:
    """Is every triple intersection of intervals a single point?

    A point m lies in all three intervals of (a, b, c) iff
    2 (d(a,m) + d(b,m) + d(c,m)) equals the perimeter of the triple, which
    turns the test into one vectorised comparison per leading point.
    """
    d = space.dist
    n = space.n
    exact = space.exact
    mu = np.empty((n, n, n), dtype=np.int32)
    step = max(1, chunk // max(1, n * n))
    for a in range(n):
        for b0 in range(0, n, step):
            b1 = min(n, b0 + step)
            db = d[b0:b1]                                          # (B, m)
            s = d[a][None, None, :] + db[:, None, :] + d[None, :, :]  # (B, c, m)
            per = d[a, b0:b1][:, None] + d[b0:b1, :] + d[a][None, :]  # (B, c)
            hit = _eq(2 * s, per[:, :, None], exact)
            count = hit.sum(axis=2)
            bad = np.argwhere(count != 1)
            if len(bad):
                bb, c = (int(x) for x in bad[0])
                meet = frozenset(int(m) for m in np.nonzero(hit[bb, c])[0])
                return MedianCheck(False, None, (a, b0 + bb, c, meet))
            mu[a, b0:b1] = hit.argmax(axis=2)
    labels = space.labels or tuple(str(i) for i in range(n))
    return MedianCheck(True, FiniteMedianAlgebra(labels, mu), None)


def l1_product(s1: FiniteMetricSpace, s2: FiniteMetricSpace,
               budget: int = 10_000) -> FiniteMetricSpace:
    """Cartesian product with the sum metric; point ``(i, j)`` is ``i * s2.n + j``."""
    size = s1.n * s2.n
    if size > budget:
        raise BudgetExceeded(f"product has {size} points, budget is {budget}", partial=size)
    d = s1.dist[:, None, :, None] + s2.dist[None, :, None, :]
    labels = tuple(f"({s1.label(i)},{s2.label(j)})" for i in range(s1.n) for j in range(s2.n))
    return FiniteMetricSpace(d.reshape(size, size), labels, check=False)


def is_median_graph(g: Graph) -> MedianCheck:
    if not g.is_connected():
        raise DisconnectedGraph("median-graph recognition needs a connected graph")
    return check_metric_median(g.metric())


class DeltaEstimate(NamedTuple):
    delta: float
    exact: bool            # False means a sampled lower bound
    samples: int           # 4-tuples examined
    witness: tuple | None

    @property
    def kind(self) -> str:
        return "exact" if self.exact else "lower bound"


def four_point_defect(d: np.ndarray, x, y, z, w):
    """Half the gap between the two largest of the three pair sums."""
    s1 = d[x, y] + d[z, w]
    s2 = d[x, z] + d[y, w]
    s3 = d[x, w] + d[y, z]
    hi = np.maximum(np.maximum(s1, s2), s3)
    lo = np.minimum(np.minimum(s1, s2), s3)
    mid = s1 + s2 + s3 - hi - lo
    return (hi - mid) / 2


def estimate_delta(space: FiniteMetricSpace, exhaustive_limit: int = 60,
                   samples: int = 1_000_000, seed: int = 0) -> DeltaEstimate:
    """Four-point hyperbolicity constant.

    Exact over all 4-tuples up to ``exhaustive_limit`` points, otherwise the
    maximum over ``samples`` uniform 4-tuples.
    """
    d = space.dist
    n = space.n
    if n < 4:
        return DeltaEstimate(0.0, True, 0, None)
    if n > exhaustive_limit:
        from .rng import make_rng
        q = make_rng(seed).integers(0, n, size=(samples, 4))
        vals = four_point_defect(d, *q.T)
        i = int(np.argmax(vals))
        return DeltaEstimate(float(vals[i]), False, samples, tuple(int(x) for x in q[i]))
    best, wit = -1.0, None
    for a in range(n):
        for b in range(a + 1, n):
            s1 = d[a, b] + d
            s2 = d[a][:, None] + d[b][None, :]
            s3 = d[a][None, :] + d[b][:, None]
            hi = np.maximum(np.maximum(s1, s2), s3)
            lo = np.minimum(np.minimum(s1, s2), s3)
            gap = 2 * hi + lo - s1 - s2 - s3            # = hi - mid
            k = int(np.argmax(gap))
            if gap.flat[k] > best:
                best = float(gap.flat[k])
                wit = (a, b) + divmod(k, n)
    return DeltaEstimate(best / 2, True, n * (n - 1) // 2 * n * n, tuple(int(x) for x in wit))
