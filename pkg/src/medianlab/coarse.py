"""Coarse medians on finite graph metrics.

The median of ``(a, b, c)`` is the point minimising
``d(., a) + d(., b) + d(., c)``, smallest index first on ties.  On a median
graph this is the exact median; on a hyperbolic graph it is one of the
coarsely equivalent choices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInput
from .metric import FiniteMetricSpace, estimate_delta, metric_interval
from .rng import make_rng


def min_sum_table(space: FiniteMetricSpace, chunk: int = 1 << 22) -> np.ndarray:
    d = space.dist
    n = space.n
    mu = np.empty((n, n, n), dtype=np.int32)
    step = max(1, chunk // max(1, n * n))
    for a in range(n):
        for b0 in range(0, n, step):
            b1 = min(n, b0 + step)
            s = d[a][None, None, :] + d[b0:b1, None, :] + d[None, :, :]
            mu[a, b0:b1] = s.argmin(axis=2)      # argmin returns the first minimiser
    return mu


def coarse_median_point(space: FiniteMetricSpace, a, b, c) -> int:
    a, b, c = space.index(a), space.index(b), space.index(c)
    d = space.dist
    return int(np.argmin(d[a] + d[b] + d[c]))


@dataclass
class CoarseMedianStructure:
    space: FiniteMetricSpace
    mu: np.ndarray
    delta: float
    k: float | None = None
    h0: float | None = None
    h_table: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    name: str = "space"

    @classmethod
    def build(cls, space: FiniteMetricSpace, name: str = "space",
              delta: float | None = None) -> "CoarseMedianStructure":
        if delta is None:
            delta = estimate_delta(space).delta
        return cls(space, min_sum_table(space), float(delta), name=name)

    def median(self, a, b, c) -> int:
        return int(self.mu[a, b, c])

    def record_h(self, p: int, h: float) -> float:
        """Fold a measured h into the table; h(p) is a running max over |A| <= p."""
        below = [v for q, v in self.h_table.items() if q <= p]
        cur = max([float(h)] + below)
        self.h_table[p] = cur
        for q in self.h_table:
            if q > p:
                self.h_table[q] = max(self.h_table[q], cur)
        return cur

    def report(self) -> dict:
        return {
            "space": self.name,
            "delta": self.delta,
            "k": self.k,
            "h0": self.h0,
            "h_table": {str(p): self.h_table[p] for p in sorted(self.h_table)},
            "witnesses": self.witnesses,
        }

    def merge_report(self, rep: dict) -> None:
        """Fold in the h_table of an earlier report for the same space."""
        if rep.get("space") != self.name:
            raise InvalidInput(f"report is for {rep.get('space')!r}, not {self.name!r}")
        for p, h in sorted(rep.get("h_table", {}).items(), key=lambda kv: int(kv[0])):
            self.record_h(int(p), float(h))


@dataclass
class C1Report:
    k: float
    h0: float
    additive_at_unit_k: float       # max of d(mu, mu') - sum of moves
    witness: tuple | None
    mode: str
    checked: int

    def as_dict(self):
        return {"k": self.k, "h0": self.h0, "additive_at_unit_k": self.additive_at_unit_k,
                "witness": list(self.witness) if self.witness else None,
                "mode": self.mode, "checked": self.checked}


def _c1_scan(d, mu_flat, firsts, n, h0):
    """Best ratio and unit-k excess over ``firsts`` x all ordered triples."""
    idx = np.arange(n ** 3)
    a2, b2, c2 = idx // (n * n), (idx // n) % n, idx % n
    best_k, best_w, best_add = -np.inf, None, -np.inf
    for lo in range(0, len(firsts), 256):
        block = firsts[lo:lo + 256]
        a, b, c = block[:, 0:1], block[:, 1:2], block[:, 2:3]
        m = mu_flat[(a * n + b) * n + c]                      # (B, 1)
        dmu = d[m, mu_flat[None, :]]                           # (B, n^3)
        tot = d[a, a2[None, :]] + d[b, b2[None, :]] + d[c, c2[None, :]]
        best_add = max(best_add, float(np.max(dmu - tot)))
        ratio = np.where(tot > 0, (dmu - h0) / np.maximum(tot, 1), -np.inf)
        s, t = np.unravel_index(np.argmax(ratio), ratio.shape)
        if ratio[s, t] > best_k:
            best_k = float(ratio[s, t])
            best_w = tuple(int(x) for x in block[s]) + (int(a2[t]), int(b2[t]), int(c2[t]))
    return best_k, best_w, best_add


def verify_c1(cms: CoarseMedianStructure, mode: str = "exhaustive",
              samples: int = 100_000, seed: int = 0) -> C1Report:
    """Smallest k with d(mu(t), mu(t')) <= k * d1(t, t') + h0 where h0 = delta.

    The exhaustive scan takes the first triple sorted, which loses nothing:
    permuting both triples together preserves both sides.
    """
    d = cms.space.dist
    n = cms.space.n
    h0 = cms.delta
    mu_flat = cms.mu.reshape(-1)
    if mode == "exhaustive":
        firsts = np.array([(a, b, c) for a in range(n) for b in range(a, n) for c in range(b, n)],
                          dtype=np.int64).reshape(-1, 3)
        k, w, add = _c1_scan(d, mu_flat, firsts, n, h0)
        checked = len(firsts) * n ** 3
    elif mode == "sampled":
        q = make_rng(seed).integers(0, n, size=(samples, 6))
        m1 = cms.mu[q[:, 0], q[:, 1], q[:, 2]]
        m2 = cms.mu[q[:, 3], q[:, 4], q[:, 5]]
        dmu = d[m1, m2]
        tot = d[q[:, 0], q[:, 3]] + d[q[:, 1], q[:, 4]] + d[q[:, 2], q[:, 5]]
        add = float(np.max(dmu - tot))
        ratio = np.where(tot > 0, (dmu - h0) / np.maximum(tot, 1), -np.inf)
        i = int(np.argmax(ratio))
        k = max(0.0, float(ratio[i]))
        w = tuple(int(x) for x in q[i])
        checked = samples
    else:
        raise InvalidInput(f"unknown mode {mode!r}")
    k = max(0.0, k)
    cms.k, cms.h0 = k, h0
    if w is not None:
        cms.witnesses.append({"check": "C1", "sextuple": list(w)})
    return C1Report(k, h0, max(0.0, add), w, mode, checked)


@dataclass
class ApproximationData:
    """Gromov-product tree for a finite subset.

    Tree lengths are stored doubled so that half-integer Gromov products stay
    integral.  Node 0 is the basepoint.
    """
    points: tuple                 # the subset A in insertion order
    parent: list
    depth2: list                  # doubled distance from the basepoint
    pi: dict                      # point of A -> node
    eta: list                     # node -> point of the space
    dist2: np.ndarray             # doubled tree distances between nodes
    distortion: float

    @property
    def size(self) -> int:
        return len(self.parent)

    def edges(self):
        """``(child, parent, length)`` for every tree edge."""
        return [(v, p, (self.depth2[v] - self.depth2[p]) / 2)
                for v, p in enumerate(self.parent) if p is not None]

    def tree_medians(self) -> np.ndarray:
        d = self.dist2
        s = d[:, None, None, :] + d[None, :, None, :] + d[None, None, :, :]
        return s.argmin(axis=3)


def _geodesic(d: list, w: int, y: int) -> list[int] | None:
    """Smallest-index unit-step geodesic from w to y, or None if d has no unit steps."""
    path = [w]
    cur = w
    dy = [row[y] for row in d]
    while cur != y:
        row = d[cur]
        want = dy[cur] - 1
        nxt = next((m for m, dm in enumerate(row) if dm == 1 and dy[m] == want), None)
        if nxt is None:
            return None
        cur = nxt
        path.append(cur)
    return path


def _branch_eta(space: FiniteMetricSpace, w: int, y: int, depth2, paths: dict) -> int:
    """Point at doubled height depth2 on the chosen geodesic from w to y."""
    if y not in paths:
        paths[y] = _geodesic(space.rows, w, y)
    path = paths[y]
    if path is not None:
        return path[min(len(path) - 1, int(depth2 // 2))]
    dw = space.rows[w]
    cand = sorted(metric_interval(space, w, y))
    return min(cand, key=lambda m: (abs(2 * dw[m] - depth2), m))


def approximation_tree(space: FiniteMetricSpace, A: Iterable, basepoint=None) -> ApproximationData:
    """Insert the points of A in index order into a tree rooted at the basepoint.

    Each new x hangs off the geodesic [w, y] at height (x|y)_w, where y is
    the already-inserted point with the largest Gromov product (smallest
    index on ties).  Branch nodes map back to the space along a unit-step
    geodesic from w toward their smallest descendant point.
    """
    pts = sorted({space.index(a) for a in A})
    if not pts:
        raise InvalidInput("approximation tree needs a nonempty subset")
    d = space.rows
    w = pts[0] if basepoint is None else space.index(basepoint)
    if w not in pts:
        raise InvalidInput("basepoint must belong to the subset")
    order = [w] + [x for x in pts if x != w]
    dw = d[w]
    paths: dict = {}

    parent: list = [None]
    depth2: list = [0]
    pi = {w: 0}
    for i in range(1, len(order)):
        x = order[i]
        dx = d[x]
        best_t, y = None, None
        for z in order[:i]:
            g = dw[x] + dw[z] - dx[z]           # doubled Gromov product (x|z)_w
            if best_t is None or g > best_t:
                best_t, y = g, z
        t = max(0, best_t)
        u = pi[y]
        while depth2[u] > t and depth2[parent[u]] >= t:
            u = parent[u]
        if depth2[u] == t:
            anchor = u
        else:
            anchor = len(parent)
            parent.append(parent[u])
            depth2.append(t)
            parent[u] = anchor
        target = 2 * dw[x]
        if target == t:
            pi[x] = anchor
        else:
            pi[x] = len(parent)
            parent.append(anchor)
            depth2.append(target)

    q = len(parent)
    anc = []
    for v in range(q):
        chain = [v]
        p = parent[v]
        while p is not None:
            chain.append(p)
            p = parent[p]
        anc.append(chain)
    dist2 = [[0] * q for _ in range(q)]
    for u in range(q):
        su = set(anc[u])
        du = depth2[u]
        for v in range(u + 1, q):
            for z in anc[v]:
                if z in su:
                    break
            dist2[u][v] = dist2[v][u] = du + depth2[v] - 2 * depth2[z]

    owner: dict = {}
    for x in pts:
        owner.setdefault(pi[x], x)
    below = [None] * q
    for x in pts:
        for v in anc[pi[x]]:
            if below[v] is None:
                below[v] = x
    eta = [0] * q
    for v in range(q):
        if v in owner:
            eta[v] = owner[v]
            continue
        eta[v] = _branch_eta(space, w, below[v], depth2[v], paths)

    distortion = 0.0
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            gap = abs(dist2[pi[a]][pi[b]] / 2 - d[a][b])
            if gap > distortion:
                distortion = gap
    return ApproximationData(tuple(order), parent, depth2, pi, eta,
                             np.array(dist2, dtype=np.asarray(space.dist).dtype), float(distortion))


def distortion_bound(delta: float, p: int) -> float:
    """Configured ceiling 4 delta (ceil(log2 p) + 1) on tree distortion."""
    return 4 * delta * ((max(p, 1) - 1).bit_length() + 1)


@dataclass
class C2Report:
    p: int
    h: float
    median_defect: float
    reconstruction_defect: float
    distortion: float
    witness: tuple | None

    def as_dict(self):
        return {"p": self.p, "h": self.h, "median_defect": self.median_defect,
                "reconstruction_defect": self.reconstruction_defect,
                "distortion": self.distortion,
                "witness": list(self.witness) if self.witness else None}


def verify_c2(cms: CoarseMedianStructure, A: Sequence, record: bool = True) -> C2Report:
    """Measure h for one subset using the tree median algebra as the finite model."""
    approx = approximation_tree(cms.space, A)
    d = cms.space.dist
    rows = cms.space.rows
    eta = np.asarray(approx.eta)
    q = len(eta)
    lhs = eta[approx.tree_medians()]                             # eta(mu_Pi(x,y,z))
    n = cms.space.n
    flat = (eta[:, None, None] * n + eta[None, :, None]) * n + eta[None, None, :]
    rhs = cms.mu.reshape(-1)[flat]
    gaps = d[lhs, rhs]
    j = int(gaps.argmax())
    median_defect = float(gaps.reshape(-1)[j])
    recon = float(max(rows[a][approx.eta[approx.pi[a]]] for a in approx.points))
    h = max(median_defect, recon)
    p = len(approx.points)
    if record:
        cms.record_h(p, h)
    wit = None
    if median_defect > 0:
        wit = (j // (q * q), (j // q) % q, j % q)
        if record:
            cms.witnesses.append({"check": "C2", "subset": [int(a) for a in approx.points],
                                  "tree_triple": list(wit)})
    return C2Report(p, h, median_defect, recon, approx.distortion, wit)


class _Sweep:
    """Approximation tree grown one point at a time, with its C2 defects.

    Points arrive in increasing index order, so the tree of A + {x} is the
    tree of A with one more insertion.  Splitting an edge keeps old tree
    distances, old tree medians and old eta values; the single exception is
    a bare branch node that x lands on, which takes x as its new image.
    Only triples touching a new or re-imaged node need to be re-checked.
    """

    def __init__(self, cms: CoarseMedianStructure, w: int, cap: int, paths: dict):
        self.cms = cms
        self.w = w
        self.paths = paths
        self.points = [w]
        self.parent = [None]
        self.depth2 = [0]
        self.pi = {w: 0}
        self.owner = {0: w}
        self.below = [w]
        self.eta = [w]
        self.dist2 = np.zeros((cap, cap), dtype=np.asarray(cms.space.dist).dtype)
        self.median_defect = 0
        self.recon = 0
        self.distortion = 0.0
        self.witness = None

    def copy(self) -> "_Sweep":
        new = object.__new__(_Sweep)
        new.__dict__.update(self.__dict__)
        for k in ("points", "parent", "depth2", "below", "eta"):
            setattr(new, k, list(getattr(self, k)))
        new.pi = dict(self.pi)
        new.owner = dict(self.owner)
        new.dist2 = self.dist2.copy()
        return new

    def _add_node(self, par, depth2, via, shift) -> int:
        """New node whose distance to every old node is dist2[via] + shift."""
        v = len(self.parent)
        self.parent.append(par)
        self.depth2.append(depth2)
        self.below.append(None)
        self.eta.append(None)
        row = self.dist2[via, :v] + shift
        self.dist2[v, :v] = row
        self.dist2[:v, v] = row
        return v

    def insert(self, x: int) -> None:
        d = self.cms.space.rows
        dw, dx = d[self.w], d[x]
        best_t, y = None, None
        for z in self.points:
            g = dw[x] + dw[z] - dx[z]
            if best_t is None or g > best_t:
                best_t, y = g, z
        t = max(0, best_t)
        parent, depth2 = self.parent, self.depth2
        u = self.pi[y]
        while depth2[u] > t and depth2[parent[u]] >= t:
            u = parent[u]
        changed = []
        if depth2[u] == t:
            anchor = u
        else:
            pu = parent[u]
            n_old = len(parent)
            # old nodes under u are reached from the split point through u
            lu = depth2[u] - t
            sub = np.abs(self.dist2[pu, :n_old] - self.dist2[u, :n_old] - (depth2[u] - depth2[pu])) <= 1e-9
            anchor = self._add_node(pu, t, pu, t - depth2[pu])
            self.dist2[anchor, :n_old][sub] = self.dist2[u, :n_old][sub] + lu
            self.dist2[:n_old, anchor] = self.dist2[anchor, :n_old]
            parent[u] = anchor
            self.below[anchor] = self.below[u]
            changed.append(anchor)
        target = 2 * dw[x]
        if target == t:
            node = anchor
        else:
            node = self._add_node(anchor, target, anchor, target - t)
            self.below[node] = x
            changed.append(node)
        self.pi[x] = node
        full = False
        if node not in self.owner:
            self.owner[node] = x
            self.eta[node] = x
            if node not in changed:
                # an old branch node took a new image; it may be the median
                # of old triples, so everything is re-checked
                full = True
        for v in changed:
            if self.eta[v] is None:
                self.eta[v] = _branch_eta(self.cms.space, self.w, self.below[v],
                                          depth2[v], self.paths)
        self.points.append(x)

        self.recon = max(self.recon, dx[self.eta[node]])
        dn = self.dist2[node]
        for b in self.points[:-1]:
            gap = abs(dn[self.pi[b]] / 2 - dx[b])
            if gap > self.distortion:
                self.distortion = gap
        if full:
            self.median_defect, self.witness = 0, None
            self._recheck(list(range(len(self.parent))))
        elif changed:
            self._recheck(changed)

    def _recheck(self, changed: list) -> None:
        q = len(self.parent)
        D = self.dist2[:q, :q]
        eta = np.asarray(self.eta)
        s = D[changed][:, None, None, :] + (D[:, None, :] + D[None, :, :])
        lhs = eta.take(s.argmin(axis=3))
        n = self.cms.space.n
        pair = eta[:, None] * n + eta
        lhs *= n
        lhs += self.cms.mu.reshape(n * n, n)[pair][:, :, eta[changed]].transpose(2, 0, 1)
        gaps = self.cms.space.dist.reshape(-1).take(lhs)
        j = int(gaps.argmax())
        g = gaps.reshape(-1)[j]
        if g > self.median_defect:
            self.median_defect = g
            self.witness = (changed[j // (q * q)], (j // q) % q, j % q)

    def report(self) -> C2Report:
        h = float(max(self.median_defect, self.recon))
        return C2Report(len(self.points), h, float(self.median_defect), float(self.recon),
                        float(self.distortion), self.witness)


@dataclass
class C2Sweep:
    checked: int
    h_by_p: dict                  # p -> largest h over subsets of size exactly p
    worst: C2Report | None
    worst_subset: tuple | None


def sweep_c2(cms: CoarseMedianStructure, max_p: int, record: bool = True) -> C2Sweep:
    """Run the C2 measurement on every subset of size 1..max_p.

    Gives the same per-subset numbers as ``verify_c2`` while sharing the
    approximation tree between subsets with a common prefix.
    """
    n = cms.space.n
    max_p = min(max_p, n)
    h_by_p = {p: 0.0 for p in range(1, max_p + 1)}
    state = {"checked": 0, "worst": None, "subset": None}
    cap = max(1, 2 * max_p)

    def visit(tree: _Sweep):
        rep = tree.report()
        state["checked"] += 1
        if rep.h > h_by_p[rep.p]:
            h_by_p[rep.p] = rep.h
        if state["worst"] is None or rep.h > state["worst"].h:
            state["worst"], state["subset"] = rep, tuple(tree.points)
        if rep.p == max_p:
            return
        last = tree.points[-1]
        for x in range(last + 1, n):
            nxt = tree.copy()
            nxt.insert(x)
            visit(nxt)

    for w in range(n):
        visit(_Sweep(cms, w, cap, {}))
    if record:
        for p in sorted(h_by_p):
            cms.record_h(p, h_by_p[p])
        worst = state["worst"]
        if worst is not None and worst.witness is not None:
            cms.witnesses.append({"check": "C2", "subset": list(state["subset"]),
                                  "tree_triple": list(worst.witness)})
    return C2Sweep(state["checked"], h_by_p, state["worst"], state["subset"])
