"""Defining-graph combinatorics for right-angled Artin groups.

Stars, links, the maximal admissible order v < w iff lk(v) is inside st(w),
and d_SL: the largest clique of vertices that are pairwise equivalent
(or, in the plain version, share one star).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, InvalidInput
from .metric import Graph


def star_link(X: Graph, v) -> tuple[frozenset, frozenset]:
    v = _vertex(X, v)
    lk = frozenset(X.neighbors[v])
    return lk | {v}, lk


def _vertex(X: Graph, v) -> int:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool) and 0 <= v < X.n:
        return int(v)
    if X.labels and str(v) in X.labels:
        return X.labels.index(str(v))
    raise InvalidInput(f"unknown vertex {v!r}")


def _masks(X: Graph):
    lk = [0] * X.n
    for i, j in X.edges:
        lk[i] |= 1 << j
        lk[j] |= 1 << i
    st = [lk[v] | (1 << v) for v in range(X.n)]
    return lk, st


@dataclass
class PrecOrder:
    relation: np.ndarray          # relation[v, w] is v < w
    classes: list                 # equivalence classes, each sorted, ordered by first member

    def equivalent(self, v: int, w: int) -> bool:
        return bool(self.relation[v, w] and self.relation[w, v])


def prec_max(X: Graph) -> PrecOrder:
    lk, st = _masks(X)
    n = X.n
    rel = np.zeros((n, n), dtype=bool)
    for v in range(n):
        for w in range(n):
            rel[v, w] = lk[v] & ~st[w] == 0
    bad = check_admissible(X, rel)
    if bad is not None:                                   # cannot happen; guards regressions
        raise AssertionError(f"maximal order is not admissible at {bad}")
    return PrecOrder(rel, _classes(rel))


def _classes(rel: np.ndarray) -> list:
    n = len(rel)
    eq = rel & rel.T
    seen = [False] * n
    out = []
    for v in range(n):
        if seen[v]:
            continue
        cls = [w for w in range(n) if w == v or (eq[v, w] and not seen[w])]
        for w in cls:
            seen[w] = True
        out.append(cls)
    return out


def check_admissible(X: Graph, rel: np.ndarray):
    """First pair (v, w) with v < w but lk(v) not inside st(w), or None."""
    rel = np.asarray(rel, dtype=bool)
    if rel.shape != (X.n, X.n):
        raise InvalidInput("relation must be a square matrix over the vertices")
    lk, st = _masks(X)
    for v, w in zip(*np.nonzero(rel)):
        if lk[v] & ~st[w]:
            return int(v), int(w)
    return None


def order_from_pairs(X: Graph, pairs: Sequence[Sequence]) -> PrecOrder:
    """User-supplied order given as (v, w) pairs meaning v < w; rejected if not admissible."""
    rel = np.eye(X.n, dtype=bool)
    for v, w in pairs:
        rel[_vertex(X, v), _vertex(X, w)] = True
    bad = check_admissible(X, rel)
    if bad is not None:
        raise InvalidInput(f"order is not admissible: {X.label(bad[0])} < {X.label(bad[1])} "
                           "but its link is not inside the other star")
    return PrecOrder(rel, _classes(rel))


def restrict(order: PrecOrder, keep: Sequence[int]) -> PrecOrder:
    keep = sorted(keep)
    rel = order.relation[np.ix_(keep, keep)]
    return PrecOrder(rel, _classes(rel))


def max_clique(adj: list[int], budget: int = 10 ** 6) -> list[int]:
    """Maximum clique of a graph given by neighbour bitmasks.

    Branch and bound with a greedy colouring bound.  The search order is a
    fixed function of the input, so the returned clique is deterministic.
    """
    n = len(adj)
    best: list[int] = []
    nodes = 0

    def colour_bound(cand: int):
        # greedy colouring of the candidate set; returns vertices with their colour numbers
        order, bounds = [], []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(1 << v) & ~adj[v]
                rest &= ~(1 << v)
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(clique: list[int], cand: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("clique search budget exhausted", list(best))
        order, bounds = colour_bound(cand)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[i] <= len(best):
                return
            v = order[i]
            clique.append(v)
            nxt = cand & adj[v]
            if nxt:
                expand(clique, nxt)
            elif len(clique) > len(best):
                best = list(clique)
            clique.pop()
            cand &= ~(1 << v)

    if n:
        expand([], (1 << n) - 1)
    return sorted(best)


@dataclass
class DSLResult:
    dsl: int
    witness_clique: list
    mode: str

    def as_dict(self, X: Graph, name: str = "graph") -> dict:
        return {"graph": name, "mode": self.mode, "dsl": self.dsl,
                "witness_clique": [X.label(v) for v in self.witness_clique]}


def compute_dsl(X: Graph, mode: str = "same-star", order: PrecOrder | None = None,
                budget: int = 10 ** 6) -> DSLResult:
    """Largest clique of X whose vertices pairwise share a star ("same-star")
    or are pairwise equivalent for ``order`` ("prec", default the maximal order)."""
    lk, st = _masks(X)
    n = X.n
    if mode == "same-star":
        ok = lambda v, w: st[v] == st[w]
    elif mode == "prec":
        order = prec_max(X) if order is None else order
        if order.relation.shape != (n, n):
            raise InvalidInput("order does not match the graph")
        bad = check_admissible(X, order.relation)
        if bad is not None:
            raise InvalidInput(f"order is not admissible at {bad}")
        ok = order.equivalent
    else:
        raise InvalidInput(f"unknown mode {mode!r}")
    adj = [0] * n
    for i, j in X.edges:
        if ok(i, j):
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    clique = max_clique(adj, budget)
    return DSLResult(len(clique), clique, mode)


def random_graph(n: int, p: float, rng) -> Graph:
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return Graph(n, tuple(zip(iu[keep].tolist(), ju[keep].tolist())))
