"""Random walks on graphs and groups: discretization, recurrence, drift, translation length.

Trials are simulated side by side, but every trial draws its uniforms from
its own stream (seed + trial), so results do not depend on how trials are
batched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import linalg, stats
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import InvalidInput
from .induction import FiniteGroup, build_transversal
from .metric import Graph
from .rng import trial_rng


@dataclass(frozen=True)
class WalkConfig:
    graph: Graph | None
    p0: int = 0
    steps: int = 1000
    trials: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.steps < 1 or self.trials < 1:
            raise InvalidInput("steps and trials must be positive")
        if self.graph is not None:
            if not 0 <= self.p0 < self.graph.n:
                raise InvalidInput(f"basepoint {self.p0} is not a vertex")
            if not self.graph.is_connected():
                raise InvalidInput("walk graph must be connected")
            if self.graph.n > 1 and min(len(nb) for nb in self.graph.neighbors) == 0:
                raise InvalidInput("graph has an isolated vertex")


def _uniforms(seed: int, trials: Sequence[int], steps: int) -> np.ndarray:
    return np.stack([trial_rng(seed, t).random(steps) for t in trials])


def _neighbor_table(g: Graph):
    deg = np.array([len(nb) for nb in g.neighbors], dtype=np.int64)
    table = np.zeros((g.n, max(1, int(deg.max(initial=1)))), dtype=np.int64)
    for v, nb in enumerate(g.neighbors):
        table[v, :len(nb)] = nb
    return table, deg


def _walk(table, deg, p0: int, u: np.ndarray) -> np.ndarray:
    """Walks driven by uniforms ``u`` of shape (trials, steps)."""
    out = np.empty((len(u), u.shape[1] + 1), dtype=np.int64)
    out[:, 0] = p0
    cur = out[:, 0].copy()
    for t in range(u.shape[1]):
        cur = table[cur, (u[:, t] * deg[cur]).astype(np.int64)]
        out[:, t + 1] = cur
    return out


def simple_walks(cfg: WalkConfig, trials: Sequence[int] | None = None) -> np.ndarray:
    """Vertex sequences of shape (trials, steps + 1), each transition uniform over neighbours."""
    g = cfg.graph
    trials = range(cfg.trials) if trials is None else trials
    u = _uniforms(cfg.seed, trials, cfg.steps)
    if g.n == 1:
        return np.full((len(u), cfg.steps + 1), cfg.p0, dtype=np.int64)
    table, deg = _neighbor_table(g)
    return _walk(table, deg, cfg.p0, u)


def simple_walk(cfg: WalkConfig, trial: int = 0) -> np.ndarray:
    return simple_walks(cfg, [trial])[0]


@dataclass(frozen=True, eq=False)
class GroupGraphAction:
    """A finite group G acting on a graph by automorphisms, with a subgroup Gamma.

    ``act[g]`` is the vertex permutation of g.
    """

    graph: Graph
    group: FiniteGroup
    act: np.ndarray
    lattice: tuple

    def __post_init__(self):
        act = np.asarray(self.act, dtype=np.int64)
        n = self.graph.n
        if act.shape != (self.group.order, n):
            raise InvalidInput("need one vertex permutation per group element")
        adj = self.graph.adjacency()
        for g, p in enumerate(act):
            if sorted(p.tolist()) != list(range(n)):
                raise InvalidInput(f"element {g} does not permute the vertices")
            if not np.array_equal(adj[np.ix_(p, p)], adj):
                raise InvalidInput(f"element {g} is not a graph automorphism")
        mul = self.group.mul
        # (gh).v = g.(h.v)
        lhs = act[mul]                                  # (g, h, v) -> (gh).v
        rhs = act[np.arange(len(act))[:, None, None], act[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise InvalidInput("vertex permutations do not form an action")
        act.setflags(write=False)
        object.__setattr__(self, "act", act)
        object.__setattr__(self, "lattice", tuple(sorted(int(x) for x in self.lattice)))

    def orbit_map(self, p0: int) -> dict:
        """vertex of Gamma.p0 -> the unique gamma sending p0 there."""
        where = {}
        for gam in self.lattice:
            v = int(self.act[gam, p0])
            if v in where:
                raise InvalidInput(f"Gamma does not act freely on the orbit of {p0}")
            where[v] = gam
        return where


def cayley_graph(G: FiniteGroup, gens: Sequence[int]) -> Graph:
    """Edges g -- gs for each generator s; left multiplication acts by automorphisms."""
    edges = {(min(g, int(G.mul[g, s])), max(g, int(G.mul[g, s])))
             for g in range(G.order) for s in gens if int(G.mul[g, s]) != g}
    return Graph(G.order, tuple(sorted(edges)), G.labels)


def left_multiplication(G: FiniteGroup, lattice=None, gens=None) -> GroupGraphAction:
    gens = list(gens) if gens is not None else list(range(1, G.order))
    lattice = range(G.order) if lattice is None else lattice
    return GroupGraphAction(cayley_graph(G, gens), G, G.mul, tuple(lattice))


@dataclass
class DiscretizedWalk:
    times: list               # N_1 < N_2 < ...
    lattice_steps: list       # gamma_k with q_{N_k} = gamma_k . p0
    shift: int                # h, drawn from the transversal
    incomplete: bool          # the step budget ran out before any return

    def increments(self, G: FiniteGroup) -> list:
        g = self.lattice_steps
        return [int(G.mul[G.inv[g[k]], g[k + 1]]) for k in range(len(g) - 1)]


def discretized_walk(action: GroupGraphAction, p0: int, cfg: WalkConfig, trial: int = 0,
                     strict: bool = False) -> DiscretizedWalk:
    """Record the returns of q_t = h^-1 . p_t to the orbit Gamma.p0.

    With ``strict`` only returns to p0 itself count.
    """
    where = action.orbit_map(p0)
    G = action.group
    U = build_transversal(G, action.lattice).U
    rng = trial_rng(cfg.seed, trial)
    h = U[int(rng.integers(len(U)))]
    if action.graph.n == 1:
        walk = np.full(cfg.steps + 1, p0, dtype=np.int64)
    else:
        table, deg = _neighbor_table(action.graph)
        walk = _walk(table, deg, p0, rng.random((1, cfg.steps)))[0]
    q = action.act[G.inv[h], walk]
    times, gams = [], []
    for t in range(1, len(q)):
        v = int(q[t])
        if (v == p0) if strict else (v in where):
            times.append(t)
            gams.append(where[v])
    return DiscretizedWalk(times, gams, int(h), not times)


@dataclass
class HomogeneityTest:
    statistic: float
    pvalue: float
    dof: int
    passed: bool


def increment_homogeneity(action: GroupGraphAction, p0: int, cfg: WalkConfig,
                          positions: int = 3, alpha: float = 0.01) -> HomogeneityTest:
    """Chi-square test that gamma_k^-1 gamma_{k+1} has the same law for k = 1..positions."""
    G = action.group
    rows = []
    for k in range(positions):
        rows.append(np.zeros(G.order, dtype=np.int64))
    for t in range(cfg.trials):
        dw = discretized_walk(action, p0, cfg, t)
        inc = dw.increments(G)
        for k in range(min(positions, len(inc))):
            rows[k][inc[k]] += 1
    table = np.array(rows)
    table = table[:, table.sum(axis=0) > 0]
    if table.shape[1] < 2:
        return HomogeneityTest(0.0, 1.0, 0, True)
    chi2, p, dof, _ = stats.chi2_contingency(table)
    return HomogeneityTest(float(chi2), float(p), int(dof), bool(p >= alpha))


# ---- recurrence on the quotient

def orbit_classes(n: int, perms: Sequence[Sequence[int]]) -> np.ndarray:
    """Class label per vertex for the group generated by ``perms``."""
    rows = [np.arange(n)]
    cols = [np.arange(n)]
    for p in perms:
        rows.append(np.arange(n))
        cols.append(np.asarray(p, dtype=np.int64))
    r, c = np.concatenate(rows), np.concatenate(cols)
    m = csr_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n, n))
    _, labels = connected_components(m, directed=False)
    return labels


def quotient_chain(graph: Graph, perms: Sequence[Sequence[int]]):
    """Transition matrix of the simple walk projected to Gamma-orbits, and the class map."""
    cls = orbit_classes(graph.n, perms)
    k = int(cls.max()) + 1
    P = np.zeros((k, k))
    rep = [int(np.flatnonzero(cls == c)[0]) for c in range(k)]
    for c, v in enumerate(rep):
        nb = graph.neighbors[v]
        for w in nb:
            P[c, cls[w]] += 1.0 / len(nb)
    return P, cls


def stationary(P: np.ndarray) -> np.ndarray:
    """Solve pi P = pi, sum(pi) = 1 directly."""
    k = len(P)
    A = np.vstack([P.T - np.eye(k), np.ones((1, k))])
    b = np.zeros(k + 1)
    b[-1] = 1.0
    pi, *_ = linalg.lstsq(A, b)
    if np.abs(A @ pi - b).max() > 1e-10:
        raise InvalidInput("quotient chain has no unique stationary law")
    return pi


def chain_period(P: np.ndarray) -> int:
    """gcd of cycle lengths through BFS levels; the chain must be irreducible."""
    k = len(P)
    level = np.full(k, -1)
    level[0] = 0
    order = [0]
    for v in order:
        for w in np.flatnonzero(P[v] > 0):
            if level[w] < 0:
                level[w] = level[v] + 1
                order.append(int(w))
    if (level < 0).any():
        raise InvalidInput("quotient chain is not irreducible")
    g = 0
    for v in range(k):
        for w in np.flatnonzero(P[v] > 0):
            g = math.gcd(g, int(level[v] + 1 - level[w]))
    return g


@dataclass
class KacReport:
    classes: int
    period: int
    stationary_mass: float
    predicted: float
    empirical: float
    returns: int
    relative_error: float

    def as_dict(self) -> dict:
        return {"classes": self.classes, "period": self.period,
                "stationary_mass": self.stationary_mass, "predicted": self.predicted,
                "empirical": self.empirical, "returns": self.returns,
                "relative_error": self.relative_error}


def kac_check(graph: Graph, perms: Sequence[Sequence[int]], p0: int, cfg: WalkConfig) -> KacReport:
    """Mean return time of the walk to the class of p0 against 1 / stationary mass.

    The empirical mean pools all completed excursions over the trials.
    """
    P, cls = quotient_chain(graph, perms if len(perms) else [list(range(graph.n))])
    period = chain_period(P)
    pi = stationary(P)
    mass = float(pi[cls[p0]])
    walks = simple_walks(WalkConfig(graph, p0, cfg.steps, cfg.trials, cfg.seed))
    hit = cls[walks[:, 1:]] == cls[p0]
    total, count = 0, 0
    for row in hit:
        idx = np.flatnonzero(row)
        if len(idx):
            total += int(idx[-1]) + 1          # completed excursions end at the last return
            count += len(idx)
    empirical = total / count if count else float("inf")
    predicted = 1.0 / mass
    return KacReport(len(P), period, mass, predicted, empirical, count,
                     abs(empirical - predicted) / predicted)


# ---- drift

class FreeGroupWalk:
    """Uniform generator walk on F_r tracked as reduced words; d = word length."""

    def __init__(self, rank: int = 2):
        if rank < 1:
            raise InvalidInput("rank must be positive")
        self.rank = rank

    def distances(self, cfg: WalkConfig, trials: Sequence[int]) -> np.ndarray:
        r2 = 2 * self.rank
        T = len(trials)
        letters = np.stack([trial_rng(cfg.seed, t).integers(0, r2, cfg.steps) for t in trials])
        word = np.full((T, cfg.steps + 1), -1, dtype=np.int16)     # letter s has inverse s ^ 1
        length = np.zeros(T, dtype=np.int64)
        out = np.zeros((T, cfg.steps + 1), dtype=np.int64)
        rows = np.arange(T)
        for t in range(cfg.steps):
            s = letters[:, t]
            top = np.where(length > 0, word[rows, np.maximum(length - 1, 0)], -1)
            cancel = (length > 0) & (top == (s ^ 1))
            push = ~cancel
            word[rows[push], length[push]] = s[push]
            length = length + np.where(cancel, -1, 1)
            out[:, t + 1] = length
        return out


class IntegerWalk:
    """Symmetric +-1 walk on Z acting on Z by translation; d = |S_n|."""

    def distances(self, cfg: WalkConfig, trials: Sequence[int]) -> np.ndarray:
        out = np.zeros((len(trials), cfg.steps + 1), dtype=np.int64)
        for i, t in enumerate(trials):
            s = trial_rng(cfg.seed, t).integers(0, 2, cfg.steps) * 2 - 1
            out[i, 1:] = np.abs(np.cumsum(s))
        return out


class GraphWalk:
    """Simple random walk on a graph; d = graph distance back to the start."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.dist = graph.distances

    def distances(self, cfg: WalkConfig, trials: Sequence[int]) -> np.ndarray:
        cfg = WalkConfig(self.graph, cfg.p0, cfg.steps, cfg.trials, cfg.seed)
        return self.dist[cfg.p0, simple_walks(cfg, trials)].astype(np.int64)


class FiniteGroupWalk:
    """Uniform generator walk on a finite group acting on a finite metric space."""

    def __init__(self, group: FiniteGroup, gens: Sequence[int], act: np.ndarray,
                 dist: np.ndarray, x0: int = 0):
        self.group = group
        self.gens = np.asarray(sorted(set(gens) | {int(group.inv[s]) for s in gens}))
        self.act = np.asarray(act)
        self.dist = np.asarray(dist)
        self.x0 = x0

    def distances(self, cfg: WalkConfig, trials: Sequence[int]) -> np.ndarray:
        u = _uniforms(cfg.seed, trials, cfg.steps)
        pick = self.gens[(u * len(self.gens)).astype(np.int64)]
        cur = np.zeros(len(trials), dtype=np.int64)
        out = np.zeros((len(trials), cfg.steps + 1), dtype=np.int64)
        out[:, 0] = self.dist[self.act[0, self.x0], self.x0]
        for t in range(cfg.steps):
            cur = self.group.mul[cur, pick[:, t]]
            out[:, t + 1] = self.dist[self.act[cur, self.x0], self.x0]
        return out


@dataclass
class DriftEstimate:
    mean_distance: np.ndarray         # E_n for n = 0..steps
    slope: float
    ci_halfwidth: float
    trials: int

    def csv_rows(self, every: int = 1):
        """Rows ``n, E_n, E_n / n, half-width`` with the running tail estimate."""
        rows = []
        for n in range(1, len(self.mean_distance), every):
            rows.append((n, float(self.mean_distance[n]), float(self.mean_distance[n] / n),
                         self.ci_halfwidth))
        return rows


def estimate_drift(source, cfg: WalkConfig, chunk: int = 250) -> DriftEstimate:
    """E_n over trials and the slope as the mean of E_n / n over the last half of the steps.

    The half-width is 1.96 times the standard error of the per-trial slopes.
    """
    n = cfg.steps
    lo = max(1, math.ceil(n / 2))
    ns = np.arange(lo, n + 1)
    total = np.zeros(n + 1)
    per_trial = []
    for start in range(0, cfg.trials, chunk):
        trials = list(range(start, min(cfg.trials, start + chunk)))
        d = source.distances(cfg, trials)
        total += d.sum(axis=0)
        per_trial.append((d[:, lo:] / ns).mean(axis=1))
    per_trial = np.concatenate(per_trial)
    mean = total / cfg.trials
    slope = float(per_trial.mean())
    se = float(per_trial.std(ddof=1) / math.sqrt(cfg.trials)) if cfg.trials > 1 else float("inf")
    return DriftEstimate(mean, slope, 1.96 * se, cfg.trials)


def free_group_exact_means(steps: int, rank: int = 2) -> np.ndarray:
    """Exact E|w_n| for the free-group walk: |w| is a birth-death chain.

    From 0 it always steps up; elsewhere it steps up with probability (2r - 1) / 2r.
    """
    up = (2 * rank - 1) / (2 * rank)
    p = np.zeros(steps + 2)
    p[0] = 1.0
    out = np.zeros(steps + 1)
    ks = np.arange(steps + 2)
    for t in range(steps):
        q = np.zeros_like(p)
        q[1] += p[0]
        q[2:] += up * p[1:-1]
        q[:-1] += (1 - up) * p[1:]
        p = q
        out[t + 1] = float((ks * p).sum())
    return out


def exact_slope(means: np.ndarray) -> float:
    """Mean of E_n / n over the last half, matching estimate_drift."""
    n = len(means) - 1
    lo = max(1, math.ceil(n / 2))
    ns = np.arange(lo, n + 1)
    return float((means[lo:] / ns).mean())


def integer_walk_abs_mean(n: int) -> float:
    """E|S_n| for the symmetric +-1 walk: sum over k of |2k - n| C(n, k) / 2^n."""
    k = np.arange(n + 1)
    return float((np.abs(2 * k - n) * stats.binom.pmf(k, n, 0.5)).sum())


# ---- translation length

@dataclass
class TranslationEstimate:
    estimate: float
    loxodromic: bool
    window: tuple
    period: int | None            # orbit period when the orbit is seen to close up

    def as_dict(self) -> dict:
        return {"estimate": self.estimate, "loxodromic": self.loxodromic,
                "window": list(self.window), "period": self.period}


def translation_length(step: Callable, x0, n_max: int, dist: Callable,
                       threshold: float = 1e-3) -> TranslationEstimate:
    """min over n in [ceil(n_max / 2), n_max] of d(g^n x, x) / n.

    If the orbit returns to x0 it is periodic, so the lim inf is exactly 0.
    """
    if n_max < 1:
        raise InvalidInput("n_max must be positive")
    lo = max(1, math.ceil(n_max / 2))
    best = math.inf
    x = x0
    for n in range(1, n_max + 1):
        x = step(x)
        if x == x0:
            return TranslationEstimate(0.0, False, (lo, n_max), n)
        if n >= lo:
            best = min(best, dist(x, x0) / n)
    return TranslationEstimate(float(best), bool(best > threshold), (lo, n_max), None)


def permutation_translation(perm: Sequence[int], dmat: np.ndarray, x0: int,
                            n_max: int | None = None, threshold: float = 1e-3) -> TranslationEstimate:
    """Translation length of a permutation of a finite space; the orbit always closes."""
    perm = np.asarray(perm)
    n_max = len(perm) if n_max is None else n_max
    return translation_length(lambda x: int(perm[x]), x0, max(n_max, len(perm)),
                              lambda a, b: float(dmat[a, b]), threshold)


def line_shift(N: int):
    """Unit shift on the path over {-N..N}; stepping off the end is an error."""
    def step(x):
        if x + 1 > N:
            raise InvalidInput("shift left the capped line")
        return x + 1
    return step, (lambda a, b: abs(a - b))


def free_group_generator(depth_cap: int, letter: int = 0):
    """Left multiplication by a generator on the depth-capped Cayley tree of F_2.

    Vertices are reduced words as tuples of letters 0..3 with s ^ 1 the inverse.
    """
    def step(w):
        if w and w[0] == letter ^ 1:
            return w[1:]
        if len(w) + 1 > depth_cap:
            raise InvalidInput("walk left the depth cap")
        return (letter,) + w

    def dist(a, b):
        k = 0
        while k < min(len(a), len(b)) and a[k] == b[k]:
            k += 1
        return len(a) + len(b) - 2 * k
    return step, dist


# ---- quasi-actions

@dataclass
class QuasiActionReport:
    K: float
    C: float
    axiom_defects: dict           # axiom -> minimal additive constant at K
    witnesses: dict
    growth: bool
    samples: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"K": self.K, "C": self.C, "axiom_defects": self.axiom_defects,
                "witnesses": self.witnesses, "unbounded_growth": self.growth,
                "samples": self.samples}


def quasi_action_check(maps: np.ndarray, dist: np.ndarray, word_dist: np.ndarray,
                       mul: np.ndarray, triples=None, pairs=None) -> QuasiActionReport:
    """Measure (K, C) for a candidate quasi-action on sample data.

    ``maps[g, x]`` is g.x, ``dist`` the metric on points, ``word_dist`` the
    word metric on the sampled group elements and ``mul[g, h]`` the index of
    gh.  K is the largest multiplicative distortion seen (at least 1); each
    axiom then gets the least additive constant that works with that K.
    Growth is flagged when the constant needed on the larger half of the
    samples (by extent) exceeds twice that of the smaller half.
    """
    maps = np.asarray(maps)
    dist = np.asarray(dist, dtype=float)
    word_dist = np.asarray(word_dist, dtype=float)
    mul = np.asarray(mul)
    m, n = maps.shape
    if m == 0 or n == 0:
        raise InvalidInput("empty sample set")
    if pairs is None:
        pairs = np.array([(x, y) for x in range(n) for y in range(x + 1, n)], dtype=np.int64).reshape(-1, 2)
    if triples is None:
        triples = np.array([(g, h, x) for g in range(m) for h in range(m) for x in range(n)],
                           dtype=np.int64)
    pairs = np.asarray(pairs).reshape(-1, 2)
    triples = np.asarray(triples).reshape(-1, 3)
    if len(pairs) == 0 and len(triples) == 0:
        raise InvalidInput("empty sample set")

    # axiom 1: x -> g.x is a quasi-isometry
    x, y = pairs[:, 0], pairs[:, 1]
    d0 = dist[x, y][None, :].repeat(m, axis=0)
    d1 = dist[maps[:, x], maps[:, y]]
    # axiom 2: g -> g.x is coarsely Lipschitz
    gi, hi = np.triu_indices(m, 1)
    dg = word_dist[gi, hi][:, None].repeat(n, axis=1)
    dx = dist[maps[gi], maps[hi]]
    # axiom 3: g.(h.x) stays near (gh).x
    g, h, z = triples[:, 0], triples[:, 1], triples[:, 2]
    d3 = dist[maps[g, maps[h, z]], maps[mul[g, h], z]]

    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.concatenate([
            np.where((d0 > 0) & (d1 > 0), d1 / np.where(d0 > 0, d0, 1), 0).ravel(),
            np.where((d0 > 0) & (d1 > 0), d0 / np.where(d1 > 0, d1, 1), 0).ravel(),
            np.where(dg > 0, dx / np.where(dg > 0, dg, 1), 0).ravel()])
    K = float(max(1.0, r.max(initial=1.0)))

    def c1(d0, d1):
        if d0.size == 0:
            return 0.0, None
        gap = np.maximum(d1 - K * d0, d0 / K - d1)
        j = int(gap.argmax())
        return float(max(0.0, gap.ravel()[j])), np.unravel_index(j, gap.shape)

    def c2(dg, dx):
        if dx.size == 0:
            return 0.0, None
        gap = dx - K * dg
        j = int(gap.argmax())
        return float(max(0.0, gap.ravel()[j])), np.unravel_index(j, gap.shape)

    C1, w1 = c1(d0, d1)
    C2, w2 = c2(dg, dx)
    j = int(d3.argmax()) if d3.size else 0
    C3 = float(d3[j]) if d3.size else 0.0
    wits = {
        "axiom1": None if not C1 else {"g": int(w1[0]), "x": int(x[w1[1]]), "y": int(y[w1[1]])},
        "axiom2": None if not C2 else {"g": int(gi[w2[0]]), "h": int(hi[w2[0]]), "x": int(w2[1])},
        "axiom3": None if not C3 else {"g": int(g[j]), "h": int(h[j]), "x": int(z[j])},
    }
    defects = {"axiom1": C1, "axiom2": C2, "axiom3": C3}

    # growth: compare the constant on small-extent samples with all samples
    ext1 = d0
    ext3 = dist[z, maps[h, z]] + dist[maps[h, z], maps[g, maps[h, z]]] if d3.size else np.zeros(0)
    growth = False
    for ext, dd in ((ext1, np.maximum(d1 - K * d0, d0 / K - d1) if d0.size else np.zeros(0)),
                    (ext3, d3)):
        if dd.size < 4:
            continue
        cut = np.median(ext)
        small = dd[ext <= cut]
        large = dd[ext > cut]
        if large.size and small.size:
            cs, cl = max(0.0, float(small.max())), max(0.0, float(large.max()))
            if cl > 2 * cs + 1e-9 and cl > 0:
                growth = True
    return QuasiActionReport(K, max(defects.values()), defects, wits, growth,
                             {"pairs": int(len(pairs)), "triples": int(len(triples)), "elements": m})
