"""Induced median spaces for a finite group and a subgroup.

Given G, a subgroup Gamma acting on a finite space X, and a transversal U
of the left cosets gGamma, the induced space Y is the set of functions
U -> X with the averaged metric and the pointwise median.  G acts on Y
through the cocycle chi(g) = P(g)^-1 g, where P(g) is the representative
of gGamma.  Everything here is finite, so every identity is checked exactly.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .coarse import _c1_scan, min_sum_table
from .errors import BudgetExceeded, InvalidInput
from .median_core import Verdict
from .metric import FiniteMetricSpace, estimate_delta
from .rng import make_rng

TOL = 1e-9


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group given by a multiplication table; element 0 is the identity."""

    mul: np.ndarray
    labels: tuple | None = None
    name: str = "G"

    def __post_init__(self):
        m = np.array(self.mul, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise InvalidInput("multiplication table must be a nonempty square array")
        n = m.shape[0]
        if m.min() < 0 or m.max() >= n:
            raise InvalidInput("multiplication table entry out of range")
        if not (np.array_equal(m[0], np.arange(n)) and np.array_equal(m[:, 0], np.arange(n))):
            raise InvalidInput("element 0 must be the identity")
        for row in m:
            if len(set(row.tolist())) != n:
                raise InvalidInput("multiplication table is not a Latin square")
        # (xy)z = x(yz) for all triples
        lhs = m[m[:, :, None], np.arange(n)[None, None, :]]
        rhs = m[np.arange(n)[:, None, None], m[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            x, y, z = (int(v) for v in bad[0])
            raise InvalidInput(f"not associative at ({x}, {y}, {z})")
        m.setflags(write=False)
        object.__setattr__(self, "mul", m)
        if self.labels is not None:
            if len(self.labels) != n:
                raise InvalidInput("label count does not match group order")
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))

    @property
    def order(self) -> int:
        return len(self.mul)

    @cached_property
    def inv(self) -> np.ndarray:
        inv = np.argmin(self.mul, axis=1)          # the column holding 0
        inv.setflags(write=False)
        return inv

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    def index(self, g) -> int:
        if isinstance(g, (int, np.integer)) and not isinstance(g, bool):
            if 0 <= g < self.order:
                return int(g)
        elif self.labels and str(g) in self.labels:
            return self.labels.index(str(g))
        raise InvalidInput(f"unknown group element {g!r}")

    def power(self, g: int, k: int) -> int:
        x = 0
        for _ in range(k):
            x = int(self.mul[x, g])
        return x

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.mul[x, g])
            k += 1
        return k


def group_from_permutations(gens: Sequence[Sequence[int]], name: str = "G") -> FiniteGroup:
    """Permutation group generated by ``gens``; elements numbered in BFS order."""
    if not gens:
        raise InvalidInput("need at least one generator")
    deg = len(gens[0])
    gens = [tuple(int(x) for x in g) for g in gens]
    for g in gens:
        if len(g) != deg or sorted(g) != list(range(deg)):
            raise InvalidInput(f"not a permutation of 0..{deg - 1}: {g}")
    e = tuple(range(deg))
    elems = [e]
    seen = {e: 0}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = tuple(x[s[i]] for i in range(deg))        # x after s: i -> x(s(i))
            if y not in seen:
                seen[y] = len(elems)
                elems.append(y)
                queue.append(y)
    n = len(elems)
    mul = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            mul[i, j] = seen[tuple(x[y[k]] for k in range(deg))]
    labels = tuple("".join(map(str, p)) if deg <= 10 else ",".join(map(str, p)) for p in elems)
    g = FiniteGroup(mul, labels, name)
    object.__setattr__(g, "permutations", elems)
    return g


def cyclic_group(n: int) -> FiniteGroup:
    i = np.arange(n)
    return FiniteGroup((i[:, None] + i[None, :]) % n, tuple(str(k) for k in range(n)), f"Z{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon; rotations r^k come first as elements 0..n-1."""
    if n < 3:
        raise InvalidInput("dihedral group needs n >= 3")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    g = group_from_permutations([rot, ref], f"D{n}")
    # renumber so that element k is the rotation by k
    perms = g.permutations
    want = [tuple((i + k) % n for i in range(n)) for k in range(n)]
    want += [tuple((k - i) % n for i in range(n)) for k in range(n)]
    pos = {p: i for i, p in enumerate(perms)}
    order = [pos[p] for p in want]
    return _renumber(g, order, want, f"D{n}")


def symmetric_group(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup(np.zeros((1, 1), dtype=np.int64), ("0",), "S1")
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return group_from_permutations(gens, f"S{n}")


def _renumber(g: FiniteGroup, order: Sequence[int], perms, name) -> FiniteGroup:
    order = np.asarray(order)
    inv = np.empty_like(order)
    inv[order] = np.arange(len(order))
    mul = inv[g.mul[np.ix_(order, order)]]
    labels = tuple(g.labels[i] for i in order) if g.labels else None
    h = FiniteGroup(mul, labels, name)
    object.__setattr__(h, "permutations", list(perms))
    return h


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G x H with (a, b) numbered a * |H| + b."""
    a = np.arange(g.order)
    b = np.arange(h.order)
    n = g.order * h.order
    x = np.arange(n)
    ga, hb = x // h.order, x % h.order
    mul = g.mul[ga[:, None], ga[None, :]] * h.order + h.mul[hb[:, None], hb[None, :]]
    labels = tuple(f"({g.label(i)},{h.label(j)})" for i in a for j in b)
    return FiniteGroup(mul, labels, f"{g.name}x{h.name}")


def is_subgroup(G: FiniteGroup, elems: Iterable[int]):
    """``(True, None)`` or ``(False, reason)`` for a candidate subgroup."""
    s = sorted({int(x) for x in elems})
    if not s or s[0] != 0:
        return False, "does not contain the identity"
    if s[-1] >= G.order:
        return False, f"unknown element {s[-1]}"
    sset = set(s)
    inv = G.inv
    for x in s:
        if int(inv[x]) not in sset:
            return False, f"inverse of {x} missing"
        for y in s:
            if int(G.mul[x, y]) not in sset:
                return False, f"product {x}*{y} missing"
    return True, None


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> tuple:
    seen = {0}
    queue = deque([0])
    gens = [G.index(s) for s in gens]
    while queue:
        x = queue.popleft()
        for s in gens:
            y = int(G.mul[x, s])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return tuple(sorted(seen))


def word_lengths(G: FiniteGroup, gens: Iterable[int], within: Iterable[int] | None = None) -> np.ndarray:
    """|g| in the word metric of the symmetrized generators, by BFS on the Cayley graph.

    Elements that cannot be reached get -1.  With ``within`` given, the
    generators must generate exactly that subgroup.
    """
    inv = G.inv
    gens = sorted({G.index(s) for s in gens} | {int(inv[G.index(s)]) for s in gens})
    dist = np.full(G.order, -1, dtype=np.int64)
    dist[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = int(G.mul[x, s])
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    if within is not None:
        want = set(int(x) for x in within)
        got = set(np.flatnonzero(dist >= 0).tolist())
        if got != want:
            raise InvalidInput("generators do not generate the intended subgroup")
    return dist


def word_metric(G: FiniteGroup, gens: Iterable[int]) -> np.ndarray:
    """d(g, h) = |g^-1 h| for all pairs."""
    lengths = word_lengths(G, gens)
    if (lengths < 0).any():
        raise InvalidInput("generators do not generate the group")
    return lengths[G.mul[G.inv[:, None], np.arange(G.order)[None, :]]]


@dataclass(frozen=True)
class Transversal:
    U: tuple                  # representatives, U[0] = identity
    P: np.ndarray             # g -> representative of g Gamma
    chi: np.ndarray           # g -> P(g)^-1 g, an element of Gamma
    slot: np.ndarray          # g -> position of P(g) in U

    def as_dict(self, G: FiniteGroup) -> dict:
        return {"U": [G.label(u) for u in self.U]}


def build_transversal(G: FiniteGroup, lattice: Iterable[int]) -> Transversal:
    """Smallest-identifier representative of each left coset g Gamma."""
    gam = sorted({G.index(x) for x in lattice})
    ok, why = is_subgroup(G, gam)
    if not ok:
        raise InvalidInput(f"lattice is not a subgroup: {why}")
    gam = np.asarray(gam)
    P = np.full(G.order, -1, dtype=np.int64)
    U = []
    for g in range(G.order):
        if P[g] < 0:
            coset = G.mul[g, gam]
            P[coset] = g                    # g is the smallest member of its coset
            U.append(g)
    slot = np.empty(G.order, dtype=np.int64)
    pos = {u: i for i, u in enumerate(U)}
    for g in range(G.order):
        slot[g] = pos[int(P[g])]
    chi = G.mul[G.inv[P], np.arange(G.order)]
    for a in (P, chi, slot):
        a.setflags(write=False)
    return Transversal(tuple(U), P, chi, slot)


def check_cocycle_identity(G: FiniteGroup, tr: Transversal, samples: int | None = None,
                           seed: int = 0) -> Verdict:
    """chi(h^-1 P(g^-1 u)) chi(g^-1 u) = chi(h^-1 g^-1 u) and P(h^-1 P(g^-1 u)) = P(h^-1 g^-1 u).

    Exhaustive over g, h in G and u in U unless ``samples`` is given.
    """
    inv, mul, P, chi = G.inv, G.mul, tr.P, tr.chi
    U = np.asarray(tr.U)
    if samples is None:
        g, h, u = (a.reshape(-1) for a in np.meshgrid(np.arange(G.order), np.arange(G.order),
                                                      U, indexing="ij"))
    else:
        rng = make_rng(seed)
        g = rng.integers(0, G.order, samples)
        h = rng.integers(0, G.order, samples)
        u = U[rng.integers(0, len(U), samples)]
    v = mul[inv[g], u]                      # g^-1 u
    hv = mul[inv[h], v]                     # h^-1 g^-1 u
    w = mul[inv[h], P[v]]                   # h^-1 P(g^-1 u)
    lhs = mul[chi[w], chi[v]]
    bad = (lhs != chi[hv]) | (P[w] != P[hv])
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        return Verdict(False, (int(g[i]), int(h[i]), int(u[i])), "cocycle identity fails")
    return Verdict(True, None, f"{len(g)} triples")


@dataclass(frozen=True, eq=False)
class FiniteGroupAction:
    """Gamma <= G acting on a finite metric space X, with the data needed to induce."""

    group: FiniteGroup
    lattice: tuple
    space: FiniteMetricSpace
    act: np.ndarray           # act[gamma] is the permutation of X; rows outside Gamma are -1
    x0: int
    S: tuple                  # generators of Gamma
    B: tuple                  # generators of G
    mu: np.ndarray            # ternary map on X
    name: str = "action"

    @property
    def transversal(self) -> Transversal:
        tr = self.__dict__.get("_tr")
        if tr is None:
            tr = build_transversal(self.group, self.lattice)
            object.__setattr__(self, "_tr", tr)
        return tr


def extend_action(G: FiniteGroup, action: Mapping, n: int, within: Sequence[int]) -> np.ndarray:
    """Fill in the permutations of every element of ``within`` from those given.

    Rows outside the generated subgroup stay -1.  A clash while composing
    means the given permutations do not define a homomorphism.
    """
    within = set(int(x) for x in within)
    act = np.full((G.order, n), -1, dtype=np.int64)
    act[0] = np.arange(n)
    if n == 1:
        act[sorted(within)] = 0             # a point admits only the trivial action
    given = {}
    for k, perm in action.items():
        g = G.index(int(k) if isinstance(k, str) and k.isdigit() else k)
        p = np.asarray(perm, dtype=np.int64)
        if g not in within:
            raise InvalidInput(f"element {g} acts but is not in the acting subgroup")
        if p.shape != (n,) or sorted(p.tolist()) != list(range(n)):
            raise InvalidInput(f"action of {g} is not a permutation of the space")
        given[g] = p
    if 0 in given and not np.array_equal(given[0], np.arange(n)):
        raise InvalidInput("identity must act trivially")
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s, p in given.items():
            y = int(G.mul[x, s])
            img = act[x][p]                    # (x s) . z = x . (s . z)
            if act[y, 0] < 0:
                act[y] = img
                queue.append(y)
            elif not np.array_equal(act[y], img):
                raise InvalidInput(f"action is not a homomorphism at element {y}")
    missing = [g for g in sorted(within) if act[g, 0] < 0]
    if missing:
        raise InvalidInput(f"given elements do not generate the acting subgroup (missing {missing[0]})")
    return act


def make_action(G: FiniteGroup, lattice: Iterable[int], space: FiniteMetricSpace,
                action: Mapping[int, Sequence[int]], x0=0, S: Iterable[int] | None = None,
                B: Iterable[int] | None = None, mu: np.ndarray | None = None,
                name: str = "action") -> FiniteGroupAction:
    """Validate and assemble a FiniteGroupAction.

    ``action`` may list every element of Gamma or only some; the rest are
    filled in by composing, and any clash means the map is not a homomorphism.
    Each element must act by an isometry.
    """
    lat = tuple(sorted({G.index(x) for x in lattice}))
    ok, why = is_subgroup(G, lat)
    if not ok:
        raise InvalidInput(f"lattice is not a subgroup: {why}")
    n = space.n
    act = extend_action(G, action, n, lat)
    # a full check of (gh).x = g.(h.x) on the lattice
    for g in lat:
        for h in lat:
            if not np.array_equal(act[int(G.mul[g, h])], act[g][act[h]]):
                raise InvalidInput(f"action law fails for ({g}, {h})")
    d = space.dist
    for g in lat:
        p = act[g]
        if not np.array_equal(d[np.ix_(p, p)], d):
            raise InvalidInput(f"element {g} does not act by an isometry")
    S = tuple(sorted({G.index(s) for s in (S if S is not None else lat)}))
    B = tuple(sorted({G.index(b) for b in (B if B is not None else range(G.order))}))
    if set(generated_subgroup(G, S)) != set(lat):
        raise InvalidInput("S does not generate the lattice")
    if len(generated_subgroup(G, B)) != G.order:
        raise InvalidInput("B does not generate the group")
    if mu is None:
        mu = min_sum_table(space)
    mu = np.asarray(mu, dtype=np.int64)
    if mu.shape != (n, n, n):
        raise InvalidInput("median table has the wrong shape")
    act.setflags(write=False)
    return FiniteGroupAction(G, lat, space, act, space.index(x0), S, B, mu, name)


@dataclass
class InducedSpace:
    """Functions U -> X stored as rows of point indices, one column per u."""

    funcs: np.ndarray
    npoints: int
    mode: str                 # "exhaustive" or "sampled"
    dist: np.ndarray          # the base metric d_X
    mu_x: np.ndarray
    y0: np.ndarray
    integrability: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.funcs)

    @property
    def width(self) -> int:
        return self.funcs.shape[1]

    def code(self, a) -> int:
        """Position of a function in the full enumeration (base |X| digits)."""
        c = 0
        for x in np.asarray(a).tolist():
            c = c * self.npoints + int(x)
        return c

    def distance(self, a, b) -> float:
        a, b = np.asarray(a), np.asarray(b)
        return float(self.dist[a, b].sum()) / self.width

    def sum_distance(self, a, b) -> np.ndarray:
        """|U| d_Y, exact in integer arithmetic; broadcasts over leading axes."""
        return self.dist[np.asarray(a), np.asarray(b)].sum(axis=-1)

    def median(self, a, b, c) -> np.ndarray:
        return self.mu_x[np.asarray(a), np.asarray(b), np.asarray(c)]


def induce_space(fga: FiniteGroupAction, cap: int = 10 ** 6, lazy: bool = False,
                 samples: int = 10 ** 4, seed: int = 0) -> InducedSpace:
    """All functions U -> X, or a random sample of them when past ``cap`` and ``lazy``."""
    tr = fga.transversal
    G = fga.group
    m = len(tr.U)
    n = fga.space.n
    total = n ** m
    if total <= cap:
        funcs = np.array(list(itertools.product(range(n), repeat=m)), dtype=np.int64).reshape(total, m)
        mode = "exhaustive"
    elif lazy:
        rng = make_rng(seed)
        funcs = rng.integers(0, n, size=(samples, m))
        mode = "sampled"
    else:
        raise BudgetExceeded(f"induced space has {n}^{m} functions, over the cap {cap}", total)
    y0 = np.full(m, fga.x0, dtype=np.int64)
    dgam = word_lengths(G, fga.S, within=fga.lattice)
    U = np.asarray(tr.U)
    integ = {}
    for g in fga.B:
        v = G.mul[G.inv[g], U]                      # g^-1 u
        integ[int(g)] = float(dgam[tr.chi[v]].sum()) / m
    return InducedSpace(funcs, n, mode, fga.space.dist, fga.mu, y0, integ)


def _action_tables(fga: FiniteGroupAction):
    """For each g and slot i: the slot of P(g^-1 u_i) and the element chi(g^-1 u_i)^-1."""
    G, tr = fga.group, fga.transversal
    U = np.asarray(tr.U)
    v = G.mul[G.inv[:, None], U[None, :]]           # (|G|, m)
    return tr.slot[v], G.inv[tr.chi[v]]


def apply_induced_action(fga: FiniteGroupAction, g, a) -> np.ndarray:
    """(g.a)(u) = chi(g^-1 u)^-1 . a(P(g^-1 u)); ``a`` may be a stack of functions."""
    g = fga.group.index(g)
    slots, gam = _action_tables(fga)
    a = np.asarray(a)
    cols = a[..., slots[g]]                              # a(P(g^-1 u_i)) per slot
    return fga.act[gam[g], cols]                         # row gam[g][i] applied to column i


@dataclass
class InducedReport:
    ok: bool
    mode: str
    checks: dict              # name -> {"ok": bool, ... values, "witness": ...}
    transversal: list
    integrability: dict

    def failures(self) -> list:
        return [k for k, v in self.checks.items() if not v["ok"]]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "mode": self.mode, "transversal": self.transversal,
                "integrability": {str(k): v for k, v in sorted(self.integrability.items())},
                "checks": self.checks}


def _c1_constants(fga: FiniteGroupAction):
    """(k, h0) for mu_X: h0 = delta and the least k making (C1) hold."""
    space = fga.space
    n = space.n
    h0 = float(estimate_delta(space).delta)
    firsts = np.array([(a, b, c) for a in range(n) for b in range(a, n) for c in range(b, n)],
                      dtype=np.int64).reshape(-1, 3)
    k, _, _ = _c1_scan(space.dist, fga.mu.reshape(-1), firsts, n, h0)
    return max(0.0, k), h0


def _x_defect(fga: FiniteGroupAction):
    """C_X: worst d(mu(ga, gb, gc), g mu(a, b, c)) over gamma in Gamma and all triples."""
    d, mu = fga.space.dist, fga.mu
    best, wit = 0, None
    for g in fga.lattice:
        p = fga.act[g]
        moved = mu[np.ix_(p, p, p)]
        gap = d[moved, p[mu]]
        j = int(gap.argmax())
        if gap.reshape(-1)[j] > best:
            best = gap.reshape(-1)[j]
            wit = (int(g),) + tuple(int(x) for x in np.unravel_index(j, gap.shape))
    return float(best), wit


def verify_induced_action(fga: FiniteGroupAction, ind: InducedSpace, pair_cap: int = 4096,
                          sextuple_cap: int = 5 * 10 ** 7, samples: int = 20000,
                          seed: int = 0) -> InducedReport:
    """Check the induced action exactly: action law, isometry, (C1), median defect, orbit bound.

    Scans are exhaustive over Y when it was fully enumerated and small enough
    (``pair_cap`` functions, ``sextuple_cap`` sextuples for (C1)); otherwise
    they run on random draws from ``ind``.  Each check records its own mode.
    """
    G = fga.group
    m = ind.width
    F = ind.funcs
    exhaustive = ind.mode == "exhaustive" and ind.size <= pair_cap
    mode = "exhaustive" if exhaustive else "sampled"
    rng = make_rng(seed)
    checks = {}

    # the action on all of Y, as arrays of functions
    moved = np.stack([apply_induced_action(fga, g, F) for g in range(G.order)])   # (|G|, N, m)

    # (i) g.(h.a) = (gh).a
    wit = None
    for g in range(G.order):
        for h in range(G.order):
            lhs = apply_induced_action(fga, g, moved[h])
            bad = np.flatnonzero((lhs != moved[int(G.mul[g, h])]).any(axis=1))
            if len(bad):
                wit = (g, h, F[bad[0]].tolist())
                break
        if wit:
            break
    checks["action_law"] = {"ok": wit is None, "witness": wit}

    # (ii) exact isometry
    if exhaustive:
        ia, ib = np.triu_indices(ind.size, 1)
    else:
        ia = rng.integers(0, ind.size, samples)
        ib = rng.integers(0, ind.size, samples)
    base = ind.sum_distance(F[ia], F[ib])
    wit = None
    for g in range(G.order):
        bad = np.flatnonzero(ind.sum_distance(moved[g][ia], moved[g][ib]) != base)
        if len(bad):
            wit = (g, F[ia[bad[0]]].tolist(), F[ib[bad[0]]].tolist())
            break
    checks["isometry"] = {"ok": wit is None, "pairs": int(len(ia)), "mode": mode, "witness": wit}

    # (iii) (C1) for mu_Y with the constants of mu_X
    k, h0 = _c1_constants(fga)
    N = ind.size
    c1_exhaustive = exhaustive and (N * (N + 1) * (N + 2) // 6) * N ** 3 <= sextuple_cap
    if c1_exhaustive:
        DY = ind.sum_distance(F[:, None, :], F[None, :, :])              # |U| d_Y
        # mu_Y on row positions; rows are in base-|X| code order
        muY = np.empty(N ** 3, dtype=np.int64)
        for a in range(N):
            med = ind.median(F[a][None, None, :], F[:, None, :], F[None, :, :])  # (N, N, m)
            enc = np.zeros((N, N), dtype=np.int64)
            for i in range(m):
                enc = enc * ind.npoints + med[:, :, i]
            muY[a * N * N:(a + 1) * N * N] = enc.reshape(-1)
        firsts = np.array([(a, b, c) for a in range(N) for b in range(a, N) for c in range(b, N)],
                          dtype=np.int64).reshape(-1, 3)
        kY, w, _ = _c1_scan(DY, muY, firsts, N, m * h0)
        c1_wit = None if w is None else [F[i].tolist() for i in w]
        checked = len(firsts) * N ** 3
    else:
        q = rng.integers(0, ind.size, size=(samples, 6))
        A = F[q]
        m1 = ind.median(A[:, 0], A[:, 1], A[:, 2])
        m2 = ind.median(A[:, 3], A[:, 4], A[:, 5])
        dmu = ind.sum_distance(m1, m2)
        tot = sum(ind.sum_distance(A[:, i], A[:, i + 3]) for i in range(3))
        ratio = np.where(tot > 0, (dmu - m * h0) / np.maximum(tot, 1), -np.inf)
        i = int(np.argmax(ratio))
        kY = float(ratio[i])
        c1_wit = [F[j].tolist() for j in q[i]]
        checked = samples
    kY = max(0.0, kY)
    checks["c1_inherited"] = {"ok": kY <= k + TOL, "k_x": k, "h0": h0, "k_y": kY,
                              "mode": "exhaustive" if c1_exhaustive else "sampled",
                              "checked": int(checked),
                              "witness": None if kY <= k + TOL else c1_wit}

    # (iv) C_Y <= C_X
    cx, cx_wit = _x_defect(fga)
    if exhaustive and N ** 3 <= 10 ** 6:
        tri = np.array(list(itertools.product(range(N), repeat=3)), dtype=np.int64).reshape(-1, 3)
        tri_mode = "exhaustive"
    else:
        tri = rng.integers(0, N, size=(samples, 3))
        tri_mode = "sampled"
    med = ind.median(F[tri[:, 0]], F[tri[:, 1]], F[tri[:, 2]])
    cy_sum, cy_wit = 0, None
    for g in range(G.order):
        mg = moved[g]
        lhs = ind.median(mg[tri[:, 0]], mg[tri[:, 1]], mg[tri[:, 2]])
        rhs = apply_induced_action(fga, g, med)
        gap = ind.sum_distance(lhs, rhs)
        j = int(gap.argmax())
        if gap[j] > cy_sum:
            cy_sum = int(gap[j])
            cy_wit = (g,) + tuple(F[t].tolist() for t in tri[j])
    cy = cy_sum / m
    checks["median_defect"] = {"ok": cy_sum <= m * cx + TOL, "C_Y": cy, "C_X": cx,
                               "triples": int(len(tri)), "mode": tri_mode, "witness_y": cy_wit, "witness_x": cx_wit}

    # (v) orbit map g -> g.y0 is alpha-Lipschitz for d_G
    orbit = np.stack([apply_induced_action(fga, g, ind.y0) for g in range(G.order)])
    Dorb = ind.sum_distance(orbit[:, None, :], orbit[None, :, :])
    alpha_sum = int(max(Dorb[b, 0] for b in fga.B))
    dG = word_metric(G, fga.B)
    slack = alpha_sum * dG - Dorb
    j = int(slack.argmin())
    ok = slack.reshape(-1)[j] >= 0
    gw, hw = divmod(j, G.order)
    checks["orbit_lipschitz"] = {"ok": bool(ok), "alpha": alpha_sum / m,
                                 "witness": None if ok else (gw, hw)}

    coc = check_cocycle_identity(G, fga.transversal)
    checks["cocycle"] = {"ok": coc.ok, "witness": coc.witness}
    for v in checks.values():
        v["ok"] = bool(v["ok"])
    ok = all(v["ok"] for v in checks.values())
    return InducedReport(ok, mode, checks, list(fga.transversal.U), dict(ind.integrability))

