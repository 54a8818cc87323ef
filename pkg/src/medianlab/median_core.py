"""Finite median algebras.

An algebra is stored as a dense ternary table ``mu[a, b, c]`` over element
indices ``0..n-1``.  Element labels are kept only for display and file
round-trips; every search iterates in index order so results are
deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import BudgetExceeded, InternalContradiction, InvalidInput


@dataclass(frozen=True, eq=False)
class FiniteMedianAlgebra:
    elements: tuple
    mu: np.ndarray
    verified: bool = False

    def __post_init__(self):
        n = len(self.elements)
        mu = np.asarray(self.mu)
        if mu.shape != (n, n, n):
            raise InvalidInput(f"median table must have shape {(n, n, n)}, got {mu.shape}")
        if n and (mu.min() < 0 or mu.max() >= n):
            raise InvalidInput("median table refers to unknown elements")
        mu = mu.astype(np.int32, copy=True)
        mu.setflags(write=False)
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        object.__setattr__(self, "mu", mu)
        if len(set(self.elements)) != n:
            raise InvalidInput("element labels must be distinct")

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, x) -> int:
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            if 0 <= x < self.size:
                return int(x)
            raise InvalidInput(f"unknown element index {x}")
        try:
            return self.elements.index(str(x))
        except ValueError:
            raise InvalidInput(f"unknown element {x!r}") from None

    def median(self, a, b, c) -> int:
        return int(self.mu[self.index(a), self.index(b), self.index(c)])

    def labels(self, idxs: Iterable[int]) -> list[str]:
        return [self.elements[i] for i in sorted(idxs)]

    @classmethod
    def from_function(cls, elements: Sequence, func) -> "FiniteMedianAlgebra":
        """Tabulate ``func(i, j, k) -> index`` over all index triples."""
        n = len(elements)
        mu = np.empty((n, n, n), dtype=np.int32)
        for i, j, k in itertools.product(range(n), repeat=3):
            mu[i, j, k] = func(i, j, k)
        return cls(tuple(elements), mu)

    def subalgebra(self, idxs: Iterable[int]) -> "FiniteMedianAlgebra":
        """Restrict to a median-closed subset, reindexed in increasing order."""
        keep = sorted(set(int(i) for i in idxs))
        pos = {v: i for i, v in enumerate(keep)}
        sub = self.mu[np.ix_(keep, keep, keep)]
        try:
            table = np.vectorize(pos.__getitem__, otypes=[np.int32])(sub) if keep else sub
        except KeyError:
            raise InvalidInput("subset is not closed under the median") from None
        return FiniteMedianAlgebra(tuple(self.elements[i] for i in keep), table, self.verified)


def boolean_cube(n: int) -> FiniteMedianAlgebra:
    """{0,1}^n with coordinatewise majority; element i is the bit vector of i."""
    size = 1 << n
    v = np.arange(size)
    a, b, c = np.meshgrid(v, v, v, indexing="ij")
    mu = (a & b) | (b & c) | (a & c)
    labels = [format(i, f"0{n}b") if n else "()" for i in range(size)]
    return FiniteMedianAlgebra(tuple(labels), mu, verified=True)


class Verdict:
    """Boolean outcome with an optional witness; truthy iff ``ok``."""

    __slots__ = ("ok", "witness", "detail")

    def __init__(self, ok: bool, witness=None, detail=None):
        self.ok = bool(ok)
        self.witness = witness
        self.detail = detail

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"Verdict(ok={self.ok}, witness={self.witness!r})"


@dataclass
class AxiomReport:
    ok: bool
    axiom: str | None = None
    witness: tuple | None = None
    mode: str = "exhaustive"
    checked_quintuples: int = 0

    def __bool__(self):
        return self.ok

    def as_dict(self, alg: FiniteMedianAlgebra | None = None) -> dict:
        w = self.witness
        if w is not None and alg is not None:
            w = [alg.elements[i] for i in w]
        return {
            "ok": self.ok,
            "axiom": self.axiom,
            "witness": list(w) if w is not None else None,
            "mode": self.mode,
            "checked_quintuples": self.checked_quintuples,
        }


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return tuple(int(x) for x in hits[0]) if len(hits) else None


def verify_median_axioms(alg: FiniteMedianAlgebra, samples: int | None = None,
                         seed: int = 0) -> AxiomReport:
    """Check (M1), (M2), (M3) and report the first failing tuple.

    (M1) and (M2) are always checked exhaustively.  (M3) is exhaustive unless
    ``samples`` is given, in which case that many uniform quintuples are drawn.
    """
    mu = alg.mu
    n = alg.size
    if n == 0:
        return AxiomReport(True)

    sym = (mu != mu.transpose(1, 0, 2)) | (mu != mu.transpose(2, 0, 1))
    w = _first(sym)
    if w is not None:
        return AxiomReport(False, "M1", w)

    idx = np.arange(n)
    w = _first(mu[idx, idx, :] != idx[:, None])
    if w is not None:
        a, b = w
        return AxiomReport(False, "M2", (a, a, b))

    if samples is not None:
        from .rng import make_rng
        q = make_rng(seed).integers(0, n, size=(samples, 5))
        a, b, c, d, e = q.T
        lhs = mu[a, b, mu[c, d, e]]
        rhs = mu[mu[a, b, c], mu[a, b, d], e]
        bad = np.nonzero(lhs != rhs)[0]
        if len(bad):
            return AxiomReport(False, "M3", tuple(int(x) for x in q[bad[0]]), "sampled", samples)
        return AxiomReport(True, mode="sampled", checked_quintuples=samples)

    flat = mu.reshape(n * n, n)
    # chunk over the leading argument so memory stays at n^4 per step
    for a in range(n):
        rows = flat[a * n:(a + 1) * n]                       # mu[a, b, :]
        lhs = rows[:, mu]                                     # mu[a,b,mu[c,d,e]]
        rhs = mu[rows[:, :, None, None], rows[:, None, :, None],
                 np.arange(n)[None, None, None, :]]           # mu[mu[a,b,c], mu[a,b,d], e]
        w = _first(lhs != rhs)
        if w is not None:
            return AxiomReport(False, "M3", (a,) + w, checked_quintuples=n ** 5)
    return AxiomReport(True, checked_quintuples=n ** 5)


def verified(alg: FiniteMedianAlgebra, samples: int | None = None) -> FiniteMedianAlgebra:
    """Return ``alg`` flagged as verified, or raise with the failing witness."""
    if alg.verified:
        return alg
    rep = verify_median_axioms(alg, samples)
    if not rep.ok:
        raise InvalidInput(f"axiom {rep.axiom} fails at {rep.witness}")
    return FiniteMedianAlgebra(alg.elements, alg.mu, verified=True)


def algebraic_interval(alg: FiniteMedianAlgebra, a, b) -> frozenset:
    a, b = alg.index(a), alg.index(b)
    row = alg.mu[a, b]
    return frozenset(int(c) for c in np.nonzero(row == np.arange(alg.size))[0])


def _interval_masks(alg: FiniteMedianAlgebra) -> list[list[int]]:
    n = alg.size
    hit = alg.mu == np.arange(n)[None, None, :]
    weights = [1 << c for c in range(n)]
    masks = []
    for a in range(n):
        row = []
        for b in range(n):
            m = 0
            for c in np.nonzero(hit[a, b])[0]:
                m |= weights[c]
            row.append(m)
        masks.append(row)
    return masks


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _to_mask(alg: FiniteMedianAlgebra, subset) -> int:
    m = 0
    for x in subset:
        m |= 1 << alg.index(x)
    return m


def _convex_witness(masks, mask: int):
    members = _members(mask)
    outside = ~mask
    for i, a in enumerate(members):
        row = masks[a]
        for b in members[i + 1:]:
            if row[b] & outside:
                return a, b
    return None


def is_convex(alg: FiniteMedianAlgebra, subset, _masks=None) -> Verdict:
    """Convexity of ``subset``; the witness is ``(a, b, interval)`` on failure."""
    masks = _masks or _interval_masks(alg)
    mask = _to_mask(alg, subset)
    w = _convex_witness(masks, mask)
    if w is None:
        return Verdict(True)
    a, b = w
    return Verdict(False, (a, b, frozenset(_members(masks[a][b]))))


@dataclass(frozen=True)
class Halfspace:
    side_plus: frozenset
    side_minus: frozenset

    def separates(self, x: int, y: int) -> bool:
        return (x in self.side_minus and y in self.side_plus) or \
               (x in self.side_plus and y in self.side_minus)


def find_wall(alg: FiniteMedianAlgebra, x, y, _masks=None) -> Halfspace:
    """A wall with ``x`` in ``side_minus`` and ``y`` in ``side_plus``.

    Grows a convex set from ``{x}`` while it avoids ``y``: each candidate
    ``z`` (index order) is added together with its join ``U_h [h, z]``, which
    for convex H is the convex hull of H + {z}.  A single-element step is not
    enough (in {0,1}^3, {000, 001} cannot absorb 010 without 011).  The
    complement of the maximal set is checked for convexity afterwards.
    """
    x, y = alg.index(x), alg.index(y)
    if x == y:
        raise InvalidInput("a wall separates two distinct points")
    masks = _masks or _interval_masks(alg)
    n = alg.size
    full = (1 << n) - 1
    ybit = 1 << y
    minus = 1 << x
    inside = [x]
    grew = True
    while grew:
        grew = False
        for z in range(n):
            if (minus >> z) & 1 or z == y:
                continue
            row = masks[z]
            hull = minus
            for h in inside:
                hull |= row[h]
                if hull & ybit:
                    break
            else:
                minus = hull
                inside = _members(minus)
                grew = True
    plus = full & ~minus
    for side in (minus, plus):
        w = _convex_witness(masks, side)
        if w is not None:
            raise InternalContradiction(
                f"wall side is not convex (pair {w}); "
                "the median table is not a median algebra")
    return Halfspace(frozenset(_members(plus)), frozenset(_members(minus)))


def all_walls(alg: FiniteMedianAlgebra) -> dict:
    """Map each ordered pair ``(x, y)``, x != y, to ``find_wall(alg, x, y)``."""
    masks = _interval_masks(alg)
    return {(x, y): find_wall(alg, x, y, masks)
            for x in range(alg.size) for y in range(alg.size) if x != y}


def check_wall(alg: FiniteMedianAlgebra, wall: Halfspace, x: int, y: int, _masks=None) -> Verdict:
    masks = _masks or _interval_masks(alg)
    plus, minus = wall.side_plus, wall.side_minus
    if not plus or not minus:
        return Verdict(False, "empty side")
    if plus & minus or len(plus | minus) != alg.size:
        return Verdict(False, "not a partition")
    for side in (plus, minus):
        w = _convex_witness(masks, _to_mask(alg, side))
        if w is not None:
            return Verdict(False, ("non-convex side", w))
    if not (x in minus and y in plus):
        return Verdict(False, "does not separate")
    return Verdict(True)


class RankResult(NamedTuple):
    rank: int
    capped: bool        # True when an embedding exists at the cap itself

    def __str__(self):
        return f">= {self.rank}" if self.capped else str(self.rank)


def _cube_embedding(alg: FiniteMedianAlgebra, n: int, intervals) -> list[int] | None:
    """Search for a median embedding {0,1}^n -> alg; return its image list."""
    size = alg.size
    mu = alg.mu
    if n == 0:
        return [0] if size else None
    if (1 << n) > size:
        return None
    verts = np.arange(1 << n)
    va, vb, vc = np.meshgrid(verts, verts, verts, indexing="ij")
    cube_mu = (va & vb) | (vb & vc) | (va & vc)
    full = (1 << n) - 1

    def complete(p, q, units):
        img = [0] * (1 << n)
        img[0], img[full] = p, q
        for i, r in enumerate(units):
            img[1 << i] = r
        for s in range(1, full):
            if s & (s - 1):
                top = s.bit_length() - 1
                img[s] = int(mu[img[s & ~(1 << top)], img[1 << top], q])
        if len(set(img)) != len(img):
            return None
        arr = np.asarray(img)
        if np.array_equal(arr[cube_mu], mu[arr[va], arr[vb], arr[vc]]):
            return img
        return None

    if n == 1:
        # any two distinct points: (M2) makes every injection a homomorphism
        return [0, 1]

    # WLOG f(0) < f(1...1) (complementation) and unit images increase
    # (coordinate permutations); units must pairwise have median f(0).
    for p in range(size):
        for q in range(p + 1, size):
            cands = sorted(intervals[(p, q)] - {p, q})
            if len(cands) < n:
                continue

            def dfs(chosen, start):
                if len(chosen) == n:
                    return complete(p, q, chosen)
                for k in range(start, len(cands)):
                    r = cands[k]
                    if all(mu[r, s, p] == p for s in chosen):
                        got = dfs(chosen + [r], k + 1)
                        if got is not None:
                            return got
                return None

            img = dfs([], 0)
            if img is not None:
                return img
    return None


def rank(alg: FiniteMedianAlgebra, cap: int = 4) -> RankResult:
    """Largest n <= cap admitting a median embedding of the n-cube."""
    if cap < 1:
        raise InvalidInput("cap must be positive")
    if alg.size <= 1:
        return RankResult(0, False)
    intervals = {}
    for p in range(alg.size):
        for q in range(p + 1, alg.size):
            intervals[(p, q)] = algebraic_interval(alg, p, q)
    best = 0
    for n in range(1, cap + 1):
        if _cube_embedding(alg, n, intervals) is None:
            return RankResult(best, False)
        best = n
    return RankResult(best, True)


def cube_embedding(alg: FiniteMedianAlgebra, n: int) -> list[int] | None:
    intervals = {(p, q): algebraic_interval(alg, p, q)
                 for p in range(alg.size) for q in range(p + 1, alg.size)}
    return _cube_embedding(alg, n, intervals)


class FreeAlgebra(NamedTuple):
    algebra: FiniteMedianAlgebra
    generators: list[int]
    vectors: list[int]      # bit vector of each element in {0,1}^(2^n)


def free_median_algebra(n: int, cap: int = 4096) -> FreeAlgebra:
    """Median subalgebra of {0,1}^(2^n) generated by the n canonical generators.

    Coordinate ``A`` (a subset of the generators, encoded as a bitmask) of
    generator ``i`` is 1 iff ``i`` is in ``A``.
    """
    if n < 1:
        raise InvalidInput("need at least one generator")
    coords = 1 << n
    gens = []
    for i in range(n):
        v = 0
        for A in range(coords):
            if (A >> i) & 1:
                v |= 1 << A
        gens.append(v)

    vectors: list[int] = []
    seen: dict[int, int] = {}
    for v in gens:
        if v not in seen:
            seen[v] = len(vectors)
            vectors.append(v)
    frontier = 0
    while frontier < len(vectors):
        z = vectors[frontier]
        frontier += 1
        cur = vectors[:frontier]
        for i, a in enumerate(cur):
            for b in cur[i:]:
                m = (z & a) | (z & b) | (a & b)
                if m not in seen:
                    if len(vectors) >= cap:
                        raise BudgetExceeded(
                            f"free median algebra on {n} generators exceeds {cap} elements",
                            partial=len(vectors) + 1)
                    seen[m] = len(vectors)
                    vectors.append(m)

    size = len(vectors)
    mu = np.empty((size, size, size), dtype=np.int32)
    for i, a in enumerate(vectors):
        for j in range(i, size):
            b = vectors[j]
            ab = a & b
            aob = a | b
            for k in range(j, size):
                c = vectors[k]
                m = seen[ab | (aob & c)]
                for p in {(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)}:
                    mu[p] = m
    labels = [f"x{i}" for i in range(n)] + [f"m{k}" for k in range(size - n)]
    alg = FiniteMedianAlgebra(tuple(labels), mu)
    return FreeAlgebra(alg, list(range(n)), vectors)


def check_homomorphism(f, src: FiniteMedianAlgebra, dst: FiniteMedianAlgebra) -> Verdict:
    """``f`` (sequence or mapping over src indices) commutes with the medians."""
    if isinstance(f, Mapping):
        missing = [i for i in range(src.size) if i not in f]
        if missing:
            raise InvalidInput(f"map is not total: no image for {missing[:5]}")
        f = [f[i] for i in range(src.size)]
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (src.size,):
        raise InvalidInput("map is not total on the source algebra")
    if src.size and (f.min() < 0 or f.max() >= dst.size):
        raise InvalidInput("map sends elements outside the target")
    lhs = f[src.mu]
    rhs = dst.mu[f[:, None, None], f[None, :, None], f[None, None, :]]
    w = _first(lhs != rhs)
    return Verdict(True) if w is None else Verdict(False, w)


def extend_homomorphism(src: FiniteMedianAlgebra, gen_images: Mapping[int, int],
                        dst: FiniteMedianAlgebra) -> list[int] | None:
    """Propagate generator images through medians.

    Returns the unique homomorphism extending ``gen_images`` when the
    generators span ``src`` and no conflict arises, otherwise ``None``.
    """
    img = dict(gen_images)
    known = sorted(img)
    mu_s, mu_d = src.mu, dst.mu
    changed = True
    while changed:
        changed = False
        for i, a in enumerate(known):
            for j in range(i, len(known)):
                b = known[j]
                for c in known[j:]:
                    m = int(mu_s[a, b, c])
                    v = int(mu_d[img[a], img[b], img[c]])
                    if m in img:
                        if img[m] != v:
                            return None
                    else:
                        img[m] = v
                        changed = True
        known = sorted(img)
    if len(img) != src.size:
        return None
    f = [img[i] for i in range(src.size)]
    return f if check_homomorphism(f, src, dst) else None


def find_surjection(src: FiniteMedianAlgebra, generators: Sequence[int],
                    dst: FiniteMedianAlgebra) -> list[int] | None:
    """First surjective homomorphism found by trying all generator images."""
    for images in itertools.product(range(dst.size), repeat=len(generators)):
        f = extend_homomorphism(src, dict(zip(generators, images)), dst)
        if f is not None and len(set(f)) == dst.size:
            return f
    return None


def generated_subalgebra(alg: FiniteMedianAlgebra, gens: Iterable[int]) -> frozenset:
    """Median closure of ``gens`` inside ``alg``."""
    cur = sorted(set(alg.index(g) for g in gens))
    seen = set(cur)
    changed = True
    while changed:
        changed = False
        for a, b, c in itertools.combinations_with_replacement(cur, 3):
            m = int(alg.mu[a, b, c])
            if m not in seen:
                seen.add(m)
                changed = True
        cur = sorted(seen)
    return frozenset(seen)
