"""Labelled uniform hypergraphs, brute-force enumeration and the forest codec."""
from __future__ import annotations

import heapq
import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from .species import check_uniformity

Edge = Tuple[int, ...]

ENUM_CAP = 24


class InvalidCode(ValueError):
    """A ForestCode that does not describe a forest."""


class NotAForest(ValueError):
    """Encoder input that is not a forest of rooted hypertrees."""


@dataclass(frozen=True)
class Hypergraph:
    """Vertices carry labels; edges are sorted tuples kept in sorted order.

    ``vertices`` defaults to 1..n.  Pruning removes vertices, so it may be a
    proper subset.  ``roots`` marks the roots of a rooted forest.
    """

    n: int
    b: int
    edges: Tuple[Edge, ...]
    vertices: FrozenSet[int] = None  # type: ignore[assignment]
    roots: FrozenSet[int] = frozenset()

    def __post_init__(self):
        check_uniformity(self.b)
        verts = frozenset(range(1, self.n + 1)) if self.vertices is None else frozenset(self.vertices)
        canon = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        for e in canon:
            if len(e) != self.b or len(set(e)) != self.b:
                raise ValueError(f"edge {e} is not a set of {self.b} vertices")
            if not set(e) <= verts:
                raise ValueError(f"edge {e} uses a vertex outside the vertex set")
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate edge")
        if not set(self.roots) <= verts:
            raise ValueError("root outside the vertex set")
        object.__setattr__(self, "edges", canon)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "roots", frozenset(self.roots))

    @property
    def s(self) -> int:
        return len(self.edges)

    def degrees(self) -> Counter:
        return Counter(v for e in self.edges for v in e)

    def to_json(self) -> dict:
        out = {"n": self.n, "b": self.b, "edges": [list(e) for e in self.edges]}
        if self.vertices != frozenset(range(1, self.n + 1)):
            out["vertices"] = sorted(self.vertices)
        if self.roots:
            out["roots"] = sorted(self.roots)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "Hypergraph":
        return cls(
            int(d["n"]),
            int(d["b"]),
            tuple(tuple(int(v) for v in e) for e in d["edges"]),
            frozenset(d["vertices"]) if "vertices" in d else None,
            frozenset(d.get("roots", ())),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def excess(H: Hypergraph) -> int:
    """sum over edges of (|e| - 1) minus the number of vertices."""
    return sum(len(e) - 1 for e in H.edges) - len(H.vertices)


def components(H: Hypergraph) -> List[Hypergraph]:
    """Connected components, each on its own vertex subset (same labels)."""
    parent = {v: v for v in H.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in H.edges:
        r0 = find(e[0])
        for v in e[1:]:
            rv = find(v)
            if rv != r0:
                parent[rv] = r0
    groups: Dict[int, set] = {}
    for v in H.vertices:
        groups.setdefault(find(v), set()).add(v)
    out = []
    for verts in sorted(groups.values(), key=min):
        es = tuple(e for e in H.edges if e[0] in verts)
        out.append(Hypergraph(H.n, H.b, es, frozenset(verts), H.roots & verts))
    return out


def is_connected(H: Hypergraph) -> bool:
    return len(H.vertices) > 0 and len(components(H)) == 1


def _find_leaf(edges: Iterable[Edge], deg: Counter, roots: FrozenSet[int], b: int):
    """Smallest leaf as (sorted free vertices, edge, attaching vertex) or None.

    A leaf is an edge with b-1 non-root vertices of degree 1; the remaining
    vertex is where it attaches.
    """
    best = None
    for e in edges:
        free = [v for v in e if deg[v] == 1 and v not in roots]
        if len(free) < b - 1:
            continue
        if len(free) == b:
            # a whole isolated edge; any choice keeps the excess, take the largest as anchor
            free = free[:-1]
        key = tuple(free)
        if best is None or key < best[0]:
            attach = next(v for v in e if v not in key)
            best = (key, e, attach)
    return best


def prune_to_smooth(H: Hypergraph) -> Hypergraph:
    """Remove leaves (with their b-1 free vertices) until none is left."""
    edges = set(H.edges)
    verts = set(H.vertices)
    deg = H.degrees()
    while True:
        leaf = _find_leaf(edges, deg, H.roots, H.b)
        if leaf is None:
            break
        free, e, _ = leaf
        edges.discard(e)
        for v in e:
            deg[v] -= 1
        verts.difference_update(free)
    return Hypergraph(H.n, H.b, tuple(edges), frozenset(verts), H.roots & verts)


# --------------------------------------------------------------------------
# brute force
# --------------------------------------------------------------------------

def all_edges(b: int, n: int) -> List[Edge]:
    return list(itertools.combinations(range(1, n + 1), b))


def iter_hypergraphs(b: int, n: int, cap: int = ENUM_CAP) -> Iterator[Hypergraph]:
    """Every simple b-uniform hypergraph on vertices 1..n."""
    check_uniformity(b)
    E = all_edges(b, n)
    if len(E) > cap:
        raise ValueError(f"C({n},{b}) = {len(E)} edges exceeds the enumeration cap {cap}")
    for m in range(len(E) + 1):
        for es in itertools.combinations(E, m):
            yield Hypergraph(n, b, es)


def enumerate_all(b: int, n: int, predicate: Callable[[Hypergraph], bool] | None = None, cap: int = ENUM_CAP) -> int:
    """Number of hypergraphs on 1..n satisfying ``predicate`` (all if None)."""
    return sum(1 for H in iter_hypergraphs(b, n, cap) if predicate is None or predicate(H))


def connected_with_excess(ell: int) -> Callable[[Hypergraph], bool]:
    return lambda H: excess(H) == ell and is_connected(H)


def connected_excess_table(b: int, n: int, cap: int = ENUM_CAP) -> Dict[int, int]:
    """Count connected hypergraphs on 1..n by excess, vectorized over edge subsets.

    Independent of :func:`enumerate_all`: vertices are bits, every subset is
    an integer mask and reachability from vertex 1 is iterated in numpy.
    """
    check_uniformity(b)
    E = all_edges(b, n)
    m = len(E)
    if m > cap:
        raise ValueError(f"C({n},{b}) = {m} edges exceeds the enumeration cap {cap}")
    full = (1 << n) - 1
    masks = np.arange(1 << m, dtype=np.int64)
    emask = [sum(1 << (v - 1) for v in e) for e in E]
    reach = np.ones(1 << m, dtype=np.int64)
    for _ in range(n):
        before = reach.copy()
        for i, em in enumerate(emask):
            has = ((masks >> i) & 1).astype(bool)
            touch = (reach & em) != 0
            reach = np.where(has & touch, reach | em, reach)
        if np.array_equal(before, reach):
            break
    conn = reach == full
    sizes = np.zeros(1 << m, dtype=np.int64)
    for i in range(m):
        sizes += (masks >> i) & 1
    ex = sizes[conn] * (b - 1) - n
    vals, cnts = np.unique(ex, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, cnts)}


# --------------------------------------------------------------------------
# forest codec
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ForestCode:
    """Roots R, distinguished root r, blocks P and the attachment sequence N."""

    R: FrozenSet[int]
    r: int
    P: Tuple[Tuple[int, ...], ...]
    N: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "R", frozenset(self.R))
        blocks = tuple(sorted((tuple(sorted(p)) for p in self.P), key=lambda p: (p[0] if p else 0, p)))
        object.__setattr__(self, "P", blocks)
        object.__setattr__(self, "N", tuple(self.N))

    @property
    def s(self) -> int:
        return len(self.P)

    @property
    def k(self) -> int:
        return len(self.R) - 1

    def to_json(self) -> dict:
        return {"R": sorted(self.R), "r": self.r, "P": [list(p) for p in self.P], "N": list(self.N)}

    @classmethod
    def from_json(cls, d: dict) -> "ForestCode":
        return cls(frozenset(int(v) for v in d["R"]), int(d["r"]), tuple(tuple(int(v) for v in p) for p in d["P"]), tuple(int(v) for v in d["N"]))


def validate_code(c: ForestCode, b: int, n: int) -> None:
    check_uniformity(b)
    if not c.R:
        raise InvalidCode("R is empty")
    if c.r not in c.R:
        raise InvalidCode("r is not a root")
    if n != c.s * (b - 1) + c.k + 1:
        raise InvalidCode(f"n={n} does not equal s(b-1)+k+1 = {c.s * (b - 1) + c.k + 1}")
    seen = set(c.R)
    for p in c.P:
        if len(p) != b - 1:
            raise InvalidCode(f"block {p} does not have b-1 = {b - 1} vertices")
        if seen & set(p):
            raise InvalidCode(f"block {p} overlaps R or another block")
        seen.update(p)
    if seen != set(range(1, n + 1)):
        raise InvalidCode("R and the blocks do not partition 1..n")
    if len(c.N) != max(c.s - 1, 0):
        raise InvalidCode(f"N must have s-1 = {max(c.s - 1, 0)} entries")
    if any(not (1 <= v <= n) for v in c.N):
        raise InvalidCode("N contains a label outside 1..n")


def decode_edges(c: ForestCode) -> List[Edge]:
    """Edges of the forest coded by c, without validation (see :func:`decode`).

    Each step joins the head of N to the smallest-labelled block none of whose
    vertices is still awaited in N (the head counts as awaited).  A heap holds
    the blocks that are free, so a run costs O(s log s).
    """
    if not c.P:
        return []
    pending = Counter(c.N)
    owner = {v: idx for idx, blk in enumerate(c.P) for v in blk}
    blocked = [sum(1 for v in blk if pending[v]) for blk in c.P]
    free = [(blk[0], idx) for idx, blk in enumerate(c.P) if not blocked[idx]]
    heapq.heapify(free)
    edges = []
    for head in c.N:
        if not free:
            raise InvalidCode("every remaining block still has a pending attachment")
        _, idx = heapq.heappop(free)
        edges.append(c.P[idx] + (head,))
        pending[head] -= 1
        if not pending[head] and head in owner:
            j = owner[head]
            blocked[j] -= 1
            if not blocked[j]:
                heapq.heappush(free, (c.P[j][0], j))
    if len(free) != 1:
        raise InvalidCode("blocks left over after decoding")
    _, idx = free[0]
    edges.append(c.P[idx] + (c.r,))
    return edges


def decode(c: ForestCode, b: int, n: int) -> Hypergraph:
    """Rebuild the rooted forest from its code."""
    validate_code(c, b, n)
    H = Hypergraph(n, b, tuple(decode_edges(c)), roots=c.R)
    if len(components(H)) != len(c.R):
        raise InvalidCode("decoded structure is not a forest rooted at R")
    return H


def encode(F: Hypergraph, b: int | None = None) -> ForestCode:
    """Code of a forest of rooted hypertrees (roots taken from ``F.roots``)."""
    if b is not None and b != F.b:
        raise NotAForest(f"forest is {F.b}-uniform, not {b}-uniform")
    b = F.b
    if F.vertices != frozenset(range(1, F.n + 1)):
        raise NotAForest("vertex labels must be exactly 1..n")
    R = F.roots
    if not R:
        raise NotAForest("no roots given")
    comps = components(F)
    if any(excess(C) != -1 for C in comps) or any(len(C.roots) != 1 for C in comps):
        raise NotAForest("each component must be a hypertree holding exactly one root")
    if F.s == 0:
        return ForestCode(R, min(R), (), ())
    edges = set(F.edges)
    deg = F.degrees()
    blocks, attach = [], []
    while edges:
        leaf = _find_leaf(edges, deg, R, b)
        if leaf is None:
            raise NotAForest("no leaf found; input is not a rooted forest")
        free, e, a = leaf
        if len(free) + 1 != len(e) or a in free:
            raise NotAForest("malformed leaf")
        edges.discard(e)
        for v in e:
            deg[v] -= 1
        blocks.append(free)
        attach.append(a)
    return ForestCode(R, attach[-1], tuple(blocks), tuple(attach[:-1]))


def count_codes(b: int, s: int, k: int) -> int:
    """C(n,k+1) (k+1) #partitions n^(s-1): the size of the code space."""
    n = s * (b - 1) + k + 1
    parts = math.factorial(s * (b - 1)) // (math.factorial(b - 1) ** s * math.factorial(s))
    if s == 0:
        return math.comb(n, k + 1)
    return math.comb(n, k + 1) * (k + 1) * parts * n ** (s - 1)


def iter_codes(b: int, s: int, k: int) -> Iterator[ForestCode]:
    """Every valid code for (b, s, k); with s = 0, r is fixed to min(R)."""
    n = s * (b - 1) + k + 1
    labels = range(1, n + 1)
    for R in itertools.combinations(labels, k + 1):
        rest = [v for v in labels if v not in R]
        rs = R if s else (min(R),)
        for P in _set_partitions(rest, b - 1):
            for r in rs:
                for N in itertools.product(labels, repeat=max(s - 1, 0)):
                    yield ForestCode(frozenset(R), r, P, N)


def _set_partitions(items: Sequence[int], size: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for mates in itertools.combinations(rest, size - 1):
        remaining = [v for v in rest if v not in mates]
        for tail in _set_partitions(remaining, size):
            yield ((first,) + mates,) + tail


def random_code(b: int, s: int, k: int, rng: np.random.Generator) -> ForestCode:
    """Uniform code: R, r, the block partition and N drawn independently."""
    check_uniformity(b)
    if s < 0 or k < 0:
        raise ValueError("s and k must be >= 0")
    n = s * (b - 1) + k + 1
    perm = rng.permutation(np.arange(1, n + 1))
    R = [int(v) for v in perm[: k + 1]]
    rest = [int(v) for v in perm[k + 1:]]
    P = tuple(tuple(rest[i * (b - 1):(i + 1) * (b - 1)]) for i in range(s))
    r = int(R[rng.integers(len(R))]) if s else min(R)
    N = tuple(int(v) for v in rng.integers(1, n + 1, size=max(s - 1, 0)))
    return ForestCode(frozenset(R), r, P, N)


def sample_forest(b: int, s: int, k: int, seed=None, rng: np.random.Generator | None = None) -> Hypergraph:
    """Uniform forest of k+1 rooted hypertrees with s edges; deterministic given seed."""
    if rng is None:
        rng = np.random.default_rng(seed)
    n = s * (b - 1) + k + 1
    return decode(random_code(b, s, k, rng), b, n)
