"""Tournaments, ordered graphs, numberings and walks.

A tournament orients every pair of distinct vertices.  Fixing a numbering
(v_1, ..., v_n) of a tournament yields its backedge graph: the ordered graph
on positions 1..n whose edges are exactly the pairs oriented against the
numbering (the later vertex beats the earlier one).  The tournament can be
rebuilt from any of its backedge graphs, and most questions about pure pairs
translate back and forth across that correspondence, so both objects are
first-class here.

Vertices and positions are 0-based throughout the API; the textual formats
and CLI output use 1-based labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    AsymmetryViolation,
    InvalidWalk,
    NumberingSizeMismatch,
    ReflexivePair,
    SizeOutOfRange,
)

MAX_VERTICES = 64  # adjacency rows fit one machine word


def _popcount(x: int) -> int:
    return x.bit_count()


@dataclass(frozen=True)
class Tournament:
    """Complete asymmetric relation on ``n`` vertices.

    ``rows[i]`` is the out-neighbourhood of vertex ``i`` as a bitmask, so
    ``rows[i] >> j & 1`` tells whether ``i`` beats ``j``.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise SizeOutOfRange(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise AsymmetryViolation("row count does not match vertex count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row >> i & 1:
                raise ReflexivePair(f"vertex {i} beats itself")
            if row & ~full:
                raise AsymmetryViolation(f"row {i} has bits outside 0..{self.n - 1}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                fwd = self.rows[i] >> j & 1
                bwd = self.rows[j] >> i & 1
                if fwd == bwd:
                    raise AsymmetryViolation(f"pair ({i},{j}) has {fwd + bwd} orientations")

    def beats(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def out_degree(self, i: int) -> int:
        return _popcount(self.rows[i])

    def in_degree(self, i: int) -> int:
        return self.n - 1 - self.out_degree(i)

    def out_neighbors(self, i: int) -> frozenset[int]:
        return frozenset(j for j in range(self.n) if self.rows[i] >> j & 1)

    def subtournament(self, vertices: Sequence[int]) -> "Tournament":
        """Induced subtournament on ``vertices``, relabelled 0..k-1 in the given order."""
        verts = list(vertices)
        rows = []
        for i in verts:
            row = 0
            for new_j, j in enumerate(verts):
                if i != j and self.beats(i, j):
                    row |= 1 << new_j
            rows.append(row)
        return Tournament(len(verts), tuple(rows))

    def relabeled(self, perm: Sequence[int]) -> "Tournament":
        """Tournament in which new vertex ``i`` plays the role of old ``perm[i]``."""
        rows = []
        for i in range(self.n):
            row = 0
            for j in range(self.n):
                if i != j and self.beats(perm[i], perm[j]):
                    row |= 1 << j
            rows.append(row)
        return Tournament(self.n, tuple(rows))


def build_tournament(n: int, beats: Iterable[tuple[int, int]]) -> Tournament:
    """Validated tournament from an explicit beats relation.

    ``beats`` lists every ordered pair (i, j) with i beating j; exactly one
    orientation per pair is required.
    """
    if not 1 <= n <= MAX_VERTICES:
        raise SizeOutOfRange(f"vertex count {n} outside 1..{MAX_VERTICES}")
    rows = [0] * n
    for i, j in beats:
        if not (0 <= i < n and 0 <= j < n):
            raise SizeOutOfRange(f"pair ({i},{j}) outside 0..{n - 1}")
        if i == j:
            raise ReflexivePair(f"vertex {i} beats itself")
        if rows[i] >> j & 1:
            raise AsymmetryViolation(f"pair ({i},{j}) listed twice")
        rows[i] |= 1 << j
    return Tournament(n, tuple(rows))  # Tournament validates asymmetry/completeness


def reverse(t: Tournament) -> Tournament:
    """Reverse the direction of every edge.  Involution."""
    rows = [0] * t.n
    for i in range(t.n):
        for j in range(t.n):
            if i != j and t.beats(j, i):
                rows[i] |= 1 << j
    return Tournament(t.n, tuple(rows))


@dataclass(frozen=True)
class Numbering:
    """Bijection position -> vertex; ``perm[p]`` is the vertex at position ``p``."""

    perm: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise NumberingSizeMismatch(f"{self.perm!r} is not a permutation of 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.perm)

    def position_of(self, vertex: int) -> int:
        return self.inverse[vertex]

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for p, v in enumerate(self.perm):
            inv[v] = p
        return tuple(inv)

    @staticmethod
    def identity(n: int) -> "Numbering":
        return Numbering(tuple(range(n)))

    def reversed(self) -> "Numbering":
        return Numbering(tuple(self.perm[::-1]))


def _normalize_edges(n: int, edges: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    out = set()
    for p, q in edges:
        if p == q or not (0 <= p < n and 0 <= q < n):
            raise SizeOutOfRange(f"edge ({p},{q}) invalid on {n} positions")
        out.add((p, q) if p < q else (q, p))
    return frozenset(out)


@dataclass(frozen=True)
class OrderedGraph:
    """Graph on positions 0..n-1 carrying the identity order.

    Equality is exact edge-set equality; two ordered graphs on the same
    number of positions are the same object exactly when their edge sets
    coincide.
    """

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise SizeOutOfRange(f"position count {self.n} outside 1..{MAX_VERTICES}")
        object.__setattr__(self, "edges", _normalize_edges(self.n, self.edges))

    def adjacent(self, p: int, q: int) -> bool:
        return (min(p, q), max(p, q)) in self.edges

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for p, q in self.edges:
            masks[p] |= 1 << q
            masks[q] |= 1 << p
        return tuple(masks)

    def neighbors(self, p: int) -> frozenset[int]:
        m = self.neighbor_masks[p]
        return frozenset(q for q in range(self.n) if m >> q & 1)

    def degree(self, p: int) -> int:
        return _popcount(self.neighbor_masks[p])

    def max_degree(self) -> int:
        return max(self.degree(p) for p in range(self.n))

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components as sorted position tuples, ordered by least member."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p, q in self.edges:
            rp, rq = find(p), find(q)
            if rp != rq:
                parent[rp] = rq
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=min))

    def is_forest(self) -> bool:
        return sum(len(c) - 1 for c in self.components) == len(self.edges)

    def induced(self, positions: Sequence[int]) -> "OrderedGraph":
        """Induced subgraph on ``positions`` compressed to relative order."""
        pos = sorted(positions)
        index = {v: i for i, v in enumerate(pos)}
        edges = {(index[p], index[q]) for p, q in self.edges if p in index and q in index}
        return OrderedGraph(len(pos), frozenset(edges))

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "OrderedGraph":
        return OrderedGraph(self.n, self.edges | _normalize_edges(self.n, extra))

    def edge_code(self) -> int:
        """Edge set packed into an integer, MSB = pair (0,1); used for dedup/sorting."""
        code = 0
        npairs = self.n * (self.n - 1) // 2
        for p, q in self.edges:
            code |= 1 << (npairs - 1 - pair_index(self.n, p, q))
        return code


def pair_index(n: int, p: int, q: int) -> int:
    """Row-major index of pair (p, q), p < q, among all pairs on n positions."""
    if p > q:
        p, q = q, p
    return p * n - p * (p + 1) // 2 + (q - p - 1)


def backedge_graph(t: Tournament, nu: Numbering) -> OrderedGraph:
    """Backedge graph of ``t`` under ``nu``: positions p < q joined iff nu[q] beats nu[p]."""
    if nu.n != t.n:
        raise NumberingSizeMismatch(f"numbering of length {nu.n} for {t.n} vertices")
    edges = {
        (p, q)
        for p in range(t.n)
        for q in range(p + 1, t.n)
        if t.beats(nu.perm[q], nu.perm[p])
    }
    return OrderedGraph(t.n, frozenset(edges))


def tournament_from_backedges(b: OrderedGraph) -> Tournament:
    """Tournament whose backedge graph under the identity numbering is ``b``."""
    rows = [0] * b.n
    for p in range(b.n):
        for q in range(p + 1, b.n):
            if b.adjacent(p, q):
                rows[q] |= 1 << p
            else:
                rows[p] |= 1 << q
    return Tournament(b.n, tuple(rows))


def complement(b: OrderedGraph) -> OrderedGraph:
    """Flip every pair's adjacency, keeping the order.  Involution."""
    edges = {
        (p, q)
        for p in range(b.n)
        for q in range(p + 1, b.n)
        if not b.adjacent(p, q)
    }
    return OrderedGraph(b.n, frozenset(edges))


def reverse_order(b: OrderedGraph) -> OrderedGraph:
    """Mirror the order: position p becomes n-1-p.  Involution."""
    edges = {(b.n - 1 - q, b.n - 1 - p) for p, q in b.edges}
    return OrderedGraph(b.n, frozenset(edges))


@dataclass(frozen=True)
class Walk:
    """Vertex sequence with consecutive vertices distinct and adjacent in the host."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) == 0:
            raise InvalidWalk("a walk has at least one vertex")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def validate(self, host: OrderedGraph) -> None:
        for v in self.vertices:
            if not 0 <= v < host.n:
                raise InvalidWalk(f"vertex {v} outside host")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if a == b:
                raise InvalidWalk(f"repeated consecutive vertex {a}")
            if not host.adjacent(a, b):
                raise InvalidWalk(f"step {a}-{b} is not an edge")


def walk_imbalance(host: OrderedGraph, walk: Walk) -> int:
    """Forward steps minus backward steps along the walk; 0 for a single vertex."""
    walk.validate(host)
    bal = 0
    for a, b in zip(walk.vertices, walk.vertices[1:]):
        bal += 1 if b > a else -1
    return bal


def cycle_imbalance(host: OrderedGraph, cycle: Sequence[int]) -> int:
    """Imbalance of one full traversal of a simple cycle (closing step included)."""
    verts = tuple(cycle) + (cycle[0],)
    return walk_imbalance(host, Walk(verts))


def cycles_up_to(host: OrderedGraph, max_len: int) -> Iterator[tuple[int, ...]]:
    """All simple cycles of length 3..max_len, each yielded once.

    Cycles are rooted at their least vertex and oriented so the second
    vertex is smaller than the last; the remainder of the traversal is
    explored in ascending neighbour order, so output order is deterministic.
    """
    masks = host.neighbor_masks

    def neighbors(v: int) -> list[int]:
        m = masks[v]
        return [u for u in range(host.n) if m >> u & 1]

    for root in range(host.n):
        stack = [(root, [root], 1 << root)]
        while stack:
            v, path, seen = stack.pop()
            for u in neighbors(v):
                if u == root and len(path) >= 3:
                    if path[1] < path[-1]:
                        yield tuple(path)
                elif u > root and not seen >> u & 1 and len(path) < max_len:
                    stack.append((u, path + [u], seen | 1 << u))


def all_numberings(n: int) -> Iterator[Numbering]:
    """Every numbering of n vertices in lexicographic order of the permutation."""
    for perm in itertools.permutations(range(n)):
        yield Numbering(perm)


def random_tournament(n: int, rng) -> Tournament:
    """Uniform random labelled tournament drawn from ``rng``."""
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.integers(0, 2):
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
    return Tournament(n, tuple(rows))
