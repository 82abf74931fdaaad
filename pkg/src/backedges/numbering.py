"""Optimal numberings and the structure they force.

A numbering of a tournament is optimal when no numbering has fewer
backedges.  The pair contribution of two vertices depends only on their
relative order, so the minimum decomposes over subsets: placing v last
inside a set S costs the number of members of S that v beats.  That gives an
exact subset DP, which also lets us walk out the lexicographically least
optimal permutation and enumerate all optimal numberings without slack.

Also here: the three interval constraints every optimal numbering obeys,
forest numberings, transitive bipartitions, and the five-position test for
the unique three-edge backedge pattern of D_5.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Numbering, OrderedGraph, Tournament, backedge_graph
from .errors import NumberingSizeMismatch, TooLarge

MIN_NUMBERING_CAP = 16
FOREST_CAP = 8
BIPARTITION_CAP = 16

_dp_cache: dict[tuple[int, tuple[int, ...]], list[int]] = {}


def backedge_count(t: Tournament, nu: Numbering) -> int:
    if nu.n != t.n:
        raise NumberingSizeMismatch(f"numbering of length {nu.n} for {t.n} vertices")
    count = 0
    placed = 0
    for v in nu.perm:
        count = count + (t.rows[v] & placed).bit_count()
        placed |= 1 << v
    return count


def _min_table(t: Tournament) -> list[int]:
    """f[S] = fewest backedges over orderings of subset S (internal pairs only)."""
    key = (t.n, t.rows)
    if key in _dp_cache:
        return _dp_cache[key]
    size = 1 << t.n
    f = [0] * size
    for s in range(1, size):
        best = None
        rest = s
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            prev = s & ~(1 << v)
            cost = f[prev] + (t.rows[v] & prev).bit_count()  # v placed last in S
            if best is None or cost < best:
                best = cost
        f[s] = best
    _dp_cache[key] = f
    return f


def min_backedge_count(t: Tournament) -> int:
    if t.n > MIN_NUMBERING_CAP:
        raise TooLarge(f"exact optimal numbering capped at {MIN_NUMBERING_CAP} vertices")
    return _min_table(t)[(1 << t.n) - 1]


@dataclass(frozen=True)
class NumberingResult:
    numbering: Numbering
    backedge_count: int
    optimal: bool = True


def _cross_cost(t: Tournament, placed_mask: int, remaining_mask: int) -> int:
    """Backedges between placed prefix and the remaining set, fixed by membership."""
    total = 0
    rest = remaining_mask
    while rest:
        w = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        total += (t.rows[w] & placed_mask).bit_count()
    return total


def min_backedge_numbering(t: Tournament) -> NumberingResult:
    """A minimum-backedge numbering; ties broken by least permutation."""
    if t.n > MIN_NUMBERING_CAP:
        raise TooLarge(f"exact optimal numbering capped at {MIN_NUMBERING_CAP} vertices")
    f = _min_table(t)
    target = f[(1 << t.n) - 1]
    perm: list[int] = []
    placed = 0
    acc = 0
    remaining = (1 << t.n) - 1
    while remaining:
        for v in range(t.n):
            if not remaining >> v & 1:
                continue
            new_acc = acc + (t.rows[v] & placed).bit_count()
            rest = remaining & ~(1 << v)
            completion = new_acc + _cross_cost(t, placed | 1 << v, rest) + f[rest]
            if completion == target:
                perm.append(v)
                placed |= 1 << v
                acc = new_acc
                remaining = rest
                break
        else:  # pragma: no cover - DP guarantees a choice exists
            raise AssertionError("optimal completion lost during reconstruction")
    return NumberingResult(Numbering(tuple(perm)), target, optimal=True)


def all_optimal_numberings(t: Tournament):
    """Every optimal numbering, in lexicographic order of the permutation.

    The subset DP gives the exact completion cost of any prefix, so the
    search only ever descends into prefixes of optimal numberings.
    """
    f = _min_table(t)
    target = f[(1 << t.n) - 1]

    def descend(perm: list[int], placed: int, acc: int, remaining: int):
        if not remaining:
            yield Numbering(tuple(perm))
            return
        for v in range(t.n):
            if not remaining >> v & 1:
                continue
            new_acc = acc + (t.rows[v] & placed).bit_count()
            rest = remaining & ~(1 << v)
            if new_acc + _cross_cost(t, placed | 1 << v, rest) + f[rest] == target:
                perm.append(v)
                yield from descend(perm, placed | 1 << v, new_acc, rest)
                perm.pop()

    yield from descend([], 0, 0, (1 << t.n) - 1)


@dataclass(frozen=True)
class IntervalViolation:
    """One failed interval constraint; positions are 0-based."""

    rule: int  # 1 = half-degree bound, 2 = short interval, 3 = length-4 interval
    i: int
    j: int
    detail: str


def interval_violations(t: Tournament, nu: Numbering) -> list[IntervalViolation]:
    """Check the constraints every optimal numbering satisfies.

    Empty iff, for all positions i < j: endpoints see at most (j-i)/2
    backedges into the interval; intervals spanning at most 3 steps carry at
    most one backedge; intervals spanning 4 steps carry at most three
    backedges, and exactly three forces the pattern
    {(i, i+4), (i, i+3), (i+1, i+4)}.
    """
    b = backedge_graph(t, nu)
    masks = b.neighbor_masks
    out: list[IntervalViolation] = []
    n = t.n
    for i in range(n):
        for j in range(i + 1, n):
            span = j - i
            inner_after = sum(1 for p in range(i + 1, j + 1) if masks[i] >> p & 1)
            if 2 * inner_after > span:
                out.append(
                    IntervalViolation(
                        1, i, j, f"position {i} has {inner_after} backedges into ({i},{j}]"
                    )
                )
            inner_before = sum(1 for p in range(i, j) if masks[j] >> p & 1)
            if 2 * inner_before > span:
                out.append(
                    IntervalViolation(
                        1, i, j, f"position {j} has {inner_before} backedges into [{i},{j})"
                    )
                )
            if span > 4:
                continue
            interval_edges = [
                (p, q) for p, q in b.edges if i <= p <= j and i <= q <= j
            ]
            if span <= 3 and len(interval_edges) > 1:
                out.append(
                    IntervalViolation(
                        2, i, j, f"{len(interval_edges)} backedges inside span-{span} interval"
                    )
                )
            if span == 4:
                if len(interval_edges) > 3:
                    out.append(
                        IntervalViolation(3, i, j, f"{len(interval_edges)} backedges inside span-4 interval")
                    )
                elif len(interval_edges) == 3:
                    required = {(i, i + 4), (i, i + 3), (i + 1, i + 4)}
                    if set(interval_edges) != required:
                        out.append(
                            IntervalViolation(
                                3, i, j, f"three backedges {sorted(interval_edges)} not the forced pattern"
                            )
                        )
    return out


def forest_numbering(t: Tournament) -> Numbering | None:
    """First numbering (lex order) whose backedge graph is acyclic, else None."""
    if t.n > FOREST_CAP:
        raise TooLarge(f"forest-numbering search capped at {FOREST_CAP} vertices")
    for perm in itertools.permutations(range(t.n)):
        parent = list(range(t.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        placed = 0
        acyclic = True
        pos_of = {v: p for p, v in enumerate(perm)}
        for q in range(t.n):
            vq = perm[q]
            row = t.rows[vq] & placed
            while row:
                vp = (row & -row).bit_length() - 1
                row &= row - 1
                rp, rq = find(pos_of[vp]), find(q)
                if rp == rq:
                    acyclic = False
                    break
                parent[rp] = rq
            if not acyclic:
                break
            placed |= 1 << vq
        if acyclic:
            return Numbering(perm)
    return None


def _induces_transitive(t: Tournament, mask: int) -> bool:
    # a subtournament is transitive iff its internal outdegrees are all distinct
    size = mask.bit_count()
    seen = 0
    rest = mask
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        d = (t.rows[v] & mask).bit_count()
        if seen >> d & 1:
            return False
        seen |= 1 << d
    return seen == (1 << size) - 1


def transitive_bipartition(t: Tournament) -> tuple[frozenset[int], frozenset[int]] | None:
    """Split into two nonempty parts, each inducing a transitive subtournament."""
    if t.n > BIPARTITION_CAP:
        raise TooLarge(f"bipartition search capped at {BIPARTITION_CAP} vertices")
    if t.n < 2:
        return None
    full = (1 << t.n) - 1
    # vertex 0 stays on the first side; both sides nonempty
    for a_mask in range(1, full, 2):
        b_mask = full & ~a_mask
        if b_mask and _induces_transitive(t, a_mask) and _induces_transitive(t, b_mask):
            side_a = frozenset(v for v in range(t.n) if a_mask >> v & 1)
            side_b = frozenset(v for v in range(t.n) if b_mask >> v & 1)
            return side_a, side_b
    return None


def has_d5_backedge_pattern(b: OrderedGraph) -> bool:
    """Whether b consists of exactly three edges placed as {ad, ae, be}.

    Positions a < b < c < d < e with the whole edge set equal to
    {(a,d), (a,e), (b,e)}; c is any position strictly between b and d.
    This is precisely the three-edge backedge pattern that forces a copy
    of D_5.
    """
    if len(b.edges) != 3:
        return False
    support = sorted({v for e in b.edges for v in e})
    if len(support) != 4:
        return False
    a, bb, d, e = support  # roles are forced by the ordering a < b < d < e
    if d - bb < 2:
        return False  # no room for the middle position c
    return b.edges == frozenset({(a, d), (a, e), (bb, e)})
