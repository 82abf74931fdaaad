"""Containment tests and exact extremal-pair searches.

Pure pairs are ordered in tournaments (everything in the first set beats
everything in the second) and unordered in graphs (either no edges between
the sides or all of them).  The exact searches are branch-and-bound over
the first side: the order of a candidate pair (A, B) with B the common
out-neighbourhood (or common non-neighbourhood) of A is min(|A|, |B|), and
both quantities move monotonically as A grows, which gives the pruning
bound.

The two translation procedures move a pure pair across the tournament /
backedge-graph correspondence by splitting at the least prefix of the
numbering that captures half of one side; each direction loses at most a
factor of two in the order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Numbering, OrderedGraph, Tournament, backedge_graph, complement
from .errors import NotAPurePair, TooLarge

PAIR_SEARCH_CAP = 24
PATTERN_CAP = 8
HOST_CAP = 40

TOURNAMENT_PURE = "tournament_pure"
ANTICOMPLETE = "anticomplete"
COMPLETE = "complete"


@dataclass(frozen=True)
class PurePair:
    """Two disjoint nonempty vertex sets with a uniform relation between them.

    ``kind`` records which relation: every side_a vertex beating every
    side_b vertex (tournament), no edges between the sides (anticomplete),
    or all pairs present (complete).
    """

    side_a: frozenset[int]
    side_b: frozenset[int]
    kind: str = TOURNAMENT_PURE

    def __post_init__(self):
        if not self.side_a or not self.side_b:
            raise NotAPurePair("both sides must be nonempty")
        if self.side_a & self.side_b:
            raise NotAPurePair("sides must be disjoint")
        if self.kind not in (TOURNAMENT_PURE, ANTICOMPLETE, COMPLETE):
            raise NotAPurePair(f"unknown pair kind {self.kind!r}")

    @property
    def order(self) -> int:
        return min(len(self.side_a), len(self.side_b))


def validate_pure_pair(t: Tournament, pair: PurePair) -> None:
    if pair.kind != TOURNAMENT_PURE:
        raise NotAPurePair(f"expected a tournament pure pair, got {pair.kind}")
    for a in pair.side_a:
        for b in pair.side_b:
            if not t.beats(a, b):
                raise NotAPurePair(f"{a} does not beat {b}")


def validate_graph_pair(b: OrderedGraph, pair: PurePair) -> None:
    if pair.kind not in (ANTICOMPLETE, COMPLETE):
        raise NotAPurePair(f"expected a graph pair, got {pair.kind}")
    want = pair.kind == COMPLETE
    for p in pair.side_a:
        for q in pair.side_b:
            if b.adjacent(p, q) != want:
                raise NotAPurePair(f"pair ({p},{q}) breaks the {pair.kind} requirement")


def _mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(v for v in range(mask.bit_length()) if mask >> v & 1)


def _best_pair_over_masks(n: int, partner_of, threshold: int | None):
    """Shared branch-and-bound: maximize min(|A|, |partner_of(A)|).

    ``partner_of`` maps an A-mask extension to the partner mask; it must be
    antitone (adding to A can only shrink the partner).  Vertices are tried
    in a fixed order, so results are deterministic.  ``threshold`` stops the
    search as soon as a pair of at least that order is found.
    """
    full = (1 << n) - 1
    order_hint = sorted(range(n), key=lambda v: (-(partner_of(1 << v).bit_count()), v))
    best = {"order": 0, "a": 0, "b": 0}

    def consider(a_mask: int, partner: int):
        order = min(a_mask.bit_count(), partner.bit_count())
        if order > best["order"]:
            best.update(order=order, a=a_mask, b=partner)

    def rec(idx: int, a_mask: int, partner: int):
        if threshold is not None and best["order"] >= threshold:
            return
        remaining = n - idx
        if min(a_mask.bit_count() + remaining, partner.bit_count()) <= best["order"]:
            return
        if idx == n:
            return
        v = order_hint[idx]
        new_partner = partner & partner_of(1 << v) if a_mask else partner_of(1 << v)
        if new_partner & ~(1 << v):
            take = a_mask | 1 << v
            consider(take, new_partner & ~take)
            rec(idx + 1, take, new_partner & ~(1 << v))
        rec(idx + 1, a_mask, partner)

    rec(0, 0, full)
    return best


def max_pure_pair(
    g: Tournament, *, threshold: int | None = None
) -> PurePair | None:
    """A pure pair of maximum order, or None when no arc exists (n < 2).

    With ``threshold`` set, the search stops at the first pair of at least
    that order (the returned pair is then a witness, not a maximum).
    """
    if g.n > PAIR_SEARCH_CAP:
        raise TooLarge(f"exact pure-pair search capped at {PAIR_SEARCH_CAP} vertices")
    if g.n < 2:
        return None

    def partner_of(v_mask: int) -> int:
        v = v_mask.bit_length() - 1
        return g.rows[v]

    best = _best_pair_over_masks(g.n, partner_of, threshold)
    if best["order"] == 0:
        return None
    return PurePair(_mask_to_set(best["a"]), _mask_to_set(best["b"]), TOURNAMENT_PURE)


def greedy_pure_pair(g: Tournament) -> PurePair | None:
    """Cheap pure pair grown greedily; a witness, with no optimality claim."""
    if g.n < 2:
        return None
    order_hint = sorted(range(g.n), key=lambda v: (-g.out_degree(v), v))
    a_mask = 0
    common = (1 << g.n) - 1
    best: tuple[int, int, int] | None = None
    while True:
        choice = None
        for v in order_hint:
            if a_mask >> v & 1:
                continue
            new_common = common & g.rows[v]
            if not new_common:
                continue
            gain = min((a_mask | 1 << v).bit_count(), new_common.bit_count())
            if choice is None or gain > choice[0]:
                choice = (gain, v, new_common)
        if choice is None:
            break
        _, v, common = choice[0], choice[1], choice[2]
        a_mask |= 1 << v
        order = min(a_mask.bit_count(), common.bit_count())
        if best is None or order > best[0]:
            best = (order, a_mask, common)
        if common.bit_count() <= a_mask.bit_count():
            break
    if best is None or best[0] == 0:
        return None
    return PurePair(_mask_to_set(best[1]), _mask_to_set(best[2]), TOURNAMENT_PURE)


def max_anticomplete_pair(
    b: OrderedGraph, *, threshold: int | None = None
) -> PurePair | None:
    """An anticomplete pair of maximum order, or None when none exists."""
    if b.n > PAIR_SEARCH_CAP:
        raise TooLarge(f"exact anticomplete search capped at {PAIR_SEARCH_CAP} vertices")
    full = (1 << b.n) - 1
    masks = b.neighbor_masks

    def partner_of(v_mask: int) -> int:
        v = v_mask.bit_length() - 1
        return full & ~(masks[v] | v_mask)

    best = _best_pair_over_masks(b.n, partner_of, threshold)
    if best["order"] == 0:
        return None
    return PurePair(_mask_to_set(best["a"]), _mask_to_set(best["b"]), ANTICOMPLETE)


def max_graph_pure_pair(b: OrderedGraph) -> PurePair | None:
    """Best anticomplete or complete pair of the graph, whichever is larger."""
    anti = max_anticomplete_pair(b)
    comp = max_anticomplete_pair(complement(b))
    if comp is not None:
        comp = PurePair(comp.side_a, comp.side_b, COMPLETE)
    candidates = [p for p in (anti, comp) if p is not None]
    if not candidates:
        return None
    return max(candidates, key=lambda p: (p.order, p.kind == ANTICOMPLETE))


def contains_subtournament(g: Tournament, h: Tournament) -> dict[int, int] | None:
    """Injection of h's vertices into g inducing a copy of h, else None."""
    if h.n > PATTERN_CAP:
        raise TooLarge(f"pattern tournaments capped at {PATTERN_CAP} vertices")
    if g.n > HOST_CAP:
        raise TooLarge(f"host tournaments capped at {HOST_CAP} vertices")
    if h.n > g.n:
        return None
    horder = sorted(range(h.n), key=lambda v: (-h.out_degree(v), v))
    g_out = [g.out_degree(v) for v in range(g.n)]
    g_in = [g.in_degree(v) for v in range(g.n)]
    h_out = [h.out_degree(v) for v in range(h.n)]
    h_in = [h.in_degree(v) for v in range(h.n)]
    mapping: dict[int, int] = {}
    used = set()

    def rec(k: int) -> bool:
        if k == h.n:
            return True
        hv = horder[k]
        for gv in range(g.n):
            if gv in used:
                continue
            if g_out[gv] < h_out[hv] or g_in[gv] < h_in[hv]:
                continue
            ok = True
            for hu in horder[:k]:
                gu = mapping[hu]
                if h.beats(hv, hu) != g.beats(gv, gu):
                    ok = False
                    break
            if ok:
                mapping[hv] = gv
                used.add(gv)
                if rec(k + 1):
                    return True
                del mapping[hv]
                used.remove(gv)
        return False

    return dict(mapping) if rec(0) else None


def contains_ordered(g: OrderedGraph, h: OrderedGraph) -> tuple[int, ...] | None:
    """Order-preserving injection whose image induces exactly h, else None."""
    if h.n > PATTERN_CAP:
        raise TooLarge(f"pattern graphs capped at {PATTERN_CAP} vertices")
    if h.n > g.n:
        return None
    chosen: list[int] = []

    def rec(k: int, start: int) -> bool:
        if k == h.n:
            return True
        for p in range(start, g.n - (h.n - k) + 1):
            ok = True
            for kk, q in enumerate(chosen):
                if h.adjacent(kk, k) != g.adjacent(q, p):
                    ok = False
                    break
            if ok:
                chosen.append(p)
                if rec(k + 1, p + 1):
                    return True
                chosen.pop()
        return False

    return tuple(chosen) if rec(0, 0) else None


def _prefix_split(positions_a: list[int], positions_b: list[int], t_order: int, n: int):
    """Least prefix of 0..n-1 in which one side reaches half of ``t_order``.

    Returns (side_name, prefix_part, suffix_part) where side_name is "a" if
    the first side reached half first (ties go to "a").
    """
    set_a, set_b = set(positions_a), set(positions_b)
    in_a = in_b = 0
    for i in range(n):
        if i in set_a:
            in_a += 1
        elif i in set_b:
            in_b += 1
        if 2 * in_a >= t_order:
            prefix = frozenset(v for v in set_a if v <= i)
            suffix = frozenset(v for v in set_b if v > i)
            return "a", prefix, suffix
        if 2 * in_b >= t_order:
            prefix = frozenset(v for v in set_b if v <= i)
            suffix = frozenset(v for v in set_a if v > i)
            return "b", prefix, suffix
    raise AssertionError("half of one side is always reached")  # pragma: no cover


def pure_to_backedge(t: Tournament, nu: Numbering, pair: PurePair) -> PurePair:
    """Translate a pure pair of the tournament into the backedge graph.

    The result is an anticomplete or complete pair of positions of order at
    least half the input's order.
    """
    validate_pure_pair(t, pair)
    pos = nu.inverse
    pos_a = [pos[v] for v in pair.side_a]
    pos_b = [pos[v] for v in pair.side_b]
    side, prefix, suffix = _prefix_split(pos_a, pos_b, pair.order, t.n)
    if side == "a":
        # beaters in the prefix, beaten vertices later: no backedges between
        return PurePair(prefix, suffix, ANTICOMPLETE)
    # beaten vertices in the prefix, beaters later: every pair is a backedge
    return PurePair(prefix, suffix, COMPLETE)


def backedge_to_pure(t: Tournament, nu: Numbering, pair: PurePair) -> PurePair:
    """Translate an anticomplete or complete pair of the backedge graph back.

    The result is a pure pair of the tournament of order at least half the
    input's order.
    """
    validate_graph_pair(backedge_graph(t, nu), pair)
    pos_a = sorted(pair.side_a)
    pos_b = sorted(pair.side_b)
    side, prefix, suffix = _prefix_split(pos_a, pos_b, pair.order, t.n)
    prefix_verts = frozenset(nu.perm[p] for p in prefix)
    suffix_verts = frozenset(nu.perm[p] for p in suffix)
    if pair.kind == ANTICOMPLETE:
        # no backedge between the prefix and the suffix: earlier beats later
        return PurePair(prefix_verts, suffix_verts, TOURNAMENT_PURE)
    # all pairs are backedges: later beats earlier
    return PurePair(suffix_verts, prefix_verts, TOURNAMENT_PURE)


def is_out_simplicial(n: int, arcs: Iterable[tuple[int, int]]) -> bool:
    """Whether every vertex's out-neighbourhood spans no nonadjacent pair."""
    out: dict[int, set[int]] = {v: set() for v in range(n)}
    adjacent: set[tuple[int, int]] = set()
    for u, v in arcs:
        out[u].add(v)
        adjacent.add((u, v))
        adjacent.add((v, u))
    for v in range(n):
        succ = sorted(out[v] - {v})
        for i, x in enumerate(succ):
            for y in succ[i + 1:]:
                if (x, y) not in adjacent:
                    return False
    return True
