"""Containment, pure/anticomplete pair search, and the translation lemma."""

import itertools
import math

import pytest

from backedges.catalog import catalog, obstruction
from backedges.core import (
    Numbering,
    OrderedGraph,
    Tournament,
    backedge_graph,
    complement,
    random_tournament,
)
from backedges.enumeration import all_tournaments
from backedges.errors import NotAPurePair
from backedges.rng import substream
from backedges.search import (
    ANTICOMPLETE,
    COMPLETE,
    PurePair,
    backedge_to_pure,
    contains_ordered,
    contains_subtournament,
    greedy_pure_pair,
    is_out_simplicial,
    max_anticomplete_pair,
    max_graph_pure_pair,
    max_pure_pair,
    pure_to_backedge,
    validate_graph_pair,
    validate_pure_pair,
)


def oracle_pure_order(t):
    """Exhaustive subset oracle for the largest pure pair order."""
    best = 0
    for a_mask in range(1, 1 << t.n):
        common = (1 << t.n) - 1
        rest = a_mask
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            common &= t.rows[v]
        best = max(best, min(bin(a_mask).count("1"), bin(common).count("1")))
    return best


def oracle_anticomplete_order(b):
    best = 0
    masks = b.neighbor_masks
    full = (1 << b.n) - 1
    for a_mask in range(1, full + 1):
        closed = a_mask
        rest = a_mask
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            closed |= masks[v]
        other = full & ~closed
        best = max(best, min(bin(a_mask).count("1"), bin(other).count("1")))
    return best


def naive_contains(g, h):
    """All-injections oracle for subtournament containment."""
    for verts in itertools.permutations(range(g.n), h.n):
        if all(
            h.beats(i, j) == g.beats(verts[i], verts[j])
            for i in range(h.n)
            for j in range(h.n)
            if i != j
        ):
            return True
    return False


class TestContainsSubtournament:
    def test_p7_has_no_tt4(self):
        assert contains_subtournament(catalog("P_7"), catalog("TT_4")) is None

    def test_extensions_contain_d5(self):
        d5 = catalog("D_5")
        for name in ("D5_{}", "D5_{1}", "D5_{1,2}", "D5_{1,3}"):
            found = contains_subtournament(catalog(name), d5)
            assert found is not None
            image = sorted(found.values())
            sub = catalog(name).subtournament(image)
            assert naive_contains(sub, d5)

    def test_witness_induces_copy(self):
        rng = substream(11, "contains-witness")
        h = catalog("C_3")
        for _ in range(30):
            g = random_tournament(8, rng)
            found = contains_subtournament(g, h)
            assert (found is not None) == naive_contains(g, h)
            if found:
                assert all(
                    h.beats(a, b) == g.beats(found[a], found[b])
                    for a in found
                    for b in found
                    if a != b
                )

    def test_agrees_with_naive_oracle(self):
        rng = substream(12, "contains-oracle")
        patterns = [catalog("C_3"), catalog("TT_4"), catalog("D_5")]
        for _ in range(25):
            g = random_tournament(int(rng.integers(3, 9)), rng)
            for h in patterns:
                if h.n > g.n:
                    continue
                assert (contains_subtournament(g, h) is not None) == naive_contains(g, h)


class TestContainsOrdered:
    def test_single_vertex_everywhere(self):
        assert contains_ordered(obstruction(2), OrderedGraph(1)) == (0,)

    def test_figure_two_contains_first_obstruction(self):
        # exhaustive C(6,4) oracle: the acyclic four-edge graph does carry it
        from backedges.catalog import FIGURE_P7_MINUS, ordered_graph_from_figure

        fig2 = ordered_graph_from_figure(6, FIGURE_P7_MINUS)
        obs1 = obstruction(1)
        oracle_hits = [
            sub
            for sub in itertools.combinations(range(6), 4)
            if fig2.induced(sub) == obs1
        ]
        witness = contains_ordered(fig2, obs1)
        assert (witness is not None) == bool(oracle_hits)
        assert witness in [tuple(s) for s in oracle_hits]

    def test_obs3_vs_obs1_matches_oracle(self):
        obs3, obs1 = obstruction(3), obstruction(1)
        oracle = any(
            obs3.induced(sub) == obs1 for sub in itertools.combinations(range(6), 4)
        )
        assert (contains_ordered(obs3, obs1) is not None) == oracle

    def test_induced_not_just_subgraph(self):
        host = OrderedGraph(3, frozenset({(0, 1), (1, 2), (0, 2)}))
        path = OrderedGraph(3, frozenset({(0, 1), (1, 2)}))
        assert contains_ordered(host, path) is None


class TestMaxPurePair:
    def test_d5_order_one(self):
        assert max_pure_pair(catalog("D_5")).order == 1
        assert oracle_pure_order(catalog("D_5")) == 1

    def test_transitive_halves(self):
        for m in (1, 3, 5, 10):
            pair = max_pure_pair(catalog(f"TT_{2 * m}"))
            assert pair.order == m
            validate_pure_pair(catalog(f"TT_{2 * m}"), pair)

    def test_cyclic_triangle(self):
        assert max_pure_pair(catalog("C_3")).order == 1

    def test_single_vertex_none(self):
        assert max_pure_pair(catalog("TT_1")) is None

    def test_at_least_one_for_two_plus(self):
        rng = substream(13, "pure-min")
        for _ in range(20):
            t = random_tournament(int(rng.integers(2, 9)), rng)
            assert max_pure_pair(t).order >= 1

    def test_oracle_agreement(self):
        rng = substream(14, "pure-oracle")
        for _ in range(60):
            t = random_tournament(int(rng.integers(2, 10)), rng)
            pair = max_pure_pair(t)
            assert pair.order == oracle_pure_order(t)
            validate_pure_pair(t, pair)

    def test_threshold_short_circuit(self):
        t = catalog("TT_12")
        pair = max_pure_pair(t, threshold=2)
        assert pair.order >= 2

    def test_greedy_is_valid(self):
        rng = substream(15, "greedy")
        for _ in range(20):
            t = random_tournament(12, rng)
            pair = greedy_pure_pair(t)
            validate_pure_pair(t, pair)
            assert pair.order <= max_pure_pair(t).order


class TestMaxAnticompletePair:
    def test_edgeless_halves(self):
        assert max_anticomplete_pair(OrderedGraph(8)).order == 4

    def test_complete_none(self):
        k5 = OrderedGraph(5, frozenset(itertools.combinations(range(5), 2)))
        assert max_anticomplete_pair(k5) is None

    def test_six_cycle(self):
        c6 = OrderedGraph(6, frozenset({(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)}))
        pair = max_anticomplete_pair(c6)
        assert pair.order == 2 == oracle_anticomplete_order(c6)
        validate_graph_pair(c6, pair)

    def test_oracle_agreement(self):
        rng = substream(16, "anti-oracle")
        for _ in range(40):
            n = int(rng.integers(2, 9))
            edges = frozenset(
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.4
            )
            b = OrderedGraph(n, edges)
            pair = max_anticomplete_pair(b)
            assert (pair.order if pair else 0) == oracle_anticomplete_order(b)

    def test_graph_pure_pair_takes_best_side(self):
        k5 = OrderedGraph(5, frozenset(itertools.combinations(range(5), 2)))
        pair = max_graph_pure_pair(k5)
        assert pair.kind == COMPLETE and pair.order == 2


class TestTranslations:
    def test_transitive_anticomplete(self):
        tt4 = catalog("TT_4")
        pair = PurePair(frozenset({0, 1}), frozenset({2, 3}))
        out = pure_to_backedge(tt4, Numbering.identity(4), pair)
        assert out.kind == ANTICOMPLETE and out.order >= 1

    def test_rejects_fake_pair(self):
        with pytest.raises(NotAPurePair):
            pure_to_backedge(
                catalog("C_3"),
                Numbering.identity(3),
                PurePair(frozenset({1}), frozenset({0})),
            )

    def test_half_order_both_ways(self):
        rng = substream(17, "translate")
        for _ in range(200):
            n = int(rng.integers(2, 17))
            t = random_tournament(n, rng)
            nu = Numbering(tuple(int(x) for x in rng.permutation(n)))
            pair = max_pure_pair(t)
            forward = pure_to_backedge(t, nu, pair)
            validate_graph_pair(backedge_graph(t, nu), forward)
            assert forward.order >= math.ceil(pair.order / 2)
            back = backedge_to_pure(t, nu, forward)
            validate_pure_pair(t, back)
            assert back.order >= math.ceil(forward.order / 2)
            assert back.order >= math.ceil(pair.order / 4)

    def test_graph_side_input(self):
        rng = substream(18, "translate-graph")
        for _ in range(60):
            n = int(rng.integers(2, 13))
            t = random_tournament(n, rng)
            nu = Numbering(tuple(int(x) for x in rng.permutation(n)))
            q = max_graph_pure_pair(backedge_graph(t, nu))
            if q is None:
                continue
            back = backedge_to_pure(t, nu, q)
            validate_pure_pair(t, back)
            assert back.order >= math.ceil(q.order / 2)

    def test_factor_two_consistency_small(self):
        # the tournament's best order and any backedge graph's best order
        # stay within the two-way halving relation
        for n in range(2, 7):
            for t in all_tournaments(n):
                t_order = max_pure_pair(t).order
                g = backedge_graph(t, Numbering.identity(n))
                g_pair = max_graph_pure_pair(g)
                g_order = g_pair.order if g_pair else 0
                assert g_order >= math.ceil(t_order / 2)
                assert t_order >= math.ceil(g_order / 2)


class TestOutSimplicial:
    def test_tournament_always(self):
        d5 = catalog("D_5")
        arcs = [(i, j) for i in range(5) for j in range(5) if d5.beats(i, j)]
        assert is_out_simplicial(5, arcs)

    def test_arcless(self):
        assert is_out_simplicial(4, [])

    def test_open_out_star(self):
        assert not is_out_simplicial(3, [(0, 1), (0, 2)])

    def test_closed_out_star(self):
        assert is_out_simplicial(3, [(0, 1), (0, 2), (1, 2)])
