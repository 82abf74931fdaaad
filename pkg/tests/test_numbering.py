"""Optimal numberings, interval constraints, forests, bipartitions."""

import itertools

import pytest

from backedges.catalog import FIGURE_D5_CYCLE, catalog, ordered_graph_from_figure
from backedges.core import (
    Numbering,
    OrderedGraph,
    backedge_graph,
    random_tournament,
    reverse,
)
from backedges.enumeration import all_tournaments, canonical_form
from backedges.errors import TooLarge
from backedges.numbering import (
    all_optimal_numberings,
    backedge_count,
    forest_numbering,
    has_d5_backedge_pattern,
    interval_violations,
    min_backedge_count,
    min_backedge_numbering,
    transitive_bipartition,
)
from backedges.rng import substream


def exhaustive_min(t):
    return min(
        backedge_count(t, Numbering(p)) for p in itertools.permutations(range(t.n))
    )


class TestMinBackedgeNumbering:
    def test_transitive_is_zero(self):
        for n in (1, 4, 7):
            assert min_backedge_numbering(catalog(f"TT_{n}")).backedge_count == 0

    def test_d5_needs_three(self):
        assert min_backedge_numbering(catalog("D_5")).backedge_count == 3

    def test_p7_minus_needs_four(self):
        result = min_backedge_numbering(catalog("P_7_minus"))
        assert result.backedge_count == 4
        assert result.backedge_count == exhaustive_min(catalog("P_7_minus"))

    def test_matches_exhaustive_on_random(self):
        rng = substream(5, "minnum-oracle")
        for _ in range(40):
            t = random_tournament(int(rng.integers(2, 7)), rng)
            res = min_backedge_numbering(t)
            assert res.backedge_count == exhaustive_min(t)
            assert backedge_count(t, res.numbering) == res.backedge_count

    def test_lexicographic_tiebreak(self):
        t = catalog("D_5")
        res = min_backedge_numbering(t)
        best = res.backedge_count
        lex_first = next(
            Numbering(p)
            for p in itertools.permutations(range(5))
            if backedge_count(t, Numbering(p)) == best
        )
        assert res.numbering == lex_first

    def test_cap(self):
        rng = substream(6, "minnum-cap")
        with pytest.raises(TooLarge):
            min_backedge_numbering(random_tournament(17, rng))


class TestAllOptimalNumberings:
    def test_exactly_the_optima(self):
        t = catalog("D5_{1,2}")
        best = min_backedge_count(t)
        oracle = {
            p
            for p in itertools.permutations(range(6))
            if backedge_count(t, Numbering(p)) == best
        }
        assert {nu.perm for nu in all_optimal_numberings(t)} == oracle


class TestIntervalViolations:
    def test_optimal_numberings_clean_small(self):
        for n in range(1, 6):
            for t in all_tournaments(n):
                for nu in all_optimal_numberings(t):
                    assert interval_violations(t, nu) == []

    def test_transitive_identity_clean(self):
        tt5 = catalog("TT_5")
        assert interval_violations(tt5, Numbering.identity(5)) == []

    def test_nonoptimal_d5_numbering_violates_rule_two(self):
        d5 = catalog("D_5")
        target = ordered_graph_from_figure(5, FIGURE_D5_CYCLE)
        nu = next(
            Numbering(p)
            for p in itertools.permutations(range(5))
            if backedge_graph(d5, Numbering(p)) == target
        )
        violations = interval_violations(d5, nu)
        assert violations and any(v.rule == 2 for v in violations)

    def test_rule_three_pattern_accepted(self):
        # the forced three-edge span-4 pattern is not itself a violation
        b = OrderedGraph(5, frozenset({(0, 4), (0, 3), (1, 4)}))
        from backedges.core import tournament_from_backedges

        t = tournament_from_backedges(b)
        nu = Numbering.identity(5)
        assert all(v.rule != 3 for v in interval_violations(t, nu))


class TestForestNumbering:
    def test_d5_has_forest(self):
        nu = forest_numbering(catalog("D_5"))
        assert nu is not None
        assert backedge_graph(catalog("D_5"), nu).is_forest()

    def test_p7_has_none(self):
        assert forest_numbering(catalog("P_7")) is None

    def test_transitive_identity(self):
        assert forest_numbering(catalog("TT_5")) == Numbering.identity(5)


class TestTransitiveBipartition:
    def test_p7_has_none(self):
        assert transitive_bipartition(catalog("P_7")) is None

    def test_transitive_splits(self):
        parts = transitive_bipartition(catalog("TT_6"))
        assert parts is not None and all(parts)

    def test_d5_splits(self):
        parts = transitive_bipartition(catalog("D_5"))
        assert parts is not None
        side_a, side_b = parts
        assert side_a | side_b == set(range(5)) and not side_a & side_b

    def test_forest_numbering_implies_bipartition(self):
        for n in range(2, 7):
            for t in all_tournaments(n):
                if forest_numbering(t) is not None:
                    assert transitive_bipartition(t) is not None


class TestD5Pattern:
    def test_drawn_forest_matches(self):
        from backedges.catalog import d5_forest_graph

        assert has_d5_backedge_pattern(d5_forest_graph())

    def test_edgeless_false(self):
        assert not has_d5_backedge_pattern(OrderedGraph(6))

    def test_isolated_positions_allowed(self):
        g = OrderedGraph(6, frozenset({(0, 3), (0, 4), (1, 4)}))
        assert has_d5_backedge_pattern(g)
        oracle = any(
            g.induced(sub).edges == frozenset({(0, 3), (0, 4), (1, 4)})
            and len(g.edges) == 3
            for sub in itertools.combinations(range(6), 5)
        )
        assert oracle

    def test_no_room_for_middle_position(self):
        g = OrderedGraph(4, frozenset({(0, 2), (0, 3), (1, 3)}))
        assert not has_d5_backedge_pattern(g)

    def test_wrong_shape_false(self):
        g = OrderedGraph(5, frozenset({(0, 3), (0, 4), (2, 4)}))
        assert not has_d5_backedge_pattern(g)

    def test_three_edge_pattern_forces_d5(self):
        from backedges.core import tournament_from_backedges
        from backedges.search import contains_subtournament

        g = OrderedGraph(6, frozenset({(0, 3), (0, 4), (1, 4)}))
        assert has_d5_backedge_pattern(g)
        t = tournament_from_backedges(g)
        assert contains_subtournament(t, catalog("D_5")) is not None


class TestClassification:
    def test_six_vertex_exceptions(self):
        exceptional = {
            canonical_form(catalog(name)).code
            for name in ("P_7_minus", "H_6", "H_6_bar", "F_6")
        }
        assert len(exceptional) == 4
        at_four = set()
        for t in all_tournaments(6):
            c = min_backedge_count(t)
            assert c <= 4
            if c == 4:
                at_four.add(canonical_form(t).code)
        assert at_four == exceptional

    def test_five_vertex_exception_is_d5(self):
        at_three = [t for t in all_tournaments(5) if min_backedge_count(t) == 3]
        assert len(at_three) == 1
        assert canonical_form(at_three[0]) == canonical_form(catalog("D_5"))

    def test_small_orders_at_most_one(self):
        for n in range(1, 5):
            assert all(min_backedge_count(t) <= 1 for t in all_tournaments(n))

    def test_h6_reverse_distinct_class(self):
        assert canonical_form(catalog("H_6")) != canonical_form(catalog("H_6_bar"))
