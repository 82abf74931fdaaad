"""Parameter derivations, welcoming paths, closures, and the full pipeline."""

import math
from fractions import Fraction

import pytest

from backedges.blockade import Blockade, consecutive_blockade
from backedges.catalog import obstruction
from backedges.construct import (
    ConstructionParams,
    b_length,
    build_counterexample,
    good_pairs,
    is_welcoming,
    least_degree_bound,
    sample_girth_graph,
    sample_probability,
    welcoming_closure,
)
from backedges.core import OrderedGraph, Walk, cycles_up_to
from backedges.errors import InvalidWalk, SizeOutOfRange, VerificationFailed, VertexNotInBlockade


def singleton_blockade(n):
    return Blockade(n, tuple(frozenset({i}) for i in range(n)))


class TestParams:
    def test_derivations(self):
        p = ConstructionParams(2, Fraction(1, 2), 8, 0)
        assert p.n == 16
        assert p.c_prime == Fraction(1, 4)
        assert p.g == 54
        assert p.p_nominal == Fraction(4, 1)
        assert p.degree_cap == p.d**9

    def test_degree_bound_is_least(self):
        for c in (Fraction(1, 4), Fraction(1, 9), Fraction(1, 2)):
            d = least_degree_bound(c)
            c2 = float(c) ** 2

            def holds(x):
                base = x * c2 / (8 * math.e)
                return base > 1 and x * math.log(base) >= math.log(6)

            assert holds(d) and not holds(d - 1)

    def test_probability_capped_when_nominal_too_big(self):
        p, capped = sample_probability(Fraction(4), 16)
        assert capped and p == 0.6 / 16
        p2, capped2 = sample_probability(Fraction(1, 100), 16)
        assert not capped2 and p2 == 0.01

    def test_rejects_bad_inputs(self):
        with pytest.raises(SizeOutOfRange):
            ConstructionParams(0, Fraction(1, 2), 4, 0)
        with pytest.raises(SizeOutOfRange):
            ConstructionParams(2, Fraction(3, 2), 4, 0)


class TestBLength:
    def test_same_block_zero(self):
        b = consecutive_blockade(6, 2, 3)
        assert b_length(b, 0, 2) == 0

    def test_adjacent_blocks_one(self):
        b = consecutive_blockade(6, 2, 3)
        assert b_length(b, 0, 5) == 1

    def test_ends_of_long_blockade(self):
        b = consecutive_blockade(8, 4, 2)
        assert b_length(b, 0, 7) == 3

    def test_uncovered_vertex_raises(self):
        b = Blockade(4, (frozenset({0}),))
        with pytest.raises(VertexNotInBlockade):
            b_length(b, 0, 3)


class TestWelcoming:
    def test_obstruction_path_is_welcoming(self):
        obs1 = obstruction(1)
        b = singleton_blockade(4)
        assert is_welcoming(obs1, b, Walk((1, 3, 0, 2)))

    def test_reverse_traversal_is_not(self):
        obs1 = obstruction(1)
        b = singleton_blockade(4)
        assert not is_welcoming(obs1, b, Walk((2, 0, 3, 1)))

    def test_monotone_path_is_not(self):
        host = OrderedGraph(4, frozenset({(0, 1), (1, 2), (2, 3)}))
        assert not is_welcoming(host, singleton_blockade(4), Walk((0, 1, 2, 3)))

    def test_ends_in_same_block_rejected(self):
        host = OrderedGraph(4, frozenset({(0, 2), (2, 1), (1, 3)}))
        b = Blockade(4, (frozenset({0, 3}), frozenset({1}), frozenset({2})))
        assert not is_welcoming(host, b, Walk((0, 2, 1, 3)))

    def test_wrong_length_raises(self):
        host = OrderedGraph(3, frozenset({(0, 1), (1, 2)}))
        with pytest.raises(InvalidWalk):
            is_welcoming(host, singleton_blockade(3), Walk((0, 1, 2)))

    def test_repeated_vertex_not_a_path(self):
        host = OrderedGraph(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))
        assert not is_welcoming(host, singleton_blockade(4), Walk((0, 1, 0, 3)))


class TestGoodPairs:
    def test_edgeless_empty(self):
        assert good_pairs(OrderedGraph(6), consecutive_blockade(6, 3, 2), 1) == []

    def test_obstruction_one_yields_its_gap(self):
        obs1 = obstruction(1)
        assert good_pairs(obs1, singleton_blockade(4), 1) == [(1, 2)]

    def test_same_block_pairs_never_appear(self):
        host = OrderedGraph(4, frozenset({(0, 2), (1, 3), (0, 3)}))
        b = consecutive_blockade(4, 2, 2)
        for i in (1,):
            for s, t in good_pairs(host, b, i):
                assert b_length(b, s, t) == i > 0


class TestWelcomingClosure:
    def test_edgeless_fixed_point(self):
        j = OrderedGraph(8)
        b = consecutive_blockade(8, 4, 2)
        closed, added = welcoming_closure(j, b)
        assert closed == j and all(not pairs for pairs in added.values())

    def test_levels_add_only_their_length(self):
        # a hand-built host where level 1 adds the obstruction gap edge
        j = obstruction(1)
        b = singleton_blockade(4)
        closed, added = welcoming_closure(j, b)
        assert added[1] == [(1, 2)]
        assert (1, 2) in closed.edges
        for i, pairs in added.items():
            assert all(b_length(b, s, t) == i for s, t in pairs)

    def test_degree_growth_cubed(self):
        j = obstruction(3)
        b = singleton_blockade(6)
        closed, _ = welcoming_closure(j, b)
        before = j.max_degree()
        assert closed.max_degree() <= before**3

    def test_disrespectful_blockade_rejected(self):
        j = OrderedGraph(4)
        b = Blockade(4, (frozenset({0, 3}), frozenset({1, 2})))
        with pytest.raises(SizeOutOfRange):
            welcoming_closure(j, b)


class TestSampleGirthGraph:
    def test_output_properties(self):
        g, report = sample_girth_graph(12, Fraction(1, 3), 54, seed=5)
        assert g.n == 12
        assert max(report.degrees) < least_degree_bound(Fraction(1, 3))
        assert not list(cycles_up_to(g, min(54, 12)))
        assert report.cycle_census == {}
        assert report.capped  # nominal probability is far above 1 here

    def test_anticomplete_reported_small(self):
        _, report = sample_girth_graph(10, Fraction(1, 4), 54, seed=7)
        assert report.anticomplete_status in ("pass", "fail")
        assert report.anticomplete_order is not None

    def test_determinism(self):
        a, _ = sample_girth_graph(14, Fraction(1, 3), 54, seed=9)
        b, _ = sample_girth_graph(14, Fraction(1, 3), 54, seed=9)
        assert a == b


class TestBuildCounterexample:
    def test_deterministic_bullets_pass(self):
        params = ConstructionParams(3, Fraction(1, 3), 6, 17)
        result = build_counterexample(params, strict=False, retries=3)
        statuses = {name: s for name, (s, _) in result.report.checks.items()}
        for check in (
            "blockade_respectful",
            "degree_bound",
            "short_cycles_balanced",
            "rainbow_obstructions_absent",
            "rainbow_forbidden_absent",
            "closure_edge_lengths",
            "welcoming_ends_adjacent",
            "exclusion_consistency",
        ):
            assert statuses[check] == "pass", check

    def test_tournament_matches_graph(self):
        from backedges.core import Numbering, backedge_graph

        params = ConstructionParams(2, Fraction(1, 2), 8, 23)
        result = build_counterexample(params, strict=False, retries=3)
        rebuilt = backedge_graph(result.tournament, Numbering.identity(params.n))
        assert rebuilt == result.graph

    def test_bit_identical_across_runs(self):
        params = ConstructionParams(2, Fraction(1, 2), 8, 31)
        a = build_counterexample(params, strict=False, retries=2)
        b = build_counterexample(params, strict=False, retries=2)
        assert a.graph == b.graph and a.tournament == b.tournament
        assert a.report.checks == b.report.checks

    def test_strict_raises_with_report(self):
        params = ConstructionParams(2, Fraction(1, 2), 8, 41)
        with pytest.raises(VerificationFailed) as err:
            build_counterexample(params, strict=True, retries=2)
        assert err.value.report is not None
        assert "pure_pair_bound" in err.value.report.failed_checks()

    def test_longer_blockade_excludes_rainbow_patterns_nonvacuously(self):
        # eight blocks of width two: obstruction patterns could fit, so their
        # absence is the closure property at work, not a length shortfall
        params = ConstructionParams(8, Fraction(1, 2), 2, 53)
        result = build_counterexample(params, strict=False, retries=4)
        statuses = {name: s for name, (s, _) in result.report.checks.items()}
        assert statuses["rainbow_obstructions_absent"] == "pass"
        assert statuses["rainbow_forbidden_absent"] == "pass"
        assert statuses["short_cycles_balanced"] == "pass"
