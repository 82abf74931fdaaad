"""Core types: tournaments, ordered graphs, numberings, walks."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from backedges.catalog import catalog, d5_forest_graph
from backedges.core import (
    Numbering,
    OrderedGraph,
    Tournament,
    Walk,
    all_numberings,
    backedge_graph,
    build_tournament,
    complement,
    cycle_imbalance,
    cycles_up_to,
    random_tournament,
    reverse,
    reverse_order,
    tournament_from_backedges,
    walk_imbalance,
)
from backedges.enumeration import all_tournaments, canonical_form
from backedges.errors import (
    AsymmetryViolation,
    InvalidWalk,
    NumberingSizeMismatch,
    ReflexivePair,
    SizeOutOfRange,
)
from backedges.rng import substream


def tournaments(max_n=7):
    return st.integers(2, max_n).flatmap(
        lambda n: st.builds(
            lambda bits: _from_bits(n, bits),
            st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2),
        )
    )


def _from_bits(n, bits):
    rows = [0] * n
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if bits[k]:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
            k += 1
    return Tournament(n, tuple(rows))


class TestBuildTournament:
    def test_single_vertex(self):
        t = build_tournament(1, [])
        assert t.n == 1 and t.rows == (0,)

    def test_cyclic_triangle(self):
        t = build_tournament(3, [(0, 1), (1, 2), (2, 0)])
        assert t.beats(0, 1) and t.beats(1, 2) and t.beats(2, 0)
        assert not t.beats(1, 0)

    def test_both_directions_rejected(self):
        with pytest.raises(AsymmetryViolation):
            build_tournament(2, [(0, 1), (1, 0)])

    def test_missing_direction_rejected(self):
        with pytest.raises(AsymmetryViolation):
            build_tournament(3, [(0, 1)])

    def test_loop_rejected(self):
        with pytest.raises(ReflexivePair):
            build_tournament(2, [(0, 0), (0, 1)])

    def test_size_bounds(self):
        with pytest.raises(SizeOutOfRange):
            build_tournament(0, [])
        with pytest.raises(SizeOutOfRange):
            build_tournament(65, [])


class TestReverse:
    def test_transitive_reversed(self):
        tt3 = catalog("TT_3")
        rev = reverse(tt3)
        assert all(rev.beats(j, i) == tt3.beats(i, j) for i in range(3) for j in range(3) if i != j)

    def test_involution_bit_identical(self):
        p7 = catalog("P_7")
        assert reverse(reverse(p7)) == p7

    def test_d5_self_converse(self):
        d5 = catalog("D_5")
        assert canonical_form(reverse(d5)) == canonical_form(d5)


class TestBackedgeGraph:
    def test_transitive_identity_edgeless(self):
        tt6 = catalog("TT_6")
        assert backedge_graph(tt6, Numbering.identity(6)).edges == frozenset()

    def test_d5_identity_matches_drawing(self):
        b = backedge_graph(catalog("D_5"), Numbering.identity(5))
        assert b == d5_forest_graph()

    def test_c3_single_backedge(self):
        b = backedge_graph(catalog("C_3"), Numbering.identity(3))
        assert b.edges == frozenset({(0, 2)})

    def test_size_mismatch(self):
        with pytest.raises(NumberingSizeMismatch):
            backedge_graph(catalog("C_3"), Numbering.identity(4))


class TestTournamentFromBackedges:
    def test_edgeless_gives_transitive(self):
        t = tournament_from_backedges(OrderedGraph(4))
        assert t == catalog("TT_4")

    def test_roundtrip_identity(self):
        b = OrderedGraph(6, frozenset({(0, 5), (0, 3), (2, 5), (1, 4)}))
        assert backedge_graph(tournament_from_backedges(b), Numbering.identity(6)) == b

    def test_roundtrip_all_numberings_small(self):
        # rebuild equals the relabelled tournament under every numbering
        for n in range(1, 6):
            for t in all_tournaments(n):
                for nu in all_numberings(n):
                    rebuilt = tournament_from_backedges(backedge_graph(t, nu))
                    assert rebuilt == t.relabeled(nu.perm)

    @settings(max_examples=60, derandomize=True)
    @given(tournaments(7), st.randoms(use_true_random=False))
    def test_roundtrip_random(self, t, rnd):
        perm = list(range(t.n))
        rnd.shuffle(perm)
        nu = Numbering(tuple(perm))
        assert tournament_from_backedges(backedge_graph(t, nu)) == t.relabeled(nu.perm)


class TestComplementReverseOrder:
    def test_complement_of_edgeless_is_clique(self):
        b = complement(OrderedGraph(3))
        assert len(b.edges) == 3

    def test_reverse_order_shifts(self):
        b = reverse_order(OrderedGraph(3, frozenset({(0, 1)})))
        assert b.edges == frozenset({(1, 2)})

    def test_obs4_is_mirror_of_obs3(self):
        assert catalog("OBS_4") == reverse_order(catalog("OBS_3"))

    @settings(max_examples=40, derandomize=True)
    @given(tournaments(6))
    def test_duality_complement(self, t):
        nu = Numbering.identity(t.n)
        assert complement(backedge_graph(t, nu)) == backedge_graph(reverse(t), nu)

    @settings(max_examples=40, derandomize=True)
    @given(tournaments(6))
    def test_duality_reversed_numbering(self, t):
        nu = Numbering.identity(t.n)
        lhs = reverse_order(backedge_graph(t, nu))
        rhs = backedge_graph(reverse(t), nu.reversed())
        assert lhs == rhs

    @settings(max_examples=40, derandomize=True)
    @given(tournaments(6))
    def test_involutions(self, t):
        b = backedge_graph(t, Numbering.identity(t.n))
        assert complement(complement(b)) == b
        assert reverse_order(reverse_order(b)) == b


class TestWalks:
    def test_back_and_forth_balances(self):
        host = OrderedGraph(2, frozenset({(0, 1)}))
        assert walk_imbalance(host, Walk((0, 1, 0))) == 0

    def test_triangle_traversal(self):
        host = OrderedGraph(3, frozenset({(0, 1), (1, 2), (0, 2)}))
        assert walk_imbalance(host, Walk((0, 1, 2, 0))) == 1

    def test_double_traversal_doubles(self):
        host = OrderedGraph(3, frozenset({(0, 1), (1, 2), (0, 2)}))
        once = walk_imbalance(host, Walk((0, 1, 2, 0)))
        twice = walk_imbalance(host, Walk((0, 1, 2, 0, 1, 2, 0)))
        assert twice == 2 * once

    def test_single_vertex_walk(self):
        assert walk_imbalance(OrderedGraph(3), Walk((1,))) == 0

    def test_invalid_walks(self):
        host = OrderedGraph(3, frozenset({(0, 1)}))
        with pytest.raises(InvalidWalk):
            walk_imbalance(host, Walk((0, 0)))
        with pytest.raises(InvalidWalk):
            walk_imbalance(host, Walk((0, 2)))

    def test_reversal_negates_concatenation_adds(self):
        host = OrderedGraph(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))
        walk = Walk((0, 1, 2, 3, 0))
        rev = Walk(tuple(reversed(walk.vertices)))
        assert walk_imbalance(host, walk) == -walk_imbalance(host, rev)
        double = Walk(walk.vertices + walk.vertices[1:])
        assert walk_imbalance(host, double) == 2 * walk_imbalance(host, walk)


class TestCycles:
    def test_four_cycle_found_once(self):
        host = OrderedGraph(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))
        cycles = list(cycles_up_to(host, 6))
        assert len(cycles) == 1 and len(cycles[0]) == 4

    def test_imbalance_of_monotone_cycle(self):
        host = OrderedGraph(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))
        (cyc,) = cycles_up_to(host, 6)
        assert cycle_imbalance(host, cyc) in (2, -2)

    def test_forest_has_no_cycles(self):
        assert list(cycles_up_to(d5_forest_graph(), 5)) == []

    def test_k4_cycle_count(self):
        k4 = OrderedGraph(4, frozenset(itertools.combinations(range(4), 2)))
        lengths = sorted(len(c) for c in cycles_up_to(k4, 4))
        assert lengths == [3, 3, 3, 3, 4, 4, 4]


def test_random_tournament_valid():
    rng = substream(0, "core-test")
    for _ in range(20):
        t = random_tournament(9, rng)
        assert isinstance(t, Tournament)
