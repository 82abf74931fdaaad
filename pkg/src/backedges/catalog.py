"""Named small tournaments and ordered graphs.

The catalog holds every object this package treats as a constant: the
transitive tournaments TT_n, the cyclic triangle, the regular 5-vertex
tournament D_5, the Paley tournament P_7 and its one-vertex deletion, the
six-vertex exceptions H_6 and F_6, the one-vertex extensions D5_X of D_5,
and the four obstruction patterns OBS_1..OBS_4.

Objects that have both a formula and a drawn backedge graph are built from
the formula and checked against the drawing the first time the catalog is
used, so a transcription slip cannot survive silently.
"""

from __future__ import annotations

import re

from .core import (
    OrderedGraph,
    Tournament,
    build_tournament,
    reverse,
    reverse_order,
    tournament_from_backedges,
)
from .enumeration import isomorphic
from .errors import UnknownName

# Drawn backedge graphs, 1-based position pairs as printed.
FIGURE_D5_FOREST = frozenset({(1, 4), (1, 5), (2, 5)})
FIGURE_D5_CYCLE = frozenset({(1, 3), (1, 5), (3, 5), (2, 4)})
FIGURE_P7_MINUS = frozenset({(1, 6), (1, 4), (3, 6), (2, 5)})
FIGURE_H6 = frozenset({(1, 6), (1, 4), (2, 6), (3, 5)})
FIGURE_F6 = frozenset({(1, 4), (1, 5), (2, 6), (3, 6)})

_OBS_EDGES = {
    1: (4, frozenset({(1, 3), (2, 4), (1, 4)})),
    2: (5, frozenset({(1, 3), (3, 5), (1, 4), (2, 5)})),
    3: (6, frozenset({(1, 3), (1, 5), (3, 6), (2, 4), (4, 6)})),
}


def _shift(pairs: frozenset[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    return frozenset((p - 1, q - 1) for p, q in pairs)


def ordered_graph_from_figure(n: int, pairs_1based) -> OrderedGraph:
    return OrderedGraph(n, _shift(frozenset(tuple(p) for p in pairs_1based)))


def transitive_tournament(n: int) -> Tournament:
    rows = tuple(((1 << n) - 1) >> (i + 1) << (i + 1) for i in range(n))
    return Tournament(n, rows)


def cyclic_triangle() -> Tournament:
    return build_tournament(3, [(0, 1), (1, 2), (2, 0)])


def d5() -> Tournament:
    """Five vertices, i beats j iff (j - i) mod 5 is 1 or 2; every outdegree is 2."""
    beats = [(i, j) for i in range(5) for j in range(5) if (j - i) % 5 in (1, 2)]
    return build_tournament(5, beats)


def p7() -> Tournament:
    """Paley tournament: i beats j iff (j - i) mod 7 is 1, 2 or 4."""
    beats = [(i, j) for i in range(7) for j in range(7) if (j - i) % 7 in (1, 2, 4)]
    return build_tournament(7, beats)


def p7_minus(deleted: int = 6) -> Tournament:
    """P_7 with one vertex deleted (any choice gives the same class)."""
    keep = [v for v in range(7) if v != deleted]
    return p7().subtournament(keep)


def d5_extension(out_set_1based: frozenset[int]) -> Tournament:
    """D_5 plus a new vertex whose out-neighbour set is ``out_set_1based``."""
    if not out_set_1based <= {1, 2, 3, 4, 5}:
        raise UnknownName(f"D5 extension set {sorted(out_set_1based)} not within 1..5")
    base = d5()
    rows = list(base.rows)
    new_row = 0
    for v1 in range(1, 6):
        v = v1 - 1
        if v1 in out_set_1based:
            new_row |= 1 << v
        else:
            rows[v] |= 1 << 5
    rows.append(new_row)
    return Tournament(6, tuple(rows))


def h6() -> Tournament:
    return d5_extension(frozenset({1, 3}))


def f6() -> Tournament:
    return tournament_from_backedges(ordered_graph_from_figure(6, FIGURE_F6))


def obstruction(index: int) -> OrderedGraph:
    """The four excluded patterns; OBS_4 is the mirror of OBS_3."""
    if index == 4:
        return reverse_order(obstruction(3))
    if index not in _OBS_EDGES:
        raise UnknownName(f"no obstruction OBS_{index}")
    n, pairs = _OBS_EDGES[index]
    return ordered_graph_from_figure(n, pairs)


_figures_checked = False


def check_figures() -> None:
    """Assert the drawn backedge graphs rebuild the formulaic tournaments."""
    global _figures_checked
    if _figures_checked:
        return
    fig_h6 = tournament_from_backedges(ordered_graph_from_figure(6, FIGURE_H6))
    if not isomorphic(fig_h6, h6()):
        raise AssertionError("drawn H_6 backedge graph does not rebuild D5_{1,3}")
    fig_p7m = tournament_from_backedges(ordered_graph_from_figure(6, FIGURE_P7_MINUS))
    if not isomorphic(fig_p7m, p7_minus()):
        raise AssertionError("drawn P_7^- backedge graph does not rebuild P_7 minus a vertex")
    for d in (d5_forest_graph(), ordered_graph_from_figure(5, FIGURE_D5_CYCLE)):
        if not isomorphic(tournament_from_backedges(d), d5()):
            raise AssertionError("drawn D_5 backedge graph does not rebuild D_5")
    _figures_checked = True


def d5_forest_graph() -> OrderedGraph:
    """The acyclic three-edge backedge graph of D_5."""
    return ordered_graph_from_figure(5, FIGURE_D5_FOREST)


_D5X_RE = re.compile(r"^D5_\{(?P<body>[0-9,\s]*)\}$")
_TT_RE = re.compile(r"^TT_(?P<n>[0-9]+)$")
_OBS_RE = re.compile(r"^OBS_(?P<i>[1-4])$")


def catalog(name: str) -> Tournament | OrderedGraph:
    """Look up a named object; raises UnknownName for anything else.

    Accepted names: TT_n, C_3, D_5, P_7, P_7_minus, H_6, H_6_bar, F_6,
    D5_{...} with a comma-separated subset of 1..5, and OBS_1..OBS_4.
    """
    check_figures()
    key = name.strip()
    if key == "C_3":
        return cyclic_triangle()
    if key == "D_5":
        return d5()
    if key == "P_7":
        return p7()
    if key == "P_7_minus":
        return p7_minus()
    if key == "H_6":
        return h6()
    if key == "H_6_bar":
        return reverse(h6())
    if key == "F_6":
        return f6()
    m = _TT_RE.match(key)
    if m:
        return transitive_tournament(int(m.group("n")))
    m = _OBS_RE.match(key)
    if m:
        return obstruction(int(m.group("i")))
    m = _D5X_RE.match(key)
    if m:
        body = m.group("body").strip()
        xs = frozenset(int(s) for s in body.split(",") if s.strip()) if body else frozenset()
        return d5_extension(xs)
    raise UnknownName(f"no catalog entry named {name!r}")


def obstructions() -> tuple[OrderedGraph, ...]:
    return tuple(obstruction(i) for i in (1, 2, 3, 4))
