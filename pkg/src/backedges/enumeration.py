"""Isomorph-free tournament generation and backedge-graph censuses.

Canonical forms are computed by brute force over all vertex relabellings,
which is exact and fast enough for the orders this package works at (the
whole point is small cases settled beyond doubt).  Generation proceeds by
extending each (n-1)-vertex class by every possible orientation row for a
new vertex and deduplicating by canonical code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import Numbering, OrderedGraph, Tournament, backedge_graph
from .errors import TooLarge, TooLargeForExactCanonicalization

CANONICAL_CAP = 8
ENUMERATION_CAP = 7
CENSUS_CAP = 8

_perm_arrays: dict[int, np.ndarray] = {}
_class_cache: dict[int, tuple[Tournament, ...]] = {}


def _perms(n: int) -> np.ndarray:
    if n not in _perm_arrays:
        _perm_arrays[n] = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return _perm_arrays[n]


def _matrix(t: Tournament) -> np.ndarray:
    m = np.zeros((t.n, t.n), dtype=bool)
    for i in range(t.n):
        row = t.rows[i]
        for j in range(t.n):
            if row >> j & 1:
                m[i, j] = True
    return m


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Lexicographically least upper-triangle bit string over all relabellings.

    Two tournaments are isomorphic exactly when their canonical forms are
    equal.  ``code`` packs the bits MSB-first in pair order (0,1), (0,2), ...
    """

    n: int
    code: int


def canonical_form(t: Tournament) -> CanonicalForm:
    if t.n > CANONICAL_CAP:
        raise TooLargeForExactCanonicalization(
            f"exact canonicalization capped at {CANONICAL_CAP} vertices, got {t.n}"
        )
    if t.n == 1:
        return CanonicalForm(1, 0)
    perms = _perms(t.n)
    m = _matrix(t)
    relabeled = m[perms[:, :, None], perms[:, None, :]]  # (n!, n, n)
    iu, ju = np.triu_indices(t.n, k=1)
    bits = relabeled[:, iu, ju].astype(np.uint64)
    npairs = len(iu)
    weights = (1 << np.arange(npairs - 1, -1, -1, dtype=np.uint64)).astype(np.uint64)
    codes = bits @ weights
    return CanonicalForm(t.n, int(codes.min()))


def tournament_from_code(form: CanonicalForm) -> Tournament:
    """Rebuild the representative tournament a canonical code describes."""
    n, code = form.n, form.code
    npairs = n * (n - 1) // 2
    rows = [0] * n
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            bit = code >> (npairs - 1 - idx) & 1
            if bit:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
            idx += 1
    return Tournament(n, tuple(rows))


def isomorphic(a: Tournament, b: Tournament) -> bool:
    """Exact isomorphism test via canonical forms (both sides <= 8 vertices)."""
    if a.n != b.n:
        return False
    return canonical_form(a) == canonical_form(b)


def all_tournaments(n: int) -> tuple[Tournament, ...]:
    """One canonical representative per isomorphism class, sorted by code."""
    if n > ENUMERATION_CAP:
        raise TooLarge(f"exhaustive enumeration capped at {ENUMERATION_CAP} vertices")
    if n in _class_cache:
        return _class_cache[n]
    if n == 1:
        reps = (Tournament(1, (0,)),)
        _class_cache[1] = reps
        return reps
    smaller = all_tournaments(n - 1)
    seen: set[int] = set()
    codes: list[int] = []
    w = n - 1  # the new vertex
    for t in smaller:
        for out_mask in range(1 << w):
            rows = list(t.rows)
            new_row = out_mask
            for u in range(w):
                if not out_mask >> u & 1:
                    rows[u] |= 1 << w
            rows.append(new_row)
            cand = Tournament(n, tuple(rows))
            code = canonical_form(cand).code
            if code not in seen:
                seen.add(code)
                codes.append(code)
    reps = tuple(tournament_from_code(CanonicalForm(n, c)) for c in sorted(codes))
    _class_cache[n] = reps
    return reps


def backedge_census(t: Tournament) -> tuple[OrderedGraph, ...]:
    """All distinct backedge graphs of ``t`` over its n! numberings.

    Distinctness is exact edge-set equality; output is sorted by packed
    edge code so runs are reproducible.
    """
    if t.n > CENSUS_CAP:
        raise TooLarge(f"backedge census capped at {CENSUS_CAP} vertices")
    seen: dict[int, OrderedGraph] = {}
    for perm in itertools.permutations(range(t.n)):
        b = backedge_graph(t, Numbering(perm))
        seen.setdefault(b.edge_code(), b)
    return tuple(seen[c] for c in sorted(seen))
