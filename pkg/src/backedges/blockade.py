"""Blockades: disjoint vertex blocks, rainbow copies, traces and minors.

A blockade is an ordered family of pairwise disjoint nonempty vertex blocks
in a host.  A copy of a pattern is rainbow when its vertices lie in blocks,
one per block; the trace of a pattern is the set of block-index sets its
rainbow copies touch.  A blockade is support-uniform up to size tau when
every pattern of at most tau vertices has empty or complete trace, and
support-invariant when no sufficiently wide contraction changes any trace.

Sub-blockades drop blocks, contractions shrink them, and a minor is either
composed with the other; ``find_uniform_minor`` searches for a minor that
passes both checks at desk scale.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .core import OrderedGraph, Tournament, pair_index
from .errors import SearchFailed, SizeOutOfRange, VertexNotInBlockade
from .rng import substream


@dataclass(frozen=True)
class Blockade:
    """Ordered list of pairwise disjoint nonempty blocks over a host of given size."""

    host_size: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for idx, block in enumerate(self.blocks):
            if not block:
                raise SizeOutOfRange(f"block {idx} is empty")
            for v in block:
                if not 0 <= v < self.host_size:
                    raise SizeOutOfRange(f"block {idx} member {v} outside host")
                if v in seen:
                    raise SizeOutOfRange(f"vertex {v} appears in two blocks")
                seen.add(v)

    @property
    def length(self) -> int:
        return len(self.blocks)

    @property
    def width(self) -> int:
        return min(len(b) for b in self.blocks)

    @property
    def respectful(self) -> bool:
        """Blocks occupy increasing intervals of the host order."""
        for earlier, later in zip(self.blocks, self.blocks[1:]):
            if max(earlier) >= min(later):
                return False
        return True

    def block_of(self, v: int) -> int:
        for idx, block in enumerate(self.blocks):
            if v in block:
                return idx
        raise VertexNotInBlockade(f"vertex {v} lies in no block")

    def covers(self, v: int) -> bool:
        return any(v in block for block in self.blocks)


def sub_blockade(b: Blockade, indices) -> Blockade:
    """Keep only the blocks at the given indices (in their original order)."""
    idx = sorted(set(indices))
    return Blockade(b.host_size, tuple(b.blocks[i] for i in idx))


def contraction(b: Blockade, new_blocks) -> Blockade:
    """Shrink each block to a nonempty subset of itself."""
    shrunk = tuple(frozenset(nb) for nb in new_blocks)
    if len(shrunk) != b.length:
        raise SizeOutOfRange("a contraction keeps the blockade's length")
    for old, new in zip(b.blocks, shrunk):
        if not new <= old:
            raise SizeOutOfRange("a contraction only shrinks blocks")
    return Blockade(b.host_size, shrunk)


def consecutive_blockade(host_size: int, k: int, width: int) -> Blockade:
    """k consecutive width-sized intervals; respectful by construction."""
    if k * width > host_size:
        raise SizeOutOfRange(f"{k} blocks of width {width} exceed host of {host_size}")
    blocks = tuple(
        frozenset(range(i * width, (i + 1) * width)) for i in range(k)
    )
    return Blockade(host_size, blocks)


def rainbow_copy(host, blockade: Blockade, pattern):
    """An induced rainbow copy of ``pattern``: one vertex per block, blocks distinct.

    For an ordered host the copy is order-preserving (a tuple of positions).
    For a tournament host it is an isomorphic subtournament (a vertex map).
    """
    if isinstance(host, OrderedGraph) and isinstance(pattern, OrderedGraph):
        return _rainbow_ordered(host, blockade, pattern)
    if isinstance(host, Tournament) and isinstance(pattern, Tournament):
        return _rainbow_tournament(host, blockade, pattern)
    raise TypeError("host and pattern must both be ordered graphs or both tournaments")


def _rainbow_ordered(host: OrderedGraph, b: Blockade, j: OrderedGraph):
    block_index = {}
    for idx, block in enumerate(b.blocks):
        for v in block:
            block_index[v] = idx
    covered = sorted(block_index)
    chosen: list[int] = []
    used_blocks: set[int] = set()

    def rec(k: int, start: int) -> bool:
        if k == j.n:
            return True
        for p in covered:
            if p < start:
                continue
            blk = block_index[p]
            if blk in used_blocks:
                continue
            if any(host.adjacent(q, p) != j.adjacent(kk, k) for kk, q in enumerate(chosen)):
                continue
            chosen.append(p)
            used_blocks.add(blk)
            if rec(k + 1, p + 1):
                return True
            chosen.pop()
            used_blocks.remove(blk)
        return False

    return tuple(chosen) if rec(0, 0) else None


def _rainbow_tournament(host: Tournament, b: Blockade, j: Tournament):
    block_index = {}
    for idx, block in enumerate(b.blocks):
        for v in block:
            block_index[v] = idx
    covered = sorted(block_index)
    order = sorted(range(j.n), key=lambda v: (-j.out_degree(v), v))
    mapping: dict[int, int] = {}
    used_vertices: set[int] = set()
    used_blocks: set[int] = set()

    def rec(k: int) -> bool:
        if k == j.n:
            return True
        jv = order[k]
        for gv in covered:
            if gv in used_vertices or block_index[gv] in used_blocks:
                continue
            ok = True
            for ju in order[:k]:
                if j.beats(jv, ju) != host.beats(gv, mapping[ju]):
                    ok = False
                    break
            if ok:
                mapping[jv] = gv
                used_vertices.add(gv)
                used_blocks.add(block_index[gv])
                if rec(k + 1):
                    return True
                del mapping[jv]
                used_vertices.remove(gv)
                used_blocks.remove(block_index[gv])
        return False

    return dict(mapping) if rec(0) else None


def _edge_code(j: OrderedGraph) -> int:
    code = 0
    for p, q in j.edges:
        code |= 1 << pair_index(j.n, p, q)
    return code


def graph_from_edge_code(m: int, code: int) -> OrderedGraph:
    edges = {
        (p, q)
        for p in range(m)
        for q in range(p + 1, m)
        if code >> pair_index(m, p, q) & 1
    }
    return OrderedGraph(m, frozenset(edges))


def all_ordered_graphs(m: int):
    """Every ordered graph on m positions, by ascending edge code."""
    for code in range(1 << (m * (m - 1) // 2)):
        yield graph_from_edge_code(m, code)


def _support_codes(host: OrderedGraph, b: Blockade, m: int) -> dict[tuple[int, ...], frozenset[int]]:
    """For each m-subset of block indices, the induced-edge codes its rainbow choices realize."""
    out: dict[tuple[int, ...], frozenset[int]] = {}
    for support in itertools.combinations(range(b.length), m):
        codes: set[int] = set()
        for choice in itertools.product(*(sorted(b.blocks[i]) for i in support)):
            verts = sorted(choice)
            code = 0
            for a in range(m):
                for bb in range(a + 1, m):
                    if host.adjacent(verts[a], verts[bb]):
                        code |= 1 << pair_index(m, a, bb)
            codes.add(code)
        out[support] = frozenset(codes)
    return out


def trace(host: OrderedGraph, b: Blockade, j: OrderedGraph) -> frozenset[frozenset[int]]:
    """Supports of all rainbow copies of ``j``: the block-index sets they touch."""
    target = _edge_code(j)
    found = set()
    for support, codes in _support_codes(host, b, j.n).items():
        if target in codes:
            found.add(frozenset(support))
    return frozenset(found)


@dataclass(frozen=True)
class UniformityResult:
    uniform: bool
    violating_pattern: OrderedGraph | None = None
    violating_support: tuple[int, ...] | None = None


def is_support_uniform(host: OrderedGraph, b: Blockade, tau: int) -> UniformityResult:
    """Whether every pattern on at most tau vertices has empty or complete trace.

    On failure reports the first (by size, then edge code) violating pattern
    together with a support missing from its trace.
    """
    for m in range(1, tau + 1):
        if m > b.length:
            break
        by_support = _support_codes(host, b, m)
        supports = sorted(by_support)
        code_count = 1 << (m * (m - 1) // 2)
        for code in range(code_count):
            present = [s for s in supports if code in by_support[s]]
            if present and len(present) != len(supports):
                missing = next(s for s in supports if code not in by_support[s])
                return UniformityResult(False, graph_from_edge_code(m, code), missing)
    return UniformityResult(True)


@dataclass(frozen=True)
class InvarianceVerdict:
    status: str  # verified_exhaustive | refuted | undetermined
    contractions_checked: int
    witness_contraction: Blockade | None = None
    witness_pattern: OrderedGraph | None = None


def _contraction_count(b: Blockade, min_size: int) -> int:
    total = 1
    for block in b.blocks:
        ways = sum(math.comb(len(block), s) for s in range(min_size, len(block) + 1))
        total *= ways
    return total


def check_support_invariance(
    host: OrderedGraph,
    b: Blockade,
    kappa: Fraction | float,
    tau: int,
    budget: int = 4096,
    seed: int = 0,
) -> InvarianceVerdict:
    """Do all contractions of relative width kappa leave every trace unchanged?

    Exhaustive when the number of admissible contractions fits the budget,
    otherwise a seeded random sample; a refutation returns the contraction
    and a pattern whose trace shrank.
    """
    min_size = max(1, math.ceil(kappa * b.width))
    base = {m: _support_codes(host, b, m) for m in range(1, tau + 1) if m <= b.length}

    def compare(prime: Blockade) -> tuple[OrderedGraph, tuple[int, ...]] | None:
        for m, by_support in base.items():
            prime_codes = _support_codes(host, prime, m)
            for support, codes in by_support.items():
                diff = codes ^ prime_codes[support]
                if diff:
                    code = min(diff)
                    return graph_from_edge_code(m, code), support
        return None

    total = _contraction_count(b, min_size)
    if total <= budget:
        per_block = [
            [
                frozenset(c)
                for s in range(min_size, len(block) + 1)
                for c in itertools.combinations(sorted(block), s)
            ]
            for block in b.blocks
        ]
        checked = 0
        for combo in itertools.product(*per_block):
            prime = Blockade(b.host_size, tuple(combo))
            checked += 1
            witness = compare(prime)
            if witness:
                return InvarianceVerdict("refuted", checked, prime, witness[0])
        return InvarianceVerdict("verified_exhaustive", checked)

    rng = substream(seed, "support-invariance")
    for checked in range(1, budget + 1):
        combo = []
        for block in b.blocks:
            members = sorted(block)
            size = int(rng.integers(min_size, len(members) + 1))
            picked = rng.choice(len(members), size=size, replace=False)
            combo.append(frozenset(members[i] for i in picked))
        prime = Blockade(b.host_size, tuple(combo))
        witness = compare(prime)
        if witness:
            return InvarianceVerdict("refuted", checked, prime, witness[0])
    return InvarianceVerdict("undetermined", budget)


def find_uniform_minor(
    host: OrderedGraph,
    b: Blockade,
    k: int,
    tau: int,
    kappa: Fraction | float = Fraction(1, 2),
    budget: int = 64,
    invariance_budget: int = 512,
) -> Blockade:
    """Best-effort search for a length-k minor that passes both checks.

    Repeatedly, while some pattern's trace is neither empty nor full, either
    drop a block outside one of its missing supports or halve every block to
    kill sporadic copies; then confirm support-invariance.  Raises
    SearchFailed (with progress) when the round budget runs out, which does
    not contradict the existence guarantee -- that needs far greater length.
    """
    cur = b
    history: list[str] = []
    for round_no in range(budget):
        if cur.length < k:
            raise SearchFailed(f"length fell below {k}", progress=history)
        res = is_support_uniform(host, cur, tau)
        if not res.uniform:
            if cur.length > k:
                missing = set(res.violating_support or ())
                drop = next(i for i in range(cur.length) if i not in missing)
                cur = sub_blockade(cur, [i for i in range(cur.length) if i != drop])
                history.append(f"round {round_no}: dropped block {drop}")
                continue
            if all(len(block) == 1 for block in cur.blocks):
                raise SearchFailed("non-uniform with singleton blocks", progress=history)
            cur = contraction(
                cur,
                [frozenset(sorted(block)[: max(1, len(block) // 2)]) for block in cur.blocks],
            )
            history.append(f"round {round_no}: halved blocks")
            continue
        if cur.length > k:
            cur = sub_blockade(cur, range(k))
            history.append(f"round {round_no}: kept first {k} blocks")
            continue
        verdict = check_support_invariance(host, cur, kappa, tau, invariance_budget)
        if verdict.status == "refuted" and verdict.witness_contraction is not None:
            cur = verdict.witness_contraction
            history.append(f"round {round_no}: adopted refuting contraction")
            continue
        return cur
    raise SearchFailed(f"no uniform minor within {budget} rounds", progress=history)
