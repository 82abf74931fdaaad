"""Textual and DOT serialization.

Tournament format: line 1 ``tournament <n>``, line 2 a hex packing
(MSB-first) of the upper-triangle bits over pairs (i, j) with i < j in
row-major order, bit 1 iff i beats j.  Ordered graphs use ``ordered <n>``
with bit 1 iff the pair is adjacent.  Blockades use ``blockade <k>`` then
one line per block listing 1-based host indices.

Anywhere a file path is accepted, a catalog name is accepted too.
"""

from __future__ import annotations

import os

from .catalog import catalog
from .core import OrderedGraph, Tournament, pair_index
from .errors import FormatError, UnknownName


def _pack_bits(n: int, bit_at) -> str:
    npairs = n * (n - 1) // 2
    value = 0
    for i in range(n):
        for j in range(i + 1, n):
            value = value << 1 | (1 if bit_at(i, j) else 0)
    digits = max(1, (npairs + 3) // 4)
    value <<= digits * 4 - npairs  # pad on the right so pair (0,1) is the MSB
    return format(value, f"0{digits}x")


def _unpack_bits(n: int, hexstr: str) -> list[int]:
    npairs = n * (n - 1) // 2
    digits = max(1, (npairs + 3) // 4)
    if len(hexstr) != digits:
        raise FormatError(f"expected {digits} hex digits for {n} vertices, got {len(hexstr)}")
    try:
        value = int(hexstr, 16)
    except ValueError as exc:
        raise FormatError(f"bad hex payload {hexstr!r}") from exc
    value >>= digits * 4 - npairs
    return [value >> (npairs - 1 - k) & 1 for k in range(npairs)]


def emit_tournament_text(t: Tournament) -> str:
    return f"tournament {t.n}\n{_pack_bits(t.n, t.beats)}\n"


def emit_ordered_text(b: OrderedGraph) -> str:
    return f"ordered {b.n}\n{_pack_bits(b.n, b.adjacent)}\n"


def parse_object(text: str) -> Tournament | OrderedGraph:
    # whitespace-insensitive, so the one-line form "tournament 5 0a8" parses too
    tokens = text.split()
    if not tokens:
        raise FormatError("empty input")
    if tokens[0] not in ("tournament", "ordered") or len(tokens) < 2:
        raise FormatError(f"bad header {' '.join(tokens[:2])!r}")
    head = tokens[0]
    try:
        n = int(tokens[1])
    except ValueError as exc:
        raise FormatError(f"bad vertex count {tokens[1]!r}") from exc
    if n == 1:
        bits = []
    else:
        if len(tokens) < 3:
            raise FormatError("missing hex payload")
        bits = _unpack_bits(n, tokens[2])
    if head == "tournament":
        rows = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if bits[pair_index(n, i, j)]:
                    rows[i] |= 1 << j
                else:
                    rows[j] |= 1 << i
        return Tournament(n, tuple(rows))
    edges = {
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if bits[pair_index(n, i, j)]
    }
    return OrderedGraph(n, frozenset(edges))


def emit_blockade_text(blocks: tuple[frozenset[int], ...]) -> str:
    lines = [f"blockade {len(blocks)}"]
    for block in blocks:
        lines.append(" ".join(str(v + 1) for v in sorted(block)))
    return "\n".join(lines) + "\n"


def parse_blockade_text(text: str) -> tuple[frozenset[int], ...]:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("blockade"):
        raise FormatError("missing 'blockade <k>' header")
    try:
        k = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise FormatError(f"bad blockade header {lines[0]!r}") from exc
    if len(lines) != k + 1:
        raise FormatError(f"expected {k} block lines, got {len(lines) - 1}")
    blocks = []
    for ln in lines[1:]:
        try:
            members = frozenset(int(tok) - 1 for tok in ln.split())
        except ValueError as exc:
            raise FormatError(f"bad block line {ln!r}") from exc
        blocks.append(members)
    return tuple(blocks)


def emit_dot(obj: Tournament | OrderedGraph) -> str:
    """DOT text for external viewers; labels are 1-based."""
    if isinstance(obj, Tournament):
        lines = ["digraph tournament {"]
        for i in range(obj.n):
            for j in range(obj.n):
                if i != j and obj.beats(i, j):
                    lines.append(f"  {i + 1} -> {j + 1};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    lines = ["graph ordered {", "  rankdir=LR;"]
    for v in range(obj.n):
        lines.append(f"  {v + 1};")
    for p, q in sorted(obj.edges):
        lines.append(f"  {p + 1} -- {q + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def resolve(name_or_path: str) -> Tournament | OrderedGraph:
    """Catalog name if it is one, otherwise parse the file at the path."""
    try:
        return catalog(name_or_path)
    except UnknownName:
        pass
    if os.path.exists(name_or_path):
        with open(name_or_path, encoding="utf-8") as fh:
            return parse_object(fh.read())
    raise UnknownName(f"{name_or_path!r} is neither a catalog name nor a readable file")
