"""Ordered-graph shape classes and certificate search.

Components of backedge graphs are classified into a small taxonomy (stars,
spikes, brooms, monotone paths, cliques, bristles, crossed stars, splits).
Certain combinations of classes are known-good: any family of ordered
graphs whose every transversal (one component chosen from each member)
matches one of five templates has the sparse rainbow pure-pair property,
so a set of backedge graphs of a tournament whose transversals all match
is a checkable certificate for the tournament.

``find_srseh_certificate`` searches all numberings of a tournament for such
a set, and ``verify_certificate`` re-checks a claimed certificate from
scratch.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, fields

from .core import Numbering, OrderedGraph, Tournament, all_numberings, backedge_graph
from .errors import BudgetExhausted, NotAComponent

TEMPLATE_CLIQUES = "T-CLIQUES"
TEMPLATE_STARS = "T-STARS"
TEMPLATE_BRISTLE = "T-BRISTLE"
TEMPLATE_STARTRI = "T-STARTRI"
TEMPLATE_SPLIT = "T-SPLIT"

TEMPLATES = (
    TEMPLATE_CLIQUES,
    TEMPLATE_STARS,
    TEMPLATE_BRISTLE,
    TEMPLATE_STARTRI,
    TEMPLATE_SPLIT,
)


@dataclass(frozen=True)
class PatternTags:
    """Class membership flags for one connected component.

    ``size`` is the number of vertices; the flags follow the taxonomy
    definitions evaluated on the component with positions compressed to
    relative order.
    """

    size: int
    left_star: bool
    right_star: bool
    left_spike: bool
    right_spike: bool
    monotone_path: bool
    left_broom: bool
    right_broom: bool
    clique: bool
    left_bristle: bool
    right_bristle: bool
    crossed_left_star: bool
    crossed_right_star: bool
    left_split: bool
    right_split: bool
    single_vertex: bool

    @property
    def recognized(self) -> bool:
        return any(getattr(self, f.name) for f in fields(self) if f.type == "bool")

    @property
    def left_2_star(self) -> bool:
        return self.left_star and self.size == 3

    @property
    def right_2_star(self) -> bool:
        return self.right_star and self.size == 3

    @property
    def three_vertex_monotone_path(self) -> bool:
        return self.monotone_path and self.size == 3


def _mirror_edges(m: int, edges: frozenset[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    return frozenset((m - 1 - q, m - 1 - p) for p, q in edges)


def _is_left_star(m: int, edges) -> bool:
    return edges == frozenset((0, j) for j in range(1, m))


def _is_left_spike(m: int, edges) -> bool:
    if m < 2:
        return False
    return edges == frozenset((min(1, j), max(1, j)) for j in range(m) if j != 1)


def _is_monotone_path(m: int, edges) -> bool:
    return edges == frozenset((i, i + 1) for i in range(m - 1))


def _is_left_broom(m: int, edges) -> bool:
    # monotone path into position c, then c adjacent to everything later
    for c in range(m):
        want = frozenset((i, i + 1) for i in range(c)) | frozenset((c, j) for j in range(c + 1, m))
        if edges == want:
            return True
    return False


def _is_clique(m: int, edges) -> bool:
    return len(edges) == m * (m - 1) // 2


def _is_left_bristle(m: int, edges) -> bool:
    if m <= 2:
        return False
    base = frozenset((0, i) for i in range(1, m - 1))
    for j in range(1, m - 1):
        if edges == base | {(j, m - 1)}:
            return True
    return False


def _is_crossed_left_star(m: int, edges) -> bool:
    if m < 3:
        return False
    star = frozenset((0, j) for j in range(1, m))
    if not star <= edges:
        return False
    extra = edges - star
    return len(extra) == 1


def _is_left_split(m: int, edges) -> bool:
    if m < 2:
        return False
    if (0, 1) in edges:
        return False
    clique = frozenset((p, q) for p in range(2, m) for q in range(p + 1, m))
    if not clique <= edges:
        return False
    rest = edges - clique  # only edges touching position 0 or 1 remain
    for i in range(2, m):
        if (0, i) in rest and (1, i) in rest:
            return False
    return True


def classify_graph(b: OrderedGraph) -> PatternTags:
    """Tags for a whole ordered graph (no component check)."""
    m, edges = b.n, b.edges
    mirrored = _mirror_edges(m, edges)
    return PatternTags(
        size=m,
        left_star=_is_left_star(m, edges),
        right_star=_is_left_star(m, mirrored),
        left_spike=_is_left_spike(m, edges),
        right_spike=_is_left_spike(m, mirrored),
        monotone_path=_is_monotone_path(m, edges),
        left_broom=_is_left_broom(m, edges),
        right_broom=_is_left_broom(m, mirrored),
        clique=_is_clique(m, edges),
        left_bristle=_is_left_bristle(m, edges),
        right_bristle=_is_left_bristle(m, mirrored),
        crossed_left_star=_is_crossed_left_star(m, edges),
        crossed_right_star=_is_crossed_left_star(m, mirrored),
        left_split=_is_left_split(m, edges),
        right_split=_is_left_split(m, mirrored),
        single_vertex=m == 1,
    )


def classify_component(b: OrderedGraph, comp: tuple[int, ...]) -> PatternTags:
    """Tags for one connected component, positions compressed to relative order."""
    comp_sorted = tuple(sorted(comp))
    if comp_sorted not in b.components:
        raise NotAComponent(f"{comp_sorted} is not a connected component")
    return classify_graph(b.induced(comp_sorted))


def transversals(graphs: list[OrderedGraph]):
    """Every choice of one component index per graph, in product order."""
    if not graphs:
        raise ValueError("transversals of an empty family are undefined")
    ranges = [range(len(g.components)) for g in graphs]
    return itertools.product(*ranges)


def template_holds(template: str, tagsets: list[PatternTags]) -> bool:
    """Whether this transversal satisfies the template's membership conditions.

    A single member may play several roles; mirror-symmetric variants are
    accepted because reversing the order preserves anticomplete pairs and
    degrees.
    """
    has = lambda pred: any(pred(t) for t in tagsets)
    if template == TEMPLATE_CLIQUES:
        return has(lambda t: t.left_star or t.right_star) and has(lambda t: t.clique)
    if template == TEMPLATE_STARS:
        return (has(lambda t: t.left_star) and has(lambda t: t.right_broom)) or (
            has(lambda t: t.right_star) and has(lambda t: t.left_broom)
        )
    if template == TEMPLATE_BRISTLE:
        return (has(lambda t: t.left_2_star) and has(lambda t: t.right_bristle)) or (
            has(lambda t: t.right_2_star) and has(lambda t: t.left_bristle)
        )
    if template == TEMPLATE_STARTRI:
        return (
            has(lambda t: t.three_vertex_monotone_path)
            and has(lambda t: t.crossed_left_star)
            and has(lambda t: t.crossed_right_star)
        )
    if template == TEMPLATE_SPLIT:
        return (
            has(lambda t: t.left_2_star)
            and has(lambda t: t.crossed_right_star)
            and has(lambda t: t.left_split)
        ) or (
            has(lambda t: t.right_2_star)
            and has(lambda t: t.crossed_left_star)
            and has(lambda t: t.right_split)
        )
    return False


def match_template(tagsets: list[PatternTags]) -> str | None:
    """First template (in fixed order) satisfied by this transversal, or None."""
    for template in TEMPLATES:
        if template_holds(template, tagsets):
            return template
    return None


@dataclass(frozen=True)
class Certificate:
    """A set of numberings whose backedge graphs certify the pure-pair property.

    ``assignment`` maps every transversal (a tuple holding one component
    index per graph) to the template it satisfies.
    """

    numberings: tuple[Numbering, ...]
    graphs: tuple[OrderedGraph, ...]
    assignment: dict[tuple[int, ...], str]


@dataclass(frozen=True)
class _Candidate:
    numbering: Numbering
    graph: OrderedGraph
    tags: tuple[PatternTags, ...]


def _assignment_for(cands: tuple[_Candidate, ...]) -> dict[tuple[int, ...], str] | None:
    assignment = {}
    for choice in itertools.product(*(range(len(c.tags)) for c in cands)):
        template = match_template([c.tags[i] for c, i in zip(cands, choice)])
        if template is None:
            return None
        assignment[choice] = template
    return assignment


def find_srseh_certificate(
    t: Tournament, *, max_members: int = 3, budget: int = 2_000_000
) -> Certificate | None:
    """Search numberings of ``t`` for a certified set of backedge graphs.

    All n! numberings are filtered to those whose every backedge component
    carries at least one recognized tag; the distinct surviving graphs are
    then combined into subsets of at most ``max_members``, smallest first,
    until one is found whose every transversal matches a template.  Returns
    None only after the subset search has completed; raises BudgetExhausted
    if ``budget`` subsets were examined first.
    """
    candidates: list[_Candidate] = []
    seen_codes: set[int] = set()
    seen_signatures: set[frozenset[tuple]] = set()
    for nu in all_numberings(t.n):
        b = backedge_graph(t, nu)
        code = b.edge_code()
        if code in seen_codes:
            continue
        seen_codes.add(code)
        tags = tuple(classify_component(b, comp) for comp in b.components)
        if not all(tg.recognized for tg in tags):
            continue
        # graphs with the same set of component classes are interchangeable
        signature = frozenset(tags)
        if signature in seen_signatures:
            continue
        seen_signatures.add(signature)
        candidates.append(_Candidate(nu, b, tags))

    examined = 0
    for size in range(1, max_members + 1):
        for combo in itertools.combinations(candidates, size):
            examined += 1
            if examined > budget:
                raise BudgetExhausted(f"certificate search stopped after {budget} subsets")
            assignment = _assignment_for(combo)
            if assignment is not None:
                return Certificate(
                    tuple(c.numbering for c in combo),
                    tuple(c.graph for c in combo),
                    assignment,
                )
    return None


def verify_certificate(t: Tournament, cert: Certificate) -> list[str]:
    """Re-check a certificate from scratch; returns a list of defects (empty = valid)."""
    problems: list[str] = []
    if len(cert.numberings) != len(cert.graphs):
        return ["numbering/graph count mismatch"]
    recomputed_tags: list[tuple[PatternTags, ...]] = []
    for idx, (nu, g) in enumerate(zip(cert.numberings, cert.graphs)):
        if nu.n != t.n:
            problems.append(f"numbering {idx} has wrong length")
            continue
        if backedge_graph(t, nu) != g:
            problems.append(f"graph {idx} is not the backedge graph of its numbering")
            continue
        recomputed_tags.append(tuple(classify_component(g, c) for c in g.components))
    if problems:
        return problems
    expected = set(itertools.product(*(range(len(tags)) for tags in recomputed_tags)))
    if set(cert.assignment) != expected:
        problems.append("assignment does not cover exactly the transversals")
        return problems
    for choice, template in cert.assignment.items():
        tagsets = [tags[i] for tags, i in zip(recomputed_tags, choice)]
        if not template_holds(template, tagsets):
            problems.append(f"transversal {choice} fails template {template}")
    return problems
