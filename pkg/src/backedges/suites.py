"""Verification suites binding the whole package to its headline claims.

Each suite is a list of independent checks run (optionally in parallel)
into a VerificationReport.  Check functions return (ok, witness); any
exception becomes a failed check rather than a crash.  All randomness is
drawn from labelled substreams of the suite seed, so reports are
byte-identical across runs and across worker counts.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .catalog import (
    FIGURE_F6,
    FIGURE_H6,
    FIGURE_P7_MINUS,
    catalog,
    obstructions,
    ordered_graph_from_figure,
    p7_minus,
)
from .construct import ConstructionParams, build_counterexample
from .core import (
    Numbering,
    cycle_imbalance,
    cycles_up_to,
    random_tournament,
    tournament_from_backedges,
)
from .enumeration import all_tournaments, backedge_census, canonical_form, isomorphic
from .errors import UnknownSuite
from .numbering import (
    all_optimal_numberings,
    has_d5_backedge_pattern,
    interval_violations,
    min_backedge_count,
    forest_numbering,
)
from .patterns import find_srseh_certificate, verify_certificate
from .report import Check, VerificationReport
from .rng import substream
from .search import (
    contains_ordered,
    contains_subtournament,
    greedy_pure_pair,
    max_pure_pair,
    backedge_to_pure,
    pure_to_backedge,
    validate_pure_pair,
)

SUITE_NAMES = (
    "census",
    "obstructions",
    "classification",
    "interval",
    "purepair_lemma",
    "certificates",
    "construction",
    "paley",
)

CONSTRUCTION_POINTS = ((2, Fraction(1, 2), 8), (3, Fraction(1, 3), 6))
CONSTRUCTION_SEEDS = (11, 22, 33, 44, 55)


def _census_checks(seed):
    d5 = catalog("D_5")
    p7m = catalog("P_7_minus")

    def count_check(t, expected):
        def run():
            census = backedge_census(t)
            return len(census) == expected, {"count": len(census)}

        return run

    def reconstruct():
        bad = 0
        for t in (d5, p7m):
            for member in backedge_census(t):
                if not isomorphic(tournament_from_backedges(member), t):
                    bad += 1
        return bad == 0, {"non_reconstructing": bad}

    def unique_three_edge():
        members = [b for b in backedge_census(d5) if len(b.edges) == 3]
        ok = (
            len(members) == 1
            and sorted(members[0].edges) == [(0, 3), (0, 4), (1, 4)]
            and has_d5_backedge_pattern(members[0])
        )
        return ok, {"three_edge_members": len(members)}

    def figures_rebuild():
        fig2 = tournament_from_backedges(ordered_graph_from_figure(6, FIGURE_P7_MINUS))
        fig3 = tournament_from_backedges(ordered_graph_from_figure(6, FIGURE_H6))
        fig5 = tournament_from_backedges(ordered_graph_from_figure(6, FIGURE_F6))
        deletions = [canonical_form(p7_minus(v)) for v in range(7)]
        ok = (
            len(set(deletions)) == 1
            and isomorphic(fig2, p7_minus())
            and isomorphic(fig3, catalog("D5_{1,3}"))
            and isomorphic(fig5, catalog("F_6"))
        )
        return ok, {"distinct_deletion_classes": len(set(deletions))}

    return [
        ("census_d5", "D_5 has exactly 24 distinct backedge graphs", count_check(d5, 24)),
        (
            "census_p7_minus",
            "P_7 minus a vertex has exactly 240 distinct backedge graphs",
            count_check(p7m, 240),
        ),
        (
            "census_reconstructs",
            "every census member rebuilds a tournament isomorphic to its source",
            reconstruct,
        ),
        (
            "census_three_edge",
            "exactly one D_5 backedge graph has three edges and it is the forced pattern",
            unique_three_edge,
        ),
        (
            "figures_rebuild",
            "drawn backedge graphs rebuild their tournaments; all 7 deletions agree",
            figures_rebuild,
        ),
    ]


def _obstruction_checks(seed):
    obs = obstructions()

    def covered(t):
        def run():
            routes = {"unbalanced_cycle": 0, "obstruction_copy": 0, "neither": 0}
            failing = []
            for member in backedge_census(t):
                unbalanced = any(
                    cycle_imbalance(member, cyc) != 0 for cyc in cycles_up_to(member, 5)
                )
                if unbalanced:
                    routes["unbalanced_cycle"] += 1
                    continue
                if any(contains_ordered(member, o) is not None for o in obs):
                    routes["obstruction_copy"] += 1
                else:
                    routes["neither"] += 1
                    failing.append(sorted(member.edges))
            return routes["neither"] == 0, {"routes": routes, "failing": failing}

        return run

    return [
        (
            "obstruction_cover_d5",
            "all 24 D_5 backedge graphs carry an unbalanced 5-cycle or an obstruction",
            covered(catalog("D_5")),
        ),
        (
            "obstruction_cover_p7_minus",
            "all 240 P_7^- backedge graphs carry an unbalanced 5-cycle or an obstruction",
            covered(catalog("P_7_minus")),
        ),
    ]


def _classification_checks(seed):
    def counts():
        got = [len(all_tournaments(n)) for n in range(1, 7)]
        return got == [1, 1, 2, 4, 12, 56], {"counts": got}

    def bounds():
        details = {}
        ok = True
        exceptional_codes = {
            canonical_form(catalog(name)).code
            for name in ("P_7_minus", "H_6", "H_6_bar", "F_6")
        }
        for n in range(1, 7):
            per_class = [(min_backedge_count(t), t) for t in all_tournaments(n)]
            worst = max(c for c, _ in per_class)
            details[f"n={n}"] = worst
            if n <= 4:
                ok &= worst <= 1
            elif n == 5:
                at_three = [t for c, t in per_class if c == 3]
                ok &= worst <= 3 and len(at_three) == 1
                ok &= isomorphic(at_three[0], catalog("D_5"))
            else:
                at_four = {canonical_form(t).code for c, t in per_class if c == 4}
                ok &= worst <= 4 and at_four == exceptional_codes
        details["six_vertex_exceptions"] = [
            "P_7_minus",
            "H_6",
            "reverse(H_6)",
            "F_6",
        ]
        details["label_note"] = (
            "the four-backedge family is sometimes quoted with the label C_7^-;"
            " the computed member is P_7 minus a vertex"
        )
        return ok, details

    return [
        ("class_counts", "tournament classes number 1,1,2,4,12,56 for n=1..6", counts),
        (
            "min_backedge_bounds",
            "minimum backedge counts: <=1 (n<=4); <=3, equality only D_5 (n=5); "
            "<=4, equality exactly {P_7^-, H_6, reverse(H_6), F_6} (n=6)",
            bounds,
        ),
    ]


def _interval_checks(seed):
    def check_n(n):
        def run():
            numberings = 0
            for t in all_tournaments(n):
                for nu in all_optimal_numberings(t):
                    numberings += 1
                    if interval_violations(t, nu):
                        return False, {"tournament": t, "numbering": list(nu.perm)}
            return True, {"optimal_numberings": numberings}

        return run

    return [
        (
            f"interval_n{n}",
            f"every optimal numbering of every {n}-vertex tournament meets the interval constraints",
            check_n(n),
        )
        for n in range(1, 7)
    ]


def _oracle_pure_order(t):
    # independent exhaustive oracle: all subsets A, partner = common out-neighbourhood
    best = 0
    for a_mask in range(1, 1 << t.n):
        common = (1 << t.n) - 1
        rest = a_mask
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            common &= t.rows[v]
        best = max(best, min(a_mask.bit_count(), common.bit_count()))
    return best


def _purepair_checks(seed):
    def d5_order():
        pair = max_pure_pair(catalog("D_5"))
        return pair.order == 1, {"order": pair.order}

    def tt_orders():
        got = {}
        ok = True
        for m in range(1, 11):
            order = max_pure_pair(catalog(f"TT_{2 * m}")).order
            got[f"m={m}"] = order
            ok &= order == m
        return ok, got

    def oracle_agreement():
        rng = substream(seed, "purepair-oracle")
        for trial in range(200):
            n = int(rng.integers(2, 11))
            t = random_tournament(n, rng)
            exact = max_pure_pair(t)
            want = _oracle_pure_order(t)
            if (exact.order if exact else 0) != want:
                return False, {"trial": trial, "tournament": t}
        return True, {"trials": 200}

    def translation():
        rng = substream(seed, "translation")
        worst = None
        for trial in range(1000):
            n = int(rng.integers(2, 21))
            t = random_tournament(n, rng)
            nu = Numbering(tuple(int(x) for x in rng.permutation(n)))
            pair = max_pure_pair(t) if n <= 12 else greedy_pure_pair(t)
            if pair is None:
                continue
            q = pure_to_backedge(t, nu, pair)
            if q.order < math.ceil(pair.order / 2):
                return False, {"trial": trial, "stage": "to_backedge"}
            r = backedge_to_pure(t, nu, q)
            validate_pure_pair(t, r)
            if r.order < math.ceil(q.order / 2):
                return False, {"trial": trial, "stage": "to_tournament"}
            worst = min(worst, r.order) if worst is not None else r.order
        return True, {"trials": 1000, "weakest_final_order": worst}

    return [
        ("pure_d5", "the largest pure pair of D_5 has order 1", d5_order),
        ("pure_tt", "TT_{2m} has a largest pure pair of order m for m <= 10", tt_orders),
        (
            "pure_oracle",
            "branch-and-bound agrees with the exhaustive subset oracle on 200 random tournaments",
            oracle_agreement,
        ),
        (
            "translation_halves",
            "both translation directions keep at least half the order on 1000 random inputs",
            translation,
        ),
    ]


def _certificate_checks(seed):
    def coverage():
        d5 = catalog("D_5")
        total = 0
        for n in range(1, 7):
            for t in all_tournaments(n):
                if min_backedge_count(t) > 3:
                    continue
                if n >= 5 and contains_subtournament(t, d5) is not None:
                    continue
                total += 1
                cert = find_srseh_certificate(t)
                if cert is None:
                    return False, {"uncertified": t}
                defects = verify_certificate(t, cert)
                if defects:
                    return False, {"tournament": t, "defects": defects}
        return True, {"certified": total}

    def f6_certificate():
        f6 = catalog("F_6")
        cert = find_srseh_certificate(f6)
        if cert is None:
            return False, {"uncertified": "F_6"}
        defects = verify_certificate(f6, cert)
        return not defects, {"members": len(cert.graphs), "defects": defects}

    def mirror_symmetry():
        from .core import reverse

        for name in ("TT_5", "F_6", "H_6", "D5_{1}"):
            t = catalog(name)
            a = find_srseh_certificate(t) is not None
            b = find_srseh_certificate(reverse(t)) is not None
            if a != b:
                return False, {"tournament": name}
        return True, {}

    return [
        (
            "certificate_coverage",
            "every D_5-free tournament on <=6 vertices with <=3 minimum backedges is certified",
            coverage,
        ),
        ("certificate_f6", "F_6 receives a verifiable certificate", f6_certificate),
        (
            "certificate_mirror",
            "certificate existence is preserved under reversal",
            mirror_symmetry,
        ),
    ]


def _construction_checks(seed):
    checks = []
    for k, c, width in CONSTRUCTION_POINTS:

        def run_point(k=k, c=c, width=width):
            deterministic_pass = 0
            pure_pass = 0
            reports = []
            for s in CONSTRUCTION_SEEDS:
                result = build_counterexample(
                    ConstructionParams(k, c, width, seed + s), strict=False, retries=3
                )
                failed = set(result.report.failed_checks())
                if not failed - {"pure_pair_bound"}:
                    deterministic_pass += 1
                if "pure_pair_bound" not in failed:
                    pure_pass += 1
                reports.append(sorted(failed))
            return deterministic_pass, pure_pass, reports

        def deterministic(k=k, c=c, width=width, run=run_point):
            det, _, reports = run()
            return det >= 1, {"passing_artifacts": det, "failed_by_seed": reports}

        def pure(k=k, c=c, width=width, run=run_point):
            _, pure_ok, reports = run()
            return pure_ok >= 1, {
                "passing_artifacts": pure_ok,
                "failed_by_seed": reports,
                "note": "no pure pair of order >= cW is an asymptotic guarantee; "
                "at n = k*W <= 24 every tournament this size has such a pair",
            }

        tag = f"k{k}_w{width}"
        checks.append(
            (
                f"construction_{tag}_deterministic",
                f"(k={k}, c={c}, W={width}): an artifact passes every deterministic check",
                deterministic,
            )
        )
        checks.append(
            (
                f"construction_{tag}_pure_pair",
                f"(k={k}, c={c}, W={width}): an artifact has no pure pair of order >= cW",
                pure,
            )
        )
    return checks


def _paley_checks(seed):
    p7 = catalog("P_7")

    def no_tt4():
        return contains_subtournament(p7, catalog("TT_4")) is None, {}

    def out_triangles():
        c3 = catalog("C_3")
        for v in range(7):
            sub = p7.subtournament(sorted(p7.out_neighbors(v)))
            if not isomorphic(sub, c3):
                return False, {"vertex": v + 1}
        return True, {}

    def no_forest():
        return forest_numbering(p7) is None, {}

    return [
        ("paley_no_tt4", "P_7 contains no transitive 4-vertex subtournament", no_tt4),
        (
            "paley_out_triangles",
            "every out-neighbourhood of P_7 induces a cyclic triangle",
            out_triangles,
        ),
        (
            "paley_no_forest",
            "no numbering of P_7 has an acyclic backedge graph (all 5040 checked)",
            no_forest,
        ),
    ]


_SUITE_BUILDERS = {
    "census": _census_checks,
    "obstructions": _obstruction_checks,
    "classification": _classification_checks,
    "interval": _interval_checks,
    "purepair_lemma": _purepair_checks,
    "certificates": _certificate_checks,
    "construction": _construction_checks,
    "paley": _paley_checks,
}


def run_suite(name: str, *, seed: int = 0, jobs: int = 1) -> VerificationReport:
    """Run one named suite; module errors become failed checks, not crashes."""
    if name not in _SUITE_BUILDERS:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    specs = _SUITE_BUILDERS[name](seed)

    def execute(spec):
        check_id, statement, fn = spec
        start = time.perf_counter()
        try:
            ok, witness = fn()
            status = "pass" if ok else "fail"
        except Exception as exc:  # noqa: BLE001 - reported, not raised
            status, witness = "fail", {"error": f"{type(exc).__name__}: {exc}"}
        elapsed = (time.perf_counter() - start) * 1000
        return Check(check_id, statement, status, witness, elapsed)

    report = VerificationReport(suite=name, seed=seed)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            report.checks = list(pool.map(execute, specs))
    else:
        report.checks = [execute(spec) for spec in specs]
    return report
