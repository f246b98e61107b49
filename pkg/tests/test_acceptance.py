"""Acceptance gate: eight behavioural criteria, one test and one printed
pass/fail line each.

Criterion 4 is expected to fail: exhaustive enumeration finds single-edge
additions on tiny undirected networks that are 1-safe upper-bound improvements
under Max-Util, so the blanket "no 1-safe delta of any type" claim does not
hold in add mode.  The test states the claim faithfully and reports the
violations it finds.
"""
import random

import pytest

from kcoalition.manipulation import classify, iter_deltas
from kcoalition.network import ManipulationSpec, Mode, SocialNetwork
from kcoalition.objectives import (
    Objective,
    cut_size,
    min_kcut_value,
    solution_set,
    utilitarian_sw,
)
from kcoalition.partitions import SizeConstraint, count_partitions, enumerate_partitions
from kcoalition.views import PartialView, classify_d_safe, search_safe
from kcoalition.witness import (
    all_networks,
    all_views,
    conjecture_search,
    expand_witness,
    load_bundled_claims,
    verify_claims,
    _view_deltas,
)

FLAGS = ("lb", "ub", "weak", "strict")
EXACT_FLAG_SETS = {
    "lb": {"lb"},
    "ub": {"ub"},
    "strict": {"lb", "ub", "weak", "strict"},
}


def report(num, name, ok):
    print(f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'}")


def test_criterion_1_resistance_exhaustion():
    """No improvement of the proven-impossible kinds on any small network."""
    violations = []
    for n in range(2, 6):
        for net in all_networks(n, False):
            for spec in iter_deltas(net, 0, Mode.ADD_ONLY):
                if classify(net, spec, 2, Objective.MAX_EGAL).weak:
                    violations.append(("und-egal-add-weak", net, spec))
            for spec in iter_deltas(net, 0, Mode.REMOVE_ONLY):
                if classify(net, spec, 2, Objective.AT_LEAST_1).ub:
                    violations.append(("und-least1-remove-ub", net, spec))
    for n in range(2, 5):
        for net in all_networks(n, True):
            for spec in iter_deltas(net, 0, Mode.ADD_ONLY):
                rep = classify(net, spec, 2, Objective.MAX_EGAL)
                if rep.lb or rep.ub:
                    violations.append(("dir-egal-add", net, spec))
                rep = classify(net, spec, 2, Objective.AT_LEAST_1)
                if rep.lb or rep.ub:
                    violations.append(("dir-least1-add", net, spec))
            for spec in iter_deltas(net, 0, Mode.REMOVE_ONLY):
                if classify(net, spec, 2, Objective.AT_LEAST_1).ub:
                    violations.append(("dir-least1-remove-ub", net, spec))
    report(1, "resistance exhaustion", not violations)
    assert not violations


def test_criterion_2_flagship_removal_instance():
    """The bundled 18-agent removal instance: utility 5 -> 6, min 2-cut 3 -> 2."""
    claim = next(
        c for c in load_bundled_claims("claims_distance2.json")
        if c.id == "util-remove-full-strict"
    )
    net = expand_witness(claim.witness.spec)
    spec = ManipulationSpec.of(claim.witness.m, Mode.REMOVE_ONLY, claim.witness.delta)
    rep = classify(net, spec, 2, Objective.MAX_UTIL)
    from kcoalition.network import apply_manipulation

    ok = (
        rep.strict
        and rep.u1 == 5
        and rep.v0 == 6
        and min_kcut_value(net, 2) == 3
        and min_kcut_value(apply_manipulation(net, spec), 2) == 2
    )
    report(2, "flagship removal instance", ok)
    assert ok


def check_limited_information_rows(claims, k=2):
    """Each witnessed claim must carry exactly its advertised flag set."""
    bad = []
    for claim in claims:
        net = expand_witness(claim.witness.spec)
        view = PartialView.of(
            net.n, net.directed, claim.witness.m,
            1 if claim.information == "d1" else 2,
            visible_of(net, claim.witness.m, claim.information),
        )
        spec = ManipulationSpec.of(claim.witness.m, claim.mode, claim.witness.delta)
        rep = classify_d_safe(view, spec, k, claim.objective, claim.constraint)
        got = {t for t in FLAGS if rep.safe(t)}
        if got != EXACT_FLAG_SETS[claim.verdict]:
            bad.append((claim.id, got))
    return bad


def visible_of(net, m, information):
    from kcoalition.views import extract_view

    return extract_view(net, m, 1 if information == "d1" else 2).known_edges


def test_criterion_3_distance2_susceptibility_rows():
    claims = [
        c for c in load_bundled_claims("claims_distance2.json")
        if c.information == "d2"
    ]
    assert len(claims) == 12  # ten rows; two hold for both directions
    results = verify_claims(claims)
    bad = check_limited_information_rows(claims)
    ok = all(r.passed for r in results) and not bad
    report(3, "distance-2 susceptibility rows", ok)
    assert ok, bad


def test_criterion_4_distance1_exhaustion():
    """Claim under test: on undirected views with n <= 5 under Max-Util, no
    delta is 1-safe for any type, in either mode; and the two known positive
    cases for other objectives are found by search.

    The first clause is false: add mode admits 1-safe upper-bound
    improvements (an agent with one known friend inventing a second one).
    """
    hits = []
    for n in range(2, 6):
        for view in all_views(n, False, 1):
            for mode in (Mode.ADD_ONLY, Mode.REMOVE_ONLY):
                for spec in _view_deltas(view, mode):
                    rep = classify_d_safe(
                        view, spec, 2, Objective.MAX_UTIL, SizeConstraint.NONE
                    )
                    if any(rep.safe(t) for t in FLAGS):
                        hits.append((view, spec, {t for t in FLAGS if rep.safe(t)}))

    egal_view = PartialView.of(4, True, 0, 1, [(0, 2), (0, 3), (3, 0)])
    egal_hit = search_safe(egal_view, Mode.REMOVE_ONLY, 2, Objective.MAX_EGAL)
    least1_view = PartialView.of(5, False, 0, 1, [(0, 1)])
    least1_hit = search_safe(least1_view, Mode.ADD_ONLY, 2, Objective.AT_LEAST_1)
    positives_ok = (
        egal_hit is not None and egal_hit[1].safe("ub")
        and least1_hit is not None and least1_hit[1].safe("ub")
    )

    ok = not hits and positives_ok
    report(4, "distance-1 exhaustion", ok)
    assert positives_ok
    assert not hits, (
        f"{len(hits)} 1-safe Max-Util manipulations exist on undirected views "
        f"with n <= 5 (all in add mode, all upper-bound only); e.g. "
        f"view={hits[0][0]} delta={sorted(hits[0][1].delta)} flags={hits[0][2]}"
    )


def test_criterion_5_equal_size_constraint():
    enum_ok = True
    for n in range(1, 9):
        for k in range(1, min(n, 4) + 1):
            brute = {
                p for p in enumerate_partitions(n, k)
                if max(len(b) for b in p.blocks) - min(len(b) for b in p.blocks) <= 1
            }
            direct = set(enumerate_partitions(n, k, SizeConstraint.EQUAL_SIZE))
            if brute != direct or len(direct) != count_partitions(
                n, k, SizeConstraint.EQUAL_SIZE
            ):
                enum_ok = False

    table = load_bundled_claims("claims_distance2_equal_size.json")
    table_ok = all(r.passed for r in verify_claims(table))
    table_ok = table_ok and not check_limited_information_rows(table)

    d1 = [
        c for c in load_bundled_claims("claims_distance1.json")
        if c.constraint is SizeConstraint.EQUAL_SIZE
    ]
    assert len(d1) == 4
    d1_ok = all(r.passed for r in verify_claims(d1))

    ok = enum_ok and table_ok and d1_ok
    report(5, "equal-size constraint", ok)
    assert ok


def test_criterion_6_cut_duality():
    rng = random.Random(20260826)
    ok = True
    for _ in range(200):
        n = rng.randint(2, 8)
        p = rng.random()
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
        ]
        net = SocialNetwork.of(n, edges, directed=False)
        for k in (2, 3):
            if k > n:
                continue
            parts = list(enumerate_partitions(n, k))
            if any(2 * len(edges) - utilitarian_sw(net, p_) != 2 * cut_size(net, p_)
                   for p_ in parts):
                ok = False
            best = min(cut_size(net, p_) for p_ in parts)
            min_cut_set = {p_ for p_ in parts if cut_size(net, p_) == best}
            sols = solution_set(net, k, Objective.MAX_UTIL)
            if set(sols.structures) != min_cut_set or min_kcut_value(net, k) != best:
                ok = False
    report(6, "utility / cut duality", ok)
    assert ok


def test_criterion_7_partition_counts():
    stirling = {(0, 0): 1}
    for n in range(1, 11):
        stirling[(n, 0)] = 0
        for k in range(1, n + 1):
            stirling[(n, k)] = k * stirling.get((n - 1, k), 0) + stirling.get(
                (n - 1, k - 1), 0
            )
    ok = all(
        count_partitions(n, k) == stirling[(n, k)]
        for n in range(1, 11)
        for k in range(1, n + 1)
    )
    ok = ok and all(count_partitions(n, 2) == 2 ** (n - 1) - 1 for n in range(2, 11))
    report(7, "partition counts", ok)
    assert ok


def test_criterion_8_bounded_conjecture_search():
    found = conjecture_search(max_n=5)
    report(8, "bounded search for 2-safe weak improvement", found is None)
    assert found is None
