"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the lines
inline; they are also collected into the terminal summary.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

from conftest import ACCEPTANCE
from oracles import prufer_free_trees
from treecentral.centers import (
    center,
    centroid,
    median,
    subtree_core,
    subtree_counts,
    telephone_center,
)
from treecentral.enumerate import free_trees
from treecentral.extremal import (
    CenterKind,
    asymptotic_series,
    chi_pathstar_two_formula,
    conjecture_scan,
    make_pair,
    pair_distances,
    subtree_core_pathstar_formula,
    verify_delta_formula,
    verify_gamma_c_chi,
    verify_gamma_cd_chi,
    verify_gamma_min,
    verify_pathstar_maximizer,
)
from treecentral.spectral import (
    EDGE,
    bottleneck_matrix,
    characteristic_set_fiedler,
    characteristic_set_perron,
    fiedler,
    laplacian_submatrix,
)
from treecentral.tree import branches_at, build_path_star

pytestmark = pytest.mark.acceptance


def record(k: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[k] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'} criterion {k:>2}: {detail}")
    assert ok, detail


def test_criterion_01_disjoint_centers_fixture():
    start = time.perf_counter()
    t = build_path_star(17, 7)
    got = {
        "center": center(t).as_list(),
        "centroid": centroid(t).as_list(),
        "core": subtree_core(t).as_list(),
        "f10": subtree_counts(t)[10],
    }
    fr = fiedler(t)
    chi_f = characteristic_set_fiedler(t, fr)
    chi_p = characteristic_set_perron(t)
    elapsed = time.perf_counter() - start
    ok = (
        got == {"center": [6], "centroid": [9], "core": [10], "f10": 1280}
        and chi_f.kind == EDGE and chi_f.vertices == (7, 8) and chi_p.same_as(chi_f)
        and abs(fr.mu - 0.0483) <= 5e-4
        and elapsed < 1.0
    )
    record(1, ok, f"center {got['center']}, centroid {got['centroid']}, core {got['core']}, chi {chi_f}, "
                  f"f(10)={got['f10']}, mu={fr.mu:.6f}, {elapsed:.3f}s")


@pytest.mark.slow
def test_criterion_02_closed_forms():
    start = time.perf_counter()
    reps = [verify_delta_formula(p, range(5, 15)) for p in ("C,Cd", "C,Sc", "Cd,Sc")]
    elapsed = time.perf_counter() - start
    bad = [c for r in reps for c in r.failures]
    record(2, not bad and all(len(r.checks) == 10 for r in reps),
           f"delta_brute == delta_formula for 3 pairs, n=5..14 ({len(bad)} mismatches, {elapsed:.1f}s)")


@pytest.mark.slow
def test_criterion_03_pathstar_maximizer():
    reps = [verify_pathstar_maximizer(n) for n in range(5, 15)]
    bad = [(r.checks[0]["n"], c["check"]) for r in reps for c in r.failures]
    record(3, not bad, f"P_(n-g0,g0) is a d(chi,Sc) maximizer for n=5..14 (failures: {bad})")


def test_criterion_04_core_case_split():
    cases = bad = 0
    for n in range(5, 19):
        for g in range(2, n - 2):
            cases += 1
            bad += subtree_core(build_path_star(n, g)).vertices != subtree_core_pathstar_formula(n, g)
    record(4, bad == 0, f"path-star subtree core matches case split on {cases} trees, n<=18 ({bad} mismatches)")


def test_criterion_05_pathstar_two():
    pair = make_pair(CenterKind.SUBTREE_CORE, CenterKind.CHARACTERISTIC)
    bad = []
    for n in range(5, 41):
        t = build_path_star(n, 2)
        d = pair_distances(t)
        parts_ok = d[pair] == 0
        cs = characteristic_set_fiedler(t, fiedler(t))
        if not (cs.kind == EDGE and cs.vertices == chi_pathstar_two_formula(n) and parts_ok):
            bad.append(n)
    record(5, not bad, f"chi(P_(n-2,2)) edge formula and d(Sc,chi)=0 for n=5..40 (failures: {bad})")


def test_criterion_06_coincidence():
    count, bad = 0, []
    for n in range(1, 13):
        for t in free_trees(n):
            count += 1
            cd = centroid(t)
            if median(t) != cd or telephone_center(t) != cd:
                bad.append(n)
    record(6, not bad, f"median = telephone center = centroid on all {count} free trees n<=12")


def test_criterion_07_concavity():
    paths = 0
    bad = 0
    for n in range(3, 13):
        for t in free_trees(n):
            f = subtree_counts(t)
            for v in t.vertices:
                nb = t.neighbors(v)
                for i, u in enumerate(nb):
                    for w in nb[i + 1:]:
                        paths += 1
                        bad += not 2 * f[v] > f[u] + f[w]
    record(7, bad == 0, f"2f(v) > f(u)+f(w) on {paths} induced paths u-v-w, n<=12 ({bad} violations)")


def _exact_inverse(t, v, b) -> bool:
    ids = sorted(b.vertices)
    m = bottleneck_matrix(t, v, b.vertices).astype(object)
    return bool((m @ laplacian_submatrix(t, ids).astype(object) == np.eye(len(ids), dtype=object)).all())


def test_criterion_08_spectral_cross_validation():
    trees = [t for n in range(3, 11) for t in free_trees(n)]
    trees += [build_path_star(n, g) for n in range(5, 41) for g in range(2, n - 2)]
    disagree, inverse_checks, inverse_bad = [], 0, 0
    for t in trees:
        a = characteristic_set_fiedler(t, fiedler(t))
        b = characteristic_set_perron(t)
        if not a.same_as(b):
            disagree.append((t.n, str(a), str(b)))
        for v in t.vertices:
            for br in branches_at(t, v):
                inverse_checks += 1
                inverse_bad += not _exact_inverse(t, v, br)
    record(8, not disagree and inverse_bad == 0,
           f"Fiedler and Perron chi agree on {len(trees)} trees; {inverse_checks} exact bottleneck inverses "
           f"({len(disagree)} disagreements, {inverse_bad} inverse failures)")


def test_criterion_09_enumeration_counts():
    want = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]
    got = [sum(1 for _ in free_trees(n)) for n in range(1, 11)]
    oracle = [len(prufer_free_trees(n)) for n in range(1, 11)]
    record(9, got == oracle == want, f"free-tree counts n=1..10 {got}, Prüfer oracle {oracle}")


def test_criterion_10_fixed_diameter_suite():
    ns = range(4, 13)
    reps = {
        "T_(n,k) all six distances 0": verify_gamma_min(ns),
        "P_(k,n-k) maximizes d(C,chi)": verify_gamma_c_chi(ns),
        "double broom maximizes d(Cd,chi), k<=ceil(n/2)": verify_gamma_cd_chi(ns),
    }
    bad = {name: len(r.failures) for name, r in reps.items() if not r.passed}
    cases = sum(len(r.checks) for r in reps.values())
    record(10, not bad, f"{cases} (n,k) cases for n<=12 across three statements (failures: {bad})")


def test_criterion_11_conjecture_scan():
    rep = conjecture_scan(40)
    found = rep.failures
    listed = all({"n", "g", "vertices"} <= set(c) for c in found)
    expected = sum(n - 4 for n in range(5, 41))
    ok = len(rep.checks) == expected and listed
    detail = ("chi(P_(n-g,g)) is an edge for all 5<=n<=40, 2<=g<=n-3" if not found
              else f"{len(found)} counterexamples listed: {[(c['n'], c['g']) for c in found]}")
    record(11, ok, f"{detail} ({len(rep.checks)} trees scanned)")


def test_criterion_12_asymptotics():
    n = 10**4
    (cc,) = asymptotic_series("C,Cd", [n])
    (csc,) = asymptotic_series("C,Sc", [n])
    (cdsc,) = asymptotic_series("Cd,Sc", [n])
    (chisc,) = asymptotic_series("chi,Sc", [n])
    ok = (
        abs(cc["ratio"] - 0.25) <= 0.001
        and abs(csc["ratio"] - 0.5) <= 0.01
        and abs(cdsc["ratio"] - 0.5) <= 0.01
        and chisc["ratio_lower"] <= chisc["ratio_upper"]
    )
    record(12, ok, f"n=10^4 ratios: C,Cd {cc['ratio']:.4f}; C,Sc {csc['ratio']:.4f}; Cd,Sc {cdsc['ratio']:.4f}; "
                   f"chi,Sc in [{chisc['ratio_lower']:.4f}, {chisc['ratio_upper']:.4f}]")
