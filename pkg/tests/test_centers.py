from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_subtree_counts, brute_switchboard, prufer_decode
from treecentral.centers import (
    center,
    centroid,
    core_partner,
    distance_sums,
    median,
    perturb_detach_path,
    perturb_pendant_to_core,
    subtree_core,
    subtree_core_certificate,
    subtree_counts,
    switchboard_numbers,
    telephone_center,
    weights,
)
from treecentral.enumerate import free_trees
from treecentral.errors import PreconditionError
from treecentral.tree import branches_at, build_path, build_path_star, build_star, build_tnk, path_between


class TestExamples:
    def test_disjoint_tree(self, disjoint_tree):
        assert center(disjoint_tree).as_list() == [6]
        assert centroid(disjoint_tree).as_list() == [9]
        assert median(disjoint_tree).as_list() == [9]
        assert telephone_center(disjoint_tree).as_list() == [9]
        assert subtree_core(disjoint_tree).as_list() == [10]
        assert subtree_counts(disjoint_tree)[10] == 10 * 2**7 == 1280

    def test_path6_center(self):
        assert center(build_path(6)).as_list() == [3, 4]

    def test_path4_median(self):
        assert median(build_path(4)).as_list() == [2, 3]

    def test_star(self):
        s = build_star(6)
        assert centroid(s).as_list() == median(s).as_list() == telephone_center(s).as_list() == [1]

    def test_p3_switchboard(self):
        assert switchboard_numbers(build_path(3)).values[1:] == (0, 1, 0)
        assert telephone_center(build_path(3)).as_list() == [2]

    def test_k14_switchboard(self):
        sb = switchboard_numbers(build_star(5))
        assert sb[1] == 2 and telephone_center(build_star(5)).as_list() == [1]

    def test_p3_counts(self):
        assert subtree_counts(build_path(3)).values[1:] == (3, 4, 3)

    @pytest.mark.parametrize("k", [4, 6, 8])
    def test_tnk_even_center(self, k):
        t = build_tnk(k + 5, k)
        assert center(t).as_list() == centroid(t).as_list() == [(k + 2) // 2]

    @pytest.mark.parametrize("k", [3, 5, 7])
    def test_tnk_odd_centroid(self, k):
        assert centroid(build_tnk(k + 4, k)).as_list() == [(k + 1) // 2]

    def test_p82_core(self):
        assert subtree_core(build_path_star(10, 2)).as_list() == [6]

    @pytest.mark.parametrize("n, g", [(8, 3), (10, 4), (12, 5)])
    def test_pathstar_core_at_hub(self, n, g):
        assert 2**g + 1 > n - g
        assert subtree_core(build_path_star(n, g)).as_list() == [n - g]

    def test_small_trees_are_their_own_centers(self):
        for t in (build_path(1), build_path(2)):
            for fn in (center, centroid, median, telephone_center, subtree_core):
                assert fn(t).as_list() == list(t.vertices)

    def test_weights_disjoint_tree(self, disjoint_tree):
        assert weights(disjoint_tree)[9] == 8

    def test_distance_sums_path(self):
        assert distance_sums(build_path(3)).values[1:] == (3, 2, 3)


class TestOracles:
    @pytest.mark.parametrize("n", range(1, 11))
    def test_subtree_counts_brute(self, small_trees, n):
        for t in small_trees[n]:
            assert list(subtree_counts(t).values[1:]) == brute_subtree_counts(t)[1:]

    @pytest.mark.parametrize("n", range(2, 10))
    def test_switchboard_brute(self, small_trees, n):
        for t in small_trees[n]:
            sb = switchboard_numbers(t)
            assert [sb[v] for v in t.vertices] == [brute_switchboard(t, v) for v in t.vertices]

    @pytest.mark.parametrize("n", range(5, 19))
    def test_pathstar_count_formula(self, n):
        for g in range(2, n - 2):
            f = subtree_counts(build_path_star(n, g))
            for i in range(1, n - g + 1):
                assert f[i] == i * (n - g - i) + i * 2**g

    def test_pathstar_count_example(self):
        assert subtree_counts(build_path_star(10, 3))[2] == 26

    def test_big_integers(self):
        # 2**g leaf subsets overflow 64-bit arithmetic for g >= 63
        t = build_path_star(80, 70)
        assert subtree_counts(t)[10] == 10 * 2**70


class TestInvariants:
    @pytest.mark.parametrize("n", range(3, 11))
    def test_central_set_shape(self, small_trees, n):
        for t in small_trees[n]:
            for fn in (center, centroid, median, telephone_center, subtree_core):
                cs = fn(t)
                assert len(cs) in (1, 2)
                if len(cs) == 2:
                    assert t.has_edge(*cs.vertices)

    @given(st.integers(3, 30).flatmap(
        lambda n: st.lists(st.integers(1, n), min_size=n - 2, max_size=n - 2).map(lambda s: prufer_decode(s, n))))
    @settings(max_examples=100, deadline=None)
    def test_coincidence_random(self, t):
        assert median(t) == centroid(t) == telephone_center(t)

    @given(st.integers(3, 25).flatmap(
        lambda n: st.lists(st.integers(1, n), min_size=n - 2, max_size=n - 2).map(lambda s: prufer_decode(s, n))))
    @settings(max_examples=100, deadline=None)
    def test_certificate_matches_core(self, t):
        core = subtree_core(t)
        assert [v for v in t.vertices if subtree_core_certificate(t, v)] == core.as_list()


class TestCertificate:
    def test_p82(self):
        t = build_path_star(10, 2)
        assert subtree_core_certificate(t, 6)
        assert not subtree_core_certificate(t, 1)

    def test_equality_gives_partner(self):
        t = build_path(6)
        assert subtree_core(t).as_list() == [3, 4]
        assert core_partner(t, 3) == 4 and core_partner(t, 4) == 3
        assert core_partner(build_path_star(10, 2), 6) is None

    def test_bad_vertex(self):
        with pytest.raises(PreconditionError):
            subtree_core_certificate(build_path(3), 4)


def _pendant_moves(t):
    core = subtree_core(t)
    for v in core:
        for y in t.leaves():
            if y != v and not t.has_edge(v, y):
                yield v, y


def _detach_configs(t):
    for v in subtree_core(t):
        for b in branches_at(t, v):
            if all(t.degree(w) <= 2 for w in b.vertices):
                continue
            for x in b.vertices:
                if t.degree(x) != 1:
                    continue
                chain, prev, cur = [x], 0, x
                while True:
                    (nxt,) = [w for w in t.neighbors(cur) if w != prev] or [None]
                    if nxt is None or nxt == v:
                        break
                    if t.degree(nxt) >= 3:
                        break
                    prev, cur = cur, nxt
                    chain.append(cur)
                if nxt is None or nxt == v:
                    continue
                y, path = nxt, chain[::-1]
                for z in b.vertices:
                    if z == y:
                        continue
                    route = path_between(t, v, z)
                    if y in route and path[0] not in route:
                        yield v, b.root, y, z, path


class TestPerturbations:
    def test_pendant_p82(self):
        t = build_path_star(10, 2)
        out = perturb_pendant_to_core(t, 6, 1)
        assert subtree_core(out).as_list() == [6]

    def test_pendant_adjacent_rejected(self):
        with pytest.raises(PreconditionError, match="already adjacent"):
            perturb_pendant_to_core(build_star(5), 1, 2)

    def test_pendant_not_core(self):
        with pytest.raises(PreconditionError, match="not in the subtree core"):
            perturb_pendant_to_core(build_path_star(10, 2), 2, 1)

    def test_pendant_not_leaf(self):
        with pytest.raises(PreconditionError, match="not pendant"):
            perturb_pendant_to_core(build_path_star(10, 2), 6, 3)

    @pytest.mark.parametrize("n", [8, 9])
    def test_pendant_exhaustive(self, small_trees, n):
        moves = 0
        for t in small_trees[n]:
            for v, y in _pendant_moves(t):
                assert subtree_core(perturb_pendant_to_core(t, v, y)).as_list() == [v]
                moves += 1
        assert moves > 0

    def test_detach_exhaustive_n8(self, small_trees):
        seen = 0
        for t in small_trees[8]:
            for v, u, y, z, path in _detach_configs(t):
                f = subtree_counts(perturb_detach_path(t, v, u, y, z, path))
                assert f[v] > f[u]
                seen += 1
        assert seen > 0

    def test_detach_ten_vertices(self, small_trees):
        checked = 0
        for t in small_trees[10]:
            for v, u, y, z, path in _detach_configs(t):
                f = subtree_counts(perturb_detach_path(t, v, u, y, z, path))
                assert f[v] > f[u]
                checked += 1
        assert checked > 100

    def test_detach_branch_is_path(self):
        t = build_path(7)
        with pytest.raises(PreconditionError, match="is a path"):
            perturb_detach_path(t, 4, 5, 6, 7, [7])

    def test_detach_u_not_adjacent(self):
        t = build_path(7)
        with pytest.raises(PreconditionError, match="not adjacent"):
            perturb_detach_path(t, 4, 6, 6, 7, [7])
