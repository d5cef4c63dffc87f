"""Slow, obviously-correct reference implementations used only by tests.

None of these share code with the package beyond the ``Tree`` container.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from functools import lru_cache

from treecentral.tree import Tree, build_from_edges


def bfs_dist(t: Tree, s: int) -> dict[int, int]:
    seen = {s: 0}
    q = deque([s])
    while q:
        x = q.popleft()
        for y in t.adjacency[x]:
            if y not in seen:
                seen[y] = seen[x] + 1
                q.append(y)
    return seen


def brute_diameter(t: Tree) -> int:
    return max(max(bfs_dist(t, v).values()) for v in range(1, t.n + 1))


def _connected(t: Tree, verts: frozenset[int]) -> bool:
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in t.adjacency[x]:
            if y in verts and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


def brute_subtree_counts(t: Tree) -> list[int]:
    """Count connected vertex subsets containing each vertex by listing them all."""
    f = [0] * (t.n + 1)
    verts = range(1, t.n + 1)
    for mask in range(1, 1 << t.n):
        s = frozenset(v for v in verts if mask >> (v - 1) & 1)
        if _connected(t, s):
            for v in s:
                f[v] += 1
    return f


def brute_switchboard(t: Tree, v: int) -> int:
    """Largest set of simultaneous calls through ``v``: each call pairs two
    vertices from different branches at ``v`` and no vertex joins two calls."""
    label = {}
    for y in t.adjacency[v]:
        # flood the branch through y
        stack, label[y] = [y], y
        while stack:
            x = stack.pop()
            for z in t.adjacency[x]:
                if z != v and z not in label:
                    label[z] = y
                    stack.append(z)
    callers = tuple(sorted(label))

    @lru_cache(maxsize=None)
    def best(free: tuple[int, ...]) -> int:
        if len(free) < 2:
            return 0
        a, rest = free[0], free[1:]
        out = best(rest)  # a stays idle
        for b in rest:
            if label[b] != label[a]:
                out = max(out, 1 + best(tuple(x for x in rest if x != b)))
        return out

    return best(callers)


def prufer_decode(seq: list[int], n: int) -> Tree:
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    leaves = [i for i in range(1, n + 1) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, w))
    return build_from_edges(n, edges)


def _rooted_code(t: Tree, root: int) -> str:
    def code(x: int, parent: int) -> str:
        return "[" + "".join(sorted(code(y, x) for y in t.adjacency[x] if y != parent)) + "]"

    return code(root, 0)


def iso_key(t: Tree) -> str:
    """Isomorphism key: the least rooted code over every possible root."""
    return min(_rooted_code(t, r) for r in range(1, t.n + 1))


def _restricted_growth(length: int, blocks: int):
    """Sequences over 1..blocks, each label used, first uses in increasing order."""

    def rec(prefix: list[int], top: int):
        if len(prefix) == length:
            if top == blocks:
                yield list(prefix)
            return
        remaining = length - len(prefix)
        if blocks - top > remaining:
            return
        for x in range(1, min(top + 1, blocks) + 1):
            prefix.append(x)
            yield from rec(prefix, max(top, x))
            prefix.pop()

    yield from rec([], 0)


def prufer_free_trees(n: int) -> dict[str, Tree]:
    """Free trees on ``n`` vertices, deduplicated by :func:`iso_key`.

    Relabel any tree so its ``L`` leaves carry the top labels and its
    internal vertices are numbered by first appearance in the Prüfer
    sequence. The sequence then uses exactly the labels ``1..n-L``, in
    first-appearance order, so decoding every such sequence reaches every
    isomorphism class.
    """
    if n == 1:
        return {"[]": build_from_edges(1, [])}
    if n == 2:
        t = build_from_edges(2, [(1, 2)])
        return {iso_key(t): t}
    out = {}
    for internal in range(1, n - 1):
        for seq in _restricted_growth(n - 2, internal):
            t = prufer_decode(seq, n)
            out.setdefault(iso_key(t), t)
    return out


def prufer_all_labeled(n: int):
    """Every labeled tree on ``n >= 3`` vertices, one per Prüfer sequence."""
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        yield prufer_decode(list(seq), n)
