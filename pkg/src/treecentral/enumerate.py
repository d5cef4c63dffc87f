"""Free-tree enumeration and canonical forms.

Free trees are generated as canonical level sequences with the algorithm of
Wright, Richmond, Odlyzko and McKay: each tree is visited once, rooted at a
central vertex, and the successor is obtained from the previous sequence
without any isomorphism test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .errors import EnumerationCapError, PreconditionError
from .tree import Tree, build_from_levels, diameter, distances_from, path_between

ENUMERATION_CAP = 24


# -- canonical forms ----------------------------------------------------------


def rooted_code(children: Callable[[int], Iterable[int]], root: int) -> str:
    """AHU code of a rooted tree: ``(`` + sorted child codes + ``)``."""
    order = [root]
    kids: dict[int, list[int]] = {}
    i = 0
    while i < len(order):
        x = order[i]
        kids[x] = list(children(x))
        order.extend(kids[x])
        i += 1
    code: dict[int, str] = {}
    for x in reversed(order):
        code[x] = "(" + "".join(sorted(code[c] for c in kids[x])) + ")"
    return code[root]


def rooted_code_in_tree(t: Tree, root: int, avoid: int = 0) -> str:
    """AHU code of ``t`` rooted at ``root``, dropping the side through ``avoid``."""
    parent = {root: avoid}

    def children(x: int) -> list[int]:
        out = [y for y in t.adjacency[x] if y != parent[x]]
        for y in out:
            parent[y] = x
        return out

    return rooted_code(children, root)


def _center_vertices(t: Tree) -> list[int]:
    d1 = distances_from(t, 1)
    a = max(t.vertices, key=lambda u: d1[u])
    da = distances_from(t, a)
    b = max(t.vertices, key=lambda u: da[u])
    path = path_between(t, a, b)
    m = len(path)
    return [path[(m - 1) // 2]] if m % 2 else [path[m // 2 - 1], path[m // 2]]


def canonical_form(t: Tree) -> bytes:
    """Isomorphism-invariant encoding; equal exactly when the trees are isomorphic.

    The tree is rooted at its center; for a two-vertex center the smaller
    of the two rooted codes is used. The result is ASCII parentheses.
    """
    cs = _center_vertices(t)
    return min(rooted_code_in_tree(t, c) for c in cs).encode("ascii")


def tree_from_canonical(form: bytes | str) -> Tree:
    """Rebuild a labeled representative from :func:`canonical_form` output."""
    s = form.decode("ascii") if isinstance(form, bytes) else form
    levels = []
    depth = -1
    for ch in s:
        if ch == "(":
            depth += 1
            levels.append(depth)
        elif ch == ")":
            depth -= 1
        else:
            raise PreconditionError(f"invalid character {ch!r} in canonical form")
    if depth != -1 or not levels:
        raise PreconditionError("unbalanced canonical form")
    return build_from_levels(levels)


# -- generation ---------------------------------------------------------------


def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    """Left subtree of the root (levels shifted up by one) and the remainder."""
    m = len(seq)
    for i in range(2, len(seq)):
        if seq[i] == 1:
            m = i
            break
    left = [x - 1 for x in seq[1:m]]
    rest = [0] + seq[m:]
    return left, rest


def _next_rooted(seq: list[int], p: int | None = None) -> list[int] | None:
    """Beyer-Hedetniemi successor of a canonical rooted level sequence."""
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _next_free(seq: list[int]) -> list[int]:
    """First sequence at or after ``seq`` that is the canonical form of a free tree."""
    left, rest = _split(seq)
    lh, rh = max(left), max(rest)
    ok = rh >= lh
    if ok and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return seq
    p = len(left)
    nxt = _next_rooted(seq, p)
    if seq[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[-len(tail):] = tail
    return nxt


def level_sequences(n: int) -> Iterator[list[int]]:
    """Canonical level sequences (root level 0) of all free trees on ``n`` vertices."""
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if n > ENUMERATION_CAP:
        raise EnumerationCapError(f"n={n} exceeds the enumeration cap {ENUMERATION_CAP}")
    if n == 1:
        yield [0]
        return
    if n == 2:
        yield [0, 1]
        return
    seq: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        seq = _next_free(seq)
        yield seq
        seq = _next_rooted(seq)


@dataclass(frozen=True)
class TreeStream:
    """Lazily generated free trees, optionally filtered by diameter and split
    round-robin across ``count`` workers (this one being ``index``)."""

    n: int
    diameter: int | None = None
    partition: tuple[int, int] | None = None

    def __post_init__(self):
        if self.partition is not None:
            i, m = self.partition
            if not (m >= 1 and 0 <= i < m):
                raise PreconditionError(f"partition must satisfy 0 <= index < count, got {self.partition}")

    def __iter__(self) -> Iterator[Tree]:
        i, m = self.partition or (0, 1)
        for idx, seq in enumerate(level_sequences(self.n)):
            if idx % m != i:
                continue
            t = build_from_levels(seq)
            if self.diameter is None or diameter(t) == self.diameter:
                yield t


def free_trees(n: int, partition: tuple[int, int] | None = None) -> TreeStream:
    if not 1 <= n <= ENUMERATION_CAP:
        raise EnumerationCapError(f"n={n} outside 1..{ENUMERATION_CAP}")
    return TreeStream(n, None, partition)


def free_trees_with_diameter(n: int, k: int, partition: tuple[int, int] | None = None) -> TreeStream:
    if not 1 <= n <= ENUMERATION_CAP:
        raise EnumerationCapError(f"n={n} outside 1..{ENUMERATION_CAP}")
    if not 0 <= k <= max(n - 1, 0) or (n > 1 and k < 1):
        raise PreconditionError(f"diameter {k} impossible for n={n}")
    return TreeStream(n, k, partition)
