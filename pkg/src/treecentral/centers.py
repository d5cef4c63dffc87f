"""Combinatorial central parts of a tree.

Center, centroid, median, telephone center and subtree core, the per-vertex
scores behind them, the local subtree-core certificate, and two tree
perturbations that move pendant material while keeping track of the core.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvariantError, PreconditionError
from .tree import (
    CentralSet,
    Tree,
    branches_at,
    build_from_edges,
    component_sizes,
    distance_matrix,
    path_between,
    rooted_order,
)

SCORE_KINDS = ("eccentricity", "weight", "distance_sum", "switchboard", "subtree_count")


@dataclass(frozen=True)
class VertexScores:
    """Per-vertex values; ``values[v]`` for v in 1..n, ``values[0]`` unused."""

    kind: str
    values: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in SCORE_KINDS:
            raise ValueError(f"unknown score kind {self.kind!r}")

    def __getitem__(self, v: int) -> int:
        return self.values[v]

    def as_dict(self) -> dict[int, int]:
        return {v: self.values[v] for v in range(1, len(self.values))}


def _extremal_set(t: Tree, values: Sequence[int], largest: bool, what: str) -> CentralSet:
    best = max(values[1:]) if largest else min(values[1:])
    winners = [v for v in t.vertices if values[v] == best]
    if t.n <= 2:
        return CentralSet(tuple(t.vertices))
    if len(winners) > 2 or (len(winners) == 2 and not t.has_edge(*winners)):
        raise InvariantError(f"{what} is not a vertex or an edge: {winners}")
    return CentralSet(tuple(winners))


# -- scores -----------------------------------------------------------------


def eccentricities(t: Tree, dist: list[list[int]] | None = None) -> VertexScores:
    dist = dist or distance_matrix(t)
    return VertexScores("eccentricity", (0,) + tuple(max(dist[v][1:]) for v in t.vertices))


def weights(t: Tree) -> VertexScores:
    """Branch weight: the largest number of edges in a branch at ``v``."""
    sizes = component_sizes(t)
    vals = [0] + [max(sizes[v].values(), default=0) for v in t.vertices]
    return VertexScores("weight", tuple(vals))


def distance_sums(t: Tree, dist: list[list[int]] | None = None) -> VertexScores:
    dist = dist or distance_matrix(t)
    return VertexScores("distance_sum", (0,) + tuple(sum(dist[v]) for v in t.vertices))


def switchboard_numbers(t: Tree) -> VertexScores:
    """Maximum number of simultaneous calls routed through each vertex.

    A call through ``v`` joins two callers lying in different branches at
    ``v``; every vertex other than ``v`` takes part in at most one call and
    relaying costs nothing. That is a maximum matching in the complete
    multipartite graph whose parts are the branches, so with ``S = n - 1``
    callers and a largest branch of ``b`` vertices the answer is
    ``min(S // 2, S - b)``.
    """
    sizes = component_sizes(t)
    s = t.n - 1
    vals = [0]
    for v in t.vertices:
        biggest = max(sizes[v].values(), default=0)
        vals.append(min(s // 2, s - biggest))
    return VertexScores("switchboard", tuple(vals))


def _subtree_dp(t: Tree) -> tuple[list[int], list[int], list[int]]:
    """Rerooting DP. Returns ``(parent, down, f)`` where ``down[v]`` counts
    subtrees of v's rooted subtree (root 1) that contain ``v`` and ``f[v]`` is
    the number of subtrees of ``t`` containing ``v``."""
    parent, order = rooted_order(t, 1)
    down = [1] * (t.n + 1)
    for x in reversed(order):
        p = parent[x]
        if p:
            down[p] *= 1 + down[x]
    f = [0] * (t.n + 1)
    f[1] = down[1]
    for x in order[1:]:
        p = parent[x]
        # subtrees through p that avoid x's side, exact division
        up = f[p] // (1 + down[x])
        f[x] = down[x] * (1 + up)
    return parent, down, f


def subtree_counts(t: Tree) -> VertexScores:
    """``f_T(v)``, the number of subtrees containing ``v``, as exact integers."""
    _, _, f = _subtree_dp(t)
    f[0] = 0
    return VertexScores("subtree_count", tuple(f))


def side_counts(t: Tree) -> dict[tuple[int, int], int]:
    """``side[(u, w)]`` for adjacent ``u, w``: subtrees of the component of
    ``T - uw`` containing ``w`` that contain ``w``."""
    parent, down, f = _subtree_dp(t)
    side = {}
    for x in t.vertices:
        p = parent[x]
        if p:
            side[(p, x)] = down[x]
            side[(x, p)] = f[p] // (1 + down[x])
    return side


# -- central sets -----------------------------------------------------------


def center(t: Tree, dist: list[list[int]] | None = None) -> CentralSet:
    return _extremal_set(t, eccentricities(t, dist).values, False, "center")


def centroid(t: Tree) -> CentralSet:
    return _extremal_set(t, weights(t).values, False, "centroid")


def median(t: Tree, dist: list[list[int]] | None = None) -> CentralSet:
    return _extremal_set(t, distance_sums(t, dist).values, False, "median")


def telephone_center(t: Tree) -> CentralSet:
    return _extremal_set(t, switchboard_numbers(t).values, True, "telephone center")


def subtree_core(t: Tree, counts: VertexScores | None = None) -> CentralSet:
    counts = counts or subtree_counts(t)
    return _extremal_set(t, counts.values, True, "subtree core")


def subtree_core_certificate(t: Tree, u: int) -> bool:
    """Local test for ``u`` in the subtree core.

    For every edge ``e = uv`` compare the subtrees through ``u`` on u's side
    of ``e`` against those through ``v`` on v's side; ``u`` is in the core
    exactly when u's side never loses.
    """
    t.check_vertex(u)
    if t.n <= 2:
        return True
    side = side_counts(t)
    f_u = subtree_counts(t)[u]
    for v in t.neighbors(u):
        own = f_u // (1 + side[(u, v)])
        if own < side[(u, v)]:
            return False
    return True


def core_partner(t: Tree, u: int) -> int | None:
    """Neighbour ``v`` where the certificate at ``u`` holds with equality
    (then ``v`` shares the core with ``u``), else ``None``."""
    side = side_counts(t)
    f_u = subtree_counts(t)[u]
    for v in t.neighbors(u):
        if f_u // (1 + side[(u, v)]) == side[(u, v)]:
            return v
    return None


# -- perturbations ----------------------------------------------------------


def perturb_pendant_to_core(t: Tree, v: int, y: int) -> Tree:
    """Detach pendant ``y`` and re-attach it to core vertex ``v``.

    The resulting tree has subtree core exactly ``{v}``.
    """
    t.check_vertex(v)
    t.check_vertex(y)
    if v not in subtree_core(t):
        raise PreconditionError(f"vertex {v} is not in the subtree core {subtree_core(t).as_list()}")
    if t.degree(y) != 1:
        raise PreconditionError(f"vertex {y} is not pendant (degree {t.degree(y)})")
    if y == v or t.has_edge(v, y):
        raise PreconditionError(f"pendant {y} is already adjacent to {v}")
    (old,) = t.neighbors(y)
    edges = [e for e in t.edges() if e != (min(old, y), max(old, y))]
    edges.append((v, y))
    return build_from_edges(t.n, edges)


def perturb_detach_path(t: Tree, v: int, u: int, y: int, z: int, path: Sequence[int]) -> Tree:
    """Move the pendant path ``path = [y_1, ..., y_m]`` hanging off ``y`` to ``z``.

    Hypotheses, each checked with its own diagnostic:

    * ``v`` is in the subtree core and ``u`` is a neighbour of ``v``;
    * the branch ``B`` at ``v`` through ``u`` is not a path;
    * ``y_m`` is a pendant vertex in ``B``, ``y_1..y_{m-1}`` have degree 2,
      ``y`` is adjacent to ``y_1`` and has degree at least 3, so ``y`` is the
      vertex of degree >= 3 closest to ``y_m``;
    * ``z != y`` lies in ``B`` and the ``v``-``z`` path passes ``y`` but not ``y_1``.

    In the returned tree ``f(v) > f(u)``.
    """
    for w in (v, u, y, z, *path):
        t.check_vertex(w)
    path = list(path)
    if not path:
        raise PreconditionError("path [y_1..y_m] is empty")
    if v not in subtree_core(t):
        raise PreconditionError(f"v={v} is not in the subtree core")
    if not t.has_edge(v, u):
        raise PreconditionError(f"u={u} is not adjacent to v={v}")
    branch = next(b for b in branches_at(t, v) if b.root == u)
    if all(t.degree(w) <= 2 for w in branch.vertices):
        raise PreconditionError(f"branch at v={v} through u={u} is a path")
    x = path[-1]
    if x not in branch.vertices or t.degree(x) != 1:
        raise PreconditionError(f"x={x} is not a pendant vertex of the branch through u={u}")
    if y not in branch.vertices or t.degree(y) < 3:
        raise PreconditionError(f"y={y} is not a vertex of degree >= 3 in the branch")
    chain = [y] + path
    for a, b in zip(chain, chain[1:]):
        if not t.has_edge(a, b):
            raise PreconditionError(f"[y, y_1, ..., y_m] is not a path: {a} and {b} are not adjacent")
    if any(t.degree(w) != 2 for w in path[:-1]):
        raise PreconditionError(f"y={y} is not the degree >= 3 vertex closest to x={x}")
    if z == y or z not in branch.vertices:
        raise PreconditionError(f"z={z} must be a vertex of the branch other than y")
    route = path_between(t, v, z)
    if y not in route or path[0] in route:
        raise PreconditionError(f"the path from v={v} to z={z} must contain y={y} and avoid y_1={path[0]}")
    y1 = path[0]
    edges = [e for e in t.edges() if e != (min(y, y1), max(y, y1))]
    edges.append((z, y1))
    return build_from_edges(t.n, edges)
