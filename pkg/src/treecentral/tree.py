"""Labeled trees on vertices 1..n, named families, and basic metrics.

Vertex ids are 1-based everywhere so that family labelings read the same
as the usual drawings: the path-star tree ``P_{n-g,g}`` has path vertices
``1..n-g`` and its ``g`` leaves ``n-g+1..n`` hang off vertex ``n-g``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import PreconditionError, TreeValidationError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Tree:
    """An immutable labeled tree.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``; index 0 is
    an unused placeholder so that ``adjacency[v]`` works for ``v`` in 1..n.
    Use :func:`build_from_edges` rather than constructing this directly.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edges(self) -> list[Edge]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, w) for u in self.vertices for w in self.adjacency[u] if u < w]

    def leaves(self) -> list[int]:
        return [v for v in self.vertices if len(self.adjacency[v]) == 1]

    def has_edge(self, u: int, v: int) -> bool:
        return 1 <= u <= self.n and v in self.adjacency[u]

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 1 <= v <= self.n:
            raise PreconditionError(f"vertex {v!r} is not in 1..{self.n}")


@dataclass(frozen=True)
class CentralSet:
    """One vertex, or two adjacent vertices, stored in ascending order."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) not in (1, 2):
            raise ValueError(f"central set must have 1 or 2 vertices, got {self.vertices}")
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def as_list(self) -> list[int]:
        return list(self.vertices)


@dataclass(frozen=True)
class PathStarParams:
    n: int
    g: int


@dataclass(frozen=True)
class DoubleBroomParams:
    l: int  # noqa: E741
    m: int
    k: int

    @property
    def n(self) -> int:
        return self.l + self.m + self.k


# -- construction -----------------------------------------------------------


def build_from_edges(n: int, edges: Iterable[Sequence[int]], where: Sequence[str] | None = None) -> Tree:
    """Validate an edge list on vertices 1..n and return the tree.

    Raises :class:`TreeValidationError` naming the first offending edge for
    out-of-range ids, self-loops, duplicates and cycles, and reports a
    disconnected graph when fewer than ``n - 1`` edges are given. ``where``
    optionally gives a location prefix per edge (e.g. ``"line 3: "``).
    """
    if not isinstance(n, int) or n < 1:
        raise TreeValidationError(f"vertex count must be a positive integer, got {n!r}")
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj: list[list[int]] = [[] for _ in range(n + 1)]
    seen: set[Edge] = set()
    count = 0
    for i, e in enumerate(edges):
        at = where[i] if where else ""
        if len(e) != 2:
            raise TreeValidationError(f"{at}edge {tuple(e)!r} does not have two endpoints")
        u, v = int(e[0]), int(e[1])
        if not (1 <= u <= n and 1 <= v <= n):
            raise TreeValidationError(f"{at}edge ({u}, {v}) has a vertex outside 1..{n}")
        if u == v:
            raise TreeValidationError(f"{at}edge ({u}, {v}) is a self-loop")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise TreeValidationError(f"{at}edge ({u}, {v}) is a duplicate")
        seen.add(key)
        ru, rv = find(u), find(v)
        if ru == rv:
            raise TreeValidationError(f"{at}edge ({u}, {v}) closes a cycle")
        parent[ru] = rv
        adj[u].append(v)
        adj[v].append(u)
        count += 1
    if count != n - 1:
        raise TreeValidationError(
            f"graph is disconnected: {count} edges given, a tree on {n} vertices needs {n - 1}"
        )
    return Tree(n, tuple(tuple(sorted(a)) for a in adj))


def validate(t: Tree) -> Tree:
    """Re-run full validation on an existing tree (symmetry included)."""
    for u in t.vertices:
        for w in t.adjacency[u]:
            if u not in t.adjacency[w]:
                raise TreeValidationError(f"adjacency is not symmetric at edge ({u}, {w})")
    rebuilt = build_from_edges(t.n, t.edges())
    if rebuilt.adjacency != t.adjacency:
        raise TreeValidationError("adjacency lists are not sorted or contain repeats")
    return t


def build_path(n: int) -> Tree:
    return build_from_edges(n, [(i, i + 1) for i in range(1, n)])


def build_star(n: int) -> Tree:
    """Star ``K_{1,n-1}`` with centre 1."""
    return build_from_edges(n, [(1, i) for i in range(2, n + 1)])


def build_path_star(p: PathStarParams | int, g: int | None = None) -> Tree:
    """Path ``1..n-g`` with ``g`` leaves ``n-g+1..n`` attached to ``n-g``.

    Accepts either a :class:`PathStarParams` or ``(n, g)``.
    """
    if not isinstance(p, PathStarParams):
        p = PathStarParams(p, g)
    n, g = p.n, p.g
    if not (2 <= g <= n - 3):
        raise PreconditionError(f"path-star needs 2 <= g <= n-3, got n={n}, g={g}")
    hub = n - g
    edges = [(i, i + 1) for i in range(1, hub)]
    edges += [(hub, leaf) for leaf in range(hub + 1, n + 1)]
    return build_from_edges(n, edges)


def build_tnk(n: int, k: int) -> Tree:
    """Path ``v_1..v_{k+1}`` with ``n-k-1`` leaves on ``v_{floor((k+2)/2)}``.

    Path vertices keep ids ``1..k+1``; added leaves are ``k+2..n``.
    """
    if not (3 <= k <= n - 1):
        raise PreconditionError(f"T_(n,k) needs 3 <= k <= n-1, got n={n}, k={k}")
    hub = (k + 2) // 2
    edges = [(i, i + 1) for i in range(1, k + 1)]
    edges += [(hub, leaf) for leaf in range(k + 2, n + 1)]
    return build_from_edges(n, edges)


def build_double_broom(p: DoubleBroomParams | int, m: int | None = None, k: int | None = None) -> Tree:
    """``T(l, m, k)``: path ``v_1..v_k`` (ids 1..k), ``l`` leaves on ``v_1``
    (ids k+1..k+l) and ``m`` leaves on ``v_k`` (ids k+l+1..n)."""
    if not isinstance(p, DoubleBroomParams):
        p = DoubleBroomParams(p, m, k)
    l, m, k = p.l, p.m, p.k  # noqa: E741
    if min(l, m, k) < 1:
        raise PreconditionError(f"T(l,m,k) needs l, m, k >= 1, got ({l}, {m}, {k})")
    edges = [(i, i + 1) for i in range(1, k)]
    edges += [(1, k + j) for j in range(1, l + 1)]
    edges += [(k, k + l + j) for j in range(1, m + 1)]
    return build_from_edges(p.n, edges)


def build_from_levels(levels: Sequence[int]) -> Tree:
    """Tree from a preorder level sequence (root at level 0 or 1).

    Vertex ``i + 1`` is the ``i``-th entry; its parent is the latest earlier
    vertex one level up.
    """
    n = len(levels)
    stack: list[int] = []
    edges = []
    base = levels[0]
    for i, lev in enumerate(levels):
        depth = lev - base
        del stack[depth:]
        if depth:
            edges.append((stack[-1], i + 1))
        stack.append(i + 1)
    return build_from_edges(n, edges)


# -- metrics ----------------------------------------------------------------


def distances_from(t: Tree, v: int) -> list[int]:
    """BFS distances from ``v``; index 0 is unused, so ``d[u]`` is d(v, u)."""
    t.check_vertex(v)
    dist = [-1] * (t.n + 1)
    dist[0] = 0
    dist[v] = 0
    queue = deque([v])
    adj = t.adjacency
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dx
                queue.append(y)
    return dist


def distance_matrix(t: Tree) -> list[list[int]]:
    return [[0] * (t.n + 1)] + [distances_from(t, v) for v in t.vertices]


def diameter(t: Tree) -> int:
    """Double BFS sweep: farthest vertex from 1, then farthest from that."""
    d1 = distances_from(t, 1)
    far = max(t.vertices, key=lambda u: d1[u])
    return max(distances_from(t, far))


def path_between(t: Tree, u: int, v: int) -> list[int]:
    """Vertices on the unique u-v path, ``u`` first."""
    t.check_vertex(u)
    t.check_vertex(v)
    prev = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in t.adjacency[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    out = [v]
    while out[-1] != u:
        out.append(prev[out[-1]])
    return out[::-1]


def _vertex_set(s) -> tuple[int, ...]:
    if hasattr(s, "vertices") and not isinstance(s, Tree):
        return tuple(s.vertices)
    if isinstance(s, int):
        return (s,)
    return tuple(s)


def central_distance(t: Tree, a, b, dist: list[list[int]] | None = None) -> int:
    """Set distance ``min d(x, y)`` over ``x`` in ``a`` and ``y`` in ``b``.

    ``a`` and ``b`` may be vertex ids, iterables of ids, or any object with a
    ``vertices`` attribute (central and characteristic sets).
    """
    av, bv = _vertex_set(a), _vertex_set(b)
    if not av or not bv:
        raise PreconditionError("central_distance needs nonempty vertex sets")
    if dist is None:
        rows = {x: distances_from(t, x) for x in av}
        return min(rows[x][y] for x in av for y in bv)
    return min(dist[x][y] for x in av for y in bv)


@dataclass(frozen=True)
class Branch:
    """A connected component of ``T - v``.

    ``edges`` is the component's own edge count; ``weight`` adds the edge
    back to ``v``, i.e. the edge count of the branch at ``v``.
    """

    root: int
    vertices: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> int:
        return len(self.vertices) - 1

    @property
    def weight(self) -> int:
        return len(self.vertices)


def branches_at(t: Tree, v: int) -> list[Branch]:
    """Components of ``T - v`` ordered by their vertex adjacent to ``v``."""
    t.check_vertex(v)
    out = []
    for r in t.adjacency[v]:
        seen = {v, r}
        stack = [r]
        while stack:
            x = stack.pop()
            for y in t.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        seen.discard(v)
        out.append(Branch(r, frozenset(seen)))
    return out


def component_sizes(t: Tree) -> list[dict[int, int]]:
    """``sizes[v][w]``: vertex count of the component of ``T - v`` containing
    neighbour ``w``. Computed for all directed edges in O(n)."""
    parent, order = rooted_order(t, 1)
    sub = [1] * (t.n + 1)
    for x in reversed(order):
        if parent[x]:
            sub[parent[x]] += sub[x]
    sizes: list[dict[int, int]] = [dict() for _ in range(t.n + 1)]
    for x in order:
        p = parent[x]
        if p:
            sizes[p][x] = sub[x]
            sizes[x][p] = t.n - sub[x]
    return sizes


def rooted_order(t: Tree, root: int) -> tuple[list[int], list[int]]:
    """Parent array (0 for the root) and a preorder visiting children in
    ascending id."""
    parent = [0] * (t.n + 1)
    order = []
    stack = [root]
    visited = [False] * (t.n + 1)
    visited[root] = True
    while stack:
        x = stack.pop()
        order.append(x)
        for y in reversed(t.adjacency[x]):
            if not visited[y]:
                visited[y] = True
                parent[y] = x
                stack.append(y)
    return parent, order


# -- text formats -----------------------------------------------------------


def parse_edge_list(text: str) -> Tree:
    """Parse ``n`` on the first line followed by ``n - 1`` lines ``u v``.

    Blank lines and ``#`` comments are ignored. Errors carry line numbers.
    """
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise TreeValidationError("empty input: expected vertex count on the first line")
    lineno, head = rows[0]
    if len(head) != 1 or not head[0].lstrip("-").isdigit():
        raise TreeValidationError(f"line {lineno}: expected a single vertex count, got {' '.join(head)!r}")
    n = int(head[0])
    edges, where = [], []
    for lineno, parts in rows[1:]:
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise TreeValidationError(f"line {lineno}: expected 'u v', got {' '.join(parts)!r}")
        edges.append((int(parts[0]), int(parts[1])))
        where.append(f"line {lineno}: ")
    return build_from_edges(n, edges, where)


def format_edge_list(t: Tree) -> str:
    lines = [str(t.n)] + [f"{u} {v}" for u, v in t.edges()]
    return "\n".join(lines) + "\n"


def to_dot(t: Tree, highlight: dict[str, Iterable[int]] | None = None, name: str = "T") -> str:
    """Graphviz DOT text. ``highlight`` maps a colour name to vertices to fill;
    later entries win where they overlap."""
    fill: dict[int, list[str]] = {}
    for colour, verts in (highlight or {}).items():
        for v in verts:
            fill.setdefault(v, []).append(colour)
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in t.vertices:
        if v in fill:
            colours = ":".join(fill[v])
            style = "wedged" if len(fill[v]) > 1 else "filled"
            lines.append(f'  {v} [style={style}, fillcolor="{colours}"];')
        else:
            lines.append(f"  {v};")
    for u, v in t.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
