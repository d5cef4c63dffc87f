"""Laplacian spectra of trees and the characteristic set.

The characteristic set is located twice, independently:

* from a Fiedler vector (sign pattern of the eigenvector of the second
  smallest Laplacian eigenvalue), computed by a cyclic Jacobi solver;
* from Perron components, by walking from the center toward the unique
  component of largest Perron value until the walk stops at a vertex with
  several Perron components or turns back across an edge.

:func:`characteristic_set` insists that both agree.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import sympy

from .config import DEFAULT, Config
from .enumerate import rooted_code
from .errors import (
    AmbiguousFiedlerError,
    CharacteristicSetMismatch,
    InvariantError,
    PerronTieError,
    PreconditionError,
    SolverError,
)
from .centers import center
from .tree import Branch, Tree, branches_at

log = logging.getLogger(__name__)

VERTEX = "vertex"
EDGE = "edge"


@dataclass(frozen=True)
class FiedlerResult:
    """Algebraic connectivity ``mu`` and a unit Fiedler vector.

    ``vector[i]`` belongs to vertex ``i + 1``.
    """

    mu: float
    vector: np.ndarray = field(repr=False)
    residual: float

    def value(self, v: int) -> float:
        return float(self.vector[v - 1])


@dataclass(frozen=True)
class CharacteristicSet:
    kind: str
    vertices: tuple[int, ...]
    method: str = "cross-validated"

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        if (self.kind, len(self.vertices)) not in ((VERTEX, 1), (EDGE, 2)):
            raise ValueError(f"bad characteristic set {self.kind} {self.vertices}")

    def same_as(self, other: "CharacteristicSet") -> bool:
        return self.kind == other.kind and self.vertices == other.vertices

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices)}

    def __str__(self) -> str:
        inner = ",".join(map(str, self.vertices))
        return f"{self.kind.capitalize()}({inner})"


def Vertex(v: int, method: str = "cross-validated") -> CharacteristicSet:
    return CharacteristicSet(VERTEX, (v,), method)


def Edge(u: int, v: int, method: str = "cross-validated") -> CharacteristicSet:
    return CharacteristicSet(EDGE, (u, v), method)


# -- Laplacian and eigensolver -----------------------------------------------


def laplacian(t: Tree) -> np.ndarray:
    """``L = D - A`` as an int64 array; row/column ``i`` is vertex ``i + 1``."""
    lap = np.zeros((t.n, t.n), dtype=np.int64)
    for v in t.vertices:
        lap[v - 1, v - 1] = t.degree(v)
        for w in t.neighbors(v):
            lap[v - 1, w - 1] = -1
    return lap


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament schedule: ``m - 1`` rounds of disjoint index pairs covering
    every pair once (``m`` is ``n`` rounded up to even)."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(a.diagonal())
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigh(a: np.ndarray, tol: float = 1e-15, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a dense
    symmetric matrix by cyclic Jacobi rotations.

    Each round applies a set of disjoint rotations at once, following a
    fixed tournament ordering, so the result is deterministic.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v
    scale = np.linalg.norm(a)
    if scale == 0:
        return np.zeros(n), v
    rounds = _round_robin(n)
    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off <= tol * scale:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            app, aqq = a[p, p], a[q, q]
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                theta = np.where(active, (aqq - app) / (2.0 * np.where(active, apq, 1.0)), 0.0)
                t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = ap * c - aq * s
            a[:, q] = ap * s + aq * c
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
    else:
        off = _off_norm(a)
        if off > 1e3 * tol * scale:
            raise SolverError(f"Jacobi did not converge in {max_sweeps} sweeps", residual=off)
    w = a.diagonal().copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def fiedler(t: Tree, zero_tol: float = DEFAULT.zero_tol) -> FiedlerResult:
    """Second smallest Laplacian eigenpair.

    The vector is made orthogonal to the all-ones vector, normalised, and
    signed so that its first clearly nonzero entry is negative.
    """
    if t.n < 2:
        raise PreconditionError("the Fiedler vector needs at least 2 vertices")
    lap = laplacian(t).astype(float)
    w, vecs = jacobi_eigh(lap)
    mu = float(w[1])
    y = vecs[:, 1].copy()
    y -= y.mean()
    y /= np.linalg.norm(y)
    big = np.abs(y).max()
    for val in y:
        if abs(val) > zero_tol * big:
            if val > 0:
                y = -y
            break
    residual = float(np.abs(lap @ y - mu * y).max())
    if residual > 1e-10 * t.n:
        raise SolverError(f"Fiedler residual {residual:.3e} exceeds {1e-10 * t.n:.1e}", residual=residual)
    return FiedlerResult(mu, y, residual)


def characteristic_set_fiedler(t: Tree, f: FiedlerResult, zero_tol: float = DEFAULT.zero_tol) -> CharacteristicSet:
    """Characteristic vertex or edge read off a Fiedler vector.

    A vertex counts as zero when ``|Y(v)| <= zero_tol * max|Y|``. Raises
    :class:`AmbiguousFiedlerError` unless exactly one candidate appears.
    """
    y = f.vector
    thr = zero_tol * float(np.abs(y).max())
    zero = [abs(float(y[v - 1])) <= thr for v in range(1, t.n + 1)]
    verts = [
        v for v in t.vertices if zero[v - 1] and any(not zero[u - 1] for u in t.neighbors(v))
    ]
    edges = [
        (u, v)
        for u, v in t.edges()
        if not zero[u - 1] and not zero[v - 1] and y[u - 1] * y[v - 1] < 0
    ]
    if len(verts) == 1 and not edges:
        return Vertex(verts[0], "fiedler")
    if len(edges) == 1 and not verts:
        return Edge(*edges[0], "fiedler")
    raise AmbiguousFiedlerError(
        f"Fiedler vector gives {len(verts)} candidate vertices and {len(edges)} candidate edges",
        verts,
        edges,
    )


# -- bottleneck matrices and Perron values ------------------------------------


def _component_order(t: Tree, v: int, component) -> tuple[list[int], dict[int, int]]:
    comp = set(component)
    roots = [r for r in t.neighbors(v) if r in comp]
    if len(roots) != 1:
        raise PreconditionError(f"vertex set is not a component of T - {v}")
    parent = {roots[0]: v}
    order = [roots[0]]
    i = 0
    while i < len(order):
        x = order[i]
        for y in t.neighbors(x):
            if y != parent[x]:
                parent[y] = x
                order.append(y)
        i += 1
    if set(order) != comp:
        raise PreconditionError(f"vertex set is not a component of T - {v}")
    return order, parent


def bottleneck_matrix(t: Tree, v: int, component) -> np.ndarray:
    """Inverse of the principal Laplacian submatrix on a component of ``T - v``.

    Entry ``(i, j)`` is the number of edges shared by the paths from ``i``
    and from ``j`` to ``v``. Rows follow ascending vertex id. The product
    with the Laplacian submatrix is checked to be the identity in exact
    integer arithmetic before returning.
    """
    t.check_vertex(v)
    order, parent = _component_order(t, v, component)
    pos = {x: i for i, x in enumerate(order)}
    s = len(order)
    m = np.zeros((s, s), dtype=np.int64)
    m[0, 0] = 1
    for i in range(1, s):
        x = order[i]
        pi = pos[parent[x]]
        m[i, :i] = m[pi, :i]
        m[:i, i] = m[pi, :i]
        m[i, i] = m[pi, pi] + 1
    ids = sorted(order)
    perm = [pos[x] for x in ids]
    m = m[np.ix_(perm, perm)]
    sub = laplacian_submatrix(t, ids)
    if not np.array_equal(m @ sub, np.eye(s, dtype=np.int64)):
        raise InvariantError(f"bottleneck matrix at {v} is not the inverse of the Laplacian block")
    return m


def laplacian_submatrix(t: Tree, ids: list[int]) -> np.ndarray:
    pos = {x: i for i, x in enumerate(ids)}
    sub = np.zeros((len(ids), len(ids)), dtype=np.int64)
    for x in ids:
        sub[pos[x], pos[x]] = t.degree(x)
        for y in t.neighbors(x):
            if y in pos:
                sub[pos[x], pos[y]] = -1
    return sub


def perron_value(m: np.ndarray, tol: float = DEFAULT.perron_tol, max_iter: int = 200_000) -> float:
    """Spectral radius of a positive matrix by power iteration.

    Starts from the all-ones vector and stops when the Rayleigh quotient
    changes by at most ``tol`` relative.
    """
    a = np.asarray(m, dtype=float)
    if a.shape == (1, 1):
        return float(a[0, 0])
    x = np.ones(a.shape[0]) / math.sqrt(a.shape[0])
    lam = 0.0
    for _ in range(max_iter):
        y = a @ x
        new = float(x @ y)
        x = y / np.linalg.norm(y)
        if abs(new - lam) <= tol * abs(new):
            return new
        lam = new
    raise SolverError(f"power iteration did not reach relative tolerance {tol}", residual=abs(new - lam))


def matrix_rooted_code(m: np.ndarray) -> str:
    """Rooted-tree code recovered from a bottleneck matrix alone.

    The diagonal holds depths; the parent of ``i`` is the unique ``j`` with
    ``m[j, j] == m[i, j] == m[i, i] - 1``. Two bottleneck matrices agree up
    to a simultaneous permutation exactly when these codes are equal.
    """
    m = np.asarray(m)
    s = m.shape[0]
    depth = m.diagonal()
    kids: dict[int, list[int]] = {i: [] for i in range(-1, s)}
    for i in range(s):
        if depth[i] == 1:
            kids[-1].append(i)
            continue
        (par,) = [j for j in range(s) if depth[j] == depth[i] - 1 and m[i, j] == depth[i] - 1]
        kids[par].append(i)
    if len(kids[-1]) != 1:
        raise InvariantError("bottleneck matrix does not describe a single component")
    return rooted_code(lambda x: kids[x], kids[-1][0])


@dataclass(frozen=True)
class PerronComponent:
    branch: Branch
    matrix: np.ndarray = field(repr=False)
    value: float


@dataclass(frozen=True)
class PerronAnalysis:
    """Components at one vertex and which of them are Perron components."""

    vertex: int
    components: tuple[PerronComponent, ...]
    perron: tuple[int, ...]  # indices into components
    exact_tie: bool

    def unique(self) -> PerronComponent | None:
        return self.components[self.perron[0]] if len(self.perron) == 1 else None


def perron_components(t: Tree, v: int, config: Config = DEFAULT) -> PerronAnalysis:
    """Perron values of every component of ``T - v`` and the maximisers.

    Values within ``tie_tol`` (relative) of the maximum are near-tied. A
    near tie among permutation-equivalent bottleneck matrices is exact; any
    other near tie is settled exactly on the integer Laplacian blocks by
    :func:`exact_perron_compare`.
    """
    comps = []
    for b in branches_at(t, v):
        m = bottleneck_matrix(t, v, b.vertices)
        comps.append(PerronComponent(b, m, perron_value(m, config.perron_tol)))
    if not comps:
        return PerronAnalysis(v, (), (), False)
    best = max(c.value for c in comps)
    tied = [i for i, c in enumerate(comps) if best - c.value <= config.tie_tol * best]
    if len(tied) == 1:
        return PerronAnalysis(v, tuple(comps), tuple(tied), False)
    codes = {i: matrix_rooted_code(comps[i].matrix) for i in tied}
    if len(set(codes.values())) == 1:
        return PerronAnalysis(v, tuple(comps), tuple(tied), True)
    blocks = {i: laplacian_submatrix(t, sorted(comps[i].branch.vertices)) for i in tied}
    winners = [tied[0]]
    for i in tied[1:]:
        if codes[i] == codes[winners[0]]:
            sign = 0
        else:
            sign = exact_perron_compare(blocks[i], blocks[winners[0]], vertex=v)
        if sign > 0:
            winners = [i]
        elif sign == 0:
            winners.append(i)
    return PerronAnalysis(v, tuple(comps), tuple(sorted(winners)), len(winners) > 1)


def exact_perron_compare(block_a: np.ndarray, block_b: np.ndarray, vertex: int = 0, max_rounds: int = 60) -> int:
    """Sign of ``rho(A^-1) - rho(B^-1)`` for integer Laplacian blocks, exactly.

    Perron values are reciprocals of the smallest eigenvalues. Those are
    equal exactly when the gcd of the two characteristic polynomials has a
    root inside both isolating intervals; otherwise the intervals are
    refined until they separate.
    """
    x = sympy.Symbol("x")
    pa = sympy.Poly(sympy.Matrix(block_a.tolist()).charpoly(x).as_expr(), x)
    pb = sympy.Poly(sympy.Matrix(block_b.tolist()).charpoly(x).as_expr(), x)
    (sa, ta), _ = pa.intervals()[0]
    (sb, tb), _ = pb.intervals()[0]
    g = sympy.gcd(pa, pb)
    if g.degree() > 0 and g.count_roots(sa, ta) > 0 and g.count_roots(sb, tb) > 0:
        return 0
    eps = sympy.Rational(1, 10**6)
    for _ in range(max_rounds):
        if ta < sb:
            return 1  # smaller eigenvalue on A's side, larger Perron value
        if tb < sa:
            return -1
        sa, ta = pa.refine_root(sa, ta, eps=eps)
        sb, tb = pb.refine_root(sb, tb, eps=eps)
        eps /= 1000
    raise PerronTieError(f"could not separate Perron values at vertex {vertex}", vertex, [])


def characteristic_set_perron(t: Tree, config: Config = DEFAULT) -> CharacteristicSet:
    """Characteristic set located through Perron components.

    A vertex with two or more Perron components is the characteristic
    vertex; an edge ``{i, j}`` where each end's unique Perron component
    contains the other end is the characteristic edge. Away from the
    characteristic set the unique Perron component points toward it, so the
    walk from the center terminates.
    """
    if t.n == 1:
        return Vertex(1, "perron")
    if t.n == 2:
        return Edge(1, 2, "perron")
    v, prev = center(t).vertices[0], 0
    for _ in range(t.n + 1):
        pa = perron_components(t, v, config)
        if len(pa.perron) >= 2:
            return Vertex(v, "perron")
        comp = pa.unique()
        if prev and prev in comp.branch.vertices:
            return Edge(prev, v, "perron")
        prev, v = v, comp.branch.root
    raise InvariantError("Perron walk did not terminate")


def characteristic_set(t: Tree, config: Config = DEFAULT, fiedler_result: FiedlerResult | None = None) -> CharacteristicSet:
    """Characteristic set by both routes; they must agree.

    If the Fiedler sign pattern is ambiguous the Perron answer is returned
    with ``method='perron'``; if the Perron route cannot separate a near tie
    the Fiedler answer is returned with ``method='fiedler'``. Disagreement
    raises :class:`CharacteristicSetMismatch`.
    """
    if t.n <= 2:
        return Vertex(1) if t.n == 1 else Edge(1, 2)
    fr = fiedler_result or fiedler(t, config.zero_tol)
    try:
        by_fiedler = characteristic_set_fiedler(t, fr, config.zero_tol)
    except AmbiguousFiedlerError as exc:
        log.warning("Fiedler route ambiguous (%s); using Perron route", exc)
        return characteristic_set_perron(t, config)
    try:
        by_perron = characteristic_set_perron(t, config)
    except PerronTieError as exc:
        log.warning("Perron route unresolved at vertex %d; using Fiedler route", exc.vertex)
        return CharacteristicSet(by_fiedler.kind, by_fiedler.vertices, "fiedler")
    if not by_fiedler.same_as(by_perron):
        raise CharacteristicSetMismatch(
            f"characteristic set mismatch: Fiedler {by_fiedler}, Perron {by_perron}",
            by_fiedler,
            by_perron,
        )
    return CharacteristicSet(by_fiedler.kind, by_fiedler.vertices, "cross-validated")
