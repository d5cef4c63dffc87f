"""Extremal distances between central parts, checked by exhaustive search.

``delta_brute(n, pair)`` scans every free tree on ``n`` vertices and keeps
the largest set distance between two central parts together with all trees
attaining it. The remaining functions compare those searches, or direct
computations on named families, with closed forms and structural claims
about path-star trees, ``T_{n,k}`` and ``T(l, m, k)``.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .centers import center, centroid, median, subtree_core, telephone_center
from .config import DEFAULT, Config
from .enumerate import canonical_form, free_trees, tree_from_canonical
from .errors import PreconditionError
from .spectral import EDGE, VERTEX, CharacteristicSet, characteristic_set
from .tree import (
    CentralSet,
    Tree,
    build_double_broom,
    build_path,
    build_path_star,
    build_tnk,
    diameter,
    distance_matrix,
    path_between,
)


class CenterKind(str, enum.Enum):
    CENTER = "C"
    CENTROID = "Cd"
    SUBTREE_CORE = "Sc"
    CHARACTERISTIC = "chi"

    @classmethod
    def parse(cls, text: str) -> "CenterKind":
        key = text.strip().lower().replace("_", "-")
        for kind, names in _ALIASES.items():
            if key in names:
                return kind
        raise ValueError(f"unknown central part {text!r}")


_ALIASES = {
    CenterKind.CENTER: {"c", "center", "centre"},
    CenterKind.CENTROID: {"cd", "centroid", "median", "telephone"},
    CenterKind.SUBTREE_CORE: {"sc", "score", "subtree-core", "core"},
    CenterKind.CHARACTERISTIC: {"chi", "characteristic", "characteristic-set", "x"},
}
_ORDER = list(CenterKind)

Pair = tuple[CenterKind, CenterKind]
PAIRS: tuple[Pair, ...] = tuple(combinations(_ORDER, 2))


def make_pair(a, b) -> Pair:
    """Unordered pair of distinct kinds in canonical order."""
    a = a if isinstance(a, CenterKind) else CenterKind.parse(a)
    b = b if isinstance(b, CenterKind) else CenterKind.parse(b)
    if a == b:
        raise PreconditionError(f"pair needs two different central parts, got {a.value} twice")
    return tuple(sorted((a, b), key=_ORDER.index))


def parse_pair(text: str) -> Pair:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"pair must look like 'chi,sc', got {text!r}")
    return make_pair(*parts)


def pair_name(pair: Pair) -> str:
    return f"{pair[0].value},{pair[1].value}"


# -- per-tree analysis --------------------------------------------------------


@dataclass(frozen=True)
class CentralParts:
    center: CentralSet
    centroid: CentralSet
    subtree_core: CentralSet
    chi: CharacteristicSet

    def get(self, kind: CenterKind):
        return {
            CenterKind.CENTER: self.center,
            CenterKind.CENTROID: self.centroid,
            CenterKind.SUBTREE_CORE: self.subtree_core,
            CenterKind.CHARACTERISTIC: self.chi,
        }[kind]


def central_parts(t: Tree, config: Config = DEFAULT, dist=None) -> CentralParts:
    dist = dist or distance_matrix(t)
    return CentralParts(center(t, dist), centroid(t), subtree_core(t), characteristic_set(t, config))


def pair_distances(t: Tree, parts: CentralParts | None = None, config: Config = DEFAULT) -> dict[Pair, int]:
    dist = distance_matrix(t)
    parts = parts or central_parts(t, config, dist)
    out = {}
    for a, b in PAIRS:
        va, vb = parts.get(a).vertices, parts.get(b).vertices
        out[(a, b)] = min(dist[x][y] for x in va for y in vb)
    return out


@dataclass(frozen=True)
class _TreeRow:
    form: str
    diameter: int
    distances: tuple[int, ...]  # aligned with PAIRS


def _analyse(t: Tree, config: Config) -> _TreeRow:
    d = pair_distances(t, config=config)
    return _TreeRow(canonical_form(t).decode(), diameter(t), tuple(d[p] for p in PAIRS))


def _rows_for_partition(args) -> list[_TreeRow]:
    n, partition, config = args
    return [_analyse(t, config) for t in free_trees(n, partition)]


@lru_cache(maxsize=64)
def _rows(n: int, workers: int, config: Config) -> tuple[_TreeRow, ...]:
    if not 1 <= n <= config.brute_cap:
        raise PreconditionError(f"n={n} is above the brute-force cap {config.brute_cap}")
    if workers <= 1:
        rows = _rows_for_partition((n, None, config))
    else:
        jobs = [(n, (i, workers), config) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = [r for part in pool.map(_rows_for_partition, jobs) for r in part]
    # deterministic regardless of how the stream was split
    return tuple(sorted(rows, key=lambda r: r.form))


# -- records ------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalRecord:
    n: int
    pair: Pair
    max_distance: int
    witnesses: tuple[str, ...]
    k: int | None = None
    min_distance: int | None = None
    trees_scanned: int = 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "pair": pair_name(self.pair),
            "max_distance": self.max_distance,
            "min_distance": self.min_distance,
            "witness_count": len(self.witnesses),
            "witnesses": list(self.witnesses),
            "trees_scanned": self.trees_scanned,
        }


def _record(n: int, pair: Pair, rows: Iterable[_TreeRow], k: int | None) -> ExtremalRecord:
    idx = PAIRS.index(pair)
    rows = list(rows)
    if not rows:
        raise PreconditionError(f"no trees on {n} vertices" + (f" with diameter {k}" if k is not None else ""))
    best = max(r.distances[idx] for r in rows)
    low = min(r.distances[idx] for r in rows)
    wit = tuple(sorted(r.form for r in rows if r.distances[idx] == best))
    return ExtremalRecord(n, pair, best, wit, k, low, len(rows))


def delta_brute(n: int, pair, config: Config = DEFAULT, workers: int = 1) -> ExtremalRecord:
    """Maximum distance between two central parts over all trees on ``n`` vertices."""
    pair = pair if isinstance(pair, tuple) and isinstance(pair[0], CenterKind) else parse_pair(pair)
    pair = make_pair(*pair)
    if n < 5:
        raise PreconditionError(f"delta_n is studied for n >= 5, got {n}")
    return _record(n, pair, _rows(n, workers, config), None)


def fixed_diameter_extremal(n: int, k: int, pair, config: Config = DEFAULT, workers: int = 1) -> ExtremalRecord:
    """Maximum (and minimum) distance over trees on ``n`` vertices with diameter ``k``."""
    pair = pair if isinstance(pair, tuple) and isinstance(pair[0], CenterKind) else parse_pair(pair)
    pair = make_pair(*pair)
    if not 3 <= k <= n - 1:
        raise PreconditionError(f"need 3 <= k <= n-1, got n={n}, k={k}")
    rows = [r for r in _rows(n, workers, config) if r.diameter == k]
    return _record(n, pair, rows, k)


def recheck_witness(form: str, pair: Pair, config: Config = DEFAULT) -> int:
    """Recompute the pair distance on a witness given by its canonical form."""
    return pair_distances(tree_from_canonical(form), config=config)[pair]


# -- closed forms ---------------------------------------------------------------


def g0(n: int) -> int:
    """Smallest positive ``g`` with ``2**g + 1 > n - g``."""
    if n < 5:
        raise PreconditionError(f"g0 is defined here for n >= 5, got {n}")
    g = 1
    while 2**g + 1 <= n - g:
        g += 1
    return g


def delta_formula(n: int, pair) -> int | None:
    """Closed-form maximum distance, or ``None`` where none is known."""
    pair = make_pair(*pair) if not isinstance(pair, str) else parse_pair(pair)
    C, Cd, Sc = CenterKind.CENTER, CenterKind.CENTROID, CenterKind.SUBTREE_CORE
    if pair == (C, Cd):
        return (n - 3) // 4
    if pair == (C, Sc):
        return (n - g0(n)) // 2 - 1
    if pair == (Cd, Sc):
        return (n - 1) // 2 - g0(n)
    return None


def subtree_core_pathstar_formula(n: int, g: int) -> tuple[int, ...]:
    """Subtree core of ``P_{n-g,g}`` from the closed-form case split."""
    p = n - g
    if 2**g + 1 <= p:
        if p % 2 == 0:
            return ((p + 2**g) // 2,)
        return ((p - 1 + 2**g) // 2, (p + 1 + 2**g) // 2)
    return (p,)


def chi_pathstar_two_formula(n: int) -> tuple[int, int]:
    """Characteristic edge of ``P_{n-2,2}``."""
    return (n // 2, n // 2 + 1) if n % 2 == 0 else ((n - 1) // 2, (n + 1) // 2)


# -- reports ------------------------------------------------------------------


@dataclass
class Report:
    """Pass/fail record of one statement checked over many cases."""

    statement: str
    checks: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, passed: bool, **case) -> bool:
        self.checks.append({"passed": bool(passed), **case})
        return passed

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.checks if not c["passed"]]

    def extend(self, other: "Report") -> None:
        for c in other.checks:
            self.checks.append({"statement": other.statement, **c})
        self.notes.extend(other.notes)

    def to_json(self) -> dict:
        return {
            "statement": self.statement,
            "passed": self.passed,
            "cases": len(self.checks),
            "failures": len(self.failures),
            "checks": self.checks,
            "notes": self.notes,
        }


def verify_delta_formula(pair, ns: Iterable[int], config: Config = DEFAULT, workers: int = 1) -> Report:
    pair = parse_pair(pair) if isinstance(pair, str) else make_pair(*pair)
    rep = Report(f"delta_n({pair_name(pair)}) equals its closed form")
    for n in ns:
        rec = delta_brute(n, pair, config, workers)
        want = delta_formula(n, pair)
        rep.add(rec.max_distance == want, n=n, brute=rec.max_distance, formula=want, witnesses=len(rec.witnesses))
    return rep


def _pathstar_forms(n: int) -> dict[str, int]:
    return {canonical_form(build_path_star(n, g)).decode(): g for g in range(2, n - 2)}


def verify_pathstar_maximizer(n: int, config: Config = DEFAULT, workers: int = 1) -> Report:
    """``P_{n-g0,g0}`` attains the maximum distance between subtree core and
    characteristic set, and some maximiser is a path-star tree."""
    pair = make_pair(CenterKind.CHARACTERISTIC, CenterKind.SUBTREE_CORE)
    rep = Report("P_{n-g0,g0} maximizes d(chi, Sc) over all trees on n vertices")
    rec = delta_brute(n, pair, config, workers)
    g = g0(n)
    ps = build_path_star(n, g)
    form = canonical_form(ps).decode()
    d_ps = pair_distances(ps, config=config)[pair]
    stars = _pathstar_forms(n)
    rep.add(d_ps == rec.max_distance and form in rec.witnesses, n=n, check="g0-witness",
            g0=g, delta=rec.max_distance, pathstar_distance=d_ps)
    rep.add(any(w in stars for w in rec.witnesses), n=n, check="some-pathstar-witness",
            pathstar_witness_g=sorted(stars[w] for w in rec.witnesses if w in stars))
    if len(rec.witnesses) == 1:
        rep.notes.append(f"n={n}: maximiser is unique")
    return rep


def _hull(t: Tree, *sets) -> set[int]:
    verts = sorted({v for s in sets for v in s.vertices})
    out = set(verts)
    for a, b in combinations(verts, 2):
        out.update(path_between(t, a, b))
    return out


def verify_collinearity(n_max: int, config: Config = DEFAULT, n_min: int = 5) -> Report:
    """On every path-star tree the characteristic set lies on the path joining
    center and centroid, and the centroid on the path joining center and
    subtree core."""
    rep = Report("path-star collinearity: chi on C--Cd path, Cd on C--Sc path")
    for n in range(n_min, n_max + 1):
        for g in range(2, n - 2):
            t = build_path_star(n, g)
            parts = central_parts(t, config)
            chi_ok = set(parts.chi.vertices) <= _hull(t, parts.center, parts.centroid)
            cd_ok = set(parts.centroid.vertices) <= _hull(t, parts.center, parts.subtree_core)
            rep.add(chi_ok and cd_ok, n=n, g=g, center=list(parts.center), centroid=list(parts.centroid),
                    chi=list(parts.chi.vertices), subtree_core=list(parts.subtree_core))
    return rep


def _between(cs: CharacteristicSet, lo: int, hi: int) -> bool:
    """Set lies within vertices lo..hi and neither end is the characteristic vertex."""
    if not all(lo <= v <= hi for v in cs.vertices):
        return False
    return not (cs.kind == VERTEX and cs.vertices[0] in (lo, hi))


def verify_cs_movement(n: int, config: Config = DEFAULT) -> Report:
    """How the characteristic set of ``P_{n-g,g}`` moves when ``g`` changes by one."""
    if n < 7:
        raise PreconditionError(f"movement rules are checked for n >= 7, got {n}")
    rep = Report(f"characteristic set movement on path-star trees, n={n}")
    chi = {g: characteristic_set(build_path_star(n, g), config) for g in range(2, n - 2)}
    for g in range(2, n - 2):
        cs = chi[g]
        if g >= 3:
            nxt = chi[g - 1]
            if cs.kind == EDGE:
                i = cs.vertices[0]
                if 2 <= i <= n - g - 1:
                    rep.add(_between(nxt, i, i + 2), n=n, g=g, rule=1, chi=str(cs), chi_g_minus_1=str(nxt))
            else:
                i = cs.vertices[0]
                rep.add(nxt.kind == EDGE and nxt.vertices == (i, i + 1), n=n, g=g, rule=2,
                        chi=str(cs), chi_g_minus_1=str(nxt))
        if g <= n - 4:
            nxt = chi[g + 1]
            if cs.kind == EDGE:
                i = cs.vertices[0]
                rep.add(_between(nxt, i - 1, i + 1), n=n, g=g, rule=3, chi=str(cs), chi_g_plus_1=str(nxt))
            else:
                i = cs.vertices[0]
                rep.add(nxt.kind == EDGE and nxt.vertices == (i - 1, i), n=n, g=g, rule=4,
                        chi=str(cs), chi_g_plus_1=str(nxt))
    base = chi[2]
    rep.add(base.kind == EDGE and base.vertices == chi_pathstar_two_formula(n), n=n, g=2, rule="base",
            chi=str(base), expected=list(chi_pathstar_two_formula(n)))
    t2 = build_path_star(n, 2)
    d = pair_distances(t2, config=config)[make_pair(CenterKind.SUBTREE_CORE, CenterKind.CHARACTERISTIC)]
    rep.add(d == 0, n=n, g=2, rule="d(Sc,chi)=0", distance=d)
    return rep


def conjecture_scan(n_max: int, config: Config = DEFAULT, n_min: int = 5) -> Report:
    """Characteristic set of every path-star tree; a vertex outcome is recorded
    as a counterexample (a failed check), never raised."""
    if n_max < 5:
        raise PreconditionError(f"n_max must be at least 5, got {n_max}")
    rep = Report("the characteristic set of a path-star tree contains an edge")
    for n in range(n_min, n_max + 1):
        for g in range(2, n - 2):
            cs = characteristic_set(build_path_star(n, g), config)
            rep.add(cs.kind == EDGE, n=n, g=g, kind=cs.kind, vertices=list(cs.vertices))
    return rep


def counterexamples(rep: Report) -> list[dict]:
    return rep.failures


def verify_gamma_min(ns: Iterable[int], ks: Sequence[int] | None = None, config: Config = DEFAULT) -> Report:
    """All six central-part distances vanish on ``T_{n,k}``."""
    rep = Report("all pairwise central-part distances are 0 on T_{n,k}")
    for n in ns:
        for k in ks or range(3, n):
            if not 3 <= k <= n - 1:
                continue
            d = pair_distances(build_tnk(n, k), config=config)
            rep.add(all(v == 0 for v in d.values()), n=n, k=k,
                    distances={pair_name(p): v for p, v in d.items()})
    return rep


def _pathstar_with_diameter(n: int, k: int) -> Tree:
    # P_{k,n-k}; with a single extra vertex it degenerates to the path
    return build_path(n) if n - k == 1 else build_path_star(n, n - k)


def verify_gamma_c_chi(ns: Iterable[int], ks: Sequence[int] | None = None, config: Config = DEFAULT,
                       workers: int = 1) -> Report:
    """``P_{k,n-k}`` attains the maximum of d(C, chi) over diameter-``k`` trees."""
    pair = make_pair(CenterKind.CENTER, CenterKind.CHARACTERISTIC)
    rep = Report("P_{k,n-k} maximizes d(C, chi) over trees with n vertices and diameter k")
    for n in ns:
        for k in ks or range(3, n):
            if not 3 <= k <= n - 1:
                continue
            rec = fixed_diameter_extremal(n, k, pair, config, workers)
            t = _pathstar_with_diameter(n, k)
            d = pair_distances(t, config=config)[pair]
            form = canonical_form(t).decode()
            rep.add(d == rec.max_distance and form in rec.witnesses, n=n, k=k, max=rec.max_distance,
                    pathstar_distance=d, witnesses=len(rec.witnesses))
    return rep


def double_broom_for_centroid_chi(n: int, k: int) -> Tree:
    """``T(n - floor(n/2) - k + 1, floor(n/2), k - 1)``, of diameter ``k``."""
    return build_double_broom(n - n // 2 - k + 1, n // 2, k - 1)


def verify_gamma_cd_chi(ns: Iterable[int], ks: Sequence[int] | None = None, config: Config = DEFAULT,
                        workers: int = 1) -> Report:
    """For ``k <= ceil(n/2)`` the double broom ``T(n-floor(n/2)-k+1, floor(n/2), k-1)``
    attains the maximum of d(Cd, chi) over diameter-``k`` trees."""
    pair = make_pair(CenterKind.CENTROID, CenterKind.CHARACTERISTIC)
    rep = Report("T(n-floor(n/2)-k+1, floor(n/2), k-1) maximizes d(Cd, chi) over diameter k, k <= ceil(n/2)")
    for n in ns:
        kmax = (n + 1) // 2
        for k in ks or range(3, kmax + 1):
            if not 3 <= k <= min(kmax, n - 1):
                continue
            rec = fixed_diameter_extremal(n, k, pair, config, workers)
            t = double_broom_for_centroid_chi(n, k)
            d = pair_distances(t, config=config)[pair]
            form = canonical_form(t).decode()
            rep.add(d == rec.max_distance and form in rec.witnesses, n=n, k=k, max=rec.max_distance,
                    broom_distance=d, witnesses=len(rec.witnesses))
    return rep


def verify_coincidence(ns: Iterable[int]) -> Report:
    """Median and telephone center coincide with the centroid on every tree."""
    rep = Report("median = centroid = telephone center")
    for n in ns:
        bad = []
        count = 0
        for t in free_trees(n):
            count += 1
            dist = distance_matrix(t)
            cd = centroid(t)
            if median(t, dist) != cd or telephone_center(t) != cd:
                bad.append(canonical_form(t).decode())
        rep.add(not bad, n=n, trees=count, violations=bad)
    return rep


def asymptotic_series(pair, n_list: Iterable[int]) -> list[dict]:
    """Closed-form values of ``delta_n`` and ``delta_n / n``.

    For (chi, Sc), which has no closed form, the row carries the bracket
    ``delta_n(Cd, Sc) <= delta_n(chi, Sc) <= delta_n(C, Sc)`` instead.
    """
    pair = parse_pair(pair) if isinstance(pair, str) else make_pair(*pair)
    C, Cd, Sc, X = list(CenterKind)
    rows = []
    for n in n_list:
        if pair == make_pair(X, Sc):
            lo, hi = delta_formula(n, (Cd, Sc)), delta_formula(n, (C, Sc))
            rows.append({"n": n, "pair": pair_name(pair), "delta": None, "lower": lo, "upper": hi,
                         "ratio_lower": lo / n, "ratio_upper": hi / n})
            continue
        d = delta_formula(n, pair)
        if d is None:
            raise PreconditionError(f"no closed form for pair {pair_name(pair)}")
        rows.append({"n": n, "pair": pair_name(pair), "delta": d, "ratio": d / n})
    return rows


def delta_table(ns: Iterable[int], config: Config = DEFAULT, workers: int = 1) -> list[dict]:
    """CSV-ready rows: brute-force maximum against the closed form for every pair."""
    rows = []
    for n in ns:
        for pair in PAIRS:
            rec = delta_brute(n, pair, config, workers)
            want = delta_formula(n, pair)
            rows.append({
                "n": n,
                "pair": pair_name(pair),
                "delta_brute": rec.max_distance,
                "delta_formula": "" if want is None else want,
                "match": "" if want is None else rec.max_distance == want,
                "witness_count": len(rec.witnesses),
            })
    return rows
