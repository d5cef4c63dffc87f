"""Command-line front end.

Exit status: 0 when every check passes, 1 on a verification violation,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Callable

from . import __version__
from .centers import (
    center,
    centroid,
    distance_sums,
    eccentricities,
    median,
    subtree_core,
    subtree_counts,
    switchboard_numbers,
    telephone_center,
    weights,
)
from .config import MAX_BRUTE_CAP, Config
from .enumerate import canonical_form, free_trees, free_trees_with_diameter
from .errors import (
    CharacteristicSetMismatch,
    EnumerationCapError,
    PreconditionError,
    TreeValidationError,
)
from .extremal import (
    PAIRS,
    Report,
    asymptotic_series,
    conjecture_scan,
    delta_brute,
    delta_formula,
    delta_table,
    fixed_diameter_extremal,
    pair_name,
    parse_pair,
    verify_collinearity,
    verify_coincidence,
    verify_cs_movement,
    verify_delta_formula,
    verify_gamma_c_chi,
    verify_gamma_cd_chi,
    verify_gamma_min,
    verify_pathstar_maximizer,
)
from .spectral import characteristic_set, fiedler
from .tree import (
    Tree,
    build_double_broom,
    build_path,
    build_path_star,
    build_star,
    build_tnk,
    central_distance,
    distance_matrix,
    format_edge_list,
    parse_edge_list,
    to_dot,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

FAMILIES = ("path", "star", "path-star", "tnk", "double-broom")


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"7"`` -> [7]; ``"5..14"`` -> [5, ..., 14]."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use N or A..B") from None


def parse_partition(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        i, m = (int(x) for x in text.split("/"))
    except ValueError:
        raise UsageError(f"bad partition {text!r}; use i/m with 0 <= i < m") from None
    if not (m >= 1 and 0 <= i < m):
        raise UsageError(f"bad partition {text!r}; use i/m with 0 <= i < m")
    return i, m


def header(config: Config) -> dict:
    return {"tool": "treecentral", "version": __version__, "config": config.as_dict()}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- analyze --------------------------------------------------------------------


def family_tree(args) -> tuple[Tree, str]:
    fam = args.family
    need = {"path": ("n",), "star": ("n",), "path-star": ("n", "g"), "tnk": ("n", "k"),
            "double-broom": ("l", "m", "k")}[fam]
    missing = [f"--{p}" for p in need if getattr(args, p) is None]
    if missing:
        raise UsageError(f"family {fam} needs {' '.join(missing)}")
    if fam == "path":
        return build_path(args.n), f"P_{args.n}"
    if fam == "star":
        return build_star(args.n), f"K_1,{args.n - 1}"
    if fam == "path-star":
        return build_path_star(args.n, args.g), f"P_{{{args.n - args.g},{args.g}}}"
    if fam == "tnk":
        return build_tnk(args.n, args.k), f"T_{{{args.n},{args.k}}}"
    return build_double_broom(args.l, args.m, args.k), f"T({args.l},{args.m},{args.k})"


def analysis_report(t: Tree, config: Config) -> dict:
    """Everything ``analyze`` prints, as a JSON-ready dict."""
    dist = distance_matrix(t)
    parts = {
        "center": center(t, dist),
        "centroid": centroid(t),
        "median": median(t, dist),
        "telephone": telephone_center(t),
        "subtree_core": subtree_core(t),
    }
    out = {name: cs.as_list() for name, cs in parts.items()}
    if t.n >= 2:
        fr = fiedler(t, config.zero_tol)
        chi = characteristic_set(t, config, fr)
        out["mu"] = fr.mu
        out["fiedler_vector"] = [float(x) for x in fr.vector]
        out["fiedler_residual"] = fr.residual
    else:
        chi = None
        out["mu"] = None
        out["fiedler_vector"] = []
    out["characteristic_set"] = chi.to_json() if chi else {"kind": "vertex", "vertices": [1]}
    out["method"] = chi.method if chi else "trivial"
    chi_vertices = chi.vertices if chi else (1,)
    named = {"C": parts["center"], "Cd": parts["centroid"], "Sc": parts["subtree_core"], "chi": chi_vertices}
    out["distances"] = {
        pair_name(p): central_distance(t, named[p[0].value], named[p[1].value], dist) for p in PAIRS
    }
    out["scores"] = {
        "eccentricity": eccentricities(t, dist).as_dict(),
        "weight": weights(t).as_dict(),
        "distance_sum": distance_sums(t, dist).as_dict(),
        "switchboard": switchboard_numbers(t).as_dict(),
        "subtree_count": {v: str(c) for v, c in subtree_counts(t).as_dict().items()},
    }
    out["n"] = t.n
    out["edges"] = [list(e) for e in t.edges()]
    return out


def _analysis_text(label: str, rep: dict) -> str:
    lines = [f"tree: {label} (n={rep['n']})"]
    for key in ("center", "centroid", "median", "telephone", "subtree_core"):
        lines.append(f"  {key:<14}{{{', '.join(map(str, rep[key]))}}}")
    chi = rep["characteristic_set"]
    lines.append(f"  {'chi':<14}{chi['kind']} {{{', '.join(map(str, chi['vertices']))}}} [{rep['method']}]")
    if rep["mu"] is not None:
        lines.append(f"  {'mu':<14}{rep['mu']:.6f}")
    lines.append("  distances:")
    for k, v in rep["distances"].items():
        lines.append(f"    d({k}) = {v}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args, config: Config) -> int:
    if args.input and args.family:
        raise UsageError("give either an edge-list file or --family, not both")
    if args.input:
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
        t, label = parse_edge_list(text), args.input
    elif args.family:
        t, label = family_tree(args)
    else:
        raise UsageError("analyze needs an edge-list file or --family")
    rep = analysis_report(t, config)
    fmt = args.format or config.output_format
    if fmt == "dot":
        hl = {
            "lightblue": rep["center"],
            "orange": rep["centroid"],
            "palegreen": rep["subtree_core"],
            "pink": rep["characteristic_set"]["vertices"],
        }
        sys.stdout.write(to_dot(t, hl))
    elif fmt == "text":
        sys.stdout.write(_analysis_text(label, rep))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["part", "vertices"])
        for key in ("center", "centroid", "median", "telephone", "subtree_core"):
            w.writerow([key, " ".join(map(str, rep[key]))])
        w.writerow(["chi", " ".join(map(str, rep["characteristic_set"]["vertices"]))])
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(_dump({"header": header(config), "tree": label, "analysis": rep}))
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def _verifiers(args, config: Config) -> dict[str, Callable[[], Report]]:
    ns = parse_range(args.n) if args.n else None
    ks = parse_range(args.k) if args.k else None
    w = args.workers

    def need_ns():
        if ns is None:
            raise UsageError("this check needs --n")
        return ns

    def merged(statement, reports):
        out = Report(statement)
        for r in reports:
            out.extend(r)
        return out

    return {
        "delta-cc": lambda: verify_delta_formula("C,Cd", need_ns(), config, w),
        "delta-csc": lambda: verify_delta_formula("C,Sc", need_ns(), config, w),
        "delta-cdsc": lambda: verify_delta_formula("Cd,Sc", need_ns(), config, w),
        "pathstar-max": lambda: merged("P_{n-g0,g0} maximizes d(chi,Sc)",
                                       [verify_pathstar_maximizer(n, config, w) for n in need_ns()]),
        "collinearity": lambda: verify_collinearity(max(need_ns()), config, n_min=min(need_ns())),
        "movement": lambda: merged("path-star characteristic set movement",
                                   [verify_cs_movement(n, config) for n in need_ns()]),
        "gamma-min": lambda: verify_gamma_min(need_ns(), ks, config),
        "gamma-c-chi": lambda: verify_gamma_c_chi(need_ns(), ks, config, w),
        "gamma-cd-chi": lambda: verify_gamma_cd_chi(need_ns(), ks, config, w),
        "coincidence": lambda: verify_coincidence(need_ns()),
    }


VERIFY_IDS = ("delta-cc", "delta-csc", "delta-cdsc", "pathstar-max", "collinearity", "movement",
              "gamma-min", "gamma-c-chi", "gamma-cd-chi", "coincidence")


def _emit_report(rep: Report, config: Config, fmt: str) -> None:
    if fmt == "text":
        status = "PASS" if rep.passed else "FAIL"
        sys.stdout.write(f"{status} {rep.statement} ({len(rep.checks)} cases, {len(rep.failures)} failures)\n")
        for f in rep.failures:
            sys.stdout.write(f"  violation: {json.dumps(f, sort_keys=True)}\n")
    elif fmt == "csv":
        keys = sorted({k for c in rep.checks for k in c})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for c in rep.checks:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in c.items()})
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(_dump({"header": header(config), "report": rep.to_json()}))


def cmd_verify(args, config: Config) -> int:
    rep = _verifiers(args, config)[args.check]()
    _emit_report(rep, config, args.format or config.output_format)
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def cmd_conjecture(args, config: Config) -> int:
    rep = conjecture_scan(args.n_max, config)
    fmt = args.format or config.output_format
    if fmt == "text":
        found = rep.failures
        sys.stdout.write(f"path-star trees scanned: {len(rep.checks)} (5 <= n <= {args.n_max})\n")
        sys.stdout.write(f"counterexamples: {len(found)}\n")
        for c in found:
            sys.stdout.write(f"  n={c['n']} g={c['g']}: vertex {c['vertices'][0]}\n")
    else:
        body = rep.to_json()
        body["counterexamples"] = [{"n": c["n"], "g": c["g"], "vertex": c["vertices"][0]} for c in rep.failures]
        sys.stdout.write(_dump({"header": header(config), "report": body}))
    # counterexamples are findings, not failures of the tool
    return EXIT_OK


def cmd_extremal(args, config: Config) -> int:
    ns = parse_range(args.n)
    fmt = args.format or config.output_format
    pairs = [parse_pair(args.pair)] if args.pair else list(PAIRS)
    if args.k is not None:
        recs = [fixed_diameter_extremal(n, args.k, p, config, args.workers) for n in ns for p in pairs]
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["n", "k", "pair", "max_distance", "min_distance", "witness_count"])
            for r in recs:
                w.writerow([r.n, r.k, pair_name(r.pair), r.max_distance, r.min_distance, len(r.witnesses)])
            sys.stdout.write(buf.getvalue())
        elif fmt == "text":
            for r in recs:
                sys.stdout.write(f"n={r.n} k={r.k} pair={pair_name(r.pair)} max={r.max_distance} "
                                 f"min={r.min_distance} witnesses={len(r.witnesses)}\n")
                for wit in r.witnesses:
                    sys.stdout.write(f"  {wit}\n")
        else:
            sys.stdout.write(_dump({"header": header(config), "records": [r.to_json() for r in recs]}))
        return EXIT_OK
    if fmt == "csv":
        rows = [r for r in delta_table(ns, config, args.workers) if r["pair"] in {pair_name(p) for p in pairs}]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
        return EXIT_OK if all(r["match"] in ("", True) for r in rows) else EXIT_VIOLATION
    recs = [delta_brute(n, p, config, args.workers) for n in ns for p in pairs]
    body = []
    for r in recs:
        j = r.to_json()
        j["delta_formula"] = delta_formula(r.n, r.pair)
        body.append(j)
    if fmt == "text":
        for j in body:
            sys.stdout.write(f"n={j['n']} pair={j['pair']} delta={j['max_distance']} "
                             f"formula={j['delta_formula']} witnesses={j['witness_count']}\n")
            for wit in j["witnesses"]:
                sys.stdout.write(f"  {wit}\n")
    else:
        sys.stdout.write(_dump({"header": header(config), "records": body}))
    mismatch = any(j["delta_formula"] is not None and j["delta_formula"] != j["max_distance"] for j in body)
    return EXIT_VIOLATION if mismatch else EXIT_OK


def cmd_enumerate(args, config: Config) -> int:
    part = parse_partition(args.partition)
    stream = (free_trees_with_diameter(args.n, args.diameter, part) if args.diameter is not None
              else free_trees(args.n, part))
    out = sys.stdout
    count = 0
    for t in stream:
        if args.format == "canonical":
            out.write(canonical_form(t).decode() + "\n")
        else:
            if count:
                out.write("\n")
            out.write(format_edge_list(t))
        count += 1
    logging.getLogger(__name__).info("%d trees", count)
    return EXIT_OK


def cmd_asymptotic(args, config: Config) -> int:
    rows = asymptotic_series(args.pair, parse_range(args.n) if ".." in args.n else [int(x) for x in args.n.split(",")])
    keys = list(rows[0])
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--zero-tol", type=float, help="Fiedler zero tolerance, relative to max|Y| (1e-9)")
    common.add_argument("--perron-tol", type=float, help="power iteration relative tolerance (1e-13)")
    common.add_argument("--tie-tol", type=float, help="relative Perron tie threshold (1e-9)")
    common.add_argument("--brute-cap", type=int, help=f"largest n for exhaustive search (14, max {MAX_BRUTE_CAP})")
    common.add_argument("--workers", type=int, default=1, help="worker processes for exhaustive search")

    p = argparse.ArgumentParser(prog="treecentral", description="Central parts of trees and their distances.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="all central parts of one tree")
    a.add_argument("input", nargs="?", help="edge-list file ('-' for stdin)")
    a.add_argument("--family", choices=FAMILIES)
    for name in ("n", "g", "k", "l", "m"):
        a.add_argument(f"--{name}", type=int)
    a.add_argument("--format", choices=("json", "text", "dot", "csv"), help="output format")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="check a statement over a range")
    v.add_argument("check", choices=VERIFY_IDS)
    v.add_argument("--n", help="N or A..B")
    v.add_argument("--k", help="diameter N or A..B (gamma-* checks)")
    v.add_argument("--format", choices=("json", "text", "csv"), help="output format")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("conjecture", parents=[common], help="scan path-star characteristic sets")
    c.add_argument("--n-max", type=int, required=True)
    c.add_argument("--format", choices=("json", "text"), help="output format")
    c.set_defaults(func=cmd_conjecture)

    e = sub.add_parser("extremal", parents=[common], help="exhaustive maximum distances")
    e.add_argument("--n", required=True, help="N or A..B")
    e.add_argument("--pair", help="e.g. chi,sc (default: all six)")
    e.add_argument("--k", type=int, help="restrict to diameter k")
    e.add_argument("--format", choices=("json", "text", "csv"), help="output format")
    e.set_defaults(func=cmd_extremal)

    n = sub.add_parser("enumerate", parents=[common], help="list free trees")
    n.add_argument("--n", type=int, required=True)
    n.add_argument("--diameter", type=int)
    n.add_argument("--partition", help="i/m: this worker's share of the stream")
    n.set_defaults(func=cmd_enumerate)
    n.add_argument("--format", choices=("edges", "canonical"), default="edges")

    s = sub.add_parser("asymptotic", parents=[common], help="closed-form delta_n / n table (CSV)")
    s.add_argument("--pair", required=True)
    s.add_argument("--n", required=True, help="A..B or a comma list")
    s.add_argument("--format", choices=("csv",), help="output format")
    s.set_defaults(func=cmd_asymptotic)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        config = Config.from_env(
            zero_tol=args.zero_tol, perron_tol=args.perron_tol, tie_tol=args.tie_tol,
            brute_cap=args.brute_cap,
            output_format=args.format if args.format in ("json", "csv", "dot", "text") else None,
        )
        return args.func(args, config)
    except (UsageError, TreeValidationError, PreconditionError, EnumerationCapError, ValueError, OSError) as exc:
        print(f"treecentral: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CharacteristicSetMismatch as exc:
        print(f"treecentral: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
