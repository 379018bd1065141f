"""Command-line front end: one binary, subcommands, JSON or text output.

Exit codes: 0 success/PASS, 1 computational FAIL, 2 usage or parse error,
3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import catalog, cocycle, groups, links
from .errors import (
    GaussCodeError,
    InvalidModulusError,
    NotOddOrderError,
    QuandleHomError,
    ResourceLimitError,
    SpecParseError,
)
from .homology import cohomology2_dim, homology
from .quandle import parse_quandle_spec, quandle_from_json, verify_axioms

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _env_int(name):
    raw = os.environ.get(name)
    return int(raw) if raw else None


def _budget_args(parser):
    parser.add_argument(
        "--max-columns",
        type=int,
        default=_env_int("QUANDLEHOM_MAX_COLUMNS") or 1_000_000,
        help="largest boundary-matrix column count to attempt",
    )
    parser.add_argument(
        "--time-limit",
        type=float,
        default=_env_int("QUANDLEHOM_TIME_LIMIT"),
        help="seconds allowed per elimination",
    )


def _load_quandle(spec_or_path: str):
    if spec_or_path.endswith(".json") or os.path.exists(spec_or_path):
        with open(spec_or_path) as fh:
            return quandle_from_json(json.load(fh))
    return parse_quandle_spec(spec_or_path)


def _print_json(obj):
    print(json.dumps(obj, sort_keys=True))


# ---------------------------------------------------------------------------


def cmd_homology(args) -> int:
    q = _load_quandle(args.quandle)
    h = homology(
        q,
        args.degree,
        args.theory,
        max_columns=args.max_columns,
        max_seconds=args.time_limit,
    )
    if args.json:
        _print_json(h.to_json())
    else:
        print(h)
    return EXIT_OK


def cmd_verify_theorem(args) -> int:
    try:
        moduli = [int(x) for x in args.group.split(",")]
    except ValueError:
        raise SpecParseError(f"bad moduli list {args.group!r}") from None
    g = groups.make_group(moduli)
    if not g.is_odd():
        print(
            f"refusing: the statement needs odd order, and {moduli} contains "
            "an even modulus",
            file=sys.stderr,
        )
        return EXIT_USAGE
    from .quandle import takasaki

    h = homology(takasaki(g), 2, "quandle", max_columns=args.max_columns,
                 max_seconds=args.time_limit)
    sq = g.exterior_square()
    ok = h.free_rank == 0 and h.torsion == sq.invariant_factors()
    if args.json:
        _print_json(
            {
                "group": moduli,
                "homology": h.to_json(),
                "exterior_square": sorted(d for _, d in sq.components),
                "pass": ok,
            }
        )
    else:
        print(f"H2 of the Takasaki quandle: {h}")
        sq_str = " ⊕ ".join(f"Z_{d}" for _, d in sq.components) or "0"
        print(f"exterior square of the group: {sq_str}")
        print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_extension(args) -> int:
    phi = cocycle.generator_cocycle(args.p, args.normalization)
    ext = cocycle.central_extension(phi.quandle, args.p, phi)
    h = None
    if args.check_h2:
        h = homology(ext, 2, "quandle", max_columns=args.max_columns,
                     max_seconds=args.time_limit)
    if args.json:
        out = {"size": ext.n, "kei": ext.is_kei(), "quasigroup": ext.is_quasigroup()}
        if h is not None:
            out["h2"] = h.to_json()
        if args.emit_table:
            out["table"] = [list(r) for r in ext.table]
        _print_json(out)
    else:
        line = f"size: {ext.n}, kei: {ext.is_kei()}, quasigroup: {ext.is_quasigroup()}"
        if h is not None:
            line += f", H2: {h}"
        print(line)
        if args.emit_table:
            for row in ext.table:
                print(" ".join(str(x) for x in row))
    return EXIT_OK


def cmd_invariant(args) -> int:
    if args.diagram == "-":
        text = sys.stdin.read()
    else:
        with open(args.diagram) as fh:
            text = fh.read()
    diagram = links.parse_gauss(text.strip())
    q = _load_quandle(args.quandle)
    if args.cocycle:
        phi = cocycle.parse_cocycle_spec(args.cocycle, quandle=q)
        if phi.quandle != q:
            raise SpecParseError("cocycle lives on a different quandle than --quandle")
    else:
        phi = cocycle.TwoCocycle(q, 2, [[0] * q.n for _ in range(q.n)])
    report = links.invariant_json(diagram, phi)
    if args.json:
        _print_json(report)
    else:
        counts = ", ".join(f"{k}: {v}" for k, v in sorted(report["counts"].items()))
        print(f"colorings: {report['colorings']}, counts: {{{counts}}}")
    return EXIT_OK


def cmd_axioms(args) -> int:
    if args.file:
        with open(args.file) as fh:
            table = json.load(fh)["table"]
    else:
        table = [list(r) for r in _load_quandle(args.quandle).table]
    report = verify_axioms(table)
    out = {"ok": report.ok, "failures": [list(f) for f in report.failures]}
    if report.ok:
        q = quandle_from_json({"table": table})
        out["kei"] = q.is_kei()
        out["quasigroup"] = q.is_quasigroup()
    if args.json:
        _print_json(out)
    elif report.ok:
        print(f"quandle: ok, kei: {out['kei']}, quasigroup: {out['quasigroup']}")
    else:
        print(f"not a quandle: {report.describe()}")
    return EXIT_OK if report.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# reproduction of the published values
# ---------------------------------------------------------------------------


def cmd_reproduce(args) -> int:
    from .quandle import core, dihedral, takasaki

    failures = 0

    def check(label, got, want):
        nonlocal failures
        ok = got == want
        if not ok:
            failures += 1
        print(f"[{'PASS' if ok else 'FAIL'}] {label}: got {got}, expected {want}")

    t_start = time.time()
    budget = dict(max_columns=args.max_columns, max_seconds=args.time_limit)

    h = homology(takasaki(groups.make_group([3, 3])), 2, **budget)
    check("H2 of T(Z_3^2)", str(h), "Z_3")

    table = [
        ("takasaki:27", "0"),
        ("takasaki:3,9", "Z_3"),
        ("takasaki:3,3,3", "Z_3 ⊕ Z_3 ⊕ Z_3"),
        ("core:g4_27", "Z_3"),
        ("core:heisenberg3", "Z_3 ⊕ Z_3 ⊕ Z_3"),
    ]
    for spec, want in table:
        h = homology(parse_quandle_spec(spec), 2, **budget)
        check(f"H2 of {spec}", str(h), want)

    phi = cocycle.generator_cocycle(3, "halved")
    ext = cocycle.central_extension(phi.quandle, 3, phi)
    check("extension is a kei", ext.is_kei(), True)
    check("extension is a quasigroup", ext.is_quasigroup(), False)
    check("H2 of the extension", str(homology(ext, 2, **budget)), "0")

    dim, _ = cohomology2_dim(takasaki(groups.make_group([3, 3])), 3)
    check("dim H^2(T(Z_3^2); Z_3)", dim, 1)

    for n in (4, 8):
        h = homology(dihedral(n), 2, **budget)
        check(f"torsion of H2 of T(Z_{n})", tuple(h.torsion), (2, 2))

    diagram, coloring = links.generator_diagram()
    g33 = groups.make_group([3, 3])
    check("bundled diagram class", links.diagram_class(diagram, coloring, g33), (1,))
    counts = links.state_sum(diagram, phi)
    nontrivial = any(v for w, v in counts.items() if w != 0)
    check("bundled diagram has nonzero weights", nontrivial, True)

    max_order = 27 if args.skip_slow else 81
    for moduli in catalog.odd_sweep_moduli(max_order):
        if any(m % 2 == 0 for m in moduli):
            continue
        g = groups.make_group(list(moduli))
        h = homology(takasaki(g), 2, **budget)
        check(
            f"H2 of T({','.join(map(str, moduli))}) vs exterior square",
            (h.free_rank, h.torsion),
            (0, g.exterior_square().invariant_factors()),
        )

    print(f"done in {time.time() - t_start:.1f}s: {failures} failure(s)")
    return EXIT_OK if failures == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quandlehom",
        description="exact quandle homology, cocycle extensions, and link invariants",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="homology of a quandle")
    p.add_argument("--quandle", required=True, help="spec string or JSON file")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--theory", choices=("rack", "quandle"), default="quandle")
    p.add_argument("--json", action="store_true")
    _budget_args(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("verify-theorem", help="compare H2 of a Takasaki quandle with the exterior square")
    p.add_argument("--group", required=True, metavar="K1,K2,...", help="moduli of an odd abelian group")
    p.add_argument("--json", action="store_true")
    _budget_args(p)
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("extension", help="central extension by the generator cocycle")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--normalization", choices=("plain", "halved"), default="halved")
    p.add_argument("--emit-table", action="store_true")
    p.add_argument("--check-h2", action="store_true")
    p.add_argument("--json", action="store_true")
    _budget_args(p)
    p.set_defaults(func=cmd_extension)

    p = sub.add_parser("invariant", help="coloring count and state-sum of a diagram")
    p.add_argument("--diagram", required=True, help="Gauss code file, or - for stdin")
    p.add_argument("--quandle", required=True)
    p.add_argument("--cocycle", help="generator:p[,plain|halved] or zero:m")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("axioms", help="verify quandle axioms, kei and quasigroup flags")
    p.add_argument("--quandle", help="spec string or JSON file")
    p.add_argument("--file", help="JSON file with a candidate table")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("reproduce-paper", help="recompute every published value and compare")
    p.add_argument("--skip-slow", action="store_true", help="cap the sweep at order 27")
    _budget_args(p)
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "axioms" and not (args.quandle or args.file):
        parser.error("axioms needs --quandle or --file")
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (SpecParseError, GaussCodeError, InvalidModulusError, NotOddOrderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuandleHomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
