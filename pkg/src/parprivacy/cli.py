"""Command-line surface: gen | analyze | optimize | render | verify.

All file I/O lives here.  Exit codes: 0 ok, 2 validation or usage error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import gallery, verify
from .bsp import bsp_to_protocol, build_bsp
from .errors import ParPrivacyError
from .grid import Distribution, FunctionTable, random_c_approx_distribution, uniform_distribution
from .par import compute_par, optimal_par, optimal_par_over_perms
from .partition import ideal_partition, tiling_info
from .protocol import (ProtocolTree, bisection_protocol,
                       bounded_bisection_protocol, c_bisection_protocol,
                       perfect_boolean_protocol)
from .render import render_table_svg

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_VERIFY_FAILED = 3


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def _load_table(path: str) -> FunctionTable:
    with open(path) as fh:
        return FunctionTable.from_json_dict(json.load(fh))


def _resolve_protocol(spec: str, table: FunctionTable, seed: int) -> tuple[ProtocolTree, str]:
    if spec == "bisection":
        return bisection_protocol(table), spec
    if spec.startswith("c-bisection:"):
        c = _parse_fraction(spec.split(":", 1)[1])
        return c_bisection_protocol(table, c), spec
    if spec.startswith("bounded:"):
        g = int(spec.split(":", 1)[1])
        return bounded_bisection_protocol(table, g), spec
    if spec == "perfect":
        return perfect_boolean_protocol(table), spec
    if spec == "bsp":
        rm = ideal_partition(table)
        if not tiling_info(rm).is_tiling:
            raise ParPrivacyError("--protocol bsp needs a table whose ideal "
                                  "regions tile the grid")
        bsp = build_bsp([r.bbox for r in rm.regions], table.bounds())
        return bsp_to_protocol(bsp, table), spec
    if spec.startswith("file:"):
        with open(spec.split(":", 1)[1]) as fh:
            return ProtocolTree.from_json_dict(json.load(fh)), spec
    raise ParPrivacyError(f"unknown protocol spec {spec!r}")


def _resolve_dist(spec: str, table: FunctionTable, seed: int) -> Distribution:
    if spec == "uniform":
        return uniform_distribution(table.d, table.k)
    if spec.startswith("capprox:"):
        c = _parse_fraction(spec.split(":", 1)[1])
        return random_c_approx_distribution(table.d, table.k, c, seed)
    if spec.startswith("file:"):
        with open(spec.split(":", 1)[1]) as fh:
            return Distribution.from_json_dict(json.load(fh), table.d, table.k)
    raise ParPrivacyError(f"unknown distribution spec {spec!r}")


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_gen(args) -> int:
    spec = gallery.GallerySpec(args.name, args.k, g=args.g, seed=args.seed)
    result = gallery.make(spec)
    _write(args.out, json.dumps(result.table.to_json_dict()) + "\n")
    if args.tiles_out:
        if result.tiles is None:
            raise ParPrivacyError(f"{args.name} has no intended tile list")
        tiles = [t.to_json() for t in result.tiles]
        _write(args.tiles_out, json.dumps(tiles) + "\n")
    return EXIT_OK


def cmd_analyze(args) -> int:
    table = _load_table(args.table)
    tree, label = _resolve_protocol(args.protocol, table, args.seed)
    dist = _resolve_dist(args.dist, table, args.seed)
    report = compute_par(table, tree, dist=dist, regions=args.regions,
                         protocol_label=label)
    name = Path(args.table).stem
    if args.format == "json":
        payload = dict(report.to_json_dict(), function=name, d=table.d, k=table.k)
        _write(args.out, json.dumps(payload, indent=2) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(report.CSV_COLUMNS)
        writer.writerow(report.to_csv_row(name, table.d, table.k))
        _write(args.out, buf.getvalue())
    return EXIT_OK


def cmd_optimize(args) -> int:
    table = _load_table(args.table)
    dist = _resolve_dist(args.dist, table, args.seed)
    if not dist.is_uniform() and args.objective == "worst":
        raise ParPrivacyError("worst-case optimization ignores distributions; "
                              "use --dist uniform")
    if args.perms == "identity":
        result = optimal_par(table, args.objective,
                             dist=None if dist.is_uniform() else dist,
                             regions=args.regions)
        value, perms, note = result.value, None, result.backend
        tree = result.tree
    else:
        if args.perms == "exhaustive":
            budget, sample = 10 ** 9, 0
        elif args.perms.startswith("sample:"):
            budget, sample = 0, int(args.perms.split(":", 1)[1])
        else:
            raise ParPrivacyError(f"unknown --perms {args.perms!r}")
        sweep = optimal_par_over_perms(
            table, args.objective, dist=None if dist.is_uniform() else dist,
            perm_budget=budget, sample_size=sample, seed=args.seed,
            regions=args.regions, threads=args.threads)
        value, perms, tree = sweep.value, sweep.perms, None
        note = "exhaustive" if sweep.exhaustive else f"sampled {sweep.tried}"
    payload = {"objective": args.objective,
               "value": {"num": value.numerator, "den": value.denominator},
               "note": note}
    if perms is not None:
        payload["perms"] = [list(p.order) for p in perms]
    print(json.dumps(payload, indent=2))
    if args.out_protocol and tree is not None:
        _write(args.out_protocol, json.dumps(tree.to_json_dict()) + "\n")
    return EXIT_OK


def cmd_render(args) -> int:
    table = _load_table(args.table)
    tree = None
    if args.protocol:
        tree, _label = _resolve_protocol(args.protocol, table, args.seed)
    svg = render_table_svg(table, tree=tree, regions=args.regions)
    _write(args.out, svg)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite)
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parprivacy",
        description="Exact privacy-approximation-ratio analysis of "
                    "dissection protocols on function grids.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--regions", choices=("connected", "level-sets"),
                       default="connected")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("gen", help="emit a gallery table as JSON")
    p.add_argument("--name", required=True, choices=gallery.GALLERY_NAMES)
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.add_argument("--tiles-out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="score a protocol on a table")
    p.add_argument("--table", required=True)
    p.add_argument("--protocol", default="bisection",
                   help="bisection | c-bisection:<c> | bounded:<g> | bsp | "
                        "perfect | file:<path>")
    p.add_argument("--dist", default="uniform",
                   help="uniform | capprox:<c> | file:<path>")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default="-")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("optimize", help="minimum ratio over all protocols")
    p.add_argument("--table", required=True)
    p.add_argument("--objective", choices=("avg", "worst"), default="avg")
    p.add_argument("--dist", default="uniform")
    p.add_argument("--perms", default="identity",
                   help="identity | exhaustive | sample:<n>")
    p.add_argument("--out-protocol", default=None)
    common(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("render", help="draw a table (and cuts) as SVG")
    p.add_argument("--table", required=True)
    p.add_argument("--protocol", default=None)
    p.add_argument("--out", default="-")
    common(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--suite", choices=("paper", "quick"), default="quick")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParPrivacyError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
