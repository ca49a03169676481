"""Command-line frontend: reduce a graph to a unit disk model, solve
max-cut or max-bisection exactly, render a model as SVG, and run the
certification suites.

Exit codes: 0 success, 1 validation or certification failure, 2 malformed
or unsupported input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .certify import run_all
from .errors import (ConstructionError, InputError, SizeLimitError, UdgcutError,
                     WidthLimitError)
from .geometry import SCALE
from .graph_core import Graph, parse_graph_text
from .reduction import (ROLE_ORIGINAL, LoadedOutput, load_output_json, reduce,
                        to_json)
from .solvers import (DEFAULT_BRUTE_LIMIT, DEFAULT_WIDTH_LIMIT,
                      greedy_tree_decomposition, max_bisection_bruteforce,
                      max_cut_bruteforce, max_cut_treewidth_dp)
from .udg_model import ProximityModel

ROLE_COLORS = {
    "original": "#000000",
    "subdivision": "#4682b4",
    "gadget_w": "#dc143c",
    "detour_apex": "#ff8c00",
}


def _workers() -> int:
    raw = os.environ.get("UDG_REDUCE_THREADS")
    if not raw:
        return 1
    try:
        return max(1, min(int(raw), os.cpu_count() or 1))
    except ValueError:
        return 1


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _write_output(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def model_svg(model: ProximityModel, roles: dict[int, str] | None = None) -> str:
    """SVG with one unit-diameter disk per vertex (radius 10 in 1/20 units)
    and one line per edge; the y axis is flipped so y grows upward."""
    roles = roles or {}
    pts = model.points
    if pts:
        xs = [p.xu for p in pts]
        ys = [-p.yu for p in pts]
        minx, maxx = min(xs) - 2 * SCALE, max(xs) + 2 * SCALE
        miny, maxy = min(ys) - 2 * SCALE, max(ys) + 2 * SCALE
    else:
        minx = miny = 0
        maxx = maxy = 2 * SCALE
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{minx} {miny} {maxx - minx} {maxy - miny}">'
    ]
    for u, v in model.graph.sorted_edges():
        p, q = pts[u], pts[v]
        parts.append(
            f'<line x1="{p.xu}" y1="{-p.yu}" x2="{q.xu}" y2="{-q.yu}" '
            f'stroke="#555555" stroke-width="2"/>')
    for i, p in enumerate(pts):
        color = ROLE_COLORS.get(roles.get(i, ROLE_ORIGINAL), "#000000")
        parts.append(
            f'<circle cx="{p.xu}" cy="{-p.yu}" r="{SCALE // 2}" '
            f'fill="{color}" fill-opacity="0.35" stroke="{color}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_reduce(args) -> int:
    g = parse_graph_text(_read_input(args.input))
    out = reduce(g)
    text = to_json(out)
    stats = (f"k={out.k} t={out.t} vertices={out.result.n} "
             f"edges={out.result.m}\n")
    if args.out:
        _write_output(args.out, text)
        sys.stdout.write(stats)
    else:
        sys.stdout.write(text)
        sys.stderr.write(stats)
    if args.svg:
        roles = {v: p.role for v, p in out.provenance.items()}
        _write_output(args.svg, model_svg(out.model, roles))
    return 0


def _load_graph_or_model(text: str) -> tuple[Graph, LoadedOutput | None]:
    if text.lstrip().startswith("{"):
        loaded = load_output_json(text)
        return loaded.model.graph, loaded
    return parse_graph_text(text), None


def cmd_solve(args) -> int:
    g, _ = _load_graph_or_model(_read_input(args.input))
    if args.bisection:
        size, cut = max_bisection_bruteforce(g, limit=args.brute_limit)
        print(f"max-bisection {size}")
        print("side " + "".join(map(str, cut.side)))
        return 0
    method = args.method
    if method == "auto":
        method = "brute" if g.n <= args.brute_limit else "dp"
    if method == "brute":
        size, cut = max_cut_bruteforce(g, limit=args.brute_limit, workers=_workers())
        print(f"max-cut {size}")
        print("side " + "".join(map(str, cut.side)))
    else:
        td = greedy_tree_decomposition(g)
        size = max_cut_treewidth_dp(g, td, max_width=args.max_width)
        print(f"max-cut {size}")
        print("side (not produced by the dp method)")
    return 0


def cmd_render(args) -> int:
    loaded = load_output_json(_read_input(args.input))
    _write_output(args.out, model_svg(loaded.model, loaded.roles))
    return 0


def cmd_certify(args) -> int:
    results = run_all(args.seed, subdivisions=args.subdivisions,
                      gadgets=args.gadgets, reductions=args.reductions,
                      models=args.models, oracle=args.oracle)
    failed = False
    for res in results:
        print(res.line())
        if not res.ok:
            failed = True
            if res.counterexample:
                print(f"counterexample {res.counterexample}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="udgcut",
        description="Exact max-cut to unit-disk-graph reduction toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_reduce = sub.add_parser("reduce", help="compile a graph into a unit disk model")
    p_reduce.add_argument("--in", dest="input", help="graph file (default stdin)")
    p_reduce.add_argument("--out", help="model JSON output path (default stdout)")
    p_reduce.add_argument("--svg", help="also render the model to this SVG path")
    p_reduce.set_defaults(func=cmd_reduce)

    p_solve = sub.add_parser("solve", help="exact max-cut / max-bisection")
    p_solve.add_argument("--in", dest="input", help="graph file or model JSON")
    group = p_solve.add_mutually_exclusive_group()
    group.add_argument("--cut", action="store_true",
                       help="maximum cut (the default)")
    group.add_argument("--bisection", action="store_true",
                       help="maximum bisection instead of maximum cut")
    p_solve.add_argument("--method", choices=["brute", "dp", "auto"], default="auto")
    p_solve.add_argument("--brute-limit", type=int, default=DEFAULT_BRUTE_LIMIT)
    p_solve.add_argument("--max-width", type=int, default=DEFAULT_WIDTH_LIMIT)
    p_solve.set_defaults(func=cmd_solve)

    p_render = sub.add_parser("render", help="model JSON to SVG")
    p_render.add_argument("--in", dest="input", help="model JSON (default stdin)")
    p_render.add_argument("--out", help="SVG output path (default stdout)")
    p_render.set_defaults(func=cmd_render)

    p_cert = sub.add_parser("certify", help="run the certification suites")
    p_cert.add_argument("--seed", type=int, default=0)
    p_cert.add_argument("--subdivisions", type=int, default=200,
                        help="double-subdivision suite iterations")
    p_cert.add_argument("--gadgets", type=int, default=100,
                        help="gadget suite iterations")
    p_cert.add_argument("--reductions", type=int, default=20,
                        help="random end-to-end reduction instances")
    p_cert.add_argument("--models", type=int, default=100,
                        help="random precise-model planarity instances")
    p_cert.add_argument("--oracle", type=int, default=200,
                        help="dp vs brute cross-check instances")
    p_cert.set_defaults(func=cmd_certify)
    return parser


def _check_config(args):
    for name in ("brute_limit", "max_width"):
        value = getattr(args, name, None)
        if value is not None and value <= 0:
            raise InputError(f"--{name.replace('_', '-')} must be positive")
    paths = [p for p in (getattr(args, "input", None), getattr(args, "out", None),
                         getattr(args, "svg", None)) if p and p != "-"]
    if len(paths) != len(set(paths)):
        raise InputError("input and output paths must be distinct")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_config(args)
        return args.func(args)
    except (InputError, SizeLimitError, WidthLimitError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConstructionError, UdgcutError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
