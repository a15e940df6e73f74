"""Command-line entry point: ``geothick <subcommand> ...``.

Exit codes: 0 success, 1 verification failure or search exhausted,
2 usage error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds, constructions, k15, render
from .model import CompleteBipartite, CompleteGraph, InvariantViolation, ParseError, deserialize, serialize
from .search import SearchConfig, search_placement
from .verifier import verify

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

DEFAULT_SEARCH_SEED = 42
DEFAULT_SEARCH_BUDGET = 1_000_000


class UsageError(Exception):
    pass


def parse_graph(text: str, allow_convex: bool = False):
    """``kN`` -> K_N, ``kA,B`` -> K_{A,B}; ``convex:N`` when ``allow_convex``."""
    t = text.strip().lower()
    try:
        if t.startswith("convex:"):
            if not allow_convex:
                raise UsageError("convex placements only apply to construct")
            return ("convex", int(t.split(":", 1)[1]))
        if t.startswith("k"):
            parts = t[1:].split(",")
            if len(parts) == 1:
                return CompleteGraph(int(parts[0]))
            if len(parts) == 2:
                return CompleteBipartite(int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise UsageError(f"bad graph {text!r}: {exc}") from None
    raise UsageError(f"bad graph {text!r}; expected kN, kA,B or convex:N")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    spec = parse_graph(args.graph, allow_convex=True)
    if isinstance(spec, tuple):
        drawing = constructions.convex_layout(spec[1])
    elif isinstance(spec, CompleteGraph):
        drawing = constructions.complete_layout(spec.n)
    else:
        drawing = constructions.bipartite_layout(spec.a, spec.b)
    _emit(serialize(drawing), args.out)
    print(f"{drawing.graph.label}: {drawing.layer_count} layers, {len(drawing.edges)} edges",
          file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        drawing = deserialize(_read(args.drawing), strict=False)
    except (ParseError, InvariantViolation) as exc:
        print(json.dumps({"valid": False, "error": str(exc)}))
        return EXIT_INVALID
    report = verify(drawing)
    doc = report.to_json()
    doc["layer_count"] = drawing.layer_count
    doc["edge_count"] = len(drawing.edges)
    problems = drawing.invariant_problems()
    if problems:
        doc["invariant_problems"] = problems
    print(json.dumps(doc))
    return EXIT_OK if report.valid and not problems else EXIT_INVALID


def cmd_bounds(args) -> int:
    if (args.n is None) == (args.bipartite is None):
        raise UsageError("give exactly one of --n or --bipartite")
    if args.n is not None:
        n = args.n
        if n < 1:
            raise UsageError("--n must be positive")
        lower, source = bounds.lower_bound_with_source(n)
        doc = {
            "n": n,
            "thickness": bounds.thickness_complete(n),
            "lower": lower,
            "lower_source": source.value,
            "upper": bounds.geo_upper_bound(n),
            "book_thickness": bounds.book_thickness_complete(n),
        }
        if n >= 12:
            doc["closed_form_lower"] = bounds.geo_lower_bound_closed_form(n)
    else:
        try:
            a, b = (int(x) for x in args.bipartite.split(","))
        except ValueError:
            raise UsageError("--bipartite expects A,B") from None
        try:
            result = bounds.bipartite_bounds(a, b)
        except bounds.DomainError as exc:
            raise UsageError(str(exc)) from None
        doc = {"a": a, "b": b, "lower": result.lower, "upper": result.upper,
               "lower_source": result.lower_source}
    if args.format == "text":
        print("\n".join(f"{k}: {v}" for k, v in doc.items()))
    else:
        print(json.dumps(doc))
    return EXIT_OK


def cmd_table(args) -> int:
    if args.max < 1:
        raise UsageError("--max must be positive")
    rows = bounds.bounds_table(args.max)
    text = bounds.table_csv(rows) if args.format == "csv" else bounds.table_text(rows)
    _emit(text, args.out)
    if args.plot:
        render.plot_bounds(rows, args.plot)
    return EXIT_OK


def cmd_audit(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    summary = k15.audit_summary(args.trials, args.seed, args.workers)
    print(json.dumps(summary, indent=2))
    return EXIT_OK if summary["all_ok"] else EXIT_INVALID


def cmd_search(args) -> int:
    graph = parse_graph(args.graph)
    steps = min(args.steps_per_restart, args.budget)
    restarts = max(1, -(-args.budget // steps))
    config = SearchConfig(
        target_layers=args.layers,
        max_restarts=restarts,
        steps_per_restart=steps,
        seed=args.seed,
        workers=args.workers,
    )
    outcome = search_placement(graph, config)
    stats = outcome.stats
    print(json.dumps({
        "status": outcome.status,
        "best_layers_seen": outcome.best_layers_seen,
        "restarts": stats.restarts,
        "steps": stats.steps,
        "verifier_calls": stats.verifier_calls,
    }), file=sys.stderr)
    if outcome.found:
        _emit(serialize(outcome.drawing), args.out)
        return EXIT_OK
    if args.out and outcome.drawing is not None and args.keep_best:
        _emit(serialize(outcome.drawing), args.out)
    return EXIT_INVALID


def cmd_render(args) -> int:
    drawing = deserialize(_read(args.drawing))
    style = render.RenderStyle(width=args.width, height=args.height)
    written = render.write_svg(drawing, args.out, style, split_layers=args.split_layers)
    for path in written:
        print(path, file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geothick", description="Layered straight-line drawings of K_n and K_{a,b}.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a verified drawing")
    p.add_argument("--graph", required=True, help="kN, kA,B or convex:N")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="exactly verify a drawing (use - for stdin)")
    p.add_argument("drawing")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="bounds for K_n or K_{a,b}")
    p.add_argument("--n", type=int)
    p.add_argument("--bipartite", metavar="A,B")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="lower/upper bounds for n = 1..MAX")
    p.add_argument("--max", type=int, default=100)
    p.add_argument("--format", choices=["csv", "text"], default="csv")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--plot", metavar="FILE", help="also save a figure of the bounds")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("audit-k15", help="audit the 15-point case analysis on random sets")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("search", help="anneal a placement for a target layer count")
    p.add_argument("--graph", required=True)
    p.add_argument("--layers", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEARCH_SEED)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET, help="total annealing steps")
    p.add_argument("--steps-per-restart", type=int, default=50_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="where to write a found drawing (default stdout)")
    p.add_argument("--keep-best", action="store_true",
                   help="when exhausted, still write the best verified drawing to --out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("render", help="render a drawing to SVG")
    p.add_argument("drawing")
    p.add_argument("--out", required=True)
    p.add_argument("--split-layers", action="store_true")
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=800)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"geothick {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, InvariantViolation, OSError, constructions.ConstructionError,
            bounds.DomainError) as exc:
        print(f"geothick {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"geothick {args.command}: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
