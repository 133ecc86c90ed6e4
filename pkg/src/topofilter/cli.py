"""Command line interface.

Every analysis subcommand prints the same bytes the HTTP server would
return for the equivalent query, so scripted pipelines can switch between
the two without reconciliation.  Exit codes: 0 success, 1 usage error,
2 data error (missing file, parse failure, bad domain value).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import render, serialize
from .filters import component_view, k_core, max_dis, min_dis, min_dis_top
from .graph import Graph, generate_scale_free, largest_connected_component
from .io import FORMATS, ParseError, emit_edge_list, load_graph
from .layout import circular_layout, force_layout
from .metrics import (
    average_path_length,
    connected_components,
    degree_distribution,
    metrics_report,
)
from .server import Catalog, serve
from .sweep import attack_curve, dis_sweep, tail_start

__all__ = ["main", "build_parser"]

PRESET_MAX_THRESHOLDS = (5, 10, 15, 25, 50)
PRESET_TOP_COUNTS = (10, 20)
PRESET_TOP_FRACTION = 0.05


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 on usage errors instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="graph file (edge list, Pajek .net, or graph JSON)")
    p.add_argument(
        "--format-in",
        dest="format_in",
        choices=FORMATS,
        help="input format; default sniffs the file extension",
    )
    p.add_argument(
        "--lcc",
        action="store_true",
        help="restrict to the largest connected component before analysis",
    )
    p.add_argument("--out", help="write the result here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(
        prog="topofilter",
        description="degree-threshold filtering and analysis for undirected graphs",
        epilog="run 'topofilter --preset paper FILE' for the combined report preset",
    )
    sub = top.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("info", help="metrics summary")
    _add_input(p)
    p.add_argument("--text", action="store_true", help="human-readable summary instead of JSON")
    p.add_argument("--figures", help="directory for the degree distribution figure")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("dis", help="degree-threshold filtered subgraph")
    _add_input(p)
    p.add_argument("--mode", choices=("max", "min", "kcore"), required=True)
    p.add_argument("--d", type=int, required=True, help="degree threshold")
    p.add_argument("--component", type=int, help="restrict output to one component id")
    p.add_argument("--include-metrics", action="store_true", dest="include_metrics")
    p.set_defaults(func=cmd_dis)

    p = sub.add_parser("dis-top", help="subgraph on the k highest-degree nodes")
    _add_input(p)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--k", type=int, help="number of nodes to keep")
    grp.add_argument("--fraction", type=float, help="fraction of nodes to keep")
    p.add_argument("--component", type=int)
    p.add_argument("--include-metrics", action="store_true", dest="include_metrics")
    p.set_defaults(func=cmd_dis_top)

    p = sub.add_parser("kcore", help="k-core (recursive peeling)")
    _add_input(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--component", type=int)
    p.add_argument("--include-metrics", action="store_true", dest="include_metrics")
    p.set_defaults(func=cmd_kcore)

    p = sub.add_parser("sweep", help="filter profile across a threshold range")
    _add_input(p)
    p.add_argument("--mode", choices=("max", "min"), required=True)
    p.add_argument("--dmin", type=int, default=0)
    p.add_argument("--dmax", type=int)
    p.add_argument("--apl", action="store_true", help="add exact APL per row (small graphs)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--figures", help="directory for the sweep figure")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("attack", help="node removal robustness curve")
    _add_input(p)
    p.add_argument("--order", choices=("targeted", "random"), default="targeted")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--recompute",
        action="store_true",
        help="re-rank targeted removals by surviving degree",
    )
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--figures", help="directory for the attack figure")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("layout", help="node coordinates (optionally of a filtered view)")
    _add_input(p)
    p.add_argument("--algorithm", choices=("force", "circular"), default="force")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=50)
    p.add_argument("--order", choices=("degree-desc", "index"), default="degree-desc")
    p.add_argument("--mode", choices=("max", "min", "kcore", "top"))
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int, help="node count for --mode top")
    p.add_argument("--component", type=int)
    p.add_argument("--format", choices=("json", "svg"), default="json")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("tail-start", help="suggested threshold where the degree tail starts")
    _add_input(p)
    p.add_argument("--fraction", type=float, default=0.05)
    p.set_defaults(func=cmd_tail_start)

    p = sub.add_parser("gen", help="synthetic scale-free graph as an edge list")
    p.add_argument("--n", type=int, required=True, help="node count")
    p.add_argument("--m", type=int, required=True, help="edges per new node")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the edge list here instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument(
        "--load",
        action="append",
        default=[],
        metavar="NAME=PATH",
        help="preload a graph under NAME (repeatable)",
    )
    p.add_argument("--ui", help="serve a static UI build from this directory at /ui")
    p.add_argument("--cache", type=int, default=64, help="derived view cache size")
    p.add_argument("--budget", type=float, default=2.0, help="seconds before 202+job")
    p.add_argument("--workers", type=int, default=4)
    p.set_defaults(func=cmd_serve)

    return top


def _load(args) -> tuple[Graph, str]:
    g, _ = load_graph(args.input, args.format_in)
    if getattr(args, "lcc", False):
        g = largest_connected_component(g).graph
    return g, Path(args.input).stem


def _write(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)


def _figdir(args) -> Path | None:
    figures = getattr(args, "figures", None)
    if figures is None:
        return None
    path = Path(figures)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def cmd_info(args) -> int:
    g, name = _load(args)
    report = metrics_report(g)
    figdir = _figdir(args)
    if figdir is not None:
        out = render.degree_figure(report.degree, figdir / f"{name}_degree.png")
        _note(f"wrote {out}")
    if args.text:
        lines = [
            f"name: {name}",
            f"nodes: {report.nodes}",
            f"edges: {report.edges}",
            f"components: {report.components.component_count}",
            f"largest_component_fraction: {report.components.largest_fraction:.4f}",
            f"edge_node_ratio: {report.degree.edge_node_ratio:.4f}",
            f"mean_degree: {report.degree.mean_degree:.4f}",
            f"max_degree: {report.degree.max_degree}",
        ]
        if report.apl is not None:
            kind = "exact" if report.apl.exact else f"sampled from {report.apl.sources} sources"
            lines.append(f"apl_largest_component: {report.apl.value:.4f} ({kind})")
        lines.append(f"clustering_coefficient: {report.clustering_coefficient:.4f}")
        _write(("\n".join(lines) + "\n").encode(), args.out)
        return 0
    _write(serialize.metrics_payload(name, report), args.out)
    return 0


def cmd_dis(args) -> int:
    g, name = _load(args)
    if args.d < 0:
        raise ValueError(f"--d must be >= 0, got {args.d}")
    if args.mode == "max":
        result = max_dis(g, args.d)
    elif args.mode == "min":
        result = min_dis(g, args.d)
    else:
        result = k_core(g, args.d)
    graph, result = component_view(result.graph, result, args.component)
    metrics = metrics_report(graph) if args.include_metrics else None
    _write(
        serialize.graph_payload(name, graph, result, metrics=metrics, component=args.component),
        args.out,
    )
    return 0


def cmd_kcore(args) -> int:
    g, name = _load(args)
    result = k_core(g, args.k)
    graph, result = component_view(result.graph, result, args.component)
    metrics = metrics_report(graph) if args.include_metrics else None
    _write(
        serialize.graph_payload(name, graph, result, metrics=metrics, component=args.component),
        args.out,
    )
    return 0


def cmd_dis_top(args) -> int:
    g, name = _load(args)
    result = min_dis_top(g, k=args.k, fraction=args.fraction)
    graph, result = component_view(result.graph, result, args.component)
    metrics = metrics_report(graph) if args.include_metrics else None
    _write(
        serialize.graph_payload(
            name, graph, result, metrics=metrics, component=args.component
        ),
        args.out,
    )
    return 0


def cmd_sweep(args) -> int:
    g, name = _load(args)
    profile = dis_sweep(g, args.mode, args.dmin, args.dmax, include_apl=args.apl)
    figdir = _figdir(args)
    if figdir is not None:
        out = render.sweep_figure(profile, figdir / f"{name}_sweep_{args.mode}.png")
        _note(f"wrote {out}")
    if args.format == "csv":
        _write(serialize.sweep_csv(profile), args.out)
    else:
        _write(serialize.sweep_payload(name, profile), args.out)
    return 0


def cmd_attack(args) -> int:
    g, name = _load(args)
    curve = attack_curve(
        g, args.order, args.steps, args.seed, recompute_degrees=args.recompute
    )
    figdir = _figdir(args)
    if figdir is not None:
        out = render.attack_figure([curve], figdir / f"{name}_attack_{args.order}.png")
        _note(f"wrote {out}")
    if args.format == "csv":
        _write(serialize.attack_csv(curve), args.out)
    else:
        _write(serialize.attack_payload(name, curve), args.out)
    return 0


def cmd_layout(args) -> int:
    g, name = _load(args)
    if args.mode == "top":
        if args.k is None or args.d is not None:
            raise ValueError("--mode top takes --k and no --d")
    elif (args.mode is None) != (args.d is None):
        raise ValueError("--mode and --d must be given together")
    elif args.k is not None:
        raise ValueError("--k is only valid with --mode top")
    result = None
    if args.mode == "top":
        result = min_dis_top(g, k=args.k)
        g = result.graph
    elif args.mode is not None:
        if args.mode == "max":
            result = max_dis(g, args.d)
        elif args.mode == "min":
            result = min_dis(g, args.d)
        else:
            result = k_core(g, args.d)
        g = result.graph
    graph, result = component_view(g, result, args.component)
    if args.algorithm == "force":
        layout = force_layout(graph, seed=args.seed, iterations=args.iterations)
    else:
        layout = circular_layout(graph, order=args.order)
    if args.format == "svg":
        _write(render.emit_svg(graph, layout), args.out)
    else:
        _write(
            serialize.graph_payload(
                name, graph, result, layout=layout, component=args.component
            ),
            args.out,
        )
    return 0


def cmd_tail_start(args) -> int:
    g, name = _load(args)
    d = tail_start(degree_distribution(g), args.fraction)
    _write(serialize.tail_start_payload(name, args.fraction, d), args.out)
    return 0


def cmd_gen(args) -> int:
    g = generate_scale_free(args.n, args.m, args.seed)
    _write(emit_edge_list(g), args.out)
    return 0


def cmd_serve(args) -> int:
    catalog = Catalog(cache_size=args.cache)
    for spec_arg in args.load:
        name, sep, path = spec_arg.partition("=")
        if not sep or not name or not path:
            raise ValueError(f"--load expects NAME=PATH, got {spec_arg!r}")
        g, fmt = load_graph(path)
        catalog.add(name, g, fmt)
        _note(f"loaded {name}: {g.node_count} nodes, {g.edge_count} edges")
    serve(
        catalog,
        args.host,
        args.port,
        ui_dir=args.ui,
        job_budget=args.budget,
        workers=args.workers,
    )
    return 0


def _preset_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="topofilter --preset paper",
        description="combined report over the workflow's standard thresholds",
    )
    p.add_argument("--preset", choices=("paper",), required=True)
    p.add_argument("input")
    p.add_argument("--format-in", dest="format_in", choices=FORMATS)
    p.add_argument("--out")
    p.add_argument("--figures", help="directory for figures and CSV companions")
    return p


def _subgraph_stats(graph) -> dict:
    census = connected_components(graph)
    largest_nodes = census.sizes[0] if census.sizes else 0
    apl = None
    apl_exact = None
    if largest_nodes >= 2:
        pl = average_path_length(graph)
        apl = pl.value
        apl_exact = pl.exact
    largest_edges = 0
    if largest_nodes:
        largest_edges = largest_connected_component(graph).graph.edge_count
    return {
        "nodes": graph.node_count,
        "edges": graph.edge_count,
        "edge_node_ratio": (
            graph.edge_count / graph.node_count if graph.node_count else 0.0
        ),
        "component_count": census.component_count,
        "largest_component": {
            "nodes": largest_nodes,
            "edges": largest_edges,
            "fraction": census.largest_fraction,
            "apl": apl,
            "apl_exact": apl_exact,
        },
        "nodes_outside_largest": graph.node_count - largest_nodes,
    }


def run_preset(argv: list[str]) -> int:
    args = _preset_parser().parse_args(argv)
    g, _ = load_graph(args.input, args.format_in)
    name = Path(args.input).stem
    g = largest_connected_component(g).graph

    report = metrics_report(g)
    dist = report.degree
    below4 = sum(c for d, c in dist.histogram if d < 4)

    max_rows = []
    for d in PRESET_MAX_THRESHOLDS:
        stats = _subgraph_stats(max_dis(g, d).graph)
        stats = {"d": d, **stats}
        max_rows.append(stats)

    top_rows = []
    for k in PRESET_TOP_COUNTS:
        # tiny inputs: top-k of fewer than k nodes is the whole graph
        result = min_dis_top(g, k=min(k, g.node_count))
        stats = _subgraph_stats(result.graph)
        top_rows.append(
            {"k": k, "implied_threshold": result.provenance.implied_threshold, **stats}
        )
    tail_d = tail_start(dist, PRESET_TOP_FRACTION)
    tail_result = min_dis(g, tail_d + 1)
    top_rows.append(
        {
            "fraction": PRESET_TOP_FRACTION,
            "threshold": tail_d + 1,
            **_subgraph_stats(tail_result.graph),
        }
    )

    body = {
        "schema_version": serialize.SCHEMA_VERSION,
        "name": name,
        "preset": "paper",
        "graph": {
            "nodes": report.nodes,
            "edges": report.edges,
            "edge_node_ratio": dist.edge_node_ratio,
            "mean_degree": dist.mean_degree,
            "max_degree": dist.max_degree,
            "apl_largest_component": report.apl.value if report.apl else None,
            "clustering_coefficient": report.clustering_coefficient,
            "low_degree_fraction": {
                "below": 4,
                "fraction": below4 / report.nodes if report.nodes else 0.0,
            },
        },
        "max_dis": max_rows,
        "min_top": top_rows,
        "tail_start": {"fraction": PRESET_TOP_FRACTION, "d": tail_d},
    }
    _write(serialize.dumps(body), args.out)

    if args.figures:
        figdir = Path(args.figures)
        figdir.mkdir(parents=True, exist_ok=True)
        out = render.degree_figure(dist, figdir / f"{name}_degree.png")
        _note(f"wrote {out}")
        for mode in ("max", "min"):
            profile = dis_sweep(g, mode)
            out = render.sweep_figure(profile, figdir / f"{name}_sweep_{mode}.png")
            _note(f"wrote {out}")
            (figdir / f"{name}_sweep_{mode}.csv").write_bytes(
                serialize.sweep_csv(profile)
            )
            _note(f"wrote {figdir / f'{name}_sweep_{mode}.csv'}")
        curves = [
            attack_curve(g, "targeted", 20, 0),
            attack_curve(g, "random", 20, 0),
        ]
        out = render.attack_figure(curves, figdir / f"{name}_attack.png")
        _note(f"wrote {out}")
        for curve in curves:
            path = figdir / f"{name}_attack_{curve.order}.csv"
            path.write_bytes(serialize.attack_csv(curve))
            _note(f"wrote {path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        if "--preset" in argv:
            return run_preset(argv)
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        print(f"topofilter: parse error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"topofilter: file not found: {exc.filename}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"topofilter: error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    raise SystemExit(main())
