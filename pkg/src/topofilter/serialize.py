"""Canonical wire formats.

Every JSON or CSV body the CLI writes and the HTTP server serves is built
here, from the same dataclasses, so the two surfaces agree byte for byte.
Key order is fixed by construction, floats go through repr, and every
payload ends with a single newline.
"""

from __future__ import annotations

import json
from collections import Counter
from typing import Any

from .graph import Graph, SubgraphResult
from .layout import LayoutResult
from .metrics import DegreeDistribution, MetricsReport
from .sweep import AttackCurve, SweepProfile

SCHEMA_VERSION = 1

__all__ = [
    "SCHEMA_VERSION",
    "dumps",
    "graph_payload",
    "metrics_payload",
    "degree_payload",
    "sweep_payload",
    "sweep_csv",
    "attack_payload",
    "attack_csv",
    "tail_start_payload",
    "upload_payload",
    "listing_payload",
    "error_payload",
    "node_records",
    "edge_records",
]


def dumps(obj: Any) -> bytes:
    return (
        json.dumps(obj, separators=(",", ":"), ensure_ascii=True, allow_nan=False)
        + "\n"
    ).encode("ascii")


def node_records(g: Graph, coords=None) -> list[dict]:
    """Node objects in index order.  Degrees are the degrees inside g
    itself, so a filtered subgraph reports its own connectivity."""
    if coords is not None:
        coords = getattr(coords, "coords", coords)
        if len(coords) != g.node_count:
            raise ValueError(
                f"{len(coords)} coordinates for {g.node_count} nodes"
            )
    deg = g.degrees
    out = []
    for v in range(g.node_count):
        rec: dict[str, Any] = {"id": g.external_ids[v]}
        label = g.label_of(v)
        if label is not None:
            rec["label"] = label
        rec["degree"] = deg[v]
        if coords is not None:
            rec["x"] = coords[v][0]
            rec["y"] = coords[v][1]
        out.append(rec)
    return out


def edge_records(g: Graph) -> list[list[int]]:
    return [[u, v] for u, v in g.edges]


def _provenance_dict(result: SubgraphResult | None) -> dict | None:
    if result is None:
        return None
    p = result.provenance
    return {
        "mode": p.mode,
        "parameter": p.parameter,
        "implied_threshold": p.implied_threshold,
    }


def _degree_dict(dist: DegreeDistribution) -> dict:
    return {
        "histogram": {str(d): c for d, c in dist.histogram},
        "max_degree": dist.max_degree,
        "mean_degree": dist.mean_degree,
        "edge_node_ratio": dist.edge_node_ratio,
        "loglog_points": [[x, y] for x, y in dist.loglog_points],
    }


def _ids_by_size(membership) -> list[int]:
    """Component ids ordered to line up with the sizes list, so clients
    can address the nth-largest component without recomputing anything."""
    counts = Counter(membership)
    return sorted(counts, key=lambda cid: (-counts[cid], cid))


def _metrics_dict(report: MetricsReport) -> dict:
    return {
        "nodes": report.nodes,
        "edges": report.edges,
        "degree": _degree_dict(report.degree),
        "components": {
            "component_count": report.components.component_count,
            "sizes": list(report.components.sizes),
            "ids_by_size": _ids_by_size(report.components.membership),
            "largest_fraction": report.components.largest_fraction,
        },
        "apl_largest_component": report.apl.value if report.apl else None,
        "apl_sources": report.apl.sources if report.apl else None,
        "apl_exact": report.apl.exact if report.apl else None,
        "clustering_coefficient": report.clustering_coefficient,
    }


def graph_payload(
    name: str,
    graph: Graph,
    result: SubgraphResult | None = None,
    layout: LayoutResult | None = None,
    metrics: MetricsReport | None = None,
    component: int | None = None,
) -> bytes:
    body: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "provenance": _provenance_dict(result),
        "nodes": node_records(graph, layout),
        "edges": edge_records(graph),
    }
    if component is not None:
        body["component"] = component
    if layout is not None:
        body["layout"] = {
            "algorithm": layout.algorithm,
            "seed": layout.seed,
            "iterations": layout.iterations,
        }
    if metrics is not None:
        body["metrics"] = _metrics_dict(metrics)
    return dumps(body)


def metrics_payload(name: str, report: MetricsReport) -> bytes:
    body = {"schema_version": SCHEMA_VERSION, "name": name}
    body.update(_metrics_dict(report))
    return dumps(body)


def degree_payload(name: str, dist: DegreeDistribution) -> bytes:
    body = {"schema_version": SCHEMA_VERSION, "name": name}
    body.update(_degree_dict(dist))
    return dumps(body)


def sweep_payload(name: str, profile: SweepProfile) -> bytes:
    rows = []
    for r in profile.rows:
        row: dict[str, Any] = {
            "d": r.d,
            "nodes": r.nodes,
            "edges": r.edges,
            "edge_node_ratio": r.edge_node_ratio,
            "component_count": r.component_count,
            "largest_component_nodes": r.largest_component_nodes,
            "largest_component_fraction": r.largest_component_fraction,
        }
        if profile.include_apl:
            row["apl_largest_component"] = r.apl_largest_component
        rows.append(row)
    return dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "name": name,
            "mode": profile.mode,
            "d_min": profile.d_min,
            "d_max": profile.d_max,
            "rows": rows,
        }
    )


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def sweep_csv(profile: SweepProfile) -> bytes:
    cols = [
        "d",
        "nodes",
        "edges",
        "edge_node_ratio",
        "component_count",
        "largest_component_nodes",
        "largest_component_fraction",
    ]
    if profile.include_apl:
        cols.append("apl_largest_component")
    lines = [",".join(cols)]
    for r in profile.rows:
        cells = [
            r.d,
            r.nodes,
            r.edges,
            r.edge_node_ratio,
            r.component_count,
            r.largest_component_nodes,
            r.largest_component_fraction,
        ]
        if profile.include_apl:
            cells.append(r.apl_largest_component)
        lines.append(",".join(_csv_cell(c) for c in cells))
    return ("\n".join(lines) + "\n").encode("ascii")


def attack_payload(name: str, curve: AttackCurve) -> bytes:
    return dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "name": name,
            "order": curve.order,
            "seed": curve.seed,
            "steps": curve.steps,
            "recompute_degrees": curve.recompute_degrees,
            "points": [
                {"removed": r, "largest_component_fraction": f}
                for r, f in curve.points
            ],
        }
    )


def attack_csv(curve: AttackCurve) -> bytes:
    lines = ["removed,largest_component_fraction"]
    for r, f in curve.points:
        lines.append(f"{r},{repr(f)}")
    return ("\n".join(lines) + "\n").encode("ascii")


def tail_start_payload(name: str, fraction: float, d: int) -> bytes:
    return dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "name": name,
            "fraction": fraction,
            "d": d,
        }
    )


def upload_payload(name: str, fmt: str, g: Graph) -> bytes:
    return dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "name": name,
            "format": fmt,
            "nodes": g.node_count,
            "edges": g.edge_count,
            "self_loops_dropped": g.simplification.self_loops_dropped,
            "duplicate_edges_collapsed": g.simplification.duplicate_edges_collapsed,
        }
    )


def listing_payload(entries: list[tuple[str, Graph]]) -> bytes:
    return dumps(
        [
            {"name": name, "nodes": g.node_count, "edges": g.edge_count}
            for name, g in entries
        ]
    )


def error_payload(code: str, message: str) -> bytes:
    return dumps({"schema_version": SCHEMA_VERSION, "code": code, "message": message})
