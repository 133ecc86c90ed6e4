"""Visual output: standalone SVG drawings and matplotlib report figures."""

from __future__ import annotations

from math import log1p
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .graph import Graph
from .metrics import DegreeDistribution
from .sweep import AttackCurve, SweepProfile

__all__ = ["emit_svg", "degree_figure", "sweep_figure", "attack_figure"]


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def emit_svg(g: Graph, layout, *, width: int = 800) -> bytes:
    """Self-contained SVG: edges as lines under nodes as circles whose
    radius grows with log(1 + degree).  The viewBox hugs the layout with
    a 5% margin, so the drawing scale adapts to the coordinate spread."""
    coords = getattr(layout, "coords", layout)
    if len(coords) != g.node_count:
        raise ValueError(f"{len(coords)} coordinates for {g.node_count} nodes")
    if g.node_count == 0:
        body = '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1"/>'
        return (body + "\n").encode("ascii")
    xs = [c[0] for c in coords]
    ys = [c[1] for c in coords]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    extent = max(xmax - xmin, ymax - ymin)
    if extent <= 0:
        extent = 1.0
    margin = 0.05 * extent
    vx = xmin - margin
    vy = ymin - margin
    vw = (xmax - xmin) + 2 * margin
    vh = (ymax - ymin) + 2 * margin
    height = max(1, round(width * vh / vw)) if vw > 0 else width
    unit = extent * 0.01
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(vx)} {_fmt(vy)} {_fmt(vw)} {_fmt(vh)}" '
        f'width="{width}" height="{height}">'
    ]
    stroke = _fmt(extent * 0.002)
    parts.append(f'<g stroke="#9ca3af" stroke-width="{stroke}" stroke-opacity="0.6">')
    for u, v in g.edges:
        x1, y1 = coords[u]
        x2, y2 = coords[v]
        parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
        )
    parts.append("</g>")
    parts.append('<g fill="#1d4ed8">')
    deg = g.degrees
    for v in range(g.node_count):
        x, y = coords[v]
        r = (0.5 + log1p(deg[v])) * unit
        title = g.label_of(v) or g.external_ids[v]
        parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}">'
            f"<title>{_escape(title)} (degree {deg[v]})</title></circle>"
        )
    parts.append("</g>")
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def degree_figure(dist: DegreeDistribution, path: str | Path) -> Path:
    """Two panels: raw degree histogram and the log-log scatter that makes
    heavy tails visible."""
    path = Path(path)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    if dist.histogram:
        ds = [d for d, _ in dist.histogram]
        cs = [c for _, c in dist.histogram]
        ax1.bar(ds, cs, width=0.9, color="#1d4ed8")
    ax1.set_xlabel("degree")
    ax1.set_ylabel("nodes")
    ax1.set_title("degree histogram")
    if dist.loglog_points:
        xs = [p[0] for p in dist.loglog_points]
        ys = [p[1] for p in dist.loglog_points]
        ax2.plot(xs, ys, "o", ms=4, color="#b91c1c")
    ax2.set_xlabel("log10 degree")
    ax2.set_ylabel("log10 count")
    ax2.set_title("log-log")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def sweep_figure(profile: SweepProfile, path: str | Path) -> Path:
    """Node/edge growth and fragmentation across the threshold range."""
    path = Path(path)
    ds = [r.d for r in profile.rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(ds, [r.nodes for r in profile.rows], label="nodes", color="#1d4ed8")
    ax1.plot(ds, [r.edges for r in profile.rows], label="edges", color="#b91c1c")
    ax1.set_xlabel("d")
    ax1.set_title(f"{profile.mode} size")
    ax1.legend()
    ax2.plot(
        ds,
        [r.largest_component_fraction for r in profile.rows],
        color="#047857",
        label="largest fraction",
    )
    ax2.plot(
        ds,
        [r.component_count for r in profile.rows],
        color="#7c3aed",
        label="components",
    )
    ax2.set_xlabel("d")
    ax2.set_title("fragmentation")
    ax2.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def attack_figure(curves: list[AttackCurve], path: str | Path) -> Path:
    """Largest-component fraction against removals, one line per curve."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    for curve in curves:
        xs = [p[0] for p in curve.points]
        ys = [p[1] for p in curve.points]
        ax.plot(xs, ys, marker=".", label=f"{curve.order} (seed {curve.seed})")
    ax.set_xlabel("nodes removed")
    ax.set_ylabel("largest component fraction of remaining")
    ax.set_ylim(-0.02, 1.05)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
