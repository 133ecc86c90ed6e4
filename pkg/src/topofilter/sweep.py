"""Threshold sweeps and node-removal attack curves.

The sweep never materializes per-threshold subgraphs.  Each edge (u, v)
enters the max-degree filter at threshold max(deg u, deg v) and the
min-degree filter at min(deg u, deg v), so sorting edges once by that
activation threshold and replaying them through a union-find gives every
row of the profile in one pass.  Components only ever grow during the
replay, which is what lets the largest-component column be a running max.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

import numpy as np

from .filters import max_dis, min_dis
from .graph import Graph
from .metrics import DegreeDistribution, average_path_length, connected_components

__all__ = [
    "SweepRow",
    "SweepProfile",
    "dis_sweep",
    "tail_start",
    "AttackCurve",
    "attack_curve",
]

_MODES = {"max": "max-dis", "max-dis": "max-dis", "min": "min-dis", "min-dis": "min-dis"}

# include_apl recomputes each filtered subgraph, so it is gated to small
# graphs rather than silently taking minutes.
APL_SWEEP_NODE_BUDGET = 2000


@dataclass(frozen=True)
class SweepRow:
    d: int
    nodes: int
    edges: int
    edge_node_ratio: float
    component_count: int
    largest_component_nodes: int
    largest_component_fraction: float
    apl_largest_component: float | None = None


@dataclass(frozen=True)
class SweepProfile:
    mode: str
    d_min: int
    d_max: int
    include_apl: bool
    rows: tuple[SweepRow, ...]


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def dis_sweep(
    g: Graph,
    mode: str,
    d_min: int = 0,
    d_max: int | None = None,
    *,
    include_apl: bool = False,
) -> SweepProfile:
    """Profile of the degree filter over a threshold range.

    mode "max" rows describe the <= d filter, "min" rows the >= d filter.
    Every row reports the subgraph exactly as the one-shot filter would
    build it.  include_apl adds exact average path length of each row's
    largest component (None below 2 nodes) and is limited to graphs of at
    most APL_SWEEP_NODE_BUDGET nodes.
    """
    if mode not in _MODES:
        raise ValueError(f"mode must be max or min, got {mode!r}")
    mode = _MODES[mode]
    n = g.node_count
    top = g.max_degree()
    if d_max is None:
        d_max = top
    if d_min < 0 or d_min > d_max:
        raise ValueError(f"need 0 <= d_min <= d_max, got {d_min}..{d_max}")
    if include_apl and n > APL_SWEEP_NODE_BUDGET:
        raise ValueError(
            f"include_apl is capped at {APL_SWEEP_NODE_BUDGET} nodes, graph has {n}"
        )

    deg = g.degree_array()
    node_hist = np.bincount(deg, minlength=top + 1) if n else np.zeros(1, np.int64)
    earr = g.edge_array()
    if mode == "max-dis":
        t_edge = np.maximum(deg[earr[:, 0]], deg[earr[:, 1]]) if len(earr) else earr[:, 0]
        nodes_at = np.cumsum(node_hist)
    else:
        t_edge = np.minimum(deg[earr[:, 0]], deg[earr[:, 1]]) if len(earr) else earr[:, 0]
        nodes_at = node_hist[::-1].cumsum()[::-1]
    edge_hist = np.bincount(t_edge, minlength=top + 1)
    if mode == "max-dis":
        edges_at = np.cumsum(edge_hist)
        order = np.argsort(t_edge, kind="stable")
    else:
        edges_at = edge_hist[::-1].cumsum()[::-1]
        order = np.argsort(-t_edge, kind="stable")
    src = earr[order, 0].tolist()
    dst = earr[order, 1].tolist()

    parent = list(range(n))
    size = [1] * n
    merges = 0
    largest = 0
    pos = 0
    results: dict[int, tuple[int, int]] = {}

    # Edges are sorted by activation threshold, so the edges live at
    # threshold d are exactly the first edges_at[d] of the sorted order.
    span = range(0, min(d_max, top) + 1) if mode == "max-dis" else range(min(d_max, top), -1, -1)
    for d in span:
        end = int(edges_at[d])
        while pos < end:
            ru = _find(parent, src[pos])
            rv = _find(parent, dst[pos])
            if ru != rv:
                if size[ru] < size[rv]:
                    ru, rv = rv, ru
                parent[rv] = ru
                size[ru] += size[rv]
                merges += 1
                if size[ru] > largest:
                    largest = size[ru]
            pos += 1
        results[d] = (largest, merges)

    rows = []
    for d in range(d_min, d_max + 1):
        if d > top:
            # Beyond the maximum degree the filters saturate.
            if mode == "max-dis":
                active, edges = n, g.edge_count
                largest_d, merges_d = results[top]
            else:
                active, edges = 0, 0
                largest_d, merges_d = 0, 0
        else:
            active = int(nodes_at[d])
            edges = int(edges_at[d])
            largest_d, merges_d = results[d]
        largest_row = largest_d if active else 0
        if active and largest_row == 0:
            largest_row = 1
        rows.append(
            SweepRow(
                d=d,
                nodes=active,
                edges=edges,
                edge_node_ratio=edges / active if active else 0.0,
                component_count=active - merges_d if active else 0,
                largest_component_nodes=largest_row,
                largest_component_fraction=largest_row / active if active else 0.0,
            )
        )

    if include_apl:
        filt = max_dis if mode == "max-dis" else min_dis
        enriched = []
        for row in rows:
            sub = filt(g, row.d).graph
            apl = None
            census = connected_components(sub)
            if census.sizes and census.sizes[0] >= 2:
                apl = average_path_length(sub, exact=True).value
            enriched.append(
                SweepRow(
                    row.d,
                    row.nodes,
                    row.edges,
                    row.edge_node_ratio,
                    row.component_count,
                    row.largest_component_nodes,
                    row.largest_component_fraction,
                    apl,
                )
            )
        rows = enriched

    return SweepProfile(mode, d_min, d_max, include_apl, tuple(rows))


def tail_start(dist: DegreeDistribution, top_fraction: float = 0.05) -> int:
    """Smallest d such that the nodes of degree > d are at most the given
    fraction of the graph.  min_dis at d + 1 then keeps roughly that top
    slice.  Always <= max_degree, since degree > max_degree holds nowhere.
    """
    if not 0 < top_fraction < 1:
        raise ValueError(f"top_fraction must be in (0, 1), got {top_fraction}")
    total = sum(c for _, c in dist.histogram)
    if total == 0:
        raise ValueError("degree distribution is empty")
    counts = dict(dist.histogram)
    budget = top_fraction * total
    above = total
    for d in range(dist.max_degree + 1):
        above -= counts.get(d, 0)
        if above <= budget:
            return d
    return dist.max_degree


@dataclass(frozen=True)
class AttackCurve:
    order: str
    seed: int
    steps: int
    recompute_degrees: bool
    points: tuple[tuple[int, float], ...]


def _removal_order(g: Graph, order: str, seed: int) -> list[int]:
    n = g.node_count
    if order == "targeted":
        deg = g.degrees
        return sorted(range(n), key=lambda v: (-deg[v], v))
    if order == "random":
        nodes = list(range(n))
        random.Random(seed).shuffle(nodes)
        return nodes
    raise ValueError(f"order must be targeted or random, got {order!r}")


def _boundaries(n: int, steps: int) -> list[int]:
    cuts = sorted({(i * n) // steps for i in range(1, steps + 1)})
    return [c for c in cuts if c > 0]


def attack_curve(
    g: Graph,
    order: str = "targeted",
    steps: int = 20,
    seed: int = 0,
    *,
    recompute_degrees: bool = False,
) -> AttackCurve:
    """Largest-component fraction as nodes are removed.

    The fraction at each point is relative to the nodes still present, so
    a curve that stays near 1.0 means the survivors remain connected even
    as the graph shrinks.  Points are (removed_count, fraction) starting
    at zero removals; the final point removes everything and reports 0.

    order "targeted" removes by descending original degree (index breaks
    ties); "random" is a seeded shuffle.  recompute_degrees re-ranks by
    the degree among survivors after every removal and only matters for
    the targeted order.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    n = g.node_count
    if order not in ("targeted", "random"):
        raise ValueError(f"order must be targeted or random, got {order!r}")
    if n == 0:
        return AttackCurve(order, seed, steps, recompute_degrees, ((0, 0.0),))

    if recompute_degrees and order == "targeted":
        points = _attack_recompute(g, steps)
    else:
        points = _attack_static(g, _removal_order(g, order, seed), steps)
    return AttackCurve(order, seed, steps, recompute_degrees, tuple(points))


def _attack_static(g: Graph, removal: list[int], steps: int) -> list[tuple[int, float]]:
    # Replayed backwards: adding nodes back one at a time lets union-find
    # answer every prefix of removals in near-linear total time.
    n = g.node_count
    marks = set(_boundaries(n, steps))
    marks.add(0)
    parent = list(range(n))
    size = [1] * n
    present = bytearray(n)
    largest = 0
    out: list[tuple[int, float]] = []
    for removed in range(n, -1, -1):
        if removed in marks:
            remaining = n - removed
            frac = largest / remaining if remaining else 0.0
            out.append((removed, frac))
        if removed == 0:
            break
        v = removal[removed - 1]
        present[v] = 1
        if largest == 0:
            largest = 1
        for u in g.neighbors(v):
            if not present[u]:
                continue
            ru = _find(parent, u)
            rv = _find(parent, v)
            if ru != rv:
                if size[ru] < size[rv]:
                    ru, rv = rv, ru
                parent[rv] = ru
                size[ru] += size[rv]
                if size[ru] > largest:
                    largest = size[ru]
    out.reverse()
    return out


def _attack_recompute(g: Graph, steps: int) -> list[tuple[int, float]]:
    n = g.node_count
    deg = list(g.degrees)
    alive = bytearray([1]) * n
    heap = [(-deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    marks = _boundaries(n, steps)
    out = [(0, _largest_fraction_alive(g, alive, n))]
    removed = 0
    for mark in marks:
        while removed < mark:
            while True:
                negd, v = heapq.heappop(heap)
                if alive[v] and -negd == deg[v]:
                    break
            alive[v] = 0
            removed += 1
            for u in g.neighbors(v):
                if alive[u]:
                    deg[u] -= 1
                    heapq.heappush(heap, (-deg[u], u))
        out.append((removed, _largest_fraction_alive(g, alive, n - removed)))
    return out


def _largest_fraction_alive(g: Graph, alive: bytearray, remaining: int) -> float:
    if remaining == 0:
        return 0.0
    seen = bytearray(len(alive))
    best = 0
    for start in range(g.node_count):
        if not alive[start] or seen[start]:
            continue
        seen[start] = 1
        queue = [start]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for u in g.neighbors(v):
                if alive[u] and not seen[u]:
                    seen[u] = 1
                    queue.append(u)
        if len(queue) > best:
            best = len(queue)
    return best / remaining
