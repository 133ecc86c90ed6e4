"""Deterministic node placement: spring-embedder and circular layouts.

The force layout is a Fruchterman-Reingold style embedder.  Repulsion is
approximated with a Barnes-Hut quadtree so each sweep is near-linear, and
graphs above a size threshold are first coarsened by heavy-edge matching,
laid out small, then progressively refined.  All randomness flows from the
seed argument, so the same (graph, seed, iterations) always reproduces the
same coordinates bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = ["LayoutResult", "force_layout", "circular_layout"]

_BUCKET = 16
_MAX_DEPTH = 32
_THETA2 = 0.81
_EPS = 1e-9


@dataclass(frozen=True)
class LayoutResult:
    coords: tuple[tuple[float, float], ...]
    algorithm: str
    seed: int
    iterations: int


class _Cell:
    __slots__ = ("comx", "comy", "mass", "half", "children", "idx")

    def __init__(self, comx, comy, mass, half, children, idx):
        self.comx = comx
        self.comy = comy
        self.mass = mass
        self.half = half
        self.children = children
        self.idx = idx


def _build_cell(px, py, mass, idx, cx, cy, half, depth):
    if len(idx) <= _BUCKET or depth >= _MAX_DEPTH:
        m = float(mass[idx].sum())
        comx = float((px[idx] * mass[idx]).sum()) / m
        comy = float((py[idx] * mass[idx]).sum()) / m
        return _Cell(comx, comy, m, half, None, idx)
    right = px[idx] > cx
    upper = py[idx] > cy
    h = half / 2.0
    children = []
    for rx, ry in ((False, False), (True, False), (False, True), (True, True)):
        sub = idx[(right == rx) & (upper == ry)]
        if len(sub) == 0:
            continue
        ncx = cx + h if rx else cx - h
        ncy = cy + h if ry else cy - h
        children.append(_build_cell(px, py, mass, sub, ncx, ncy, h, depth + 1))
    m = 0.0
    sx = 0.0
    sy = 0.0
    for c in children:
        m += c.mass
        sx += c.comx * c.mass
        sy += c.comy * c.mass
    return _Cell(sx / m, sy / m, m, half, children, idx)


def _build_tree(px, py, mass):
    xmin, xmax = float(px.min()), float(px.max())
    ymin, ymax = float(py.min()), float(py.max())
    half = max(xmax - xmin, ymax - ymin) / 2.0 + 1e-6
    cx = (xmin + xmax) / 2.0
    cy = (ymin + ymax) / 2.0
    return _build_cell(px, py, mass, np.arange(len(px)), cx, cy, half, 0)


def _repulsion(cell, px, py, mass, q, k2, fx, fy):
    """Add Barnes-Hut repulsion from cell onto the query points q."""
    qx = px[q]
    qy = py[q]
    if cell.children is None:
        # Exact pairwise against the leaf bucket.  The softening constant
        # turns a point's interaction with itself into an exact zero.
        lidx = cell.idx
        dx = qx[:, None] - px[lidx][None, :]
        dy = qy[:, None] - py[lidx][None, :]
        d2 = dx * dx + dy * dy + _EPS
        w = mass[lidx][None, :] / d2
        fx[q] += k2 * (dx * w).sum(axis=1)
        fy[q] += k2 * (dy * w).sum(axis=1)
        return
    dx = qx - cell.comx
    dy = qy - cell.comy
    d2 = dx * dx + dy * dy
    size2 = 4.0 * cell.half * cell.half
    far = size2 < _THETA2 * d2
    if far.any():
        fq = q[far]
        w = cell.mass / (d2[far] + _EPS)
        fx[fq] += k2 * dx[far] * w
        fy[fq] += k2 * dy[far] * w
    near = q[~far]
    if len(near):
        for child in cell.children:
            _repulsion(child, px, py, mass, near, k2, fx, fy)


def _fr_sweeps(px, py, mass, eu, ev, ew, iterations, t0, k):
    n = len(px)
    k2 = k * k
    allq = np.arange(n)
    for it in range(iterations):
        t = t0 * (iterations - it) / iterations
        fx = np.zeros(n)
        fy = np.zeros(n)
        root = _build_tree(px, py, mass)
        _repulsion(root, px, py, mass, allq, k2, fx, fy)
        if len(eu):
            dx = px[eu] - px[ev]
            dy = py[eu] - py[ev]
            dist = np.sqrt(dx * dx + dy * dy)
            coef = dist * ew / k
            ax = dx * coef
            ay = dy * coef
            np.subtract.at(fx, eu, ax)
            np.subtract.at(fy, eu, ay)
            np.add.at(fx, ev, ax)
            np.add.at(fy, ev, ay)
        flen = np.sqrt(fx * fx + fy * fy)
        scale = np.minimum(1.0, t / np.maximum(flen, 1e-12))
        px += fx * scale
        py += fy * scale
    return px, py


def _match_level(n, eu, ev, ew):
    """Heavy-edge matching pass: returns the fine-to-coarse node map and
    the coarse node count."""
    adj: list[list[tuple[float, int]]] = [[] for _ in range(n)]
    for u, v, w in zip(eu.tolist(), ev.tolist(), ew.tolist()):
        adj[u].append((w, v))
        adj[v].append((w, u))
    match = [-1] * n
    for v in range(n):
        if match[v] >= 0:
            continue
        best = -1
        best_w = -1.0
        for w, u in adj[v]:
            if u == v or match[u] >= 0:
                continue
            if w > best_w or (w == best_w and (best < 0 or u < best)):
                best = u
                best_w = w
        if best >= 0:
            match[v] = best
            match[best] = v
        else:
            match[v] = v
    cid = [-1] * n
    nxt = 0
    for v in range(n):
        if cid[v] < 0:
            cid[v] = nxt
            if match[v] != v:
                cid[match[v]] = nxt
            nxt += 1
    return cid, nxt


def force_layout(
    g: Graph,
    seed: int = 0,
    iterations: int = 50,
    *,
    multilevel_threshold: int = 5000,
) -> LayoutResult:
    """Spring-embedder coordinates for every node of g.

    Graphs larger than multilevel_threshold nodes are coarsened first;
    the refinement ladder halves the sweep budget per level with a floor
    of five, so big layouts stay bounded.  Output is recentered on the
    coordinate mean: a single node lands exactly at the origin.
    """
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    n = g.node_count
    if n == 0:
        return LayoutResult((), "force", seed, iterations)
    if n == 1:
        return LayoutResult(((0.0, 0.0),), "force", seed, iterations)
    earr = g.edge_array()
    eu = earr[:, 0].astype(np.int64)
    ev = earr[:, 1].astype(np.int64)
    ew = np.ones(len(eu))
    mass = np.ones(n)
    if n > multilevel_threshold:
        px, py = _multilevel(n, eu, ev, ew, mass, seed, iterations)
    else:
        px, py = _direct(n, eu, ev, ew, mass, seed, iterations)
    px = px - px.mean()
    py = py - py.mean()
    coords = tuple((float(x), float(y)) for x, y in zip(px, py))
    return LayoutResult(coords, "force", seed, iterations)


def _init_positions(n, mass, seed):
    span = math.sqrt(float(mass.sum()))
    rng = np.random.default_rng(seed)
    px = (rng.random(n) - 0.5) * span
    py = (rng.random(n) - 0.5) * span
    return px, py, span


def _direct(n, eu, ev, ew, mass, seed, iterations):
    px, py, span = _init_positions(n, mass, seed)
    return _fr_sweeps(px, py, mass, eu, ev, ew, iterations, 0.1 * span, 1.0)


def _multilevel(n, eu, ev, ew, mass, seed, iterations):
    levels = [(n, eu, ev, ew, mass)]
    maps = []
    while levels[-1][0] > 1000:
        ln, lu, lv, lw, lm = levels[-1]
        cid, cn = _match_level(ln, lu, lv, lw)
        if cn > 0.95 * ln:
            break
        cmap = np.asarray(cid, dtype=np.int64)
        cmass = np.zeros(cn)
        np.add.at(cmass, cmap, lm)
        agg: dict[tuple[int, int], float] = {}
        for u, v, w in zip(cmap[lu].tolist(), cmap[lv].tolist(), lw.tolist()):
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            agg[key] = agg.get(key, 0.0) + w
        keys = sorted(agg)
        cu = np.asarray([a for a, _ in keys], dtype=np.int64)
        cv = np.asarray([b for _, b in keys], dtype=np.int64)
        cw = np.asarray([agg[kk] for kk in keys])
        levels.append((cn, cu, cv, cw, cmass))
        maps.append(cmap)

    ln, lu, lv, lw, lm = levels[-1]
    px, py, _ = _init_positions(ln, lm, seed)
    budget = iterations
    span = math.sqrt(float(lm.sum()))
    px, py = _fr_sweeps(px, py, lm, lu, lv, lw, budget, 0.1 * span, 1.0)
    for lvl in range(len(levels) - 2, -1, -1):
        cmap = maps[lvl]
        ln, lu, lv, lw, lm = levels[lvl]
        rng = np.random.default_rng([seed, lvl + 1])
        px = px[cmap] + (rng.random(ln) - 0.5) * 0.2
        py = py[cmap] + (rng.random(ln) - 0.5) * 0.2
        budget = max(5, budget // 2)
        span = math.sqrt(float(lm.sum()))
        px, py = _fr_sweeps(px, py, lm, lu, lv, lw, budget, 0.05 * span, 1.0)
    return px, py


def circular_layout(g: Graph, order: str = "degree-desc") -> LayoutResult:
    """Nodes on the unit circle at equal angles, counterclockwise from
    (1, 0).  order "degree-desc" seats high-degree nodes first (ties by
    index); "index" seats nodes in index order."""
    n = g.node_count
    if n == 0:
        return LayoutResult((), "circular", 0, 0)
    if order == "degree-desc":
        deg = g.degrees
        seating = sorted(range(n), key=lambda v: (-deg[v], v))
    elif order == "index":
        seating = list(range(n))
    else:
        raise ValueError(f"order must be degree-desc or index, got {order!r}")
    coords: list[tuple[float, float]] = [(0.0, 0.0)] * n
    step = 2.0 * math.pi / n
    for pos, v in enumerate(seating):
        coords[v] = (math.cos(step * pos), math.sin(step * pos))
    return LayoutResult(tuple(coords), "circular", 0, 0)
