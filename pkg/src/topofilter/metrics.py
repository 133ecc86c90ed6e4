"""Structural metrics: degree distribution, components, path length, clustering.

Path length is the expensive one.  Exact mode runs a BFS from every node of
the chosen component; above a node budget it switches to a seeded sample of
sources so big graphs stay interactive.  Everything here is deterministic
for a given (graph, seed).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from math import log10

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .graph import Graph

__all__ = [
    "DegreeDistribution",
    "ComponentCensus",
    "PathLength",
    "MetricsReport",
    "degree_distribution",
    "connected_components",
    "component_members",
    "largest_component_id",
    "average_path_length",
    "clustering_coefficient",
    "metrics_report",
]

# Components above this size are sampled rather than swept exhaustively
# unless the caller forces exact mode.
APL_NODE_BUDGET = 20000
APL_SAMPLE_SOURCES = 1000

_BFS_BATCH = 512


@dataclass(frozen=True)
class DegreeDistribution:
    histogram: tuple[tuple[int, int], ...]
    max_degree: int
    mean_degree: float
    edge_node_ratio: float
    loglog_points: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class ComponentCensus:
    component_count: int
    sizes: tuple[int, ...]
    largest_fraction: float
    membership: tuple[int, ...]


@dataclass(frozen=True)
class PathLength:
    value: float
    sources: int
    exact: bool


@dataclass(frozen=True)
class MetricsReport:
    nodes: int
    edges: int
    degree: DegreeDistribution
    components: ComponentCensus
    apl: PathLength | None
    clustering_coefficient: float


def degree_distribution(g: Graph) -> DegreeDistribution:
    """Histogram plus the two density conventions: mean degree 2E/V and E/V."""
    n = g.node_count
    counts = Counter(g.degrees)
    histogram = tuple(sorted(counts.items()))
    max_degree = histogram[-1][0] if histogram else 0
    mean = 2.0 * g.edge_count / n if n else 0.0
    ratio = g.edge_count / n if n else 0.0
    loglog = tuple(
        (log10(d), log10(c)) for d, c in histogram if d > 0
    )
    return DegreeDistribution(histogram, max_degree, mean, ratio, loglog)


def connected_components(g: Graph) -> ComponentCensus:
    """BFS census.  Component ids are assigned in order of first discovery
    by node index, so membership is stable across runs."""
    n = g.node_count
    membership = [-1] * n
    sizes = []
    for start in range(n):
        if membership[start] >= 0:
            continue
        cid = len(sizes)
        membership[start] = cid
        queue = [start]
        size = 1
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for u in g.neighbors(v):
                if membership[u] < 0:
                    membership[u] = cid
                    queue.append(u)
                    size += 1
        sizes.append(size)
    ordered = tuple(sorted(sizes, reverse=True))
    largest = ordered[0] / n if n else 0.0
    return ComponentCensus(len(sizes), ordered, largest, tuple(membership))


def component_members(census: ComponentCensus, cid: int) -> list[int]:
    members = [v for v, c in enumerate(census.membership) if c == cid]
    if not members:
        raise ValueError(f"no component with id {cid}")
    return members


def largest_component_id(census: ComponentCensus) -> int:
    """Id of the biggest component; ties go to the first one discovered."""
    if not census.sizes:
        raise ValueError("graph has no nodes")
    best = -1
    best_size = -1
    counts: dict[int, int] = {}
    for c in census.membership:
        counts[c] = counts.get(c, 0) + 1
    for cid in range(census.component_count):
        if counts[cid] > best_size:
            best, best_size = cid, counts[cid]
    return best


def _component_csr(g: Graph, members: list[int]) -> csr_matrix:
    index = {v: i for i, v in enumerate(members)}
    indptr = [0]
    indices = []
    for v in members:
        for u in g.neighbors(v):
            indices.append(index[u])
        indptr.append(len(indices))
    size = len(members)
    data = np.ones(len(indices), dtype=np.int8)
    return csr_matrix(
        (data, np.asarray(indices, dtype=np.int64), np.asarray(indptr, dtype=np.int64)),
        shape=(size, size),
    )


def average_path_length(
    g: Graph,
    component: int | None = None,
    *,
    exact: bool | None = None,
    node_budget: int = APL_NODE_BUDGET,
    sources: int = APL_SAMPLE_SOURCES,
    seed: int = 0,
) -> PathLength:
    """Mean shortest-path length over node pairs of one component.

    component: census id, or None for the largest component.  Components
    with fewer than two nodes have no pairs and raise ValueError.

    exact=None picks exact mode for components up to node_budget nodes and
    a seeded source sample beyond that.  A sample at least as large as the
    component falls back to the exact code path, so the two modes agree
    bit for bit there.
    """
    census = connected_components(g)
    cid = largest_component_id(census) if component is None else component
    members = component_members(census, cid)
    size = len(members)
    if size < 2:
        raise ValueError(
            f"component {cid} has {size} node(s); path length needs at least 2"
        )
    if exact is None:
        exact = size <= node_budget
    if not exact:
        if sources < 1:
            raise ValueError(f"source sample must be >= 1, got {sources}")
        if sources >= size:
            exact = True
    mat = _component_csr(g, members)
    if exact:
        picked = range(size)
        n_src = size
    else:
        rng = random.Random(seed)
        picked = sorted(rng.sample(range(size), sources))
        n_src = sources
    total = 0.0
    picked = list(picked)
    for lo in range(0, n_src, _BFS_BATCH):
        batch = picked[lo : lo + _BFS_BATCH]
        dist = dijkstra(mat, directed=False, unweighted=True, indices=batch)
        total += float(dist.sum())
    value = total / (n_src * (size - 1))
    return PathLength(value, n_src, exact)


def clustering_coefficient(g: Graph) -> float:
    """Average local clustering.  Nodes of degree < 2 contribute 0; the
    empty graph reports 0."""
    n = g.node_count
    if n == 0:
        return 0.0
    triangles = [0] * n
    adj = [g.neighbors(v) for v in range(n)]
    for a, b in g.edges:
        na, nb = adj[a], adj[b]
        i = j = 0
        la, lb = len(na), len(nb)
        while i < la and j < lb:
            x, y = na[i], nb[j]
            if x < y:
                i += 1
            elif x > y:
                j += 1
            else:
                triangles[x] += 1
                i += 1
                j += 1
    deg = g.degrees
    acc = 0.0
    for v in range(n):
        d = deg[v]
        if d >= 2:
            acc += 2.0 * triangles[v] / (d * (d - 1))
    return acc / n


def metrics_report(
    g: Graph,
    *,
    exact_apl: bool | None = None,
    apl_seed: int = 0,
) -> MetricsReport:
    """One-stop summary.  apl is None when the largest component is too
    small to define a path length."""
    census = connected_components(g)
    apl: PathLength | None = None
    if census.sizes and census.sizes[0] >= 2:
        apl = average_path_length(g, exact=exact_apl, seed=apl_seed)
    return MetricsReport(
        nodes=g.node_count,
        edges=g.edge_count,
        degree=degree_distribution(g),
        components=census,
        apl=apl,
        clustering_coefficient=clustering_coefficient(g),
    )
