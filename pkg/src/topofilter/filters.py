"""Degree-threshold subgraph filters and k-core decomposition.

All degree thresholds are evaluated against the graph that is passed in,
never against the shrinking result, so filters compose predictably.  The
one exception is k_core, whose whole point is the recursive re-check.
"""

from __future__ import annotations

from collections import deque

from .graph import FilterProvenance, Graph, SubgraphResult, _induced, induced_subgraph

__all__ = ["max_dis", "min_dis", "min_dis_top", "k_core", "component_view"]


def max_dis(g: Graph, d: int) -> SubgraphResult:
    """Induced subgraph on every node whose degree in g is <= d.

    No recursion: a node kept because deg(v) <= d stays kept even if its
    degree inside the result drops further.  d at or above the maximum
    degree returns the whole graph.
    """
    if d < 0:
        raise ValueError(f"degree threshold must be >= 0, got {d}")
    deg = g.degrees
    kept = [v for v in range(g.node_count) if deg[v] <= d]
    return _induced(g, kept, FilterProvenance("max-dis", d))


def min_dis(g: Graph, d: int) -> SubgraphResult:
    """Induced subgraph on every node whose degree in g is >= d.

    d = 0 returns the whole graph; d above the maximum degree returns the
    empty subgraph.
    """
    if d < 0:
        raise ValueError(f"degree threshold must be >= 0, got {d}")
    deg = g.degrees
    kept = [v for v in range(g.node_count) if deg[v] >= d]
    return _induced(g, kept, FilterProvenance("min-dis", d))


def min_dis_top(
    g: Graph,
    k: int | None = None,
    fraction: float | None = None,
) -> SubgraphResult:
    """Induced subgraph on the k highest-degree nodes.

    Exactly one of k and fraction must be given; fraction f resolves to
    k = round(f * |V|).  Ties at the k-th degree value break toward the
    smaller node index so exactly k nodes come back.  The provenance
    records the implied threshold: the degree of the last node that made
    the cut, for comparison with a plain min-degree filter.
    """
    if (k is None) == (fraction is None):
        raise ValueError("exactly one of k and fraction must be given")
    n = g.node_count
    if fraction is not None:
        if not 0 < fraction <= 1:
            raise ValueError(f"fraction must be in (0, 1], got {fraction}")
        k = round(fraction * n)
    assert k is not None
    if not 0 < k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    deg = g.degrees
    ranked = sorted(range(n), key=lambda v: (-deg[v], v))
    chosen = ranked[:k]
    implied = deg[chosen[-1]]
    kept = sorted(chosen)
    return _induced(g, kept, FilterProvenance("top-k", k, implied_threshold=implied))


def component_view(
    g: Graph,
    result: SubgraphResult | None,
    component: int | None,
) -> tuple[Graph, SubgraphResult | None]:
    """Optionally cut one connected component out of a (possibly already
    filtered) view.  Provenance of the originating filter survives the
    cut, and parent indices are composed so they still point into the
    filter's parent graph."""
    if component is None:
        return g, result
    from .metrics import component_members, connected_components

    census = connected_components(g)
    members = component_members(census, component)
    sliced = induced_subgraph(g, members)
    if result is not None:
        sliced = SubgraphResult(
            sliced.graph,
            tuple(result.parent_node_index[v] for v in sliced.parent_node_index),
            result.provenance,
        )
    return sliced.graph, sliced


def k_core(g: Graph, k: int) -> SubgraphResult:
    """Maximal induced subgraph where every node keeps degree >= k.

    Computed by peeling: repeatedly remove nodes whose remaining degree
    falls below k until none do.  May be empty.  k = 0 is the whole
    graph.
    """
    if k < 0:
        raise ValueError(f"core order must be >= 0, got {k}")
    n = g.node_count
    deg = list(g.degrees)
    alive = bytearray([1]) * n
    queue = deque(v for v in range(n) if deg[v] < k)
    for v in queue:
        alive[v] = 0
    while queue:
        v = queue.popleft()
        for u in g.neighbors(v):
            if alive[u]:
                deg[u] -= 1
                if deg[u] < k:
                    alive[u] = 0
                    queue.append(u)
    kept = [v for v in range(n) if alive[v]]
    return _induced(g, kept, FilterProvenance("k-core", k))
