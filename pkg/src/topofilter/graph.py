"""Immutable simple undirected graphs with dense indices and string ids."""

from __future__ import annotations

import random
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "Graph",
    "Simplification",
    "FilterProvenance",
    "SubgraphResult",
    "build_graph",
    "largest_connected_component",
    "induced_subgraph",
    "generate_scale_free",
]


@dataclass(frozen=True)
class Simplification:
    """Counts of what was coerced away while building a simple graph."""

    self_loops_dropped: int = 0
    duplicate_edges_collapsed: int = 0


@dataclass(frozen=True)
class FilterProvenance:
    """How a subgraph was derived from its parent.

    mode is one of "max-dis", "min-dis", "k-core", "top-k", "attack",
    "lcc", "component" or "induced"; parameter is the threshold, count,
    fraction or component id that produced the view.  implied_threshold
    is filled in by top-k selection, which reports the degree of the
    last node that made the cut.
    """

    mode: str
    parameter: float | int | None = None
    implied_threshold: int | None = None


class Graph:
    """Simple undirected graph: no self-loops, no duplicate edges.

    Nodes are dense integer indices 0..n-1; each has a unique external
    string id and optionally a label.  Instances are immutable after
    construction, so any number of readers may share one.
    """

    __slots__ = (
        "node_count",
        "_edges",
        "_adj",
        "_degrees",
        "external_ids",
        "labels",
        "simplification",
        "_edge_arr",
        "_id_index",
    )

    def __init__(
        self,
        node_count: int,
        edges: list[tuple[int, int]],
        external_ids: Sequence[str] | None = None,
        labels: Sequence[str | None] | None = None,
        simplification: Simplification = Simplification(),
        presorted: bool = False,
    ):
        # edges must already be unique with u < v; use build_graph or the
        # module helpers rather than constructing directly from raw input.
        if external_ids is None:
            external_ids = tuple(str(i) for i in range(node_count))
        else:
            external_ids = tuple(external_ids)
        if len(external_ids) != node_count:
            raise ValueError("external_ids must cover every node")
        if len(set(external_ids)) != node_count:
            raise ValueError("external_ids must be unique")
        if not presorted:
            edges = sorted(edges)
        self.node_count = node_count
        self._edges = tuple(edges)
        self.external_ids = external_ids
        self.labels = tuple(labels) if labels is not None else None
        self.simplification = simplification
        adj: list[list[int]] = [[] for _ in range(node_count)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        self._adj = adj
        self._degrees = [len(lst) for lst in adj]
        self._edge_arr = None
        self._id_index = None

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as (u, v) with u < v, sorted lexicographically."""
        return self._edges

    @property
    def degrees(self) -> list[int]:
        return self._degrees

    def degree(self, v: int) -> int:
        return self._degrees[v]

    def neighbors(self, v: int) -> list[int]:
        """Sorted neighbor list of v. Read-only."""
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        a = self._adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def index_of(self, external_id: str) -> int:
        if self._id_index is None:
            self._id_index = {eid: i for i, eid in enumerate(self.external_ids)}
        return self._id_index[external_id]

    def label_of(self, v: int) -> str | None:
        return self.labels[v] if self.labels is not None else None

    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) int32 array, cached (the graph is immutable)."""
        if self._edge_arr is None:
            arr = np.array(self._edges, dtype=np.int32)
            self._edge_arr = arr.reshape(-1, 2)
        return self._edge_arr

    def degree_array(self) -> np.ndarray:
        return np.asarray(self._degrees, dtype=np.int32)

    def max_degree(self) -> int:
        return max(self._degrees) if self._degrees else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self._edges == other._edges
            and self.external_ids == other.external_ids
            and self.labels == other.labels
        )

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


@dataclass(frozen=True)
class SubgraphResult:
    """An induced subgraph plus the mapping back into its parent.

    parent_node_index[i] is the parent index of subgraph node i; entries
    are strictly increasing, so the subgraph preserves parent order.
    """

    graph: Graph
    parent_node_index: tuple[int, ...]
    provenance: FilterProvenance


def _simplify_index_pairs(pairs: Iterable[tuple[int, int]]):
    """Drop self-loops, collapse duplicates (either orientation), sort."""
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    loops = 0
    dups = 0
    for u, v in pairs:
        if u == v:
            loops += 1
            continue
        if u > v:
            u, v = v, u
        e = (u, v)
        if e in seen:
            dups += 1
            continue
        seen.add(e)
        edges.append(e)
    edges.sort()
    return edges, Simplification(loops, dups)


def build_graph(
    edges: Iterable[tuple[str, str]],
    labels: Mapping[str, str] | None = None,
) -> Graph:
    """Build a simple graph from string id pairs.

    Ids get dense indices in first-seen order (self-loop endpoints still
    register their id).  Self-loops are dropped and duplicate edges in
    either orientation collapsed; the counts are kept on
    ``graph.simplification`` rather than silently discarded.  An empty
    input yields the empty graph.
    """
    index: dict[str, int] = {}
    ids: list[str] = []
    pairs: list[tuple[int, int]] = []
    for a, b in edges:
        ia = index.get(a)
        if ia is None:
            ia = index[a] = len(ids)
            ids.append(a)
        ib = index.get(b)
        if ib is None:
            ib = index[b] = len(ids)
            ids.append(b)
        pairs.append((ia, ib))
    clean, stats = _simplify_index_pairs(pairs)
    node_labels = None
    if labels:
        node_labels = [labels.get(i) for i in ids]
        if all(lab is None for lab in node_labels):
            node_labels = None
    return Graph(len(ids), clean, ids, node_labels, stats, presorted=True)


def from_indexed(
    node_count: int,
    pairs: Iterable[tuple[int, int]],
    external_ids: Sequence[str] | None = None,
    labels: Sequence[str | None] | None = None,
) -> Graph:
    """Build a graph from index pairs that may still contain loops/dups."""
    pairs = list(pairs)
    for u, v in pairs:
        if not (0 <= u < node_count and 0 <= v < node_count):
            raise ValueError(f"edge ({u}, {v}) out of range for {node_count} nodes")
    clean, stats = _simplify_index_pairs(pairs)
    return Graph(node_count, clean, external_ids, labels, stats, presorted=True)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> SubgraphResult:
    """Subgraph on ``keep`` with exactly the parent edges inside it."""
    kept = sorted(set(keep))
    if kept and not (0 <= kept[0] and kept[-1] < g.node_count):
        bad = kept[0] if kept[0] < 0 else kept[-1]
        raise ValueError(f"node index {bad} out of range for graph with {g.node_count} nodes")
    return _induced(g, kept, FilterProvenance("induced", len(kept)))


def _induced(g: Graph, kept: list[int], provenance: FilterProvenance) -> SubgraphResult:
    """Induce on an already validated, sorted, duplicate-free index list."""
    member = bytearray(g.node_count)
    new_index = [0] * g.node_count
    for ni, pi in enumerate(kept):
        member[pi] = 1
        new_index[pi] = ni
    edges: list[tuple[int, int]] = []
    for pi in kept:
        u = new_index[pi]
        for q in g.neighbors(pi):
            if q > pi and member[q]:
                edges.append((u, new_index[q]))
    # kept is ascending and neighbor lists are sorted, so edges are in order
    ids = [g.external_ids[pi] for pi in kept]
    labs = [g.labels[pi] for pi in kept] if g.labels is not None else None
    sub = Graph(len(kept), edges, ids, labs, presorted=True)
    return SubgraphResult(sub, tuple(kept), provenance)


def largest_connected_component(g: Graph) -> SubgraphResult:
    """The component with the most nodes; ties go to the one containing
    the smallest node index.  Idempotent; empty graph yields an empty
    subgraph."""
    n = g.node_count
    comp = [-1] * n
    best_nodes: list[int] = []
    current = 0
    for start in range(n):
        if comp[start] != -1:
            continue
        nodes = [start]
        comp[start] = current
        head = 0
        while head < len(nodes):
            for q in g.neighbors(nodes[head]):
                if comp[q] == -1:
                    comp[q] = current
                    nodes.append(q)
            head += 1
        # first component to reach the max size contains the smallest index
        if len(nodes) > len(best_nodes):
            best_nodes = nodes
        current += 1
    best_nodes.sort()
    return _induced(g, best_nodes, FilterProvenance("lcc", None))


def generate_scale_free(n: int, m: int, seed: int) -> Graph:
    """Preferential-attachment graph for desk-scale experiments.

    Starts from an m-clique, then each new node attaches to m distinct
    existing nodes sampled proportionally to degree (repeated-endpoint
    sampling).  Deterministic for a fixed seed; always connected;
    |edges| = m*(n-m) + C(m, 2).
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if n < m + 1:
        raise ValueError(f"n must be >= m+1 = {m + 1}, got {n}")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = [(i, j) for i in range(m) for j in range(i + 1, m)]
    # one list entry per edge endpoint keeps sampling degree-proportional
    repeated: list[int] = [v for i in range(m) for j in range(i + 1, m) for v in (i, j)]
    for src in range(m, n):
        targets: set[int] = set()
        while len(targets) < m:
            if repeated:
                t = repeated[rng.randrange(len(repeated))]
            else:
                t = rng.randrange(src)  # m=1 bootstrap: no edges exist yet
            targets.add(t)
        ordered = sorted(targets)
        for t in ordered:
            edges.append((t, src))
        repeated.extend(ordered)
        repeated.extend([src] * m)
    return Graph(n, edges, presorted=False)
