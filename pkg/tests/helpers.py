"""Brute-force oracles and corpus builders shared by the test modules.

Everything here favors obviousness over speed: degree scans, set algebra,
Floyd-Warshall, O(n^3) triple counting.  The library must agree with
these on every graph in the seeded corpora.
"""

from __future__ import annotations

import random

from topofilter import Graph, from_indexed


def random_graph(seed: int, max_nodes: int = 60) -> Graph:
    rng = random.Random(seed)
    n = rng.randint(0, max_nodes)
    p = rng.choice([0.03, 0.08, 0.15, 0.3, 0.6])
    pairs = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                pairs.append((u, v))
    return from_indexed(n, pairs)


def corpus(count: int, max_nodes: int = 60, base_seed: int = 1000):
    for i in range(count):
        yield base_seed + i, random_graph(base_seed + i, max_nodes)


def edge_set(g: Graph) -> set[tuple[int, int]]:
    return set(g.edges)


def oracle_filter_nodes(g: Graph, mode: str, d: int) -> set[int]:
    deg = g.degrees
    if mode == "max":
        return {v for v in range(g.node_count) if deg[v] <= d}
    return {v for v in range(g.node_count) if deg[v] >= d}


def oracle_induced_edges(g: Graph, keep: set[int]) -> set[tuple[int, int]]:
    return {(u, v) for u, v in g.edges if u in keep and v in keep}


def oracle_kcore_nodes(g: Graph, k: int) -> set[int]:
    nodes = set(range(g.node_count))
    while True:
        deg = {v: 0 for v in nodes}
        for u, v in g.edges:
            if u in nodes and v in nodes:
                deg[u] += 1
                deg[v] += 1
        drop = {v for v in nodes if deg[v] < k}
        if not drop:
            return nodes
        nodes -= drop


def oracle_components(g: Graph) -> list[set[int]]:
    unseen = set(range(g.node_count))
    comps = []
    while unseen:
        start = min(unseen)
        comp = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for u in g.neighbors(v):
                if u not in comp:
                    comp.add(u)
                    frontier.append(u)
        comps.append(comp)
        unseen -= comp
    return comps


def oracle_apl(g: Graph, members: list[int]) -> float:
    """Floyd-Warshall mean pairwise distance inside one component."""
    size = len(members)
    index = {v: i for i, v in enumerate(members)}
    inf = float("inf")
    dist = [[0.0 if i == j else inf for j in range(size)] for i in range(size)]
    for u, v in g.edges:
        if u in index and v in index:
            i, j = index[u], index[v]
            dist[i][j] = 1.0
            dist[j][i] = 1.0
    for k in range(size):
        dk = dist[k]
        for i in range(size):
            dik = dist[i][k]
            if dik == inf:
                continue
            di = dist[i]
            for j in range(size):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    total = sum(dist[i][j] for i in range(size) for j in range(size) if i != j)
    return total / (size * (size - 1))


def oracle_clustering(g: Graph) -> float:
    n = g.node_count
    if n == 0:
        return 0.0
    acc = 0.0
    for v in range(n):
        nbrs = g.neighbors(v)
        d = len(nbrs)
        if d < 2:
            continue
        closed = 0
        for i in range(d):
            for j in range(i + 1, d):
                if g.has_edge(nbrs[i], nbrs[j]):
                    closed += 1
        acc += closed / (d * (d - 1) / 2)
    return acc / n


def path_graph(n: int) -> Graph:
    return from_indexed(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return from_indexed(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return from_indexed(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cycle_graph(n: int) -> Graph:
    return from_indexed(n, [(i, (i + 1) % n) for i in range(n)])
