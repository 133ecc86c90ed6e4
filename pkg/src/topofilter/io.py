"""Reading and writing graphs.

Three formats come in: whitespace edge lists, a tolerant subset of Pajek
.net, and the package's own graph JSON.  Parsers are strict about
structure (bad lines fail with their line number) but tolerant about the
extras real files carry, like edge weights or vertex coordinates, which
are ignored rather than rejected.
"""

from __future__ import annotations

import json
from pathlib import Path

from .graph import Graph, build_graph, from_indexed
from .serialize import dumps, edge_records, node_records

__all__ = [
    "ParseError",
    "parse_edge_list",
    "parse_pajek",
    "parse_graph_json",
    "parse_graph",
    "emit_graph_json",
    "emit_edge_list",
    "load_graph",
    "FORMATS",
]

FORMATS = ("edge-list", "pajek", "json")


class ParseError(ValueError):
    """Input text that does not parse.  line is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _text(data: str | bytes) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8", errors="replace")
    return data


def parse_edge_list(data: str | bytes) -> Graph:
    """One edge per line as two whitespace-separated node names.  Blank
    lines and lines starting with '#' or '%' are skipped.  Node ids are
    assigned densely in order of first appearance."""
    pairs = []
    for lineno, raw in enumerate(_text(data).splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(
                f"expected 2 node names, found {len(tokens)}: {raw.strip()!r}",
                lineno,
            )
        pairs.append((tokens[0], tokens[1]))
    return build_graph(pairs)


def _strip_label(rest: str) -> str | None:
    rest = rest.strip()
    if not rest:
        return None
    if rest[0] == '"':
        end = rest.find('"', 1)
        if end < 0:
            return rest[1:]
        return rest[1:end]
    return rest.split()[0]


def parse_pajek(data: str | bytes) -> Graph:
    """Subset of the Pajek .net format: one *Vertices section, then any
    number of *Edges / *Arcs sections, all treated as undirected.

    Vertex lines are `index ["label"] ...`; anything after the label,
    like layout coordinates, is ignored.  Edge lines are two 1-based
    vertex indices; trailing tokens such as weights are ignored.  Other
    * directives are not supported and fail loudly.
    """
    n = -1
    labels: dict[int, str] = {}
    pairs: list[tuple[int, int]] = []
    section = None
    for lineno, raw in enumerate(_text(data).splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] == '%':
            continue
        if line[0] == "*":
            tokens = line.split()
            keyword = tokens[0].lower()
            if keyword == "*network":
                continue
            if keyword == "*vertices":
                if n >= 0:
                    raise ParseError("second *Vertices section", lineno)
                if len(tokens) < 2:
                    raise ParseError("*Vertices needs a count", lineno)
                try:
                    n = int(tokens[1])
                except ValueError:
                    raise ParseError(
                        f"vertex count is not an integer: {tokens[1]!r}", lineno
                    ) from None
                if n < 0:
                    raise ParseError(f"negative vertex count {n}", lineno)
                section = "vertices"
                continue
            if keyword in ("*edges", "*arcs"):
                if n < 0:
                    raise ParseError(f"{tokens[0]} before *Vertices", lineno)
                section = "edges"
                continue
            raise ParseError(f"unsupported directive {tokens[0]!r}", lineno)
        if section == "vertices":
            tokens = line.split(None, 1)
            try:
                idx = int(tokens[0])
            except ValueError:
                raise ParseError(
                    f"vertex index is not an integer: {tokens[0]!r}", lineno
                ) from None
            if not 1 <= idx <= n:
                raise ParseError(f"vertex index {idx} outside 1..{n}", lineno)
            if len(tokens) > 1:
                label = _strip_label(tokens[1])
                if label is not None:
                    labels[idx - 1] = label
            continue
        if section == "edges":
            tokens = line.split()
            if len(tokens) < 2:
                raise ParseError(f"edge line needs 2 indices: {line!r}", lineno)
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError(f"edge endpoints must be integers: {line!r}", lineno) from None
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(f"vertex index {x} outside 1..{n}", lineno)
            pairs.append((u - 1, v - 1))
            continue
        raise ParseError(f"data before any * section: {line!r}", lineno)
    if n < 0:
        raise ParseError("no *Vertices section found")
    ids = [str(i + 1) for i in range(n)]
    label_list = [labels.get(i) for i in range(n)] if labels else None
    return from_indexed(n, pairs, external_ids=ids, labels=label_list)


def parse_graph_json(data: str | bytes) -> Graph:
    """Inverse of emit_graph_json.  Unknown keys are ignored so the
    richer server payloads parse too."""
    try:
        obj = json.loads(_text(data))
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict) or "nodes" not in obj or "edges" not in obj:
        raise ParseError("expected an object with nodes and edges")
    nodes = obj["nodes"]
    edges = obj["edges"]
    if not isinstance(nodes, list) or not isinstance(edges, list):
        raise ParseError("nodes and edges must be arrays")
    ids = []
    labels = []
    for i, rec in enumerate(nodes):
        if not isinstance(rec, dict) or "id" not in rec:
            raise ParseError(f"node {i} has no id")
        ids.append(str(rec["id"]))
        labels.append(rec.get("label"))
    pairs = []
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise ParseError(f"edge {i} is not a pair")
        u, v = e
        if not isinstance(u, int) or not isinstance(v, int):
            raise ParseError(f"edge {i} endpoints must be node indices")
        pairs.append((u, v))
    label_list = labels if any(x is not None for x in labels) else None
    try:
        return from_indexed(len(ids), pairs, external_ids=ids, labels=label_list)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def emit_graph_json(g: Graph, coords=None) -> bytes:
    """Stable JSON snapshot: nodes in index order with degrees (and x/y
    when coords are given), edges as sorted index pairs."""
    return dumps({"nodes": node_records(g, coords), "edges": edge_records(g)})


def emit_edge_list(g: Graph) -> bytes:
    """Plain two-column edge list using external ids.  Isolated nodes do
    not appear, since the format has nowhere to put them."""
    lines = [f"{g.external_ids[u]} {g.external_ids[v]}" for u, v in g.edges]
    if not lines:
        return b""
    return ("\n".join(lines) + "\n").encode("utf-8")


_EXTENSIONS = {".net": "pajek", ".paj": "pajek", ".json": "json"}

_PARSERS = {
    "edge-list": parse_edge_list,
    "pajek": parse_pajek,
    "json": parse_graph_json,
}


def parse_graph(data: str | bytes, fmt: str) -> Graph:
    if fmt not in _PARSERS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")
    return _PARSERS[fmt](data)


def load_graph(path: str | Path, fmt: str | None = None) -> tuple[Graph, str]:
    """Read a graph file.  When fmt is None the extension decides:
    .net/.paj is Pajek, .json is graph JSON, anything else an edge list."""
    path = Path(path)
    if fmt is None:
        fmt = _EXTENSIONS.get(path.suffix.lower(), "edge-list")
    data = path.read_bytes()
    return parse_graph(data, fmt), fmt
