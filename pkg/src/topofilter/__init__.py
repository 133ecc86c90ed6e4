"""Degree-threshold filtering, metrics, and layout for undirected graphs.

The heavy surfaces (HTTP server, matplotlib figures, CLI) live in the
``topofilter.server``, ``topofilter.render``, and ``topofilter.cli``
submodules and are imported on demand, so ``import topofilter`` stays
light.
"""

from .filters import component_view, k_core, max_dis, min_dis, min_dis_top
from .graph import (
    FilterProvenance,
    Graph,
    Simplification,
    SubgraphResult,
    build_graph,
    from_indexed,
    generate_scale_free,
    induced_subgraph,
    largest_connected_component,
)
from .io import (
    ParseError,
    emit_edge_list,
    emit_graph_json,
    load_graph,
    parse_edge_list,
    parse_graph_json,
    parse_pajek,
)
from .layout import LayoutResult, circular_layout, force_layout
from .metrics import (
    ComponentCensus,
    DegreeDistribution,
    MetricsReport,
    PathLength,
    average_path_length,
    clustering_coefficient,
    connected_components,
    degree_distribution,
    metrics_report,
)
from .sweep import (
    AttackCurve,
    SweepProfile,
    SweepRow,
    attack_curve,
    dis_sweep,
    tail_start,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "Simplification",
    "FilterProvenance",
    "SubgraphResult",
    "build_graph",
    "from_indexed",
    "induced_subgraph",
    "largest_connected_component",
    "generate_scale_free",
    "max_dis",
    "min_dis",
    "min_dis_top",
    "k_core",
    "component_view",
    "DegreeDistribution",
    "ComponentCensus",
    "PathLength",
    "MetricsReport",
    "degree_distribution",
    "connected_components",
    "average_path_length",
    "clustering_coefficient",
    "metrics_report",
    "SweepRow",
    "SweepProfile",
    "dis_sweep",
    "tail_start",
    "AttackCurve",
    "attack_curve",
    "LayoutResult",
    "force_layout",
    "circular_layout",
    "ParseError",
    "parse_edge_list",
    "parse_pajek",
    "parse_graph_json",
    "emit_graph_json",
    "emit_edge_list",
    "load_graph",
    "__version__",
]
