"""Community detection on clinical-trial referral networks."""

from ._core import (
    ContractError,
    Dendrogram,
    DendrogramLevel,
    Edge,
    Graph,
    Partition,
    RemovalStep,
    ValidationError,
    build_graph,
    build_referral_edges,
    community_labels,
    connected_components,
    degree_centrality,
    edge_betweenness,
    export_graph,
    generate_synthetic_enrollments,
    girvan_newman,
    import_graph_json,
    louvain,
    modularity,
    parse_enrollments,
    read_edge_csv,
    run_all,
    simplify,
    smith_pittman,
    to_undirected,
    weighted_degrees,
    write_edge_csv,
)

__all__ = [
    "ContractError",
    "Dendrogram",
    "DendrogramLevel",
    "Edge",
    "Graph",
    "Partition",
    "RemovalStep",
    "ValidationError",
    "build_graph",
    "build_referral_edges",
    "community_labels",
    "connected_components",
    "degree_centrality",
    "edge_betweenness",
    "export_graph",
    "generate_synthetic_enrollments",
    "girvan_newman",
    "import_graph_json",
    "louvain",
    "modularity",
    "parse_enrollments",
    "read_edge_csv",
    "run_all",
    "simplify",
    "smith_pittman",
    "to_undirected",
    "weighted_degrees",
    "write_edge_csv",
]
