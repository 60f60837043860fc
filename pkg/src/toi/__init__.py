"""Totally odd strong immersions of complete graphs in graph products.

Construct, verify, and exactly compute toi(G), the largest t such that G
contains a totally odd strong immersion of K_t.
"""

from .certificates import (
    Certificate,
    CertificateSchemaError,
    MalformedCertificateError,
    Route,
    VerificationReport,
    concatenate_routes,
    identity_certificate,
    parse_certificate,
    serialize_certificate,
    verify,
)
from .constructions import (
    EdgeClass,
    FactorImmersion,
    build_m_pair,
    cartesian_32,
    cartesian_33,
    cartesian_large,
    direct_kts,
    direct_lift,
    edge_class,
    is_translation,
    toi_lower_bound_product,
)
from .graphs import (
    Graph,
    GraphFormatError,
    PairIndex,
    cartesian_product,
    complete_graph,
    cycle_graph,
    direct_product,
    find_p3_center,
    is_bipartite,
    lexicographic_product,
    path_graph,
    read_graph_text,
    strong_product,
    write_graph_text,
)
from .solver import (
    CliqueSearchOutcome,
    ConjectureReport,
    SearchBudget,
    SolveResult,
    check_conjecture,
    chromatic_number,
    exact_toi,
    has_toi_clique,
)

__all__ = [
    "Certificate",
    "CertificateSchemaError",
    "CliqueSearchOutcome",
    "ConjectureReport",
    "EdgeClass",
    "FactorImmersion",
    "Graph",
    "GraphFormatError",
    "MalformedCertificateError",
    "PairIndex",
    "Route",
    "SearchBudget",
    "SolveResult",
    "VerificationReport",
    "build_m_pair",
    "cartesian_32",
    "cartesian_33",
    "cartesian_large",
    "cartesian_product",
    "check_conjecture",
    "chromatic_number",
    "complete_graph",
    "concatenate_routes",
    "cycle_graph",
    "direct_kts",
    "direct_lift",
    "direct_product",
    "edge_class",
    "exact_toi",
    "find_p3_center",
    "has_toi_clique",
    "identity_certificate",
    "is_bipartite",
    "is_translation",
    "lexicographic_product",
    "parse_certificate",
    "path_graph",
    "read_graph_text",
    "serialize_certificate",
    "strong_product",
    "toi_lower_bound_product",
    "verify",
    "write_graph_text",
]

__version__ = "1.0.0"
