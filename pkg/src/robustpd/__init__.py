"""PMU-defect-robust power domination: exact solvers, verifiers and closed forms."""

from .closed_forms import (
    NotApplicable,
    ceiling_identities_check,
    k33_value,
    k3m_value,
    knm_bounds,
    knm_witness,
    knn_value,
    knn_witness,
    qbound,
)
from .engine import ObservationResult, Placement, Verdict, is_krpds, is_pds, power_dominate
from .graph import FamilySpec, Graph, GraphParseError, generate, parse_edge_list, parse_family
from .solvers import (
    SearchOptions,
    SolveReport,
    canonical_multisets,
    ftpd_number,
    krpds_number,
    pd_number,
    q_number,
)

__all__ = [
    "FamilySpec", "Graph", "GraphParseError", "NotApplicable", "ObservationResult",
    "Placement", "SearchOptions", "SolveReport", "Verdict", "canonical_multisets",
    "ceiling_identities_check", "ftpd_number", "generate", "is_krpds", "is_pds",
    "k33_value", "k3m_value", "knm_bounds", "knm_witness", "knn_value", "knn_witness",
    "krpds_number", "parse_edge_list", "parse_family", "pd_number", "power_dominate",
    "q_number", "qbound",
]
