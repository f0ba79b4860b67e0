"""Degree-constrained factors and orientations in multigraphs.

Constructive pipelines for {g,f}-factors under tree-connectivity
hypotheses, with re-verified certificates, brute-force oracles, and
verification campaigns over random instances.
"""
from .connectivity import (
    PackingRefusal,
    Toughness,
    TreePacking,
    bipartite_index,
    bipartite_index_bounds,
    edge_connectivity,
    is_tree_connected,
    odd_cycle_packing_bound,
    spanning_tree_packing,
    toughness,
    tree_connectivity,
)
from .decompositions import (
    decompose_eulerian,
    decompose_keep_bi,
    matching_raising_bi,
    parity_forest,
    spanning_eulerian_subgraph,
    split_tree_connected_complement,
)
from .errors import (
    GraphParseError,
    HypothesisError,
    InputError,
    SizeRefusal,
    TheoremViolationError,
    UNKNOWN,
    is_unknown,
)
from .factors import (
    check_lovasz_condition,
    check_tutte_strict_form,
    enumerate_factors,
    factor_exists,
    find_f_factor,
    find_interval_factor,
    find_two_point_factor,
    lovasz_deficiency,
    omega_gf,
)
from .generators import GenSpec, balanced_bipartition_of, gen_functions, gen_tree_connected
from .graph import (
    Bipartition,
    Factor,
    MultiGraph,
    parse_graph,
    serialize_graph,
)
from .harness import Report, TrialRow, verify_theorem
from .orientations import (
    Orientation,
    eulerian_orientation,
    factor_from_orientation,
    interval_orientation,
    orientation_from_factor,
    two_point_orientation,
    z_defective_orientation,
)
from .pipeline import (
    FactorCertificate,
    HypothesisReport,
    NoFactorCertificate,
    TheoremParams,
    balanced_selector,
    eulerian_half_factor,
    eulerian_half_factor_at,
    gf_factor_almost_bipartite,
    gf_factor_bi_large,
    gf_factor_bipartite,
    parity_criterion,
    tough_hypothesis_check,
    tree_connected_gf,
    tree_connected_gf_bipartite,
)

__all__ = [
    "Bipartition",
    "Factor",
    "FactorCertificate",
    "GenSpec",
    "GraphParseError",
    "HypothesisError",
    "HypothesisReport",
    "InputError",
    "MultiGraph",
    "NoFactorCertificate",
    "Orientation",
    "PackingRefusal",
    "Report",
    "SizeRefusal",
    "TheoremParams",
    "TheoremViolationError",
    "Toughness",
    "TreePacking",
    "TrialRow",
    "UNKNOWN",
    "balanced_bipartition_of",
    "balanced_selector",
    "bipartite_index",
    "bipartite_index_bounds",
    "check_lovasz_condition",
    "check_tutte_strict_form",
    "decompose_eulerian",
    "decompose_keep_bi",
    "edge_connectivity",
    "enumerate_factors",
    "eulerian_half_factor",
    "eulerian_half_factor_at",
    "eulerian_orientation",
    "factor_exists",
    "factor_from_orientation",
    "find_f_factor",
    "find_interval_factor",
    "find_two_point_factor",
    "gen_functions",
    "gen_tree_connected",
    "gf_factor_almost_bipartite",
    "gf_factor_bi_large",
    "gf_factor_bipartite",
    "interval_orientation",
    "is_tree_connected",
    "is_unknown",
    "lovasz_deficiency",
    "matching_raising_bi",
    "odd_cycle_packing_bound",
    "omega_gf",
    "orientation_from_factor",
    "parity_criterion",
    "parity_forest",
    "parse_graph",
    "serialize_graph",
    "spanning_eulerian_subgraph",
    "spanning_tree_packing",
    "split_tree_connected_complement",
    "toughness",
    "tough_hypothesis_check",
    "tree_connected_gf",
    "tree_connected_gf_bipartite",
    "tree_connectivity",
    "two_point_orientation",
    "verify_theorem",
    "z_defective_orientation",
]
