"""Mean-field limit constants for matching, TSP, and edge cover.

The package splits into five layers: survival-function grids (survival),
the cavity operators and their fixed points (operators), limit constants
and closed-form references (constants), cluster sampling and replica-gap
simulation (pwit), and exact desk-scale game and optimization oracles
(games).  The cli module ties them into a command-line tool.
"""

from .survival import (
    ModelParams,
    SurvivalGrid,
    evaluate,
    from_function,
    grid_nodes,
    sup_distance,
)
from .operators import (
    CutoffTooSmall,
    DEFAULT_CELLS,
    FixedPointReport,
    apply_edgecover_operator,
    apply_matching_operator,
    apply_tsp_operator,
    iterate_to_fixed_point,
    operator_iterate,
    solve_fixed_point,
    starting_grid,
)
from .constants import (
    BetaEstimate,
    EdgeCoverMoments,
    beta_limit,
    beta_theta,
    beta_theta_convolution,
    density_q,
    edgecover_d1,
    edgecover_d2,
    lambert_w,
    matching_d1_closed_form,
    matching_d1_q_from_theta,
    pair_sum_survival,
    rigorous_bounds,
    tsp_d1_reference,
)
from .pwit import (
    ThetaCluster,
    Valuation,
    boundary_value,
    empirical_survival,
    expected_cluster_size,
    partial_valuation,
    replica_gap,
    sample_cluster,
)
from .games import (
    DilutedSolution,
    WeightedGraph,
    diluted_edge_cover,
    diluted_flow,
    diluted_matching,
    empirical_statistics,
    game_value,
    graph_from_text,
    graph_to_text,
    neighborhood_coupling_stat,
    random_capacity2_tree,
    random_mixed_graph,
    sample_meanfield,
    tree_game_value,
    verify_payoff_identity,
)

__version__ = "0.1.0"

__all__ = [
    "ModelParams",
    "SurvivalGrid",
    "evaluate",
    "from_function",
    "grid_nodes",
    "sup_distance",
    "CutoffTooSmall",
    "DEFAULT_CELLS",
    "FixedPointReport",
    "apply_edgecover_operator",
    "apply_matching_operator",
    "apply_tsp_operator",
    "iterate_to_fixed_point",
    "operator_iterate",
    "solve_fixed_point",
    "starting_grid",
    "BetaEstimate",
    "EdgeCoverMoments",
    "beta_limit",
    "beta_theta",
    "beta_theta_convolution",
    "density_q",
    "edgecover_d1",
    "edgecover_d2",
    "lambert_w",
    "matching_d1_closed_form",
    "matching_d1_q_from_theta",
    "pair_sum_survival",
    "rigorous_bounds",
    "tsp_d1_reference",
    "ThetaCluster",
    "Valuation",
    "boundary_value",
    "empirical_survival",
    "expected_cluster_size",
    "partial_valuation",
    "replica_gap",
    "sample_cluster",
    "DilutedSolution",
    "WeightedGraph",
    "diluted_edge_cover",
    "diluted_flow",
    "diluted_matching",
    "empirical_statistics",
    "game_value",
    "graph_from_text",
    "graph_to_text",
    "neighborhood_coupling_stat",
    "random_capacity2_tree",
    "random_mixed_graph",
    "sample_meanfield",
    "tree_game_value",
    "verify_payoff_identity",
    "__version__",
]
