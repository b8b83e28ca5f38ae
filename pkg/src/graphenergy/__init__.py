"""Graph energy, weighted Laplacian energy and numerical checks of the
Ky Fan type bounds relating them."""

from graphenergy.energy import (
    WeightStats,
    graph_energy,
    laplacian_energy,
    laplacian_energy_routes,
    mean_deviation,
    variance,
    weight_stats,
)
from graphenergy.graph import (
    Bipartition,
    WeightScheme,
    WeightedGraph,
    adjacency_matrix,
    disjoint_union,
    generate,
    is_bipartite,
    is_connected,
    is_omega_regular,
    laplacian,
    parse_graph,
    serialize_graph,
    signless_laplacian,
    weight_diag,
)
from graphenergy.linalg import (
    Spectrum,
    SymMatrix,
    direct_sum,
    eigh,
    is_psd,
    matrix_abs,
    matrix_energy,
    psd_zero_diag_rows,
    singular_values,
)
from graphenergy.sweep import SweepConfig, SweepReport, run_sweep
from graphenergy.theorems import (
    BoundReport,
    Tolerances,
    check_bipartite_lower,
    check_bipartite_similarity,
    check_ky_fan,
    check_md_bound,
    check_sandwich,
    check_union_bound,
)

__version__ = "0.1.0"
