"""Approximate all-pairs shortest paths: 2-approximations, near-additive schemes and distance oracles."""

from .additive import AdditiveConfig, additive_apsp_2, additive_apsp_k
from .bk import RHierarchy, bk_apsp, bk_scheme, build_r_hierarchy
from .bunches import BunchStructure, build_bunches, compute_bunches
from .errors import ApspError, BlobFormatError, BunchSizeError, ContractError, DimensionError, GraphFormatError
from .framework import (
    FrameworkConfig,
    framework_apsp,
    near_additive_apsp,
    reduce_2eps_to_2,
    two_approx_apsp,
    two_approx_combinatorial,
    two_approx_unweighted,
)
from .graph import (
    INF,
    Contract,
    DistanceVector,
    EstimateMatrix,
    Graph,
    bfs,
    dijkstra,
    exact_apsp,
    gen_gnp,
    load_graph,
    read_matrix,
    write_graph,
    write_matrix,
)
from .hitting import HittingSet, hit
from .minplus import MinPlusMatrix, approx_minplus, exact_minplus, paths_through_set
from .verify import StretchAudit, audit_stretch, audit_stretch_2w, bottleneck_apsp
from .weighted import (
    DistanceOracle2,
    DistanceOracle2W,
    build_oracle_2,
    build_oracle_2W,
    dense_apsp,
    load_oracle,
    mssp,
    query_oracle_2,
    query_oracle_2W,
    save_oracle,
)

__version__ = "0.1.0"
