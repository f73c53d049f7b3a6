"""Constrained shortest paths via Lagrangian alpha search, with exact
Dijkstra and fast hierarchical-structure engines."""

from .errors import (
    CspathError,
    CycleError,
    FormatError,
    OracleOverflowError,
    SamplingError,
    UnreachableError,
)
from .graph import Contraction, Graph, InstanceSpec, Path, contract_degree2, estimate_diameter
from .formats import load_coords, load_dimacs, load_udg, write_dimacs, write_udg
from .generate import RNG_ALGORITHM, WEIGHT_SCALE, generate_udg, udg_from_points
from .dijkstra import (
    WeightView,
    ShortestPathTree,
    dijkstra,
    extract_path,
    min_cost_tree,
    min_length_tree,
    reverse_dijkstra,
)
from .hs import (
    HierStructure,
    PerspectiveMap,
    ShortcutBlock,
    add_perspective_shortcuts,
    build_dag_hs,
    build_k_hs,
    compute_perspective_arcs,
    compute_shortcuts,
    hs_shortest_path,
    prune_dead_ends,
)
from .larac import (
    DijkstraEngine,
    HsEngine,
    LaracResult,
    Line,
    MinorantLines,
    apriori_ratio,
    dichotomy_search,
    iteration_bound,
    juttner_update_search,
    lower_bound,
    make_engine,
    solve,
)
from .exact import exact_csp
from .bench import (
    BenchRecord,
    BenchSummary,
    records_to_csv,
    run_matrix,
    sample_instances,
    summarize,
    summary_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "BenchSummary",
    "Contraction",
    "CspathError",
    "CycleError",
    "DijkstraEngine",
    "FormatError",
    "Graph",
    "HierStructure",
    "HsEngine",
    "InstanceSpec",
    "LaracResult",
    "Line",
    "MinorantLines",
    "OracleOverflowError",
    "Path",
    "PerspectiveMap",
    "RNG_ALGORITHM",
    "SamplingError",
    "ShortcutBlock",
    "ShortestPathTree",
    "UnreachableError",
    "compute_shortcuts",
    "WEIGHT_SCALE",
    "WeightView",
    "add_perspective_shortcuts",
    "apriori_ratio",
    "build_dag_hs",
    "build_k_hs",
    "compute_perspective_arcs",
    "contract_degree2",
    "dichotomy_search",
    "dijkstra",
    "estimate_diameter",
    "exact_csp",
    "extract_path",
    "generate_udg",
    "hs_shortest_path",
    "iteration_bound",
    "juttner_update_search",
    "load_coords",
    "load_dimacs",
    "load_udg",
    "lower_bound",
    "make_engine",
    "min_cost_tree",
    "min_length_tree",
    "prune_dead_ends",
    "records_to_csv",
    "reverse_dijkstra",
    "run_matrix",
    "sample_instances",
    "solve",
    "summarize",
    "summary_to_json",
    "udg_from_points",
    "write_dimacs",
    "write_udg",
]
