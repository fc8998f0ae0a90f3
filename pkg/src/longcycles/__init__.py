"""Edge-disjoint long-cycle packings and bounded edge hitting sets."""

from .errors import BudgetExceeded, ClaimViolation, GraphInputError
from .graphcore import (
    Cycle,
    MultiGraph,
    Path,
    SuppressionMap,
    blocks,
    components,
    cycle_from_edge_set,
    expand_cycle,
    format_graph,
    parse_graph,
    suppress_degree2,
    validate_cycle,
    validate_path,
)
from .cycles import (
    DetectorBudget,
    LongCycleQuery,
    edge_on_long_cycle,
    enumerate_cycles,
    find_long_cycle,
    oracle_max_packing,
    oracle_min_hitting,
    pack_cycles_dense,
    shortest_cycle,
)

__all__ = [
    "BudgetExceeded",
    "ClaimViolation",
    "GraphInputError",
    "Cycle",
    "MultiGraph",
    "Path",
    "SuppressionMap",
    "blocks",
    "components",
    "cycle_from_edge_set",
    "expand_cycle",
    "format_graph",
    "parse_graph",
    "suppress_degree2",
    "validate_cycle",
    "validate_path",
    "DetectorBudget",
    "LongCycleQuery",
    "edge_on_long_cycle",
    "enumerate_cycles",
    "find_long_cycle",
    "oracle_max_packing",
    "oracle_min_hitting",
    "pack_cycles_dense",
    "shortest_cycle",
]

__version__ = "0.1.0"
