"""Exact routing-capacity analysis for undirected multicast networks."""

from .multigraph import (
    Edge,
    Multigraph,
    Rate,
    TerminalSet,
    degree,
    dump_instance,
    load_instance,
    prune_to_core,
    scale_capacities,
    validate,
)
from .connectivity import (
    CutCertificate,
    edge_connectivity,
    is_cut_edge,
    max_flow,
    terminal_connectivity,
)
from .splitting import (
    SplitEvent,
    SplitHistory,
    eliminate_relays,
    find_disjoint_admissible_pairs,
    is_admissible,
    lift_packing,
    split_off,
    suitable_complete_splitting,
)
from .packing import (
    SteinerPacking,
    SteinerTree,
    enumerate_steiner_trees,
    fractional_capacity_lp,
    half_integer_capacity,
    max_integer_packing,
    verify_packing,
)
from .strength import TerminalPartition, edge_strength
from .bounds import (
    BoundValue,
    Decomposition3,
    DecompositionGeneral,
    GammaBracket,
    appendix_a_delta,
    appendix_b_identity,
    corollary1_gain_bounds,
    corollary2_gain_bound,
    decompose3,
    decompose_general,
    gamma_bracket,
    theorem1_lower_bounds,
    theorem3_lower_bound,
)
from .instances import (
    RoutingScheme,
    example2_instance,
    example2_routing_scheme,
    random_instance,
    sample_instances,
    verify_routing_scheme,
    verify_routing_scheme_report,
)

__version__ = "0.1.0"
