"""Discrete order sheaves on interaction graphs.

Locate the voter interactions that block a consistent collective ranking,
and follow those conflicts when voters are merged.
"""
from .catalog import catalog_example, catalog_topology
from .errors import (
    CapacityError,
    CyclicConstraintError,
    DomainError,
    SheafError,
    UnknownNameError,
    ValidationError,
)
from .obstruction import (
    ObstructionReport,
    cycle_rank,
    find_global_sections_oracle,
    global_section_exists,
    omega1,
)
from .orders import TotalOrder, all_total_orders, kendall_tau, restrict_order
from .pushforward import (
    ConstraintDag,
    EmptyStalk,
    NonEmptyStalk,
    QuotientMap,
    build_constraint_dag,
    compute_stalk,
    count_linear_extensions,
    detect_cycle,
    naive_stalk_oracle,
    pushforward_report,
)
from .sheaf import (
    DiscreteOrderSheaf,
    InteractionGraph,
    PreferenceProfile,
    check_sheaf_axioms,
    edge_overlap,
)

__version__ = "0.1.0"
