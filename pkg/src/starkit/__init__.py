"""starkit: space-time adapter synthesis from I/O access schedules.

Pipeline: parse or generate a schedule, classify every data pair into a
resource compatibility graph, greedily bind FIFO/LIFO chains and
registers, merge time-disjoint structures, materialize the storage +
interconnect + control-table architecture, and verify it with the
built-in cycle-accurate simulator.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .architecture import (
    ControlOp,
    InfeasibleBindingError,
    StarArchitecture,
    StorageElement,
    emit_netlist,
    emit_rtl,
    generate_architecture,
    load_netlist,
)
from .binding import (
    BoundGraph,
    CandidateStructure,
    GreedyConfig,
    HierNode,
    fill_factor,
    greedy_bind,
    longest_chain,
    size_fifo,
    size_lifo,
    structure_lifetime,
)
from .generators import gen_schedule
from .optimize import HierRcg, build_hier_rcg, merge_structures
from .pipeline import Report, default_sweep_grid, report_csv, report_table, run_synthesis
from .rcg import CompatTag, Rcg, RcgEdge, build_rcg, classify_pair, dump_rcg, semantic_oracle
from .schedule import (
    AccessEvent,
    DataItem,
    Lifetime,
    Port,
    Schedule,
    ScheduleError,
    compute_lifetimes,
    maxlive,
    parse_schedule,
)
from .simulator import (
    CapacityOverflow,
    DisciplineViolation,
    MissingOp,
    SimTrace,
    SimulationError,
    WrongCycle,
    coarse_reference,
    format_trace,
    occupancy_bound,
    simulate,
)

__version__ = "0.1.0"

__all__ = [
    "AccessEvent",
    "BoundGraph",
    "CandidateStructure",
    "CapacityOverflow",
    "CompatTag",
    "ControlOp",
    "DataItem",
    "DisciplineViolation",
    "GreedyConfig",
    "HierNode",
    "HierRcg",
    "InfeasibleBindingError",
    "KERNEL_BACKEND",
    "Lifetime",
    "MissingOp",
    "Port",
    "Rcg",
    "RcgEdge",
    "Report",
    "Schedule",
    "ScheduleError",
    "SimTrace",
    "SimulationError",
    "StarArchitecture",
    "StorageElement",
    "WrongCycle",
    "build_hier_rcg",
    "build_rcg",
    "classify_pair",
    "coarse_reference",
    "compute_lifetimes",
    "default_sweep_grid",
    "dump_rcg",
    "emit_netlist",
    "emit_rtl",
    "fill_factor",
    "format_trace",
    "gen_schedule",
    "generate_architecture",
    "greedy_bind",
    "load_netlist",
    "longest_chain",
    "maxlive",
    "merge_structures",
    "occupancy_bound",
    "parse_schedule",
    "report_csv",
    "report_table",
    "run_synthesis",
    "semantic_oracle",
    "simulate",
    "size_fifo",
    "size_lifo",
    "structure_lifetime",
]
