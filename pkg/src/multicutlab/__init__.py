"""Exact rational toolkit for multicut LPs, small-diameter decomposition
distributions, and convex decompositions of fractional cut solutions."""

__version__ = "0.1.0"

from .convexdecomp import (
    ConvexDecomposition,
    DominationWitness,
    decompose,
    min_alpha,
)
from .decompositions import (
    DecompositionFamily,
    enumerate_decompositions,
    reduce_to_multicut,
    tree_level_family,
    verify_tree_properties,
)
from .exactlp import Infeasible, LinearProgram, Optimal, Unbounded, rat
from .generators import (
    CactusGapInstance,
    CycleGadget,
    amplify_one_sum,
    attach_path,
    gen_cactus_gap,
    gen_cycle_gadget,
    gen_star_gap,
)
from .graph import Edge, Graph, GraphError, is_cactus, one_sum
from .instancefmt import ParseError, emit_instance, parse_instance
from .multicut import (
    DistancePairs,
    FractionalSolution,
    GapReport,
    MulticutInstance,
    MulticutSolution,
    MultiflowSolution,
    NoMulticutError,
    exhaustive_min_multicut,
    extract_multiflow,
    gap,
    is_feasible_multicut,
    min_weight_multicut,
    separate,
    solve_fractional,
    solve_integral,
)
from .pload import (
    Distribution,
    PloadResult,
    amplification_experiment,
    check_path_hits,
    mass_outside_rooted,
    min_pload,
    min_pload_radius,
    min_pload_rooted,
    project,
)
