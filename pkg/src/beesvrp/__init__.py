"""Capacitated vehicle routing: an enhanced bees / large-neighbourhood-search
solver, classic construction heuristics, baseline solvers and a benchmark
harness."""

from .baselines import LnsConfig, StandardBeesConfig, lns_hill_climb_solve, standard_bees_solve
from .bench import (
    RunRecord,
    data_path,
    emit_report,
    gap,
    load_best_known,
    load_instance_dir,
    mean_best_gap,
    run_benchmark,
)
from .construct import clarke_wright, random_seed_insertion, savings_list
from .instance import (
    Customer,
    Instance,
    InstanceError,
    Metric,
    build_candidate_lists,
    convert_cmt,
    distance,
    format_instance,
    parse_instance,
)
from .model import (
    FitnessWeights,
    Route,
    Solution,
    Violation,
    default_weights,
    fitness,
    format_solution,
    parse_solution,
    route_cost,
    route_overcapacity,
    route_overtime,
    validate,
)
from .neighborhood import (
    DestroyResult,
    RelatednessParams,
    destroy_random,
    destroy_shaw,
    extent,
    insertion_cost,
    lambda_interchange,
    relatedness,
    repair,
)
from .solver import (
    PositionRegistry,
    Site,
    SolveResult,
    SolverConfig,
    best_profile,
    cull_sites,
    explore_site,
    fast_profile,
    solve,
)

__version__ = "0.1.0"
