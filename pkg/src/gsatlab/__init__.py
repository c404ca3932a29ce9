"""gsatlab: stochastic local search and exact solving for CNF SAT.

The package bundles a randomized local-search solver (restart tries of
single-variable flips), a complete DPLL solver with exact model counting,
random instance generators (fixed-length 3-CNF, random 2-trees, graph
coloring encodings), dataset builders with reproducible persistence, and an
experiment harness for accuracy / relative-runtime studies over (MF, MT)
parameter grids.
"""

from .cnf import (Assignment, Clause, DimacsError, Formula,
                  build_occurrence_index, emit_dimacs, is_satisfying,
                  num_unsatisfied, OccurrenceIndex, parse_dimacs,
                  with_comments)
from .dpll import (CountResult, PartialAssignment, count_models, decide_sat,
                   unit_propagate)
from .experiment import (AccuracyEstimate, AccuracyTable,
                         AccuracyUnreachableError, CellResult, GridSpec,
                         RelativeRuntime, ScalePoint, emit_report,
                         emit_series, estimate_accuracy,
                         estimate_relative_runtime, parse_report, report_text,
                         run_grid, scaling_experiment)
from .generate import (ColoringVarMap, Dataset, DatasetInstance, DatasetSpec,
                       Graph, build_coloring_dataset,
                       build_count_bucketed_dataset, build_dataset,
                       build_satisfiable_dataset, crossover_ratio,
                       emit_graph, encode_coloring, instance_seed,
                       load_dataset, parse_graph, random_2tree, random_3cnf,
                       regenerate_dataset, solution_count_bucket,
                       two_tree_coloring_count, write_dataset)
from .rng import mix64, rng_for, substream
from .walksat import (STRATEGIES, SearchOutcome, SearchParams, SearchState,
                      pick_flip_gsat_walk, pick_flip_skc, solve)

__version__ = "0.1.0"

__all__ = [
    "Assignment", "Clause", "DimacsError", "Formula",
    "build_occurrence_index", "emit_dimacs", "is_satisfying",
    "num_unsatisfied", "OccurrenceIndex", "parse_dimacs", "with_comments",
    "CountResult", "PartialAssignment", "count_models", "decide_sat",
    "unit_propagate",
    "AccuracyEstimate", "AccuracyTable", "AccuracyUnreachableError",
    "CellResult", "GridSpec", "RelativeRuntime", "ScalePoint", "emit_report",
    "emit_series", "estimate_accuracy", "estimate_relative_runtime",
    "parse_report", "report_text", "run_grid", "scaling_experiment",
    "ColoringVarMap", "Dataset", "DatasetInstance", "DatasetSpec", "Graph",
    "build_coloring_dataset", "build_count_bucketed_dataset", "build_dataset",
    "build_satisfiable_dataset", "crossover_ratio", "emit_graph",
    "encode_coloring", "instance_seed", "load_dataset", "parse_graph",
    "random_2tree", "random_3cnf", "regenerate_dataset",
    "solution_count_bucket", "two_tree_coloring_count", "write_dataset",
    "mix64", "rng_for", "substream",
    "STRATEGIES", "SearchOutcome", "SearchParams", "SearchState",
    "pick_flip_gsat_walk", "pick_flip_skc", "solve",
    "__version__",
]
