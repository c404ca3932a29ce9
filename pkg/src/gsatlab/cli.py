"""Command-line entry point: generation, solving, counting, experiments.

Conventions: stdout carries machine-parseable results with the verdict line
first; everything diagnostic (progress, stats, reasons) goes to stderr. Exit
status 0 means success, 1 means a negative verdict (UNSAT, GIVEUP, zero
models, unreachable accuracy), 2 means a usage or input error. All
randomness flows from --seed, which defaults to 0 with a note on stderr, so
identical argv always produces identical stdout bytes.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cnf import DimacsError, Formula, emit_dimacs, parse_dimacs, with_comments
from .dpll import count_models, decide_sat
from .experiment import (AccuracyUnreachableError, GridSpec,
                         emit_report, emit_series, estimate_relative_runtime,
                         report_text, run_grid, scaling_experiment)
from .generate import (DatasetSpec, build_dataset, crossover_ratio,
                       emit_graph, encode_coloring, load_dataset, parse_graph,
                       random_2tree, random_3cnf, write_dataset)
from .rng import rng_for, substream
from .walksat import STRATEGIES, SearchParams, solve

DEFAULT_COUNT_CAP = 1_000_000


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit value")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return value


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return value


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated "
                                         "integer list") from None


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="ascii")


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="ascii")


def _resolve_seed(args) -> int:
    if args.seed is None:
        print("seed defaulted to 0", file=sys.stderr)
        return 0
    return args.seed


def _model_line(model: dict[int, bool]) -> str:
    lits = (str(v if model[v] else -v) for v in sorted(model))
    return "v " + " ".join(lits) + " 0"


def _load_formula(path: str) -> Formula:
    return parse_dimacs(_read_input(path))


def _add_seed(parser) -> None:
    parser.add_argument("--seed", type=_u64, default=None,
                        help="RNG seed (unsigned 64-bit; default 0, noted on stderr)")


def _add_search_flags(parser) -> None:
    parser.add_argument("--noise", type=_probability, default=0.5,
                        help="walk probability p (default 0.5)")
    parser.add_argument("--strategy", choices=STRATEGIES, default="skc-walk",
                        help="flip selection rule (default skc-walk)")
    _add_seed(parser)


def _stderr_progress(label: str, every: int = 25):
    def progress(done: int, kept: int) -> None:
        if done % every == 0:
            print(f"{label}: tested {done}, kept {kept}", file=sys.stderr)
    return progress


# -- subcommands ---------------------------------------------------------------


def _cmd_gen3cnf(args) -> int:
    seed = _resolve_seed(args)
    formula = random_3cnf(args.num_vars, args.ratio, rng_for(seed))
    decorated = with_comments(
        formula,
        f"generator random3cnf num_vars={args.num_vars} ratio={args.ratio!r}",
        f"seed {seed}")
    _write_output(args.out, emit_dimacs(decorated))
    return 0


def _cmd_gen2tree(args) -> int:
    seed = _resolve_seed(args)
    graph = random_2tree(args.num_vertices, rng_for(seed))
    text = emit_graph(graph,
                      f"generator 2tree num_vertices={args.num_vertices}",
                      f"seed {seed}")
    _write_output(args.out, text)
    return 0


def _cmd_encode_color(args) -> int:
    graph = parse_graph(_read_input(args.graph))
    formula, _ = encode_coloring(graph, args.colors)
    decorated = with_comments(
        formula,
        f"encoding coloring num_vertices={graph.num_vertices} "
        f"num_colors={args.colors}",
        f"variable of (vertex v, color i) = (v-1)*{args.colors} + i")
    _write_output(args.out, emit_dimacs(decorated))
    return 0


def _cmd_dataset(args) -> int:
    seed = _resolve_seed(args)
    if args.family == "random3cnf":
        if args.num_vars is None:
            raise ValueError("--num-vars is required for random3cnf")
        ratio = args.ratio if args.ratio is not None else crossover_ratio(args.num_vars)
        spec = DatasetSpec(family="random3cnf", count=args.count, seed=seed,
                           num_vars=args.num_vars, ratio=ratio,
                           filter=args.filter, lo=args.lo, hi=args.hi)
    else:
        if args.num_vertices is None or args.colors is None:
            raise ValueError("--num-vertices and --colors are required for coloring")
        spec = DatasetSpec(family="coloring", count=args.count, seed=seed,
                           num_vertices=args.num_vertices, num_colors=args.colors)
    dataset = build_dataset(spec, progress=_stderr_progress("dataset"),
                            jobs=args.jobs)
    write_dataset(dataset, args.out)
    print(f"wrote {args.out} ({len(dataset.instances)} instances)")
    return 0


def _cmd_solve(args) -> int:
    model = decide_sat(_load_formula(args.file))
    if model is None:
        print("UNSAT")
        return 1
    print("SAT")
    print(_model_line(model))
    return 0


def _cmd_count(args) -> int:
    result = count_models(_load_formula(args.file), args.cap)
    print(f"{result.count} {'capped' if result.capped else 'exact'}")
    return 1 if result.count == 0 else 0


def _cmd_walksat(args) -> int:
    seed = _resolve_seed(args)
    params = SearchParams(max_tries=args.mt, max_flips=args.mf,
                          noise=args.noise, strategy=args.strategy, seed=seed)
    outcome = solve(_load_formula(args.file), params)
    millis = int(round(outcome.elapsed_seconds * 1000))
    print(f"tries={outcome.tries_used} flips={outcome.total_flips} "
          f"millis={millis}", file=sys.stderr)
    if not outcome.solved:
        print("GIVEUP")
        return 1
    print("SAT")
    print(_model_line(outcome.model))
    return 0


def _grid_from_args(args, seed: int) -> GridSpec:
    return GridSpec(mf_values=args.mf_values, mt_values=args.mt_values,
                    noise=args.noise, strategy=args.strategy, seed=seed,
                    repetitions=args.repetitions)


def _cmd_grid(args) -> int:
    seed = _resolve_seed(args)
    dataset = load_dataset(args.dataset)
    table = run_grid(dataset, _grid_from_args(args, seed), jobs=args.jobs,
                     time_model=args.time_model)
    if args.out is None:
        sys.stdout.write(report_text(table))
    else:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = emit_report(table, out_dir / "grid.csv")
        print(f"wrote {path}")
    return 0


def _cmd_ta(args) -> int:
    seed = _resolve_seed(args)
    dataset = load_dataset(args.dataset)
    table = run_grid(dataset, _grid_from_args(args, seed), jobs=args.jobs,
                     time_model=args.time_model)
    if args.out is not None:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        emit_report(table, out_dir / "grid.csv")
    try:
        rt = estimate_relative_runtime(table, args.accuracy)
    except AccuracyUnreachableError as exc:
        print("UNREACHABLE")
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"flips={rt.t_a_flips!r} time={rt.t_a_time!r} mf={rt.mf} "
          f"mt={rt.mt} accuracy={rt.achieved_accuracy!r}")
    return 0


def _cmd_scale(args) -> int:
    seed = _resolve_seed(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    def dataset_for(size: int) -> "Dataset":
        directory = out_dir / "datasets" / f"size-{size}"
        if (directory / "manifest").exists():
            print(f"loading dataset {directory}", file=sys.stderr)
            return load_dataset(directory)
        if args.family == "random3cnf":
            ratio = args.ratio if args.ratio is not None else crossover_ratio(size)
            spec = DatasetSpec(family="random3cnf", count=args.count,
                               seed=substream(seed, size), num_vars=size,
                               ratio=ratio, filter="satisfiable-only")
        else:
            spec = DatasetSpec(family="coloring", count=args.count,
                               seed=substream(seed, size), num_vertices=size,
                               num_colors=args.colors)
        print(f"building dataset {directory}", file=sys.stderr)
        dataset = build_dataset(spec, progress=_stderr_progress(f"size {size}"),
                                jobs=args.jobs)
        write_dataset(dataset, directory)
        return dataset

    def progress(size: int, table) -> None:
        emit_report(table, out_dir / f"grid-{size}.csv")
        print(f"size {size} done", file=sys.stderr)

    try:
        points = scaling_experiment(args.sizes, dataset_for,
                                    _grid_from_args(args, seed),
                                    args.accuracy, jobs=args.jobs,
                                    time_model=args.time_model,
                                    progress=progress)
    except AccuracyUnreachableError as exc:
        print("UNREACHABLE")
        print(f"error: {exc}", file=sys.stderr)
        return 1
    emit_series(points, out_dir / "series.dat")
    for point in points:
        rt = point.runtime
        print(f"size={point.size} flips={rt.t_a_flips!r} mf={rt.mf} mt={rt.mt} "
              f"accuracy={rt.achieved_accuracy!r}")
    return 0


# -- parser wiring --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsatlab",
        description="Stochastic local search and exact solving for CNF "
                    "satisfiability, with instance generators and an "
                    "experiment harness.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen3cnf", help="emit a random fixed-length 3-CNF formula")
    p.add_argument("--num-vars", type=_positive_int, required=True)
    p.add_argument("--ratio", type=float, required=True,
                   help="clause-to-variable ratio (round(num_vars*ratio) clauses)")
    _add_seed(p)
    p.add_argument("-o", "--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=_cmd_gen3cnf)

    p = sub.add_parser("gen2tree", help="emit a random 2-tree in DIMACS edge format")
    p.add_argument("--num-vertices", type=_positive_int, required=True)
    _add_seed(p)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_gen2tree)

    p = sub.add_parser("encode-color",
                       help="encode k-colorability of a graph as CNF")
    p.add_argument("--colors", type=_positive_int, required=True)
    p.add_argument("graph", help="DIMACS edge format file, or - for stdin")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_encode_color)

    p = sub.add_parser("dataset", help="build and persist an instance dataset")
    p.add_argument("--family", choices=("random3cnf", "coloring"), required=True)
    p.add_argument("--count", type=_positive_int, required=True)
    p.add_argument("--num-vars", type=_positive_int, default=None)
    p.add_argument("--ratio", type=float, default=None,
                   help="random3cnf ratio (default: crossover value for the size)")
    p.add_argument("--filter", choices=("satisfiable-only", "count-range", "none"),
                   default="satisfiable-only")
    p.add_argument("--lo", type=_positive_int, default=None,
                   help="count-range lower edge (kept counts are > lo)")
    p.add_argument("--hi", type=_positive_int, default=None,
                   help="count-range upper edge (kept counts are <= hi; omit "
                        "for unbounded)")
    p.add_argument("--num-vertices", type=_positive_int, default=None)
    p.add_argument("--colors", type=_positive_int, default=None)
    _add_seed(p)
    p.add_argument("--jobs", type=_positive_int, default=None)
    p.add_argument("--out", required=True, help="dataset directory")
    p.set_defaults(func=_cmd_dataset)

    p = sub.add_parser("solve", help="complete solver: SAT with model, or UNSAT")
    p.add_argument("file", help="DIMACS CNF file, or - for stdin")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("count", help="exact model count, up to a cap")
    p.add_argument("--cap", type=_positive_int, default=DEFAULT_COUNT_CAP,
                   help=f"stop once the count exceeds this (default "
                        f"{DEFAULT_COUNT_CAP})")
    p.add_argument("file", help="DIMACS CNF file, or - for stdin")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("walksat", help="randomized local search: SAT or GIVEUP")
    p.add_argument("--mf", type=_nonnegative_int, required=True,
                   help="max flips per try")
    p.add_argument("--mt", type=_positive_int, required=True, help="max tries")
    _add_search_flags(p)
    p.add_argument("file", help="DIMACS CNF file, or - for stdin")
    p.set_defaults(func=_cmd_walksat)

    def add_grid_flags(p) -> None:
        p.add_argument("--dataset", required=True, help="dataset directory")
        p.add_argument("--mf-values", type=_int_list, required=True,
                       help="comma-separated ascending MF values")
        p.add_argument("--mt-values", type=_int_list, required=True,
                       help="comma-separated ascending MT values")
        p.add_argument("--repetitions", type=_positive_int, default=1)
        _add_search_flags(p)
        p.add_argument("--jobs", type=_positive_int, default=None)
        p.add_argument("--time-model", type=float, default=None,
                       help="model wall-clock as this many seconds per flip "
                            "(makes reports byte-reproducible)")
        p.add_argument("--out", default=None, help="directory for CSV output")

    p = sub.add_parser("grid", help="sweep an (MF, MT) grid over a dataset")
    add_grid_flags(p)
    p.set_defaults(func=_cmd_grid)

    p = sub.add_parser("ta", help="relative runtime: cheapest cell reaching "
                                  "a target accuracy")
    p.add_argument("--accuracy", type=_probability, required=True)
    add_grid_flags(p)
    p.set_defaults(func=_cmd_ta)

    p = sub.add_parser("scale", help="relative runtime across instance sizes")
    p.add_argument("--family", choices=("random3cnf", "coloring"),
                   default="random3cnf")
    p.add_argument("--sizes", type=_int_list, required=True,
                   help="comma-separated instance sizes")
    p.add_argument("--count", type=_positive_int, required=True,
                   help="instances per size")
    p.add_argument("--ratio", type=float, default=None,
                   help="random3cnf ratio (default: crossover value per size)")
    p.add_argument("--colors", type=_positive_int, default=3,
                   help="colors for the coloring family (default 3)")
    p.add_argument("--accuracy", type=_probability, required=True)
    p.add_argument("--mf-values", type=_int_list, required=True)
    p.add_argument("--mt-values", type=_int_list, required=True)
    p.add_argument("--repetitions", type=_positive_int, default=1)
    _add_search_flags(p)
    p.add_argument("--jobs", type=_positive_int, default=None)
    p.add_argument("--time-model", type=float, default=None)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_scale)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        name = exc.filename if exc.filename else exc
        print(f"error: no such file: {name}", file=sys.stderr)
        return 2
    except (DimacsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
