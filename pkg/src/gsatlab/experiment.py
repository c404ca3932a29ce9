"""Accuracy estimation, (MF, MT) grid sweeps, and relative-runtime extraction.

Accuracy over a dataset is the fraction of instances the local search solves.
It is only meaningful on datasets certified satisfiable, so uncertified input
is refused. A grid sweep produces one CellResult per (MF, MT) combination;
the relative runtime for a target accuracy a is then read off the table as
the cheapest qualifying cell, flips being the primary cost (wall-clock is
carried alongside but never decides).

Every (cell, instance, repetition) run draws its seed from the substream
(grid seed, mf, mt, instance index, repetition), so any single cell is
reproducible in isolation and results do not depend on scheduling. Passing
time_model replaces measured wall-clock with modeled seconds (a fixed cost
per flip), which makes entire reports byte-reproducible across machines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from ._parallel import ordered_map
from .generate import Dataset
from .rng import substream
from .walksat import STRATEGIES, SearchOutcome, SearchParams, solve


class AccuracyUnreachableError(RuntimeError):
    """No grid cell reaches the target accuracy; the grid must be extended."""


@dataclass(frozen=True)
class GridSpec:
    """An (MF, MT) sweep: value lists plus the fixed search configuration."""

    mf_values: tuple[int, ...]
    mt_values: tuple[int, ...]
    noise: float = 0.5
    strategy: str = "skc-walk"
    seed: int = 0
    repetitions: int = 1

    def __post_init__(self):
        object.__setattr__(self, "mf_values", tuple(self.mf_values))
        object.__setattr__(self, "mt_values", tuple(self.mt_values))
        for name, values in (("mf_values", self.mf_values),
                             ("mt_values", self.mt_values)):
            if not values:
                raise ValueError(f"{name} must be nonempty")
            if any(v < 1 for v in values):
                raise ValueError(f"{name} must be positive, got {values}")
            if any(a >= b for a, b in zip(values, values[1:])):
                raise ValueError(f"{name} must be strictly ascending, got {values}")
        if not 0.0 <= self.noise <= 1.0:
            raise ValueError(f"noise must be in [0, 1], got {self.noise}")
        if self.strategy not in STRATEGIES:
            raise ValueError(
                f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be an unsigned 64-bit value, got {self.seed}")
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")


@dataclass(frozen=True)
class CellResult:
    """Aggregates for one (MF, MT) cell over n runs.

    mean_flips and mean_time are arithmetic means per run; failed runs
    contribute their full MT*MF expenditure, matching expected-cost use.
    """

    mf: int
    mt: int
    n: int
    accuracy: float
    mean_flips: float
    mean_time: float


@dataclass(frozen=True)
class AccuracyTable:
    dataset_id: str
    grid: GridSpec
    cells: tuple[CellResult, ...]


@dataclass(frozen=True)
class AccuracyEstimate:
    fraction: float
    outcomes: tuple[SearchOutcome, ...]


@dataclass(frozen=True)
class RelativeRuntime:
    """Cheapest qualifying cell for a target accuracy.

    t_a_flips is the minimum mean_flips among cells with accuracy >= target
    (cell and its accuracy reported); t_a_time is the minimum mean_time over
    the same qualifying set, which may come from a different cell.
    """

    accuracy_target: float
    t_a_flips: float
    t_a_time: float
    mf: int
    mt: int
    achieved_accuracy: float


@dataclass(frozen=True)
class ScalePoint:
    size: int
    runtime: RelativeRuntime


def _require_certified(dataset: Dataset) -> None:
    if not dataset.certified_satisfiable:
        raise ValueError(
            "dataset is not certified satisfiable; accuracy over possibly "
            "unsatisfiable instances is undefined")


def _solve_task(task) -> SearchOutcome:
    formula, params = task
    return solve(formula, params)


def _run_cell(dataset: Dataset, mf: int, mt: int, noise: float, strategy: str,
              seed: int, repetitions: int, jobs: int | None,
              time_model: float | None) -> tuple[CellResult, tuple[SearchOutcome, ...]]:
    def tasks() -> Iterator[tuple]:
        for index, inst in enumerate(dataset.instances):
            for rep in range(repetitions):
                run_seed = substream(seed, mf, mt, index, rep)
                yield inst.formula, SearchParams(mt, mf, noise, strategy, run_seed)

    outcomes = tuple(ordered_map(_solve_task, tasks(), jobs))
    n = len(outcomes)
    solved = sum(1 for o in outcomes if o.solved)
    total_flips = sum(o.total_flips for o in outcomes)
    if time_model is not None:
        total_time = total_flips * time_model
    else:
        total_time = math.fsum(o.elapsed_seconds for o in outcomes)
    cell = CellResult(mf=mf, mt=mt, n=n, accuracy=solved / n,
                      mean_flips=total_flips / n, mean_time=total_time / n)
    return cell, outcomes


def estimate_accuracy(dataset: Dataset, params: SearchParams,
                      repetitions: int = 1,
                      jobs: int | None = None) -> AccuracyEstimate:
    """Fraction of instances solved under the per-instance seed schedule.

    Runs exactly like the (params.max_flips, params.max_tries) cell of a grid
    seeded with params.seed, so a 1x1 grid sweep and this function agree.
    Refuses datasets that are not certified satisfiable.
    """
    _require_certified(dataset)
    cell, outcomes = _run_cell(dataset, params.max_flips, params.max_tries,
                               params.noise, params.strategy, params.seed,
                               repetitions, jobs, None)
    return AccuracyEstimate(cell.accuracy, outcomes)


def run_grid(dataset: Dataset, grid: GridSpec, jobs: int | None = None,
             progress: Callable[[int, int], None] | None = None,
             time_model: float | None = None) -> AccuracyTable:
    """One CellResult per (MF, MT) combination, cells in mf-major order."""
    _require_certified(dataset)
    cells = []
    total = len(grid.mf_values) * len(grid.mt_values)
    for mf in grid.mf_values:
        for mt in grid.mt_values:
            cell, _ = _run_cell(dataset, mf, mt, grid.noise, grid.strategy,
                                grid.seed, grid.repetitions, jobs, time_model)
            cells.append(cell)
            if progress is not None:
                progress(len(cells), total)
    return AccuracyTable(dataset.describe(), grid, tuple(cells))


def estimate_relative_runtime(table: AccuracyTable,
                              accuracy: float) -> RelativeRuntime:
    """Cheapest cell meeting the accuracy target; error when none does.

    Among qualifying cells the minimum mean_flips decides (ties to the lowest
    (mf, mt), making the result invariant under cell reordering); the minimum
    mean_time over the same set rides along.
    """
    if not table.cells:
        raise ValueError("table has no cells")
    if not 0.0 <= accuracy <= 1.0:
        raise ValueError(f"accuracy target must be in [0, 1], got {accuracy}")
    qualifying = [c for c in table.cells if c.accuracy >= accuracy]
    if not qualifying:
        best = max(table.cells, key=lambda c: c.accuracy)
        raise AccuracyUnreachableError(
            f"accuracy {accuracy} unreachable on this grid (best "
            f"{best.accuracy} at mf={best.mf} mt={best.mt})")
    cheapest = min(qualifying, key=lambda c: (c.mean_flips, c.mf, c.mt))
    t_a_time = min(c.mean_time for c in qualifying)
    return RelativeRuntime(accuracy_target=accuracy,
                           t_a_flips=cheapest.mean_flips, t_a_time=t_a_time,
                           mf=cheapest.mf, mt=cheapest.mt,
                           achieved_accuracy=cheapest.accuracy)


def scaling_experiment(sizes: Sequence[int],
                       dataset_for: Callable[[int], Dataset],
                       grid_for: Callable[[int], GridSpec] | GridSpec,
                       accuracy: float, jobs: int | None = None,
                       time_model: float | None = None,
                       progress: Callable[[int, AccuracyTable], None] | None = None,
                       ) -> tuple[ScalePoint, ...]:
    """Relative runtime per size over provided datasets and grids.

    An unreachable accuracy at any size propagates as
    AccuracyUnreachableError with the size named. progress, when given, is
    called with (size, finished table) after each size.
    """
    points = []
    for size in sizes:
        dataset = dataset_for(size)
        grid = grid_for if isinstance(grid_for, GridSpec) else grid_for(size)
        table = run_grid(dataset, grid, jobs=jobs, time_model=time_model)
        if progress is not None:
            progress(size, table)
        try:
            runtime = estimate_relative_runtime(table, accuracy)
        except AccuracyUnreachableError as exc:
            raise AccuracyUnreachableError(f"size {size}: {exc}") from exc
        points.append(ScalePoint(size, runtime))
    return tuple(points)


REPORT_COLUMNS = ("mf", "mt", "n", "accuracy", "mean_flips", "mean_time")


def report_text(table: AccuracyTable) -> str:
    """The table as CSV text with the stable column order.

    Rows are sorted by (mf, mt) and floats are written with repr, so the text
    is byte-stable for identical results and parses back exactly.
    """
    lines = [",".join(REPORT_COLUMNS)]
    for c in sorted(table.cells, key=lambda c: (c.mf, c.mt)):
        lines.append(f"{c.mf},{c.mt},{c.n},{c.accuracy!r},"
                     f"{c.mean_flips!r},{c.mean_time!r}")
    return "\n".join(lines) + "\n"


def emit_report(table: AccuracyTable, path: str | Path) -> Path:
    """Write report_text to a file."""
    path = Path(path)
    path.write_text(report_text(table), encoding="ascii")
    return path


def parse_report(path: str | Path) -> tuple[CellResult, ...]:
    """Read emit_report output back; exact inverse for the cell values."""
    path = Path(path)
    lines = path.read_text(encoding="ascii").splitlines()
    if not lines or tuple(lines[0].split(",")) != REPORT_COLUMNS:
        raise ValueError(f"{path}: missing or unexpected header")
    cells = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(REPORT_COLUMNS):
            raise ValueError(f"{path}: line {lineno}: expected "
                             f"{len(REPORT_COLUMNS)} fields, got {len(parts)}")
        cells.append(CellResult(mf=int(parts[0]), mt=int(parts[1]),
                                n=int(parts[2]), accuracy=float(parts[3]),
                                mean_flips=float(parts[4]),
                                mean_time=float(parts[5])))
    return tuple(cells)


def emit_series(points: Iterable[ScalePoint], path: str | Path) -> Path:
    """Write "size log10(t_a_flips)" lines, ascending by size, for plotting."""
    rows = sorted(points, key=lambda p: p.size)
    lines = []
    for point in rows:
        flips = point.runtime.t_a_flips
        if flips <= 0:
            raise ValueError(f"size {point.size}: nonpositive flips {flips} "
                             "cannot go on a log scale")
        lines.append(f"{point.size} {math.log10(flips)!r}")
    path = Path(path)
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    return path
