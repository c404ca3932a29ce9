"""Shared fixtures and oracles for the test suite.

The expensive certified datasets are session-scoped so the acceptance tests
that share them (scaling, spot check, soundness sweep) build them once. The
truth-table oracle enumerates all 2^n assignments with bit-parallel integer
arithmetic, giving an independent ground truth for satisfiability and model
counts on small formulas.
"""

import os

import pytest

from gsatlab import (
    DatasetSpec,
    Formula,
    build_dataset,
    crossover_ratio,
)

JOBS = min(8, os.cpu_count() or 1)

# One line per acceptance criterion, echoed at the end of the run so the
# verdicts are visible without -s (test_acceptance.py fills this in).
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# --------------------------------------------------------------------------
# Exhaustive truth-table oracle (independent of the solvers under test).
#
# Bit b of a column integer is variable v's value in assignment number b,
# reading variable v as bit v-1 of the assignment number. A clause's mask is
# the OR of its literal columns (complemented for negative literals); the
# formula's mask is the AND over clauses; its popcount is the model count.
# --------------------------------------------------------------------------

def _column(var_index: int, num_vars: int) -> int:
    width = 1 << num_vars
    period = 1 << (var_index + 1)
    ones = ((1 << (1 << var_index)) - 1) << (1 << var_index)
    x = ones
    while period < width:
        x |= x << period
        period <<= 1
    return x


def truth_table_count(formula: Formula) -> int:
    """Model count by exhaustive enumeration; formulas up to 20 variables."""
    n = formula.num_vars
    assert n <= 20, "exhaustive oracle is exponential; keep n small"
    full = (1 << (1 << n)) - 1
    acc = full
    for clause in formula.clauses:
        mask = 0
        for lit in clause:
            col = _column(abs(lit) - 1, n)
            mask |= col if lit > 0 else full & ~col
        acc &= mask
        if not acc:
            return 0
    return acc.bit_count()


def truth_table_sat(formula: Formula) -> bool:
    return truth_table_count(formula) > 0


# --------------------------------------------------------------------------
# Session-scoped datasets shared by the acceptance criteria.
# --------------------------------------------------------------------------

CROSSOVER_MASTER_SEED = 21
BUCKET_SMALL_SEED = 101
BUCKET_BIG_SEED = 202


@pytest.fixture(scope="session")
def crossover_datasets():
    """Certified satisfiable datasets at the crossover ratio, by size."""
    datasets = {}
    for num_vars in (50, 75, 100):
        count = 300 if num_vars == 100 else 200
        spec = DatasetSpec(family="random3cnf", count=count,
                           seed=CROSSOVER_MASTER_SEED, num_vars=num_vars,
                           ratio=crossover_ratio(num_vars),
                           filter="satisfiable-only")
        datasets[num_vars] = build_dataset(spec, jobs=JOBS)
    return datasets


@pytest.fixture(scope="session")
def bucket_small():
    """100 instances at N=50 with model counts in (1, 25]."""
    spec = DatasetSpec(family="random3cnf", count=100, seed=BUCKET_SMALL_SEED,
                       num_vars=50, ratio=4.25, filter="count-range",
                       lo=1, hi=25)
    return build_dataset(spec, jobs=JOBS)


@pytest.fixture(scope="session")
def bucket_big():
    """100 instances at N=50 with model counts above 1600."""
    spec = DatasetSpec(family="random3cnf", count=100, seed=BUCKET_BIG_SEED,
                       num_vars=50, ratio=4.25, filter="count-range",
                       lo=1600, hi=None)
    return build_dataset(spec, jobs=JOBS)


@pytest.fixture(scope="session")
def coloring_datasets():
    """2-tree coloring datasets: 50 encodings per (vertices, colors) pair."""
    datasets = {}
    for num_vertices in (20, 30, 40):
        for num_colors in (3, 4):
            spec = DatasetSpec(family="coloring", count=50, seed=5,
                               num_vertices=num_vertices,
                               num_colors=num_colors)
            datasets[num_vertices, num_colors] = build_dataset(spec)
    return datasets
