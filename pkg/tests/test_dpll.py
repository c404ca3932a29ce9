"""Complete solver: unit propagation, satisfiability decisions, model counts.

Ground truth comes from two independent oracles: a naive clause-scanning
fixpoint for unit propagation, and the exhaustive truth-table count from
conftest for decisions and counts.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import truth_table_count, truth_table_sat
from gsatlab import (
    CountResult,
    Formula,
    PartialAssignment,
    count_models,
    decide_sat,
    is_satisfying,
    random_3cnf,
    rng_for,
    unit_propagate,
)
from test_cnf import formulas


def naive_fixpoint(formula, assigned):
    """Repeatedly scan clauses for forced literals; None means conflict."""
    values = dict(assigned)
    while True:
        forced = None
        for clause in formula.clauses:
            unassigned = [lit for lit in clause if abs(lit) not in values]
            satisfied = any(values.get(abs(lit)) == (lit > 0) for lit in clause)
            if satisfied:
                continue
            if not unassigned:
                return None
            if len(unassigned) == 1:
                forced = unassigned[0]
                break
        if forced is None:
            return values
        values[abs(forced)] = forced > 0


# -------------------------------------------------------- PartialAssignment

def test_partial_assignment_records_trail():
    p = PartialAssignment(3)
    assert p.num_assigned() == 0
    p.assign(2, True, decision=True)
    p.assign(1, False)
    assert p.value(2) is True
    assert p.value(1) is False
    assert p.value(3) is None
    assert p.num_assigned() == 2
    assert p.trail == [(2, True), (1, False)]


def test_partial_assignment_rejects_bad_use():
    p = PartialAssignment(2)
    with pytest.raises(ValueError):
        p.assign(0, True)
    with pytest.raises(ValueError):
        p.assign(3, True)
    p.assign(1, True)
    with pytest.raises(ValueError):
        p.assign(1, False)


# ----------------------------------------------------------- unit_propagate

def test_unit_propagate_follows_chain():
    f = Formula(4, ((1,), (-1, 2), (-2, 3), (-3, 4)))
    p = PartialAssignment(4)
    assert unit_propagate(f, p)
    assert [p.value(v) for v in (1, 2, 3, 4)] == [True, True, True, True]


def test_unit_propagate_detects_conflict():
    f = Formula(2, ((1,), (-1, 2), (-1, -2)))
    p = PartialAssignment(2)
    assert not unit_propagate(f, p)


def test_unit_propagate_leaves_unforced_variables_alone():
    f = Formula(3, ((1, 2), (2, 3)))
    p = PartialAssignment(3)
    assert unit_propagate(f, p)
    assert p.num_assigned() == 0


def test_unit_propagate_extends_seed_assignment():
    f = Formula(3, ((1, 2), (-2, 3)))
    p = PartialAssignment(3)
    p.assign(1, False, decision=True)
    assert unit_propagate(f, p)
    assert p.value(2) is True
    assert p.value(3) is True


@settings(deadline=None)
@given(formulas(max_vars=7, max_clauses=14), st.randoms(use_true_random=False))
def test_unit_propagate_matches_naive_fixpoint(f, pyrandom):
    seed_vars = [v for v in range(1, f.num_vars + 1) if pyrandom.random() < 0.3]
    seed = {v: pyrandom.random() < 0.5 for v in seed_vars}
    partial = PartialAssignment(f.num_vars)
    for v, value in seed.items():
        partial.assign(v, value, decision=True)

    expected = naive_fixpoint(f, seed)
    ok = unit_propagate(f, partial)
    if expected is None:
        assert not ok
    else:
        assert ok
        got = {v: partial.value(v) for v in range(1, f.num_vars + 1)
               if partial.value(v) is not None}
        assert got == expected


# --------------------------------------------------------------- decide_sat

def test_decide_sat_trivial_cases():
    assert decide_sat(Formula(0, ())) == {}
    assert decide_sat(Formula(2, ((),))) is None
    model = decide_sat(Formula(2, ((1,), (-1, 2))))
    assert model == {1: True, 2: True}


def test_decide_sat_unsat_core():
    f = Formula(2, ((1, 2), (1, -2), (-1, 2), (-1, -2)))
    assert decide_sat(f) is None


@settings(deadline=None, max_examples=150)
@given(formulas(max_vars=10, max_clauses=30))
def test_decide_sat_matches_truth_table(f):
    model = decide_sat(f)
    if model is None:
        assert not truth_table_sat(f)
    else:
        assert is_satisfying(f, model)
        assert set(model) == set(range(1, f.num_vars + 1))


def test_decide_sat_on_random_3cnf_mixture():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(5, 14)
        f = random_3cnf(n, rng.choice([3.0, 4.25, 6.0]), rng)
        assert (decide_sat(f) is not None) == truth_table_sat(f)


# ------------------------------------------------------------- count_models

def test_count_models_basics():
    assert count_models(Formula(0, ())) == CountResult(1, False)
    assert count_models(Formula(2, ())) == CountResult(4, False)
    assert count_models(Formula(2, ((),))) == CountResult(0, False)
    # A single positive unit over three variables leaves two variables free.
    assert count_models(Formula(3, ((1,),))) == CountResult(4, False)


def test_count_models_rejects_bad_cap():
    with pytest.raises(ValueError):
        count_models(Formula(1, ()), cap=0)


def test_count_models_cap_semantics():
    f = Formula(3, ())  # exactly 8 models
    assert count_models(f, cap=8) == CountResult(8, False)
    assert count_models(f, cap=7) == CountResult(7, True)
    assert count_models(f, cap=1) == CountResult(1, True)
    assert count_models(f, cap=100) == CountResult(8, False)


@settings(deadline=None, max_examples=150)
@given(formulas(max_vars=10, max_clauses=30))
def test_count_models_matches_truth_table(f):
    assert count_models(f) == CountResult(truth_table_count(f), False)


@settings(deadline=None, max_examples=60)
@given(formulas(max_vars=8, max_clauses=16),
       st.integers(min_value=1, max_value=300))
def test_count_models_cap_agrees_with_exact(f, cap):
    exact = truth_table_count(f)
    result = count_models(f, cap=cap)
    if exact > cap:
        assert result == CountResult(cap, True)
    else:
        assert result == CountResult(exact, False)


def test_count_models_on_random_3cnf_mixture():
    rng = random.Random(6)
    for _ in range(30):
        n = rng.randint(5, 13)
        f = random_3cnf(n, rng.choice([3.0, 4.25, 6.0]), rng)
        assert count_models(f).count == truth_table_count(f)


def test_count_models_ignores_pure_literal_shortcuts():
    # A formula whose pure literals could tempt an unsound counting shortcut:
    # x3 appears only positively, yet assignments with x3 false still count.
    f = Formula(3, ((1, 3), (2, 3)))
    assert count_models(f).count == truth_table_count(f) == 5
