"""Randomized local search for CNF satisfiability: tries of random flips.

A solve call runs up to max_tries restarts; each try draws a uniform random
total assignment from its own derived RNG substream, then applies up to
max_flips single-variable flips chosen by one of two strategies:

- gsat-walk: with probability p, a random variable from a random unsatisfied
  clause; otherwise a variable whose flip minimizes the resulting number of
  unsatisfied clauses, over all variables, ties uniform.
- skc-walk: a random unsatisfied clause; a break-0 variable from it when one
  exists ("freebie"), otherwise with probability p a random variable of the
  clause, else a minimum-break variable of it, ties uniform.

State is maintained incrementally: per-clause true-literal counts, the set of
unsatisfied clauses (indexed for O(1) membership and uniform pick), and
per-variable break counts (clauses a flip would falsify) plus make counts
(clauses a flip would satisfy), so one flip costs O(occurrences of the
variable) and a greedy scan costs O(num_vars).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .cnf import Assignment, Formula, is_satisfying
from .rng import rng_for

STRATEGIES = ("gsat-walk", "skc-walk")


@dataclass(frozen=True)
class SearchParams:
    """Knobs for one solve call: tries, flips per try, noise, strategy, seed."""

    max_tries: int
    max_flips: int
    noise: float = 0.5
    strategy: str = "skc-walk"
    seed: int = 0

    def __post_init__(self):
        if self.max_tries < 1:
            raise ValueError(f"max_tries must be >= 1, got {self.max_tries}")
        if self.max_flips < 0:
            raise ValueError(f"max_flips must be >= 0, got {self.max_flips}")
        if not 0.0 <= self.noise <= 1.0:
            raise ValueError(f"noise must be in [0, 1], got {self.noise}")
        if self.strategy not in STRATEGIES:
            raise ValueError(
                f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be an unsigned 64-bit value, got {self.seed}")


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a solve call; model is None unless solved."""

    solved: bool
    model: dict[int, bool] | None
    tries_used: int
    total_flips: int
    elapsed_seconds: float


class SearchState:
    """Incremental flip-loop state for one formula.

    Construction builds the literal occurrence lists once; reset() points the
    state at a fresh assignment in O(num_vars + total literals). values[v]
    holds the current truth value of variable v (slot 0 unused).
    """

    def __init__(self, formula: Formula):
        self.formula = formula
        self.num_vars = formula.num_vars
        self.clauses = formula.clauses
        n = formula.num_vars
        occ_pos: list[list[int]] = [[] for _ in range(n + 1)]
        occ_neg: list[list[int]] = [[] for _ in range(n + 1)]
        for ci, clause in enumerate(formula.clauses):
            for lit in clause:
                (occ_pos if lit > 0 else occ_neg)[abs(lit)].append(ci)
        self.occ_pos = occ_pos
        self.occ_neg = occ_neg
        m = len(formula.clauses)
        self.values: list[bool] = [False] * (n + 1)
        self.n_true = [0] * m
        self.break_count = [0] * (n + 1)
        self.make_count = [0] * (n + 1)
        self.unsat_list: list[int] = []
        self.unsat_pos = [-1] * m

    @classmethod
    def from_assignment(cls, formula: Formula, assignment: Assignment) -> "SearchState":
        state = cls(formula)
        values = [False] * (formula.num_vars + 1)
        for v in range(1, formula.num_vars + 1):
            values[v] = bool(assignment[v])
        state.reset(values)
        return state

    def reset(self, values: list[bool]) -> None:
        """Recompute all counters for a new total assignment.

        values must have length num_vars + 1 with slot 0 ignored; the list is
        adopted, not copied.
        """
        if len(values) != self.num_vars + 1:
            raise ValueError("values must have length num_vars + 1")
        self.values = values
        n_true = self.n_true
        break_count = self.break_count
        make_count = self.make_count
        for v in range(self.num_vars + 1):
            break_count[v] = 0
            make_count[v] = 0
        unsat_list = self.unsat_list
        unsat_list.clear()
        unsat_pos = self.unsat_pos
        for ci, clause in enumerate(self.clauses):
            t = 0
            supporter = 0
            for lit in clause:
                if values[lit] if lit > 0 else not values[-lit]:
                    t += 1
                    supporter = abs(lit)
            n_true[ci] = t
            if t == 0:
                unsat_pos[ci] = len(unsat_list)
                unsat_list.append(ci)
                for lit in clause:
                    make_count[abs(lit)] += 1
            else:
                unsat_pos[ci] = -1
                if t == 1:
                    break_count[supporter] += 1

    @property
    def num_unsat(self) -> int:
        return len(self.unsat_list)

    def unsat_clauses(self) -> set[int]:
        """Snapshot of the unsatisfied clause indices."""
        return set(self.unsat_list)

    def assignment(self) -> dict[int, bool]:
        """Snapshot of the current assignment as a mapping."""
        values = self.values
        return {v: values[v] for v in range(1, self.num_vars + 1)}

    def apply_flip(self, var: int) -> None:
        """Toggle var, updating all counters incrementally."""
        values = self.values
        old = values[var]
        clauses = self.clauses
        n_true = self.n_true
        break_count = self.break_count
        make_count = self.make_count
        unsat_list = self.unsat_list
        unsat_pos = self.unsat_pos
        # Clauses where var's literal turns true; all scans read old values.
        for c in (self.occ_neg[var] if old else self.occ_pos[var]):
            t = n_true[c]
            n_true[c] = t + 1
            if t == 0:
                pos = unsat_pos[c]
                last = unsat_list[-1]
                unsat_list[pos] = last
                unsat_pos[last] = pos
                unsat_list.pop()
                unsat_pos[c] = -1
                for lit in clauses[c]:
                    make_count[lit if lit > 0 else -lit] -= 1
                break_count[var] += 1
            elif t == 1:
                # The lone true literal loses sole-supporter status.
                for lit in clauses[c]:
                    w = lit if lit > 0 else -lit
                    if w != var and values[w] == (lit > 0):
                        break_count[w] -= 1
                        break
        # Clauses where var's literal turns false.
        for c in (self.occ_pos[var] if old else self.occ_neg[var]):
            t = n_true[c]
            n_true[c] = t - 1
            if t == 1:
                unsat_pos[c] = len(unsat_list)
                unsat_list.append(c)
                for lit in clauses[c]:
                    make_count[lit if lit > 0 else -lit] += 1
                break_count[var] -= 1
            elif t == 2:
                # The surviving true literal becomes the sole supporter.
                for lit in clauses[c]:
                    w = lit if lit > 0 else -lit
                    if w != var and values[w] == (lit > 0):
                        break_count[w] += 1
                        break
        values[var] = not old


def pick_flip_gsat_walk(state: SearchState, noise: float, rng) -> int:
    """Walk step with probability noise, else best flip over all variables."""
    unsat_list = state.unsat_list
    if not unsat_list:
        raise ValueError("no unsatisfied clauses to pick from")
    if rng.random() < noise:
        clause = state.clauses[unsat_list[rng.randrange(len(unsat_list))]]
        lit = clause[rng.randrange(len(clause))]
        return lit if lit > 0 else -lit
    break_count = state.break_count
    make_count = state.make_count
    best_delta = None
    ties: list[int] = []
    for v in range(1, state.num_vars + 1):
        delta = break_count[v] - make_count[v]
        if best_delta is None or delta < best_delta:
            best_delta = delta
            ties = [v]
        elif delta == best_delta:
            ties.append(v)
    if len(ties) == 1:
        return ties[0]
    return ties[rng.randrange(len(ties))]


def pick_flip_skc(state: SearchState, noise: float, rng) -> int:
    """Freebie if available, else noise-or-min-break within one unsat clause."""
    unsat_list = state.unsat_list
    if not unsat_list:
        raise ValueError("no unsatisfied clauses to pick from")
    clause = state.clauses[unsat_list[rng.randrange(len(unsat_list))]]
    break_count = state.break_count
    zeros = [lit for lit in clause if break_count[lit if lit > 0 else -lit] == 0]
    if zeros:
        lit = zeros[0] if len(zeros) == 1 else zeros[rng.randrange(len(zeros))]
        return lit if lit > 0 else -lit
    if rng.random() < noise:
        lit = clause[rng.randrange(len(clause))]
        return lit if lit > 0 else -lit
    best_break = None
    ties: list[int] = []
    for lit in clause:
        v = lit if lit > 0 else -lit
        b = break_count[v]
        if best_break is None or b < best_break:
            best_break = b
            ties = [v]
        elif b == best_break:
            ties.append(v)
    if len(ties) == 1:
        return ties[0]
    return ties[rng.randrange(len(ties))]


_PICKERS = {"gsat-walk": pick_flip_gsat_walk, "skc-walk": pick_flip_skc}


def solve(formula: Formula, params: SearchParams) -> SearchOutcome:
    """Run the configured local search; incomplete, so failure proves nothing.

    Deterministic in (formula, params): try i draws from the substream
    derived from (seed, i), so outcomes for a given try do not depend on
    max_tries or on other tries. A solved outcome's model is verified before
    being returned; total_flips counts applied flips only and a try that is
    satisfied by its initial assignment contributes zero.
    """
    start = time.perf_counter()
    state = SearchState(formula)
    n = formula.num_vars
    pick = _PICKERS[params.strategy]
    max_flips = params.max_flips
    noise = params.noise
    total_flips = 0
    for try_index in range(params.max_tries):
        rng = rng_for(params.seed, try_index)
        bits = rng.getrandbits(n) if n else 0
        values = [False] * (n + 1)
        for v in range(1, n + 1):
            values[v] = bool((bits >> (v - 1)) & 1)
        state.reset(values)
        flips = 0
        while state.unsat_list and flips < max_flips:
            state.apply_flip(pick(state, noise, rng))
            flips += 1
        total_flips += flips
        if not state.unsat_list:
            model = state.assignment()
            assert is_satisfying(formula, model)
            return SearchOutcome(True, model, try_index + 1, total_flips,
                                 time.perf_counter() - start)
    return SearchOutcome(False, None, params.max_tries, total_flips,
                         time.perf_counter() - start)
