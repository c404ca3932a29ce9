"""Complete Davis-Putnam style satisfiability decision and model counting.

Plain recursive DPLL over per-clause true/false literal counters, with an
incrementally maintained set of not-yet-satisfied clauses. Branching picks
the unassigned variable with the most occurrences in the shortest active
clauses (ties to the lowest index). Pure-literal elimination is used for
satisfiability decisions only; it is unsound for counting and stays off
there, where both polarities of every branch variable are explored and a
clause-free residual with k unassigned variables contributes 2**k models.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .cnf import Assignment, Formula, is_satisfying


@dataclass(frozen=True)
class CountResult:
    """Model count, exact unless capped.

    capped=False: count is the exact number of models. capped=True: the
    search stopped once the running total exceeded the cap; count equals the
    cap and the exact count is strictly larger.
    """

    count: int
    capped: bool


class PartialAssignment:
    """Three-valued assignment with an ordered trail.

    values[v] is True/False/None for v in 1..num_vars (slot 0 unused). The
    trail lists (var, is_decision) in assignment order; each variable appears
    at most once and unassignment pops in reverse order.
    """

    def __init__(self, num_vars: int):
        self.num_vars = num_vars
        self.values: list[bool | None] = [None] * (num_vars + 1)
        self.trail: list[tuple[int, bool]] = []

    def value(self, var: int) -> bool | None:
        return self.values[var]

    def assign(self, var: int, value: bool, decision: bool = False) -> None:
        if not 1 <= var <= self.num_vars:
            raise ValueError(f"variable {var} out of range 1..{self.num_vars}")
        if self.values[var] is not None:
            raise ValueError(f"variable {var} already assigned")
        self.values[var] = value
        self.trail.append((var, decision))

    def num_assigned(self) -> int:
        return len(self.trail)


class _CapExceeded(Exception):
    pass


class _Engine:
    """Counter-based DPLL state shared by propagation, decision, and counting."""

    def __init__(self, formula: Formula, partial: PartialAssignment | None = None,
                 use_pure: bool = False):
        self.formula = formula
        self.use_pure = use_pure
        clauses = formula.clauses
        n = formula.num_vars
        m = len(clauses)
        self.clauses = clauses
        self.num_vars = n
        occ_pos: list[list[int]] = [[] for _ in range(n + 1)]
        occ_neg: list[list[int]] = [[] for _ in range(n + 1)]
        for ci, clause in enumerate(clauses):
            for lit in clause:
                (occ_pos if lit > 0 else occ_neg)[abs(lit)].append(ci)
        self.occ_pos = occ_pos
        self.occ_neg = occ_neg
        self.n_true = [0] * m
        self.n_false = [0] * m
        self.length = [len(c) for c in clauses]
        # Clauses with no true literal yet, as a swap-remove indexed set.
        self.active = list(range(m))
        self.active_pos = list(range(m))
        self.units: deque[int] = deque()
        self.partial = partial if partial is not None else PartialAssignment(n)
        self.conflict = False

        # Replay assignments already present in the partial, then look for
        # clauses that are falsified or unit from the start.
        for var, _ in self.partial.trail:
            value = self.partial.values[var]
            assert value is not None
            if not self._apply(var, value):
                self.conflict = True
                return
        n_true = self.n_true
        n_false = self.n_false
        length = self.length
        for c in range(m):
            if n_true[c] == 0:
                rem = length[c] - n_false[c]
                if rem == 0:
                    self.conflict = True
                    return
                if rem == 1:
                    self.units.append(c)

    # -- counter maintenance ------------------------------------------------

    def _apply(self, var: int, value: bool) -> bool:
        """Update counters for var=value. False on an immediate conflict."""
        n_true = self.n_true
        n_false = self.n_false
        active = self.active
        active_pos = self.active_pos
        for c in (self.occ_pos[var] if value else self.occ_neg[var]):
            t = n_true[c]
            n_true[c] = t + 1
            if t == 0:
                # Clause just got satisfied: drop from the active set.
                pos = active_pos[c]
                last = active[-1]
                active[pos] = last
                active_pos[last] = pos
                active.pop()
                active_pos[c] = -1
        ok = True
        length = self.length
        units = self.units
        for c in (self.occ_neg[var] if value else self.occ_pos[var]):
            f = n_false[c] + 1
            n_false[c] = f
            if n_true[c] == 0:
                rem = length[c] - f
                if rem == 0:
                    ok = False
                elif rem == 1:
                    units.append(c)
        return ok

    def _assign(self, var: int, value: bool, decision: bool) -> bool:
        partial = self.partial
        partial.values[var] = value
        partial.trail.append((var, decision))
        return self._apply(var, value)

    def _undo_to(self, mark: int) -> None:
        partial = self.partial
        trail = partial.trail
        values = partial.values
        n_true = self.n_true
        n_false = self.n_false
        active = self.active
        active_pos = self.active_pos
        while len(trail) > mark:
            var, _ = trail.pop()
            value = values[var]
            values[var] = None
            for c in (self.occ_pos[var] if value else self.occ_neg[var]):
                t = n_true[c] - 1
                n_true[c] = t
                if t == 0:
                    active_pos[c] = len(active)
                    active.append(c)
            for c in (self.occ_neg[var] if value else self.occ_pos[var]):
                n_false[c] -= 1
        self.units.clear()

    # -- propagation and heuristics ------------------------------------------

    def propagate(self) -> bool:
        """Run unit propagation to fixpoint. False on conflict."""
        units = self.units
        n_true = self.n_true
        values = self.partial.values
        clauses = self.clauses
        while units:
            c = units.popleft()
            if n_true[c] > 0:
                continue
            unit_lit = 0
            for lit in clauses[c]:
                if values[abs(lit)] is None:
                    unit_lit = lit
                    break
            if unit_lit == 0:
                return False
            if not self._assign(abs(unit_lit), unit_lit > 0, False):
                return False
        return True

    def _eliminate_pures(self) -> bool:
        """Assign pure literals until none remain. decide_sat only."""
        values = self.partial.values
        while True:
            seen_pos: set[int] = set()
            seen_neg: set[int] = set()
            for c in self.active:
                for lit in self.clauses[c]:
                    var = abs(lit)
                    if values[var] is None:
                        (seen_pos if lit > 0 else seen_neg).add(var)
            pures = [(v, True) for v in seen_pos - seen_neg]
            pures += [(v, False) for v in seen_neg - seen_pos]
            if not pures:
                return True
            for var, value in pures:
                if values[var] is None:
                    if not self._assign(var, value, False):
                        return False
            if not self.propagate():
                return False

    def _pick_branch(self) -> tuple[int, bool]:
        """MOMS: most occurrences in minimum-length active clauses.

        Ties go to the lowest variable index; polarity follows the majority
        among those clauses (ties to True).
        """
        n_false = self.n_false
        length = self.length
        active = self.active
        min_len = min(length[c] - n_false[c] for c in active)
        values = self.partial.values
        score: dict[int, int] = {}
        pos_count: dict[int, int] = {}
        for c in active:
            if length[c] - n_false[c] != min_len:
                continue
            for lit in self.clauses[c]:
                var = abs(lit)
                if values[var] is None:
                    score[var] = score.get(var, 0) + 1
                    if lit > 0:
                        pos_count[var] = pos_count.get(var, 0) + 1
        var, occurrences = max(score.items(), key=lambda kv: (kv[1], -kv[0]))
        return var, 2 * pos_count.get(var, 0) >= occurrences

    # -- search ---------------------------------------------------------------

    def search_sat(self) -> bool:
        if not self.propagate():
            return False
        if self.use_pure and not self._eliminate_pures():
            return False
        if not self.active:
            return True
        var, value = self._pick_branch()
        mark = len(self.partial.trail)
        for branch_value in (value, not value):
            if self._assign(var, branch_value, True) and self.search_sat():
                return True
            self._undo_to(mark)
        return False

    def count(self, cap: int | None) -> CountResult:
        self._found = 0
        self._cap = cap
        try:
            self._count_rec()
        except _CapExceeded:
            assert cap is not None
            return CountResult(cap, True)
        return CountResult(self._found, False)

    def _count_rec(self) -> None:
        if not self.propagate():
            return
        if not self.active:
            self._found += 1 << (self.num_vars - len(self.partial.trail))
            if self._cap is not None and self._found > self._cap:
                raise _CapExceeded
            return
        var, value = self._pick_branch()
        mark = len(self.partial.trail)
        for branch_value in (value, not value):
            if self._assign(var, branch_value, True):
                self._count_rec()
            self._undo_to(mark)


def unit_propagate(formula: Formula, partial: PartialAssignment) -> bool:
    """Extend partial to the unit-propagation fixpoint, in place.

    Returns False iff some clause has all its literals false along the way
    (a conflict is a result, not an error); assignments made before the
    conflict remain on the trail.
    """
    engine = _Engine(formula, partial)
    if engine.conflict:
        return False
    return engine.propagate()


def decide_sat(formula: Formula) -> Assignment | None:
    """Complete satisfiability decision; a model or None (unsatisfiable).

    Any returned model is verified against the formula before being handed
    back; variables left free by the search are set to False.
    """
    engine = _Engine(formula, use_pure=True)
    if engine.conflict or not engine.search_sat():
        return None
    values = engine.partial.values
    model = {v: bool(values[v]) for v in range(1, formula.num_vars + 1)}
    assert is_satisfying(formula, model)
    return model


def count_models(formula: Formula, cap: int | None = None) -> CountResult:
    """Exact model count via exhaustive DPLL, optionally stopping at a cap.

    Branches on both polarities of every decision variable (pure-literal
    elimination stays off: it is unsound for counting). A branch whose
    residual has no active clauses and k unassigned variables contributes
    2**k. With a finite cap, the search stops as soon as the running count
    exceeds it and reports count=cap, capped=True.
    """
    if cap is not None and cap < 1:
        raise ValueError("cap must be positive")
    engine = _Engine(formula)
    if engine.conflict:
        return CountResult(0, False)
    return engine.count(cap)
