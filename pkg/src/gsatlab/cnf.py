"""CNF formulas in clausal form, assignments, and DIMACS interchange.

Literals are nonzero ints in DIMACS convention: ``v`` is the positive literal
of variable ``v`` (1-based), ``-v`` its negation. An assignment is a mapping
from every variable index 1..num_vars to a bool. Formulas are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

Clause = tuple[int, ...]
Assignment = Mapping[int, bool]


class DimacsError(ValueError):
    """Malformed DIMACS input; the message names the offending line."""


@dataclass(frozen=True)
class Formula:
    """A CNF formula over variables 1..num_vars.

    Clauses keep their generated literal order. A clause never mentions the
    same variable twice (no duplicated or tautological variables). Duplicate
    clauses are allowed; variables may go unused.
    """

    num_vars: int
    clauses: tuple[Clause, ...]
    comments: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        object.__setattr__(self, "comments", tuple(self.comments))
        if self.num_vars < 0:
            raise ValueError(f"negative variable count: {self.num_vars}")
        for i, clause in enumerate(self.clauses):
            seen = set()
            for lit in clause:
                if lit == 0:
                    raise ValueError(f"clause {i}: literal 0 is reserved")
                var = abs(lit)
                if var > self.num_vars:
                    raise ValueError(
                        f"clause {i}: variable {var} exceeds declared count {self.num_vars}"
                    )
                if var in seen:
                    raise ValueError(f"clause {i}: variable {var} occurs twice")
                seen.add(var)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def _check_total(formula: Formula, assignment: Assignment) -> None:
    for var in range(1, formula.num_vars + 1):
        if var not in assignment:
            raise ValueError(f"assignment does not cover variable {var}")


def is_satisfying(formula: Formula, assignment: Assignment) -> bool:
    """True iff every clause has at least one true literal under assignment.

    The assignment must be total over the formula's variables.
    """
    _check_total(formula, assignment)
    for clause in formula.clauses:
        if not any(assignment[abs(lit)] == (lit > 0) for lit in clause):
            return False
    return True


def num_unsatisfied(formula: Formula, assignment: Assignment) -> int:
    """Exact count of clauses with every literal false under assignment."""
    _check_total(formula, assignment)
    count = 0
    for clause in formula.clauses:
        if not any(assignment[abs(lit)] == (lit > 0) for lit in clause):
            count += 1
    return count


@dataclass(frozen=True)
class OccurrenceIndex:
    """Clause indices per literal: clause c is listed for l iff l is in c.

    ``pos[v]`` / ``neg[v]`` give the clauses containing literal v / -v,
    indexed by variable (entry 0 unused).
    """

    pos: tuple[tuple[int, ...], ...]
    neg: tuple[tuple[int, ...], ...]

    def clauses_of(self, lit: int) -> tuple[int, ...]:
        return self.pos[lit] if lit > 0 else self.neg[-lit]


def build_occurrence_index(formula: Formula) -> OccurrenceIndex:
    pos: list[list[int]] = [[] for _ in range(formula.num_vars + 1)]
    neg: list[list[int]] = [[] for _ in range(formula.num_vars + 1)]
    for ci, clause in enumerate(formula.clauses):
        for lit in clause:
            (pos if lit > 0 else neg)[abs(lit)].append(ci)
    return OccurrenceIndex(
        pos=tuple(tuple(x) for x in pos),
        neg=tuple(tuple(x) for x in neg),
    )


def parse_dimacs(text: str) -> Formula:
    """Parse DIMACS CNF text into a Formula.

    Accepts "c" comment lines anywhere (collected, in order) and clauses
    spanning or sharing lines, each terminated by 0. The clause count must
    match the header exactly; literals must stay in the declared variable
    range; a clause mentioning a variable twice (x with x, or x with -x) is
    rejected. Errors name the offending 1-based line.
    """
    comments: list[str] = []
    num_vars = -1
    declared_clauses = -1
    header_line = 0
    clauses: list[list[int]] = []
    current: list[int] = []
    clause_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[2:] if line.startswith("c ") else line[1:])
            continue
        if line.startswith("p"):
            if num_vars >= 0:
                raise DimacsError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, declared_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if num_vars < 0 or declared_clauses < 0:
                raise DimacsError(f"line {lineno}: negative counts in header")
            header_line = lineno
            continue
        if num_vars < 0:
            raise DimacsError(f"line {lineno}: clause data before header")
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {token!r}") from None
            if lit == 0:
                if len(clauses) == declared_clauses:
                    raise DimacsError(
                        f"line {lineno}: more clauses than the {declared_clauses} declared"
                    )
                seen = set()
                for l in current:
                    if abs(l) in seen:
                        raise DimacsError(
                            f"line {clause_line}: clause mentions variable {abs(l)} twice"
                        )
                    seen.add(abs(l))
                clauses.append(current)
                current = []
            else:
                if abs(lit) > num_vars:
                    raise DimacsError(
                        f"line {lineno}: literal {lit} out of range 1..{num_vars}"
                    )
                if not current:
                    clause_line = lineno
                current.append(lit)

    if num_vars < 0:
        raise DimacsError("line 1: missing header")
    if current:
        raise DimacsError(f"line {clause_line}: unterminated clause (missing 0)")
    if len(clauses) != declared_clauses:
        raise DimacsError(
            f"line {header_line}: header declares {declared_clauses} clauses, found {len(clauses)}"
        )
    return Formula(num_vars=num_vars, clauses=tuple(tuple(c) for c in clauses), comments=tuple(comments))


def emit_dimacs(formula: Formula) -> str:
    """Canonical DIMACS text; parse_dimacs(emit_dimacs(f)) == f."""
    lines = [f"c {c}" if c else "c" for c in formula.comments]
    lines.append(f"p cnf {formula.num_vars} {formula.num_clauses}")
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def with_comments(formula: Formula, *comments: str) -> Formula:
    """A copy of formula with the given comment lines (replacing existing)."""
    return Formula(formula.num_vars, formula.clauses, tuple(comments))
