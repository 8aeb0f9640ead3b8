"""Shared data model: literals, weighted terms, constraints, CNF formulas, variable pools.

Literals are stored as dense integer codes: ``2*var`` for the positive literal
and ``2*var + 1`` for the negated one, so negation is a single XOR and arrays
can be indexed directly by literal.  Everything that leaves the library
(DIMACS files, models, diagnostics) uses the signed-integer convention
instead; ``to_signed``/``from_signed`` convert at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

LE = "<="
GE = ">="
EQ = "="
RELATIONS = (LE, GE, EQ)


def lit(var: int, negative: bool = False) -> int:
    """Literal code for a variable index (>= 1)."""
    if var < 1:
        raise ValueError(f"variable index must be >= 1, got {var}")
    return 2 * var + (1 if negative else 0)


def negate(l: int) -> int:
    return l ^ 1


def lit_var(l: int) -> int:
    return l >> 1


def is_negative(l: int) -> bool:
    return bool(l & 1)


def to_signed(l: int) -> int:
    return -(l >> 1) if l & 1 else l >> 1


def from_signed(n: int) -> int:
    if n == 0:
        raise ValueError("0 is not a literal")
    return 2 * n if n > 0 else -2 * n + 1


def lit_str(l: int) -> str:
    return f"~x{l >> 1}" if l & 1 else f"x{l >> 1}"


class Term(NamedTuple):
    weight: int
    lit: int


@dataclass(frozen=True)
class PBConstraint:
    """Linear pseudo-Boolean constraint: sum of weight*literal <relation> bound."""

    terms: tuple[Term, ...]
    relation: str = LE
    bound: int = 0

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "terms", tuple(Term(w, l) for w, l in self.terms))

    @staticmethod
    def from_signed(pairs: Iterable[tuple[int, int]], relation: str = LE, bound: int = 0) -> "PBConstraint":
        """Build from (weight, signed_literal) pairs, e.g. (3, -2) for 3*~x2."""
        return PBConstraint(tuple(Term(w, from_signed(s)) for w, s in pairs), relation, bound)

    def variables(self) -> tuple[int, ...]:
        seen: dict[int, None] = {}
        for _, l in self.terms:
            seen.setdefault(l >> 1)
        return tuple(seen)

    def weighted_sum(self, assignment: Mapping[int, bool]) -> int:
        """Weighted count of true literals; unassigned variables count as false."""
        total = 0
        for w, l in self.terms:
            if assignment.get(l >> 1, False) != bool(l & 1):
                total += w
        return total

    def holds(self, assignment: Mapping[int, bool]) -> bool:
        s = self.weighted_sum(assignment)
        if self.relation == LE:
            return s <= self.bound
        if self.relation == GE:
            return s >= self.bound
        return s == self.bound

    def is_normalized(self) -> bool:
        """Less-or-equal form, non-negative bound, positive weights <= bound+1, distinct vars."""
        if self.relation != LE or self.bound < 0:
            return False
        seen = set()
        for w, l in self.terms:
            if w < 1 or w > self.bound + 1 or (l >> 1) in seen:
                return False
            seen.add(l >> 1)
        return True

    def __str__(self) -> str:
        lhs = " + ".join(f"{w} {lit_str(l)}" for w, l in self.terms) or "0"
        return f"{lhs} {self.relation} {self.bound}"


@dataclass
class CnfFormula:
    """Clause list over variables 1..num_vars; literals are integer codes."""

    num_vars: int = 0
    clauses: list[list[int]] = field(default_factory=list)

    def add_clause(self, lits: Iterable[int]) -> None:
        cl = list(lits)
        for l in cl:
            if l >> 1 > self.num_vars:
                self.num_vars = l >> 1
        self.clauses.append(cl)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def has_empty_clause(self) -> bool:
        return any(not cl for cl in self.clauses)


@dataclass
class VarPool:
    """Monotone source of fresh variable indices."""

    next_free: int = 1

    def fresh(self) -> int:
        v = self.next_free
        self.next_free += 1
        return v

    def fresh_lit(self) -> int:
        return 2 * self.fresh()


@dataclass
class EncodingStats:
    aux_vars: int = 0
    aux_clauses: int = 0
    wall_time: float = 0.0


@dataclass
class EncodingResult:
    """Output of one encoder call: the target formula, where each input term's
    literal lives in it, and size/time counters for that call."""

    formula: CnfFormula
    input_map: dict[int, int]
    stats: EncodingStats
