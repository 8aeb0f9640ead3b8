"""Rewrite arbitrary linear pseudo-Boolean constraints into the canonical
less-or-equal form with positive integer weights over distinct variables.

Rewrite steps, in order: split equalities; flip >= to <= over negated
literals; flip negative weights; drop zero weights; merge repeated variables
(opposite polarities cancel against the bound); detect trivial outcomes;
extract literals whose weight alone exceeds the bound as forced units.
Weights are plain Python integers, so sums cannot overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import EQ, GE, LE, PBConstraint, Term, negate


class OutcomeKind(Enum):
    NORMALIZED = "normalized"
    TRIVIALLY_TRUE = "trivially_true"
    TRIVIALLY_FALSE = "trivially_false"
    UNITS_ONLY = "units_only"
    EQUALITY_SPLIT = "equality_split"


@dataclass(frozen=True)
class NormalizationOutcome:
    kind: OutcomeKind
    constraint: PBConstraint | None = None
    # literals that must be 0; callers emit the unit clause of each negation
    forced_units: tuple[int, ...] = ()
    # for EQUALITY_SPLIT: the outcomes of the <= and >= halves
    parts: tuple["NormalizationOutcome", ...] = ()

    def flatten(self) -> tuple["NormalizationOutcome", ...]:
        if self.kind is OutcomeKind.EQUALITY_SPLIT:
            return tuple(p for part in self.parts for p in part.flatten())
        return (self,)


def normalize(c: PBConstraint) -> NormalizationOutcome:
    if c.relation == EQ:
        lower = normalize(PBConstraint(c.terms, LE, c.bound))
        upper = normalize(PBConstraint(c.terms, GE, c.bound))
        return NormalizationOutcome(OutcomeKind.EQUALITY_SPLIT, parts=(lower, upper))

    terms = list(c.terms)
    k = c.bound
    if c.relation == GE:
        # sum(w*l) >= k  <=>  sum(w*~l) <= sum(w) - k
        k = sum(w for w, _ in terms) - k
        terms = [Term(w, negate(l)) for w, l in terms]

    # negative weights flip the literal and relax the bound; zero weights drop
    positive: list[Term] = []
    for w, l in terms:
        if w < 0:
            k += -w
            positive.append(Term(-w, negate(l)))
        elif w > 0:
            positive.append(Term(w, l))

    # merge repeated variables, keeping first-occurrence order
    acc: dict[int, list[int]] = {}
    for w, l in positive:
        slot = acc.setdefault(l >> 1, [0, 0])
        slot[l & 1] += w
    merged: list[Term] = []
    for var, (on_pos, on_neg) in acc.items():
        if on_pos > on_neg:
            merged.append(Term(on_pos - on_neg, 2 * var))
            k -= on_neg
        elif on_neg > on_pos:
            merged.append(Term(on_neg - on_pos, 2 * var + 1))
            k -= on_pos
        else:
            k -= on_pos

    if k < 0:
        return NormalizationOutcome(OutcomeKind.TRIVIALLY_FALSE)
    if sum(w for w, _ in merged) <= k:
        return NormalizationOutcome(OutcomeKind.TRIVIALLY_TRUE)

    units = tuple(l for w, l in merged if w > k)
    kept = tuple(t for t in merged if t.weight <= k)
    if not kept or sum(w for w, _ in kept) <= k:
        # residual constraint is vacuous; only the forced units carry meaning
        return NormalizationOutcome(OutcomeKind.UNITS_ONLY, forced_units=units)
    return NormalizationOutcome(
        OutcomeKind.NORMALIZED, constraint=PBConstraint(kept, LE, k), forced_units=units
    )
