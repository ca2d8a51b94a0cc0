"""Fair-coin completion of undecided literals, derandomized by conditional expectations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence

from .instances import Predicate


@dataclass(frozen=True)
class PartialAssignment:
    values: Mapping[int, int]
    undecided: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "values", dict(self.values))
        object.__setattr__(self, "undecided", frozenset(self.undecided))
        overlap = self.undecided & self.values.keys()
        if overlap:
            raise ValueError(f"literals both decided and undecided: {sorted(overlap)}")

    def decide(self, lit: int, value: int) -> "PartialAssignment":
        values = dict(self.values)
        values[lit] = value
        return PartialAssignment(values, self.undecided - {lit})

    @property
    def is_total(self) -> bool:
        return not self.undecided


def satisfaction_probability(p: Predicate, partial: PartialAssignment) -> Fraction:
    """Probability ``p`` holds when undecided literals are independent fair coins."""
    free = sorted(p.literal_indices() & partial.undecided)
    x = {i: partial.values[i] for i in p.literal_indices() if i not in partial.undecided}
    hits = 0
    for bits in product((0, 1), repeat=len(free)):
        x.update(zip(free, bits))
        hits += p.is_satisfied(x)
    return Fraction(hits, 1 << len(free))


def expected_satisfied(preds: Sequence[Predicate], partial: PartialAssignment) -> Fraction:
    return sum((satisfaction_probability(p, partial) for p in preds), Fraction(0))


def derandomize(
    preds: Sequence[Predicate],
    partial: PartialAssignment,
    trace: Optional[List[Fraction]] = None,
) -> PartialAssignment:
    """Fix undecided literals in ascending order, each to the value with the
    larger conditional expectation (0 on ties).

    When ``trace`` is given it receives the expectation before the first
    decision and after each one.
    """
    touching: Dict[int, List[Predicate]] = {i: [] for i in partial.undecided}
    for p in preds:
        for i in p.literal_indices() & partial.undecided:
            touching[i].append(p)
    current = partial
    if trace is not None:
        trace.append(expected_satisfied(preds, current))
    for lit in sorted(partial.undecided):
        relevant = touching[lit]
        zero, one = current.decide(lit, 0), current.decide(lit, 1)
        # only predicates containing lit change between the two branches
        if expected_satisfied(relevant, one) > expected_satisfied(relevant, zero):
            current = one
        else:
            current = zero
        if trace is not None:
            trace.append(expected_satisfied(preds, current))
    return current


def margin_distribution(p, partial: PartialAssignment) -> Dict[int, Fraction]:
    """Not-2 only: distribution of how many more slots turn true under the coins."""
    free = sorted(p.literal_indices() & partial.undecided)
    base = {i: partial.values[i] for i in p.literal_indices() if i not in partial.undecided}
    start = p.total({**base, **{i: 0 for i in free}}) - sum(
        1 for s in p.slots if getattr(s, "index", None) in free and s.negated
    )
    dist: Dict[int, Fraction] = {}
    weight = Fraction(1, 1 << len(free))
    for bits in product((0, 1), repeat=len(free)):
        x = {**base, **dict(zip(free, bits))}
        margin = p.total(x) - start
        dist[margin] = dist.get(margin, 0) + weight
    return dict(sorted(dist.items()))
