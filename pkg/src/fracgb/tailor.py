"""Instance tailoring: forced-value fixing, trivial-predicate removal, loner rounds.

Both predicate families go through the same driver: a case machine that is
re-run in ascending predicate id order until nothing fires, followed by rounds
that strip literals occurring in at most one predicate (and the predicates
holding them). The record kept here is enough to rebuild a full assignment on
the original instance afterwards.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Mapping, Optional, Tuple

from .errors import ContradictionError, InternalError
from .instances import (
    NOT2,
    OXR,
    FixedTerm,
    Not2Predicate,
    OxrPredicate,
    Predicate,
    PredicateInstance,
    SignedLiteral,
    has_satisfying_completion,
)

NOT2_CASES = ("1", "2a", "2b", "2c", "2d", "3b", "3c", "3d")
OXR_CASES = ("OXR-1", "OXR-2")
KEEP_CASES = ("2c", "2d")


@dataclass(frozen=True)
class LonerRound:
    literals: Tuple[int, ...]
    predicate_ids: Tuple[int, ...]


@dataclass
class TailoringRecord:
    kind: str
    fixed_literals: Dict[int, int] = field(default_factory=dict)
    removed_trivial: List[Tuple[int, str]] = field(default_factory=list)
    loner_rounds: List[LonerRound] = field(default_factory=list)
    case_log: List[Tuple[int, str]] = field(default_factory=list)

    @property
    def removed_ids(self) -> List[int]:
        ids = [pid for pid, _ in self.removed_trivial]
        for rnd in self.loner_rounds:
            ids.extend(rnd.predicate_ids)
        return ids

    @property
    def loner_literals(self) -> List[int]:
        return [i for rnd in self.loner_rounds for i in rnd.literals]

    def to_text(self) -> str:
        lines = []
        for i in sorted(self.fixed_literals):
            lines.append(f"fixed l{i + 1}={self.fixed_literals[i]}")
        for pid, code in self.case_log:
            lines.append(f"id={pid} case={code}")
        for pid, code in self.removed_trivial:
            lines.append(f"removed id={pid} reason={code}")
        for r, rnd in enumerate(self.loner_rounds, start=1):
            lits = ",".join(f"l{i + 1}" for i in rnd.literals) or "-"
            ids = ",".join(str(pid) for pid in rnd.predicate_ids) or "-"
            lines.append(f"loner round={r} literals={lits} ids={ids}")
        return "\n".join(lines) + ("\n" if lines else "")


# -- case machines -----------------------------------------------------------


def classify_not2(p: Not2Predicate) -> Optional[Tuple[str, Optional[Tuple[int, int]]]]:
    """Case code for a predicate with a repeated literal, plus the forced fix.

    Returns ``None`` when no literal is repeated, else ``(code, fix)`` where
    ``fix`` is ``(literal, value)`` or ``None``.
    """
    signed = [s for s in p.slots if isinstance(s, SignedLiteral)]
    counts = Counter(s.index for s in signed)
    if not counts:
        return None
    i, c = counts.most_common(1)[0]
    if c < 2:
        return None
    group = [s for s in signed if s.index == i]
    rest = [s for s in p.slots if not (isinstance(s, SignedLiteral) and s.index == i)]
    signs = Counter(s.negated for s in group)
    if len(group) == 3:
        if len(signs) == 1:
            return "1", None
        # two identical plus the opposite form: sum is t + 1, so the pair is false
        pair_negated = signs.most_common(1)[0][0]
        return "2a", (i, SignedLiteral(i, pair_negated).value_making(0))
    if len(signs) == 1:
        pair = group[0]
        if not rest:
            return "2b", (i, pair.value_making(0))
        if isinstance(rest[0], SignedLiteral):
            return "2c", None
        return "2d", None
    # opposing pair contributes exactly 1
    if not rest:
        return "3d", None
    third = rest[0]
    if isinstance(third, SignedLiteral):
        return "3b", (third.index, third.value_making(0))
    if third.value != 0:
        raise ContradictionError(f"predicate {p.pid}: opposing pair with a fixed true third term")
    return "3c", None


def classify_oxr(p: OxrPredicate) -> Optional[Tuple[str, Optional[Tuple[int, int]]]]:
    a, b = p.sym1, p.sym2
    if not (isinstance(a, SignedLiteral) and isinstance(b, SignedLiteral) and a.index == b.index):
        return None
    if a.negated != b.negated:
        return "OXR-2", None
    special = p.special
    if isinstance(special, FixedTerm):
        if special.value:
            return "OXR-1", None
        raise ContradictionError(f"predicate {p.pid}: xor is always false and special is fixed false")
    return "OXR-1", (special.index, special.value_making(1))


class _Tailor:
    def __init__(self, inst: PredicateInstance):
        self.inst = inst
        self.current: Dict[int, Predicate] = {p.pid: p for p in inst.predicates}
        self.active = set(inst.literals)
        self.rec = TailoringRecord(inst.kind)
        self.classify = classify_not2 if inst.kind == NOT2 else classify_oxr

    def fix(self, lit: int, value: int, cause: int):
        fixed = self.rec.fixed_literals
        if lit in fixed:
            if fixed[lit] != value:
                raise ContradictionError(f"l{lit + 1} forced to both values (predicate {cause})")
            return
        fixed[lit] = value
        self.active.discard(lit)
        sub = {lit: value}
        for pid, p in self.current.items():
            if lit in p.literal_indices():
                q = p.substitute(sub)
                if not has_satisfying_completion(q):
                    raise ContradictionError(
                        f"fixing l{lit + 1}={value} (predicate {cause}) makes predicate {pid} unsatisfiable"
                    )
                self.current[pid] = q

    def log(self, pid: int, code: str):
        if (pid, code) not in self._logged:
            self._logged.add((pid, code))
            self.rec.case_log.append((pid, code))

    def run_cases(self):
        self._logged = set()
        for p in self.current.values():
            if not has_satisfying_completion(p):
                raise ContradictionError(f"predicate {p.pid} cannot be satisfied")
        fired = True
        while fired:
            fired = False
            for pid in sorted(self.current):
                p = self.current.get(pid)
                if p is None:
                    continue
                verdict = self.classify(p)
                if verdict is None:
                    continue
                code, fix = verdict
                self.log(pid, code)
                if code in KEEP_CASES:
                    continue
                del self.current[pid]
                self.rec.removed_trivial.append((pid, code))
                if fix is not None:
                    self.fix(fix[0], fix[1], pid)
                fired = True

    def run_loners(self):
        while True:
            counts = {i: 0 for i in self.active}
            for p in self.current.values():
                for i in p.literal_indices():
                    counts[i] += 1
            loners = sorted(i for i, c in counts.items() if c <= 1)
            if not loners:
                return
            loner_set = set(loners)
            ids = sorted(
                pid for pid, p in self.current.items() if p.literal_indices() & loner_set
            )
            for pid in ids:
                del self.current[pid]
            self.active -= loner_set
            self.rec.loner_rounds.append(LonerRound(tuple(loners), tuple(ids)))

    def result(self) -> PredicateInstance:
        preds = tuple(self.current[pid] for pid in sorted(self.current))
        return PredicateInstance(self.inst.kind, self.inst.num_literals, preds, frozenset(self.active))


def _tailor(inst: PredicateInstance, kind: str):
    if inst.kind != kind:
        raise ValueError(f"expected a {kind} instance, got {inst.kind}")
    t = _Tailor(inst)
    t.run_cases()
    t.run_loners()
    return t.result(), t.rec


def tailor_not2(inst: PredicateInstance):
    """Tailor a Max Not-2 instance; returns ``(tailored, record)``."""
    return _tailor(inst, NOT2)


def tailor_oxr(inst: PredicateInstance):
    """Tailor a Max OXR instance; returns ``(tailored, record)``."""
    return _tailor(inst, OXR)


def tailor(inst: PredicateInstance):
    return _tailor(inst, inst.kind)


# -- structural properties ---------------------------------------------------


def check_property1(inst: PredicateInstance) -> bool:
    """Only the allowed repeated-literal shapes survive tailoring."""
    for p in inst.predicates:
        if inst.kind == OXR:
            a, b = p.sym1, p.sym2
            if isinstance(a, SignedLiteral) and isinstance(b, SignedLiteral) and a.index == b.index:
                return False
            continue
        signed = [s for s in p.slots if isinstance(s, SignedLiteral)]
        counts = Counter(s.index for s in signed)
        if not counts or max(counts.values()) < 2:
            continue
        i, c = counts.most_common(1)[0]
        group = [s for s in signed if s.index == i]
        if c != 2 or group[0] != group[1] or len(p.slots) != 3:
            return False
    return True


def check_property2(inst: PredicateInstance) -> bool:
    """Every remaining literal appears in at least two predicates."""
    return all(c >= 2 for c in inst.occurrences().values())


def check_two_fifths(inst: PredicateInstance) -> bool:
    """``|P| >= 2/5 (|P| + |L|)`` in integers."""
    np_, nl = len(inst.predicates), len(inst.literals)
    return 5 * np_ >= 2 * (np_ + nl)


# -- reinsertion -------------------------------------------------------------


def reinsert_loners(
    partial: Mapping[int, int], rec: TailoringRecord, original: PredicateInstance
) -> Dict[int, int]:
    """Extend ``partial`` with loner values (latest round first) and fixed literals.

    Within a round predicates are handled in ascending id; each takes the first
    combination of its still-unset loners (in ascending literal order, 0 before
    1) that satisfies it. Loners in no predicate get 0.
    """
    x = dict(partial)
    for lit, v in rec.fixed_literals.items():
        if x.setdefault(lit, v) != v:
            raise InternalError(f"partial assignment disagrees with fixed l{lit + 1}")
    by_id = original.by_id()
    for rnd in reversed(rec.loner_rounds):
        loners = set(rnd.literals)
        for pid in sorted(rnd.predicate_ids):
            p = by_id[pid]
            free = sorted(i for i in p.literal_indices() if i not in x)
            if not set(free) <= loners:
                raise InternalError(f"predicate {pid} has unset non-loner literals {free}")
            for bits in product((0, 1), repeat=len(free)):
                trial = dict(x)
                trial.update(zip(free, bits))
                if p.is_satisfied(trial):
                    x = trial
                    break
            else:
                raise InternalError(f"no loner values satisfy predicate {pid}")
        for lit in sorted(loners):
            x.setdefault(lit, 0)
    missing = [i for i in range(original.num_literals) if i not in x]
    if missing:
        raise InternalError(f"literals left unassigned: {missing}")
    return x
