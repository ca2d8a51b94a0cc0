"""Max Not-2 / Max OXR instances: data model, file format, evaluation, generator.

Literal indices are 0-based in memory and 1-based in files. Predicate ids
(``pid``) are 1-based line ordinals assigned at parse/generation time and
survive tailoring unchanged.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple, Union

from .errors import EmptyInstanceError, ParseError, UnassignedVariableError

NOT2 = "not2"
OXR = "oxr"
KINDS = (NOT2, OXR)

Assignment = Dict[int, int]


@dataclass(frozen=True, order=True)
class SignedLiteral:
    index: int
    negated: bool = False

    def truth(self, x: Mapping[int, int]) -> int:
        try:
            v = x[self.index]
        except KeyError:
            raise UnassignedVariableError(f"literal l{self.index + 1} is not assigned") from None
        return 1 - v if self.negated else v

    def value_making(self, truth: int) -> int:
        """Literal value that gives this signed literal truth value ``truth``."""
        return 1 - truth if self.negated else truth

    def opposite(self, other: "SignedLiteral") -> bool:
        return self.index == other.index and self.negated != other.negated

    def token(self) -> str:
        return f"-{self.index + 1}" if self.negated else str(self.index + 1)

    def __str__(self):
        return ("¬" if self.negated else "") + f"l{self.index + 1}"


@dataclass(frozen=True)
class FixedTerm:
    """A slot whose truth value was fixed during tailoring.

    ``literal`` remembers the signed literal that used to sit here; it does not
    take part in equality.
    """

    value: int
    literal: Optional[SignedLiteral] = field(default=None, compare=False)

    def truth(self, x=None) -> int:
        return self.value

    def token(self) -> str:
        return "T" if self.value else "F"

    def __str__(self):
        return self.token()


Slot = Union[SignedLiteral, FixedTerm]


def _substitute_slot(slot: Slot, fixed: Mapping[int, int]) -> Slot:
    if isinstance(slot, SignedLiteral) and slot.index in fixed:
        return FixedTerm(slot.truth(fixed), slot)
    return slot


@dataclass(frozen=True)
class Not2Predicate:
    """Satisfied unless exactly two slots are true."""

    slots: Tuple[Slot, ...]
    pid: int = 0

    kind = NOT2

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(self.slots))
        if not 1 <= len(self.slots) <= 3:
            raise ValueError(f"Not-2 predicate must have 1-3 slots, got {len(self.slots)}")

    def literal_indices(self) -> FrozenSet[int]:
        return frozenset(s.index for s in self.slots if isinstance(s, SignedLiteral))

    def total(self, x: Mapping[int, int]) -> int:
        return sum(s.truth(x) for s in self.slots)

    def is_satisfied(self, x: Mapping[int, int]) -> bool:
        return self.total(x) != 2

    def substitute(self, fixed: Mapping[int, int]) -> "Not2Predicate":
        return replace(self, slots=tuple(_substitute_slot(s, fixed) for s in self.slots))

    def tokens(self):
        return [s.token() for s in self.slots]

    def __str__(self):
        return "(" + ", ".join(map(str, self.slots)) + ")"


@dataclass(frozen=True)
class OxrPredicate:
    """``special OR (sym1 XOR sym2)``."""

    special: Slot
    sym1: Slot
    sym2: Slot
    pid: int = 0

    kind = OXR

    @property
    def slots(self) -> Tuple[Slot, Slot, Slot]:
        return (self.special, self.sym1, self.sym2)

    def literal_indices(self) -> FrozenSet[int]:
        return frozenset(s.index for s in self.slots if isinstance(s, SignedLiteral))

    def is_satisfied(self, x: Mapping[int, int]) -> bool:
        special = self.special.truth(x)
        xor = self.sym1.truth(x) ^ self.sym2.truth(x)
        return bool(special or xor)

    def substitute(self, fixed: Mapping[int, int]) -> "OxrPredicate":
        return replace(
            self,
            special=_substitute_slot(self.special, fixed),
            sym1=_substitute_slot(self.sym1, fixed),
            sym2=_substitute_slot(self.sym2, fixed),
        )

    def tokens(self):
        return [s.token() for s in self.slots]

    def __str__(self):
        return f"{self.special} ∨ ({self.sym1} ⊕ {self.sym2})"


Predicate = Union[Not2Predicate, OxrPredicate]


def evaluate_predicate(p: Predicate, x: Mapping[int, int]) -> bool:
    return p.is_satisfied(x)


def truth_table(p: Predicate, variables: Tuple[int, ...]) -> int:
    """Bit ``i`` is set iff ``p`` holds when ``variables[b]`` takes bit ``b`` of ``i``.

    ``variables`` must list every literal of ``p`` (at most three).
    """
    table = 0
    for i in range(1 << len(variables)):
        x = {v: (i >> b) & 1 for b, v in enumerate(variables)}
        if p.is_satisfied(x):
            table |= 1 << i
    if len(variables) < 3:
        # unused slots read as 0; replicate so any index bit pattern works
        width = 1 << len(variables)
        for shift in range(width, 8, width):
            table |= (table & ((1 << width) - 1)) << shift
    return table


def has_satisfying_completion(p: Predicate) -> bool:
    lits = sorted(p.literal_indices())
    return any(
        p.is_satisfied(dict(zip(lits, bits))) for bits in product((0, 1), repeat=len(lits))
    )


@dataclass(frozen=True)
class PredicateInstance:
    kind: str
    num_literals: int
    predicates: Tuple[Predicate, ...]
    literals: Optional[FrozenSet[int]] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        object.__setattr__(self, "predicates", tuple(self.predicates))
        if self.literals is None:
            object.__setattr__(self, "literals", frozenset(range(self.num_literals)))
        else:
            object.__setattr__(self, "literals", frozenset(self.literals))
        seen = set()
        for p in self.predicates:
            if p.kind != self.kind:
                raise ValueError(f"predicate {p.pid} is {p.kind}, instance is {self.kind}")
            if p.pid in seen:
                raise ValueError(f"duplicate predicate id {p.pid}")
            seen.add(p.pid)
            for i in p.literal_indices():
                if not 0 <= i < self.num_literals:
                    raise ValueError(f"literal l{i + 1} out of range")

    def __len__(self):
        return len(self.predicates)

    def by_id(self) -> Dict[int, Predicate]:
        return {p.pid: p for p in self.predicates}

    def occurrences(self) -> Dict[int, int]:
        """Number of predicates each active literal appears in."""
        counts = {i: 0 for i in self.literals}
        for p in self.predicates:
            for i in p.literal_indices():
                counts[i] = counts.get(i, 0) + 1
        return counts

    def count_satisfied(self, x: Mapping[int, int]) -> int:
        return sum(1 for p in self.predicates if p.is_satisfied(x))


def satisfied_fraction(inst: PredicateInstance, x: Mapping[int, int]) -> Fraction:
    if not inst.predicates:
        raise EmptyInstanceError("instance has no predicates")
    return Fraction(inst.count_satisfied(x), len(inst.predicates))


# -- file format -------------------------------------------------------------


def _parse_slot(tok: str, n: int, lineno: int) -> Slot:
    if tok in ("T", "F"):
        return FixedTerm(1 if tok == "T" else 0)
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"bad token {tok!r}", lineno) from None
    if v == 0:
        raise ParseError("literal 0 is not allowed", lineno)
    if abs(v) > n:
        raise ParseError(f"literal {v} out of range 1..{n}", lineno)
    return SignedLiteral(abs(v) - 1, v < 0)


def parse_instance(text: Union[str, bytes]) -> PredicateInstance:
    """Parse the line-based instance format (see README)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    preds = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "p":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(toks) != 4 or toks[1] not in KINDS:
                raise ParseError("header must be 'p <not2|oxr> <literals> <predicates>'", lineno)
            try:
                n, m = int(toks[2]), int(toks[3])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("header counts must be non-negative", lineno)
            header = (toks[1], n, m)
            continue
        if header is None:
            raise ParseError("predicate before header", lineno)
        kind, n, _ = header
        slots = [_parse_slot(t, n, lineno) for t in toks]
        pid = len(preds) + 1
        if kind == NOT2:
            if not 1 <= len(slots) <= 3:
                raise ParseError(f"not2 predicate needs 1-3 literals, got {len(slots)}", lineno)
            preds.append(Not2Predicate(tuple(slots), pid))
        else:
            if len(slots) != 3:
                raise ParseError(f"oxr predicate needs exactly 3 literals, got {len(slots)}", lineno)
            preds.append(OxrPredicate(slots[0], slots[1], slots[2], pid))
    if header is None:
        raise ParseError("missing header")
    kind, n, m = header
    if len(preds) != m:
        raise ParseError(f"header announces {m} predicates, found {len(preds)}")
    return PredicateInstance(kind, n, tuple(preds))


def serialize_instance(inst: PredicateInstance) -> str:
    lines = [f"p {inst.kind} {inst.num_literals} {len(inst.predicates)}"]
    lines.extend(" ".join(p.tokens()) for p in inst.predicates)
    return "\n".join(lines) + "\n"


# -- generator ---------------------------------------------------------------


def _random_slot(rng: random.Random, n: int) -> SignedLiteral:
    return SignedLiteral(rng.randrange(n), rng.random() < 0.5)


def generate_satisfiable(
    kind: str, num_literals: int, num_predicates: int, seed: int
) -> Tuple[PredicateInstance, Assignment]:
    """Planted instance: every predicate is satisfied by the returned assignment.

    Each predicate has three slots, each an independent uniformly random signed
    literal (repeats allowed, so every tailoring case can occur). Predicates
    the planted assignment violates are redrawn.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if num_literals < 3 or num_predicates < 1:
        raise ValueError("need at least 3 literals and 1 predicate")
    rng = random.Random(seed)
    planted = {i: rng.randrange(2) for i in range(num_literals)}
    preds = []
    for pid in range(1, num_predicates + 1):
        while True:
            slots = [_random_slot(rng, num_literals) for _ in range(3)]
            if kind == NOT2:
                p = Not2Predicate(tuple(slots), pid)
            else:
                p = OxrPredicate(slots[0], slots[1], slots[2], pid)
            if p.is_satisfied(planted):
                break
        preds.append(p)
    return PredicateInstance(kind, num_literals, tuple(preds)), planted


def format_assignment(x: Mapping[int, int]) -> str:
    return " ".join(str(x[i]) for i in sorted(x))
