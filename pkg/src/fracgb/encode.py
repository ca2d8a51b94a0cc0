"""Polynomial encoding of tailored instances.

Remaining literals are renamed to consecutive ring variables in ascending
order. The system holds one ``y(1-y)`` per variable and one polynomial per
predicate whose boolean zeros are exactly the predicate's satisfying points.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Tuple

from . import kernels
from .algebra import DEFAULT_PRIME, LexOrder, Polynomial, check_prime
from .errors import EmptyAcceptableSetError, TooLargeToEnumerateError
from .instances import NOT2, OXR, FixedTerm, PredicateInstance, SignedLiteral, truth_table

ENUMERATION_CAP_BITS = 20


@dataclass(frozen=True)
class PolynomialSystem:
    kind: str
    literal_polys: Tuple[Polynomial, ...]
    predicate_polys: Tuple[Tuple[Polynomial, int], ...]
    var_of_literal: Dict[int, int]
    nvars: int
    modulus: int

    @property
    def literal_of_var(self) -> Dict[int, int]:
        return {v: i for i, v in self.var_of_literal.items()}

    @property
    def polys(self) -> List[Polynomial]:
        """All of the system, literal polynomials first."""
        return list(self.literal_polys) + [f for f, _ in self.predicate_polys]

    def __len__(self):
        return len(self.literal_polys) + len(self.predicate_polys)

    def to_text(self) -> str:
        order = LexOrder.default(self.nvars)
        lines = [
            f"c kind {self.kind}",
            f"c vars {self.nvars} prime {self.modulus}",
        ]
        for lit in sorted(self.var_of_literal):
            lines.append(f"c y{self.var_of_literal[lit] + 1} = l{lit + 1}")
        lines.extend(f.to_text(order) for f in self.literal_polys)
        lines.extend(f.to_text(order) for f, _ in self.predicate_polys)
        return "\n".join(lines) + "\n"


def _ring(inst: PredicateInstance, modulus: int):
    check_prime(modulus)
    var_of = {lit: k for k, lit in enumerate(sorted(inst.literals))}
    n = len(var_of)
    return var_of, n


def literal_polynomial(k: int, nvars: int, modulus: int) -> Polynomial:
    y = Polynomial.variable(k, nvars, modulus)
    return y * (1 - y)


def _truth_poly(slot, var_of, nvars, modulus) -> Polynomial:
    """Affine polynomial equal to the slot's truth value on the cube."""
    if isinstance(slot, FixedTerm):
        return Polynomial.constant(slot.value, nvars, modulus)
    y = Polynomial.variable(var_of[slot.index], nvars, modulus)
    return 1 - y if slot.negated else y


def achievable_totals(pred) -> List[int]:
    lits = sorted(pred.literal_indices())
    totals = set()
    for bits in product((0, 1), repeat=len(lits)):
        totals.add(pred.total(dict(zip(lits, bits))))
    return sorted(totals)


def acceptable_totals(pred) -> List[int]:
    """Totals in {0, 1, 3} that a predicate with this many slots can sum to.

    Fixed slots do not shrink the list, so a fully free 3-slot predicate and
    one with a fixed slot both get three linear factors.
    """
    return [t for t in (0, 1, 3) if t <= len(pred.slots)]


def not2_polynomial(pred, var_of, nvars, modulus) -> Polynomial:
    """Product of ``(sum - t)`` over the acceptable totals ``t``."""
    if all(t == 2 for t in achievable_totals(pred)):
        raise EmptyAcceptableSetError(f"predicate {pred.pid} has no acceptable total")
    acceptable = acceptable_totals(pred)
    s = Polynomial.zero(nvars, modulus)
    for slot in pred.slots:
        s = s + _truth_poly(slot, var_of, nvars, modulus)
    out = Polynomial.constant(1, nvars, modulus)
    for t in acceptable:
        out = out * (s - t)
    return out


def oxr_polynomial(pred, var_of, nvars, modulus) -> Polynomial:
    """``(special term) * (a_j + a_k - 1)`` with ``a`` the symmetric truth values."""
    special = pred.special
    if isinstance(special, FixedTerm) and special.literal is not None:
        # substitute the fixed literal's value into the form-specific factor
        lit = special.literal
        x = lit.value_making(special.value)
        first = Polynomial.constant(x if lit.negated else x - 1, nvars, modulus)
    elif isinstance(special, FixedTerm):
        first = Polynomial.constant(special.value - 1, nvars, modulus)
    else:
        y = Polynomial.variable(var_of[special.index], nvars, modulus)
        first = y if special.negated else y - 1
    second = (
        _truth_poly(pred.sym1, var_of, nvars, modulus)
        + _truth_poly(pred.sym2, var_of, nvars, modulus)
        - 1
    )
    return first * second


def _encode(inst: PredicateInstance, kind: str, modulus: int) -> PolynomialSystem:
    if inst.kind != kind:
        raise ValueError(f"expected a {kind} instance, got {inst.kind}")
    var_of, n = _ring(inst, modulus)
    make = not2_polynomial if kind == NOT2 else oxr_polynomial
    literal_polys = tuple(literal_polynomial(k, n, modulus) for k in range(n))
    predicate_polys = tuple((make(p, var_of, n, modulus), p.pid) for p in inst.predicates)
    return PolynomialSystem(kind, literal_polys, predicate_polys, var_of, n, modulus)


def encode_not2(inst: PredicateInstance, rec=None, modulus: int = DEFAULT_PRIME) -> PolynomialSystem:
    """Encode a tailored Not-2 instance (``rec`` is accepted for symmetry; fixed
    values are already substituted into the predicates)."""
    return _encode(inst, NOT2, modulus)


def encode_oxr(inst: PredicateInstance, rec=None, modulus: int = DEFAULT_PRIME) -> PolynomialSystem:
    return _encode(inst, OXR, modulus)


def encode(inst: PredicateInstance, rec=None, modulus: int = DEFAULT_PRIME) -> PolynomialSystem:
    return _encode(inst, inst.kind, modulus)


# -- boolean-cube helpers shared with the oracle -----------------------------


def pack_polynomials(polys, nvars: int):
    """Flatten polynomials into (support masks, coefficients, offsets) arrays."""
    masks, coefs, offsets = [], [], [0]
    for f in polys:
        if f.nvars != nvars:
            raise ValueError("polynomials from different rings")
        for m, c in f.terms.items():
            mask = 0
            for k, e in enumerate(m):
                if e:
                    mask |= 1 << k
            masks.append(mask)
            coefs.append(c)
        offsets.append(len(masks))
    return masks, coefs, offsets


def cube_zero_masks(polys, nvars: int, modulus: int) -> List[int]:
    """Bitmasks (bit k = value of y_{k+1}) of boolean common zeros, ascending."""
    if nvars > ENUMERATION_CAP_BITS:
        raise TooLargeToEnumerateError(f"{nvars} variables exceeds the 2^{ENUMERATION_CAP_BITS} cap")
    masks, coefs, offsets = pack_polynomials(polys, nvars)
    flags = kernels.zero_flags(masks, coefs, offsets, modulus, nvars)
    return [x for x in range(1 << nvars) if flags[x]]


def pack_predicates(preds, literal_bits: Dict[int, int]):
    """Flatten predicates into (slot bit positions, truth tables) arrays."""
    lits, tables = [], []
    for p in preds:
        vs = tuple(sorted(p.literal_indices()))
        pos = [literal_bits[v] for v in vs] + [-1] * (3 - len(vs))
        lits.extend(pos)
        tables.append(truth_table(p, vs))
    return lits, tables


def check_variety_equivalence(sys: PolynomialSystem, inst: PredicateInstance) -> bool:
    """Boolean zeros of ``sys`` coincide with the satisfying assignments of ``inst``."""
    n = sys.nvars
    if n > ENUMERATION_CAP_BITS:
        raise TooLargeToEnumerateError(f"{n} literals exceeds the 2^{ENUMERATION_CAP_BITS} cap")
    zeros = cube_zero_masks(sys.polys, n, sys.modulus)
    lits, tables = pack_predicates(inst.predicates, sys.var_of_literal)
    counts = kernels.sat_counts(lits, tables, n)
    m = len(inst.predicates)
    sats = [x for x in range(1 << n) if counts[x] == m]
    return zeros == sats
