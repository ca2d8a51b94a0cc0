"""Exhaustive ground truth for small instances and systems."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Set, Tuple, Union

from . import kernels
from .algebra import Polynomial
from .encode import ENUMERATION_CAP_BITS, PolynomialSystem, cube_zero_masks, pack_predicates
from .errors import EmptyInstanceError, TooLargeToEnumerateError
from .instances import PredicateInstance


def _guard(n: int):
    if n > ENUMERATION_CAP_BITS:
        raise TooLargeToEnumerateError(f"{n} variables exceeds the 2^{ENUMERATION_CAP_BITS} cap")


def satisfaction_counts(inst: PredicateInstance):
    """``(literals, counts)``: bit ``b`` of a point is ``literals[b]``."""
    lits = tuple(sorted(inst.literals))
    _guard(len(lits))
    packed, tables = pack_predicates(inst.predicates, {v: b for b, v in enumerate(lits)})
    return lits, kernels.sat_counts(packed, tables, len(lits))


def _decode(lits, mask) -> Dict[int, int]:
    return {v: (mask >> b) & 1 for b, v in enumerate(lits)}


def brute_max_fraction(inst: PredicateInstance) -> Tuple[Fraction, Dict[int, int]]:
    """Best satisfied fraction over all assignments of the instance's literals.

    The witness is the maximizer with the smallest encoding (bit ``b`` = value
    of the ``b``-th smallest literal).
    """
    if not inst.predicates:
        raise EmptyInstanceError("instance has no predicates")
    lits, counts = satisfaction_counts(inst)
    best = max(counts)
    mask = counts.index(best)
    return Fraction(best, len(inst.predicates)), _decode(lits, mask)


def is_satisfiable(inst: PredicateInstance) -> bool:
    if not inst.predicates:
        return True
    return brute_max_fraction(inst)[0] == 1


def satisfying_assignments(inst: PredicateInstance):
    """All assignments (over the instance's literals) satisfying every predicate."""
    lits, counts = satisfaction_counts(inst)
    m = len(inst.predicates)
    return [_decode(lits, x) for x in range(1 << len(lits)) if counts[x] == m]


def brute_variety(
    sys: Union[PolynomialSystem, Iterable[Polynomial]], nvars: int = None
) -> Set[Tuple[int, ...]]:
    """Boolean common zeros as 0/1 tuples indexed by variable."""
    if isinstance(sys, PolynomialSystem):
        polys, nvars, modulus = sys.polys, sys.nvars, sys.modulus
    else:
        polys = list(sys)
        if nvars is None:
            nvars = polys[0].nvars
        modulus = polys[0].modulus if polys else 2
    _guard(nvars)
    return {
        tuple((x >> k) & 1 for k in range(nvars))
        for x in cube_zero_masks(polys, nvars, modulus)
    }
