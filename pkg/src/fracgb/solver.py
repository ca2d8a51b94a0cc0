"""Fractional Groebner basis solver: ignore-set choice, basis, point extraction."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .algebra import LexOrder, Polynomial
from .encode import PolynomialSystem
from .errors import InconsistentSystemError
from .groebner import GroebnerBasis, buchberger, is_consistent
from .instances import NOT2, OXR

STRATEGIES = ("empty", "greedy", "random")

# q = threshold + epsilon for each predicate family
Q_THRESHOLD = {NOT2: Fraction(7, 10), OXR: Fraction(4, 5)}
# |P_R| >= (base + 5/2 eps)|P|
PR_BASE = {NOT2: Fraction(1, 4), OXR: Fraction(1, 2)}
# satisfied >= (base + 5/4 eps)|P|
FINAL_BASE = {NOT2: Fraction(5, 8), OXR: Fraction(6, 8)}


def budget(q: Fraction, size: int) -> Fraction:
    """Largest allowed ``|F_Y'|``: ``(1 - q) |F|``."""
    return (1 - Fraction(q)) * size


def touched(sys: PolynomialSystem, ignored) -> int:
    """``|F_Y'|``: polynomials mentioning at least one ignored variable."""
    ignored = set(ignored)
    return sum(1 for f in sys.polys if f.variables() & ignored)


def select_ignore_set(
    sys: PolynomialSystem, q, strategy: str = "empty", seed: int = 0
) -> FrozenSet[int]:
    """Choose ignored variables so that ``|F_Y'| <= (1 - q)|F|``.

    ``greedy`` adds the variable with the smallest marginal growth of
    ``F_Y'`` (lowest index on ties) while that stays within budget; ``random``
    visits variables in a seeded random order and keeps each one that fits.
    """
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    limit = budget(q, len(sys))
    if strategy == "empty":
        return frozenset()
    supports = [f.variables() for f in sys.polys]
    chosen: set = set()
    hit = [False] * len(supports)

    def growth(v):
        return sum(1 for k, s in enumerate(supports) if not hit[k] and v in s)

    def take(v):
        chosen.add(v)
        for k, s in enumerate(supports):
            if v in s:
                hit[k] = True

    if strategy == "greedy":
        while True:
            used = sum(hit)
            best = None
            for v in range(sys.nvars):
                if v in chosen:
                    continue
                g = growth(v)
                if best is None or g < best[0]:
                    best = (g, v)
            if best is None or used + best[0] > limit:
                break
            take(best[1])
    else:
        order = list(range(sys.nvars))
        random.Random(seed).shuffle(order)
        for v in order:
            if sum(hit) + growth(v) <= limit:
                take(v)
    return frozenset(chosen)


@dataclass(frozen=True)
class FractionalSolution:
    system: PolynomialSystem
    ignored_vars: FrozenSet[int]
    surviving: Tuple[Polynomial, ...]
    basis: GroebnerBasis
    budget_q: Fraction
    pr_ids: Tuple[int, ...]
    pd_ids: Tuple[int, ...]
    touched: int

    @property
    def surviving_vars(self) -> Tuple[int, ...]:
        return tuple(v for v in range(self.system.nvars) if v not in self.ignored_vars)

    def within_budget(self) -> bool:
        return self.touched <= budget(self.budget_q, len(self.system))


def solve_fractional(
    sys: PolynomialSystem,
    q,
    strategy: str = "empty",
    order: Optional[LexOrder] = None,
    seed: int = 0,
) -> FractionalSolution:
    q = Fraction(q)
    order = order or LexOrder.default(sys.nvars)
    ignored = select_ignore_set(sys, q, strategy, seed)
    surviving = tuple(f for f in sys.polys if not (f.variables() & ignored))
    pr, pd = [], []
    for f, pid in sys.predicate_polys:
        (pd if f.variables() & ignored else pr).append(pid)
    basis = buchberger(surviving, order)
    return FractionalSolution(
        sys, ignored, surviving, basis, q, tuple(pr), tuple(pd), touched(sys, ignored)
    )


def extract_point(sol: FractionalSolution, order: Optional[LexOrder] = None) -> Dict[int, int]:
    """Common boolean zero of the surviving polynomials, by successive elimination.

    Variables are fixed from the lex-smallest upward, trying 0 before 1; after
    each substitution the basis is recomputed and must stay consistent.
    """
    order = order or sol.basis.order
    if not is_consistent(sol.basis):
        raise InconsistentSystemError("surviving system has an empty variety")
    ignored = sol.ignored_vars
    point: Dict[int, int] = {}
    gens = list(sol.basis.generators)
    for v in order.smallest_first():
        if v in ignored:
            continue
        for value in (0, 1):
            trial = [g.substitute({v: value}) for g in gens]
            basis = buchberger(trial, order)
            if is_consistent(basis):
                point[v] = value
                gens = list(basis.generators)
                break
        else:
            raise InconsistentSystemError(f"no value of y{v + 1} extends the partial point")
    return point


def epsilon(q, kind: str) -> Fraction:
    return Fraction(q) - Q_THRESHOLD[kind]


def check_budget_inequality(sol: FractionalSolution, kind: str) -> bool:
    """``|P_R| >= (base + 5/2 eps)|P|``; vacuously true when ``eps < 0``."""
    eps = epsilon(sol.budget_q, kind)
    if eps < 0:
        return True
    n = len(sol.pr_ids) + len(sol.pd_ids)
    return len(sol.pr_ids) >= (PR_BASE[kind] + Fraction(5, 2) * eps) * n
