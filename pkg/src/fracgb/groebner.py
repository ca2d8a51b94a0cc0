"""Buchberger's algorithm for reduced lexicographic Groebner bases.

Work happens in "order space": exponent tuples are permuted so that plain
tuple comparison is the requested lex order, which lets the reduction kernel
find leading monomials with ``max``.
"""
from __future__ import annotations

import heapq
import operator
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from . import kernels
from .algebra import (
    LexOrder,
    Monomial,
    Polynomial,
    _from_order_space,
    _to_order_space,
    normal_form,
)
from .errors import ArityError, ZeroPolynomialError


@dataclass(frozen=True)
class GroebnerBasis:
    generators: Tuple[Polynomial, ...]
    order: LexOrder

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def to_text(self) -> str:
        return "".join(g.to_text(self.order) + "\n" for g in self.generators)


def s_polynomial(f: Polynomial, g: Polynomial, order: LexOrder) -> Polynomial:
    """``(lcm/lt(f))*f - (lcm/lt(g))*g`` for the leading monomials' lcm."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomialError("S-polynomial of the zero polynomial")
    f._same_ring(g)
    mf, mg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = tuple(map(max, mf, mg))
    p = f.modulus
    cf = pow(f.terms[mf], -1, p)
    cg = pow(g.terms[mg], -1, p)
    left = f.mul_term(tuple(map(operator.sub, lcm, mf)), cf)
    right = g.mul_term(tuple(map(operator.sub, lcm, mg)), cg)
    return left - right


# -- order-space internals ---------------------------------------------------
# A "record" is (terms, lead) with terms a monic dict in order space.


def _monic(terms: Dict[Monomial, int], p: int):
    lead = max(terms)
    c = terms[lead]
    if c != 1:
        inv = pow(c, -1, p)
        terms = {m: v * inv % p for m, v in terms.items()}
    return terms, lead


def _divisor(rec):
    terms, lead = rec
    return (lead, 1, tuple((m, c) for m, c in terms.items() if m != lead))


def _spoly_terms(a, b, p):
    (ta, la), (tb, lb) = a, b
    lcm = tuple(map(max, la, lb))
    qa = tuple(map(operator.sub, lcm, la))
    qb = tuple(map(operator.sub, lcm, lb))
    out: Dict[Monomial, int] = {}
    for m, c in ta.items():
        if m != la:
            out[tuple(map(operator.add, m, qa))] = c
    for m, c in tb.items():
        if m == lb:
            continue
        nm = tuple(map(operator.add, m, qb))
        v = (out.get(nm, 0) - c) % p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def _coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _buchberger_records(records: List, p: int) -> List:
    """Run Buchberger on monic order-space records; returns a (non-reduced) basis."""
    basis: List = []
    divisors: List = []
    pairs: List = []

    def insert(rec):
        idx = len(basis)
        basis.append(rec)
        divisors.append(_divisor(rec))
        lead = rec[1]
        for j in range(idx):
            other = basis[j][1]
            if _coprime(lead, other):
                continue
            lcm = tuple(map(max, lead, other))
            heapq.heappush(pairs, (lcm, j, idx))

    for rec in records:
        rem = kernels.reduce_terms(dict(rec[0]), divisors, p) if basis else dict(rec[0])
        if not rem:
            continue
        rec = _monic(rem, p)
        if not any(rec[1]):
            return [rec]
        insert(rec)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        s = _spoly_terms(basis[i], basis[j], p)
        if not s:
            continue
        rem = kernels.reduce_terms(s, divisors, p)
        if not rem:
            continue
        rec = _monic(rem, p)
        if not any(rec[1]):
            return [rec]
        insert(rec)
    return basis


def _reduce_records(basis: List, p: int) -> List:
    """Minimal, inter-reduced, monic, sorted by descending leading monomial."""
    if len(basis) == 1 and not any(basis[0][1]):
        return basis
    basis = sorted(basis, key=lambda r: r[1])
    minimal = []
    for k, rec in enumerate(basis):
        lead = rec[1]
        # smaller leads come first, so any divisor of this lead was seen already
        if any(_divides(other[1], lead) for other in minimal):
            continue
        minimal.append(rec)
    changed = True
    while changed:
        changed = False
        out = []
        for k, rec in enumerate(minimal):
            others = [_divisor(r) for n, r in enumerate(minimal) if n != k]
            rem = kernels.reduce_terms(dict(rec[0]), others, p)
            new = _monic(rem, p)
            if new[0] != rec[0]:
                changed = True
            out.append(new)
        minimal = out
    minimal.sort(key=lambda r: r[1], reverse=True)
    return minimal


def _check_inputs(F: Sequence[Polynomial], order: LexOrder):
    nvars = order.nvars
    modulus = None
    for f in F:
        if f.nvars != nvars:
            raise ArityError(f"polynomial has {f.nvars} variables, order has {nvars}")
        if modulus is None:
            modulus = f.modulus
        elif f.modulus != modulus:
            raise ArityError("inputs over different moduli")
    return modulus


def buchberger(F: Sequence[Polynomial], order: LexOrder) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``F``.

    Pairs are processed smallest-lcm first (normal strategy) and pairs with
    coprime leading monomials are skipped. Zero inputs are dropped; an ideal
    containing 1 yields the basis ``(1,)``.
    """
    p = _check_inputs(F, order)
    records = [_monic(_to_order_space(f.terms, order), p) for f in F if not f.is_zero()]
    if not records:
        return GroebnerBasis((), order)
    nvars = order.nvars
    basis = _reduce_records(_buchberger_records(records, p), p)
    gens = tuple(
        Polynomial._raw(_from_order_space(terms, order), nvars, p) for terms, _ in basis
    )
    return GroebnerBasis(gens, order)


def is_consistent(G: GroebnerBasis) -> bool:
    """False iff the basis contains a nonzero constant (the ideal is the whole ring)."""
    return not any(g.is_constant() and not g.is_zero() for g in G.generators)


def ideal_member(f: Polynomial, G: GroebnerBasis) -> bool:
    if not G.generators:
        return f.is_zero()
    return normal_form(f, G.generators, G.order).is_zero()


def is_groebner(G: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-pair reduces to zero."""
    gens = G.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            s = s_polynomial(gens[i], gens[j], G.order)
            if not normal_form(s, gens, G.order).is_zero():
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    """Monic generators, and no term of any generator divisible by another's lead."""
    order = G.order
    leads = [g.leading_monomial(order) for g in G.generators]
    for k, g in enumerate(G.generators):
        if g.terms[leads[k]] != 1:
            return False
        for n, lead in enumerate(leads):
            if n != k and any(_divides(lead, m) for m in g.terms):
                return False
    return True
