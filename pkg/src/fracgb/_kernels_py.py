"""Pure-Python kernels.

These are the reference versions of the hot loops. ``_ckernels.pyx`` holds
typed copies that are compiled when Cython is available; ``kernels`` picks one
at import time. Both must return identical results for identical inputs.

Monomials handed to ``reduce_terms`` are exponent tuples already permuted into
"order space", so plain tuple comparison is the lexicographic order.
"""
from array import array
from operator import add, sub


def reduce_terms(terms, divisors, modulus):
    """Fully reduce ``terms`` by ``divisors`` and return the remainder.

    ``terms`` maps monomial -> coefficient in [1, modulus) and is consumed.
    ``divisors`` is a list of ``(lead, inv_lead_coef, tail)`` where ``tail`` is
    a tuple of ``(monomial, coefficient)`` pairs without the leading term. The
    first divisor (in list order) whose lead divides the current leading
    monomial is used.
    """
    rem = {}
    while terms:
        m = max(terms)
        c = terms.pop(m)
        for lead, inv, tail in divisors:
            for a, b in zip(lead, m):
                if a > b:
                    break
            else:
                q = tuple(map(sub, m, lead))
                factor = c * inv % modulus
                for tm, tc in tail:
                    nm = tuple(map(add, tm, q))
                    v = (terms.get(nm, 0) - factor * tc) % modulus
                    if v:
                        terms[nm] = v
                    else:
                        terms.pop(nm, None)
                break
        else:
            rem[m] = c
    return rem


def sat_counts(lits, tables, nbits):
    """Number of satisfied predicates at every point of the boolean cube.

    Predicate ``k`` reads the bits ``lits[3k:3k+3]`` (``-1`` = unused slot)
    and is satisfied at a point when bit ``i0 + 2*i1 + 4*i2`` of
    ``tables[k]`` is set, where ``i`` are the point's bits at those slots.
    """
    size = 1 << nbits
    counts = array("i", bytes(4 * size))
    for k in range(len(tables)):
        table = tables[k]
        if table == 0:
            continue
        a, b, c = lits[3 * k], lits[3 * k + 1], lits[3 * k + 2]
        if table == 255:
            for x in range(size):
                counts[x] += 1
            continue
        for x in range(size):
            idx = 0
            if a >= 0:
                idx = (x >> a) & 1
            if b >= 0:
                idx |= ((x >> b) & 1) << 1
            if c >= 0:
                idx |= ((x >> c) & 1) << 2
            if (table >> idx) & 1:
                counts[x] += 1
    return counts


def zero_flags(masks, coefs, offsets, modulus, nbits):
    """Flag the boolean points where every polynomial vanishes.

    Polynomial ``k`` owns terms ``offsets[k]:offsets[k+1]``; a term contributes
    its coefficient at point ``x`` iff its support mask is contained in ``x``.
    """
    size = 1 << nbits
    npolys = len(offsets) - 1
    flags = array("b", bytes(size))
    for x in range(size):
        ok = 1
        for k in range(npolys):
            total = 0
            for t in range(offsets[k], offsets[k + 1]):
                if masks[t] & x == masks[t]:
                    total += coefs[t]
            if total % modulus:
                ok = 0
                break
        flags[x] = ok
    return flags
