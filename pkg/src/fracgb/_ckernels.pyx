# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; see _kernels_py for the reference semantics."""
from array import array
from operator import add, sub


def reduce_terms(dict terms, list divisors, long long modulus):
    cdef dict rem = {}
    cdef tuple m, lead, tail, q, nm
    cdef Py_ssize_t k, n
    cdef long long c, inv, factor, tc, v
    cdef bint divides
    while terms:
        m = max(terms)
        c = terms.pop(m)
        n = len(m)
        for lead, inv, tail in divisors:
            divides = True
            for k in range(n):
                if <long long>lead[k] > <long long>m[k]:
                    divides = False
                    break
            if divides:
                q = tuple(map(sub, m, lead))
                factor = c * inv % modulus
                for tm, tc in tail:
                    nm = tuple(map(add, tm, q))
                    v = (<long long>terms.get(nm, 0) - factor * tc) % modulus
                    if v < 0:
                        v += modulus
                    if v:
                        terms[nm] = v
                    else:
                        terms.pop(nm, None)
                break
        else:
            rem[m] = c
    return rem


def sat_counts(lits, tables, int nbits):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << nbits
    cdef Py_ssize_t npred = len(tables)
    counts = array("i", bytes(4 * size))
    cdef int[:] cv = counts
    cdef int[:] lv = array("i", lits)
    cdef unsigned char[:] tv = array("B", tables)
    cdef Py_ssize_t k, x
    cdef int a, b, c, idx
    cdef unsigned int table
    for k in range(npred):
        table = tv[k]
        if table == 0:
            continue
        a = lv[3 * k]
        b = lv[3 * k + 1]
        c = lv[3 * k + 2]
        for x in range(size):
            idx = 0
            if a >= 0:
                idx = (x >> a) & 1
            if b >= 0:
                idx |= ((x >> b) & 1) << 1
            if c >= 0:
                idx |= ((x >> c) & 1) << 2
            if (table >> idx) & 1:
                cv[x] += 1
    return counts


def zero_flags(masks, coefs, offsets, long long modulus, int nbits):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << nbits
    cdef long long[:] mv = array("q", masks)
    cdef long long[:] cf = array("q", coefs)
    cdef long long[:] ov = array("q", offsets)
    cdef Py_ssize_t npolys = len(offsets) - 1
    flags = array("b", bytes(size))
    cdef signed char[:] fv = flags
    cdef Py_ssize_t x, k, t
    cdef long long total
    cdef signed char ok
    for x in range(size):
        ok = 1
        for k in range(npolys):
            total = 0
            for t in range(ov[k], ov[k + 1]):
                if mv[t] & x == mv[t]:
                    total = (total + cf[t]) % modulus
            if total % modulus:
                ok = 0
                break
        fv[x] = ok
    return flags
