"""Kernel selection.

The compiled extension is used when it imports cleanly; otherwise, or when
``FRACGB_PURE_PYTHON`` is set to a non-empty value, the pure-Python versions
are used. ``BACKEND`` names the active implementation.
"""
import os

from . import _kernels_py

if os.environ.get("FRACGB_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

# The compiled reducer multiplies coefficients in 64-bit integers.
_C_MODULUS_LIMIT = 1 << 31


def reduce_terms(terms, divisors, modulus):
    if modulus >= _C_MODULUS_LIMIT:
        return _kernels_py.reduce_terms(terms, divisors, modulus)
    return _impl.reduce_terms(terms, divisors, modulus)


sat_counts = _impl.sat_counts


def zero_flags(masks, coefs, offsets, modulus, nbits):
    if modulus >= _C_MODULUS_LIMIT:
        return _kernels_py.zero_flags(masks, coefs, offsets, modulus, nbits)
    return _impl.zero_flags(masks, coefs, offsets, modulus, nbits)


__all__ = ["BACKEND", "reduce_terms", "sat_counts", "zero_flags"]
