import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracgb import _kernels_py as py
from fracgb import kernels
from fracgb.algebra import LexOrder, make_divisors
from fracgb.encode import pack_polynomials, pack_predicates
from fracgb.instances import NOT2, OXR

from strategies import SMALL_PRIME, instances, polynomials

try:
    from fracgb import _ckernels as cy
except ImportError:  # extension not built
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


@needs_ext
@given(polynomials(max_terms=6, max_exp=3), st.lists(polynomials(), min_size=1, max_size=3))
def test_reduce_terms_parity(f, G):
    G = [g for g in G if not g.is_zero()]
    if not G:
        return
    divs = make_divisors(G, LexOrder.default(3))
    assert cy.reduce_terms(dict(f.terms), divs, SMALL_PRIME) == py.reduce_terms(
        dict(f.terms), divs, SMALL_PRIME
    )


@needs_ext
@given(st.lists(polynomials(max_exp=2), max_size=4))
def test_zero_flags_parity(F):
    masks, coefs, offsets = pack_polynomials(F, 3)
    a = cy.zero_flags(masks, coefs, offsets, SMALL_PRIME, 3)
    b = py.zero_flags(masks, coefs, offsets, SMALL_PRIME, 3)
    assert list(a) == list(b)


@needs_ext
@pytest.mark.parametrize("kind", [NOT2, OXR])
@given(data=st.data())
def test_sat_counts_parity(kind, data):
    inst = data.draw(instances(kind, max_n=6, max_m=8))
    bits = {v: v for v in range(inst.num_literals)}
    lits, tables = pack_predicates(inst.predicates, bits)
    n = inst.num_literals
    assert list(cy.sat_counts(lits, tables, n)) == list(py.sat_counts(lits, tables, n))


def test_large_modulus_falls_back():
    p = (1 << 61) - 1
    rem = kernels.reduce_terms({(2,): 1}, [((1,), 1, (((0,), p - 1),))], p)
    assert rem == {(0,): 1}


def test_environment_forces_python_backend():
    env = dict(os.environ, FRACGB_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import fracgb; print(fracgb.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
