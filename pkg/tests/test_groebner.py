import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from fracgb.algebra import LexOrder, Polynomial, evaluate, normal_form, parse_polynomial
from fracgb.errors import ArityError, ZeroPolynomialError
from fracgb.groebner import (
    GroebnerBasis,
    buchberger,
    ideal_member,
    is_consistent,
    is_groebner,
    is_reduced,
    s_polynomial,
)

from strategies import SMALL_PRIME, points, polynomials

LEX2 = LexOrder.default(2)


def _to_sympy(f, gens):
    return sum(
        c * sympy.prod([g**e for g, e in zip(gens, m)]) for m, c in f.terms.items()
    ) if f.terms else sympy.Integer(0)


def _sympy_basis(F, order):
    """Reduced lex basis from sympy, mapped back to our polynomials."""
    nvars, p = order.nvars, F[0].modulus
    ys = sympy.symbols(f"y1:{nvars + 1}")
    gens = [ys[v] for v in order.priority]
    G = sympy.groebner([_to_sympy(f, ys) for f in F], *gens, order="lex", modulus=p)
    out = set()
    for g in G.exprs:
        poly = sympy.Poly(g, *ys, modulus=p)
        out.add(Polynomial({m: int(c) % p for m, c in poly.terms()}, nvars, p))
    return out


# -- S-polynomial -----------------------------------------------------------------


def test_s_polynomial_examples(P):
    f = P("y1^2 - y1", 2)
    assert s_polynomial(f, f, LEX2).is_zero()
    g = P("y1 + y2 - 1", 2)
    s = s_polynomial(f, g, LEX2)
    # (y1^2 - y1) - y1 (y1 + y2 - 1) = -y1*y2
    assert s == P("-y1*y2", 2)
    h = P("y2^2 - y2", 2)
    assert normal_form(s_polynomial(f, h, LEX2), [f, h], LEX2).is_zero()
    with pytest.raises(ZeroPolynomialError):
        s_polynomial(f, Polynomial.zero(2), LEX2)


# -- buchberger -------------------------------------------------------------------


def test_buchberger_examples(P):
    f = P("y1^2 - y1", 2)
    assert buchberger([f], LEX2).generators == (f,)
    G = buchberger([f, P("y2^2 - y2", 2), P("y1 + y2 - 1", 2)], LEX2)
    assert G.generators == (P("y1 + y2 - 1", 2), P("y2^2 - y2", 2))
    assert G.to_text() == "y1 + y2 + 32002\ny2^2 + 32002*y2\n"
    assert buchberger([P("y1", 1), P("y1 - 1", 1)], LexOrder.default(1)).generators == (
        P("1", 1),
    )
    assert buchberger([], LEX2).generators == ()
    assert buchberger([Polynomial.zero(2)], LEX2).generators == ()


def test_buchberger_rejects_mixed_rings(P):
    with pytest.raises(ArityError):
        buchberger([P("y1", 2)], LexOrder.default(3))
    with pytest.raises(ArityError):
        buchberger([P("y1", 2), parse_polynomial("y1", 2, 31)], LEX2)


@given(st.lists(polynomials(), min_size=1, max_size=4), st.permutations(range(3)))
def test_buchberger_matches_sympy_and_certifies(F, perm):
    if all(f.is_zero() for f in F):
        return
    order = LexOrder(tuple(perm))
    G = buchberger(F, order)
    assert is_groebner(G) and is_reduced(G)
    assert all(ideal_member(f, G) for f in F)
    assert set(G.generators) == _sympy_basis([f for f in F if not f.is_zero()], order)
    # idempotent
    assert buchberger(G.generators, order) == G


@given(st.lists(polynomials(max_exp=1), min_size=1, max_size=4))
def test_variety_preserved(F):
    order = LexOrder.default(3)
    cube = [dict(enumerate((x >> 2 & 1, x >> 1 & 1, x & 1))) for x in range(8)]
    G = buchberger(F, order)

    def zeros(polys):
        return {tuple(x.values()) for x in cube if all(evaluate(f, x) == 0 for f in polys)}

    assert zeros(F) == zeros(G.generators)


def test_order_sensitivity(P):
    F = [P("y1 - y2^2", 2), P("y2^3 - 1", 2)]
    a = buchberger(F, LEX2)
    b = buchberger(F, LexOrder((1, 0)))
    assert a.generators != b.generators
    assert all(ideal_member(g, a) for g in b) and all(ideal_member(g, b) for g in a)


# -- predicates on bases ------------------------------------------------------------


def test_is_consistent_examples(P):
    assert not is_consistent(GroebnerBasis((P("1", 2),), LEX2))
    assert is_consistent(GroebnerBasis((), LEX2))
    G = buchberger([P("y1 + y2 - 1", 2), P("y2^2 - y2", 2)], LEX2)
    assert is_consistent(G)
    assert all(evaluate(g, {0: 0, 1: 1}) == 0 for g in G)


def test_ideal_member_examples(P):
    G = buchberger([P("y1", 2)], LEX2)
    assert ideal_member(P("y1*y2", 2), G)
    assert not ideal_member(P("y2", 2), G)
    assert ideal_member(Polynomial.zero(2), GroebnerBasis((), LEX2))
    assert not ideal_member(P("y2", 2), GroebnerBasis((), LEX2))


def test_is_groebner_detects_non_basis(P):
    # {y1*y2 - 1, y1^2} is not a Groebner basis: S-pair gives y1, irreducible
    G = GroebnerBasis((P("y1*y2 - 1", 2), P("y1^2", 2)), LEX2)
    assert not is_groebner(G)


def test_is_reduced_detects_redundancy(P):
    assert not is_reduced(GroebnerBasis((P("y1 + y2", 2), P("y2", 2)), LEX2))
    assert not is_reduced(GroebnerBasis((P("2*y1", 2),), LEX2))
    assert is_reduced(GroebnerBasis((P("y1", 2), P("y2", 2)), LEX2))


@given(polynomials(modulus=SMALL_PRIME), points(3))
def test_boolean_zero_of_basis_zeroes_inputs(f, x):
    # zeros of the basis and of the inputs coincide pointwise
    order = LexOrder.default(3)
    G = buchberger([f], order)
    on_f = evaluate(f, x) == 0
    on_g = all(evaluate(g, x) == 0 for g in G)
    assert on_f == on_g
