"""Prime-field coefficients and sparse multivariate polynomials under lex order.

Monomials are dense exponent tuples of length ``nvars``; variable ``k``
(0-based) prints as ``y<k+1>``. Coefficients are stored as plain ints in
``[0, p)``; :class:`PrimeFieldElement` is the boxed form handed out by
:func:`leading_term` and :func:`evaluate`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
import operator
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from . import kernels
from .errors import ArityError, ParseError, UnassignedVariableError, ZeroPolynomialError

DEFAULT_PRIME = 32003
# Encoded predicate polynomials take integer values in [-27, 27] on the cube.
MIN_PRIME_EXCLUSIVE = 27

Monomial = Tuple[int, ...]


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """Return ``p`` if it is a prime larger than 27, else raise ``ValueError``."""
    from sympy import isprime

    if not isinstance(p, int) or p <= MIN_PRIME_EXCLUSIVE or not isprime(p):
        raise ValueError(f"modulus must be a prime > {MIN_PRIME_EXCLUSIVE}, got {p!r}")
    return p


@dataclass(frozen=True)
class PrimeFieldElement:
    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise ArityError("field elements over different moduli")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.modulus)

    def inverse(self) -> "PrimeFieldElement":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return PrimeFieldElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * PrimeFieldElement(o, self.modulus).inverse()

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return (other - self.value) % self.modulus == 0
        if isinstance(other, PrimeFieldElement):
            return self.value == other.value and self.modulus == other.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def signed(self) -> int:
        """Representative in (-p/2, p/2]; handy for reading small integers back."""
        v = self.value
        return v - self.modulus if v > self.modulus // 2 else v

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


# -- monomials ---------------------------------------------------------------


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.add, a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """``a / b``; caller guarantees ``b`` divides ``a``."""
    return tuple(map(operator.sub, a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_support(a: Monomial) -> Dict[int, int]:
    """Sparse view ``{variable: exponent}`` with no zero exponents."""
    return {k: e for k, e in enumerate(a) if e}


@dataclass(frozen=True)
class LexOrder:
    """Lexicographic order; ``priority[0]`` is the largest variable."""

    priority: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "priority", tuple(self.priority))
        if sorted(self.priority) != list(range(len(self.priority))):
            raise ValueError(f"priority must be a permutation of 0..n-1: {self.priority}")

    @classmethod
    def default(cls, nvars: int) -> "LexOrder":
        """y1 > y2 > ... > yn."""
        return cls(tuple(range(nvars)))

    @property
    def nvars(self) -> int:
        return len(self.priority)

    @property
    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.priority))

    def key(self, m: Monomial) -> Monomial:
        """Sort key: plain tuple comparison of keys is this order."""
        if self.is_identity:
            return m
        return tuple(m[v] for v in self.priority)

    def unkey(self, k: Monomial) -> Monomial:
        if self.is_identity:
            return k
        m = [0] * len(k)
        for e, v in zip(k, self.priority):
            m[v] = e
        return tuple(m)

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def smallest_first(self) -> Tuple[int, ...]:
        return tuple(reversed(self.priority))


# -- polynomials -------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial over GF(p) in ``nvars`` variables."""

    __slots__ = ("terms", "nvars", "modulus", "_hash")

    def __init__(self, terms: Mapping[Monomial, int], nvars: int, modulus: int = DEFAULT_PRIME):
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != nvars:
                raise ArityError(f"monomial {m} does not have {nvars} exponents")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            c = (clean.get(m, 0) + c) % modulus
            if c:
                clean[m] = c
            else:
                clean.pop(m, None)
        self.terms = clean
        self.nvars = nvars
        self.modulus = modulus
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, int], nvars: int, modulus: int) -> "Polynomial":
        # terms already canonical
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.nvars = nvars
        obj.modulus = modulus
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int, modulus: int = DEFAULT_PRIME) -> "Polynomial":
        return cls._raw({}, nvars, modulus)

    @classmethod
    def constant(cls, c: int, nvars: int, modulus: int = DEFAULT_PRIME) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars, modulus)

    @classmethod
    def variable(cls, k: int, nvars: int, modulus: int = DEFAULT_PRIME) -> "Polynomial":
        if not 0 <= k < nvars:
            raise ArityError(f"variable index {k} outside ring of {nvars} variables")
        m = [0] * nvars
        m[k] = 1
        return cls._raw({tuple(m): 1}, nvars, modulus)

    def _same_ring(self, other: "Polynomial"):
        if self.nvars != other.nvars or self.modulus != other.modulus:
            raise ArityError(
                f"ring mismatch: ({self.nvars} vars, p={self.modulus}) vs "
                f"({other.nvars} vars, p={other.modulus})"
            )

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._same_ring(other)
            return other
        if isinstance(other, PrimeFieldElement):
            other = other.value
        if isinstance(other, int):
            return Polynomial.constant(other, self.nvars, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.modulus
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = (terms.get(m, 0) + c) % p
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Polynomial._raw(terms, self.nvars, p)

    __radd__ = __add__

    def __neg__(self):
        p = self.modulus
        return Polynomial._raw({m: p - c for m, c in self.terms.items()}, self.nvars, p)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.modulus
        terms: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(map(operator.add, m1, m2))
                v = (terms.get(m, 0) + c1 * c2) % p
                if v:
                    terms[m] = v
                else:
                    terms.pop(m, None)
        return Polynomial._raw(terms, self.nvars, p)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1, self.nvars, self.modulus)
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, mono: Monomial, coef: int) -> "Polynomial":
        p = self.modulus
        coef %= p
        if not coef:
            return Polynomial.zero(self.nvars, p)
        return Polynomial._raw(
            {tuple(map(operator.add, m, mono)): c * coef % p for m, c in self.terms.items()},
            self.nvars,
            p,
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (
                self.nvars == other.nvars
                and self.modulus == other.modulus
                and self.terms == other.terms
            )
        if isinstance(other, int):
            return self == Polynomial.constant(other, self.nvars, self.modulus)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.modulus, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def variables(self) -> frozenset:
        """Indices of variables that occur with a nonzero exponent."""
        seen = set()
        for m in self.terms:
            seen.update(k for k, e in enumerate(m) if e)
        return frozenset(seen)

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def leading_monomial(self, order: LexOrder) -> Monomial:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: LexOrder) -> int:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: LexOrder) -> "Polynomial":
        c = self.leading_coefficient(order)
        if c == 1:
            return self
        inv = pow(c, -1, self.modulus)
        p = self.modulus
        return Polynomial._raw({m: v * inv % p for m, v in self.terms.items()}, self.nvars, p)

    def substitute(self, values: Mapping[int, int]) -> "Polynomial":
        """Replace variables by constants; the ring is unchanged."""
        p = self.modulus
        terms: Dict[Monomial, int] = {}
        for m, c in self.terms.items():
            nm = list(m)
            for k, val in values.items():
                e = nm[k]
                if e:
                    c = c * pow(val, e, p) % p
                    nm[k] = 0
            if not c:
                continue
            nm = tuple(nm)
            v = (terms.get(nm, 0) + c) % p
            if v:
                terms[nm] = v
            else:
                terms.pop(nm, None)
        return Polynomial._raw(terms, self.nvars, p)

    def sorted_terms(self, order: LexOrder | None = None):
        order = order or LexOrder.default(self.nvars)
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def to_text(self, order: LexOrder | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms(order):
            factors = []
            for k, e in enumerate(m):
                if e == 1:
                    factors.append(f"y{k + 1}")
                elif e:
                    factors.append(f"y{k + 1}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"Polynomial({self.to_text()!r}, nvars={self.nvars}, p={self.modulus})"


# -- operations --------------------------------------------------------------


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    a._same_ring(b)
    return a + b


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    a._same_ring(b)
    return a * b


def negate(a: Polynomial) -> Polynomial:
    return -a


def leading_term(f: Polynomial, order: LexOrder) -> Tuple[Monomial, PrimeFieldElement]:
    m = f.leading_monomial(order)
    return m, PrimeFieldElement(f.terms[m], f.modulus)


def _to_order_space(terms: Mapping[Monomial, int], order: LexOrder) -> Dict[Monomial, int]:
    if order.is_identity:
        return dict(terms)
    return {order.key(m): c for m, c in terms.items()}


def _from_order_space(terms: Mapping[Monomial, int], order: LexOrder) -> Dict[Monomial, int]:
    if order.is_identity:
        return dict(terms)
    return {order.unkey(m): c for m, c in terms.items()}


def make_divisors(G: Sequence[Polynomial], order: LexOrder):
    """Divisor records in order space, as consumed by ``kernels.reduce_terms``."""
    out = []
    for g in G:
        if g.is_zero():
            raise ZeroPolynomialError("divisor list contains the zero polynomial")
        terms = _to_order_space(g.terms, order)
        lead = max(terms)
        inv = pow(terms[lead], -1, g.modulus)
        tail = tuple((m, c) for m, c in terms.items() if m != lead)
        out.append((lead, inv, tail))
    return out


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: LexOrder) -> Polynomial:
    """Remainder of ``f`` on division by ``G`` (full reduction).

    The current leading monomial is always reduced by the first member of
    ``G`` whose leading monomial divides it.
    """
    for g in G:
        f._same_ring(g)
    if order.nvars != f.nvars:
        raise ArityError(f"order is for {order.nvars} variables, ring has {f.nvars}")
    if f.is_zero() or not G:
        return f
    rem = kernels.reduce_terms(_to_order_space(f.terms, order), make_divisors(G, order), f.modulus)
    return Polynomial._raw(_from_order_space(rem, order), f.nvars, f.modulus)


def evaluate(f: Polynomial, point: Mapping[int, int]) -> PrimeFieldElement:
    """Value of ``f`` at ``point`` (variable index -> value)."""
    p = f.modulus
    total = 0
    for m, c in f.terms.items():
        for k, e in enumerate(m):
            if e:
                try:
                    v = point[k]
                except KeyError:
                    raise UnassignedVariableError(f"y{k + 1} is not assigned") from None
                c = c * pow(v, e, p) % p
        total += c
    return PrimeFieldElement(total, p)


# -- text form ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|y(\d+)|(\^)|(\*)|([+-])|(\()|(\)))")


class _Parser:
    """Recursive-descent parser for ``+ - * ^`` expressions over ``y<k>``."""

    def __init__(self, text: str, nvars: int, modulus: int, line=None):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            if not mt or mt.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r} in {text!r}", line)
            pos = mt.end()
            num, var, caret, star, sign, lp, rp = mt.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif var is not None:
                self.tokens.append(("var", int(var)))
            else:
                self.tokens.append((caret or star or sign or lp or rp, None))
        self.pos = 0
        self.nvars = nvars
        self.modulus = modulus
        self.line = line

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial", self.line)
        out = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing tokens after position {self.pos}", self.line)
        return out

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        out = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self):
        out = self.power()
        while self.peek() == "*":
            self.take()
            out = out * self.power()
        return out

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            if self.peek() != "num":
                raise ParseError("exponent must be a non-negative integer", self.line)
            base = base ** self.take()[1]
        return base

    def atom(self):
        kind = self.peek()
        if kind == "num":
            return Polynomial.constant(self.take()[1], self.nvars, self.modulus)
        if kind == "var":
            k = self.take()[1]
            if not 1 <= k <= self.nvars:
                raise ParseError(f"y{k} outside ring of {self.nvars} variables", self.line)
            return Polynomial.variable(k - 1, self.nvars, self.modulus)
        if kind == "(":
            self.take()
            inner = self.expr()
            if self.peek() != ")":
                raise ParseError("unbalanced parenthesis", self.line)
            self.take()
            return inner
        if kind == "-":
            self.take()
            return -self.atom()
        raise ParseError(f"unexpected token {kind!r}", self.line)


def max_variable_index(text: str) -> int:
    """Largest 1-based ``y<k>`` index mentioned in ``text`` (0 if none)."""
    return max((int(k) for k in re.findall(r"y(\d+)", text)), default=0)


def parse_polynomial(text: str, nvars: int, modulus: int = DEFAULT_PRIME, line=None) -> Polynomial:
    """Parse the textual form (also accepts ``-``, parentheses and unreduced integers)."""
    return _Parser(text, nvars, modulus, line).parse()


def format_system(polys: Iterable[Polynomial], order: LexOrder | None = None) -> str:
    return "".join(f.to_text(order) + "\n" for f in polys)
