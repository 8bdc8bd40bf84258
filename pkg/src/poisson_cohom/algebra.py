"""Exact multivariate polynomial arithmetic over the rationals.

Monomials are exponent tuples ("multi-indices"); polynomials are sparse
dictionaries multi-index -> Fraction.  A single global monomial order is
used everywhere: graded reverse lexicographic with x1 > x2 > ... > xn.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterator

MultiIndex = tuple  # tuple[int, ...], all entries >= 0


def mi_degree(a: MultiIndex) -> int:
    return sum(a)


def mi_add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def mi_unit(n: int, i: int) -> MultiIndex:
    """The i-th unit multi-index (0-based axis)."""
    return tuple(1 if k == i else 0 for k in range(n))


def mi_factorial(a: MultiIndex) -> int:
    out = 1
    for e in a:
        out *= factorial(e)
    return out


def grevlex_key(a: MultiIndex):
    """Sort key realizing grevlex with x1 > ... > xn.

    a > b in grevlex iff |a| > |b|, or degrees tie and the last nonzero
    entry of a-b is negative; that is exactly lexicographic comparison of
    (|a|, (-a_n, ..., -a_1)).
    """
    return (sum(a), tuple(-e for e in reversed(a)))


def mono_basis(n: int, j: int) -> list[MultiIndex]:
    """All multi-indices of degree j in n variables, descending grevlex.

    The position in this list (1-based) is the canonical numbering of the
    degree-j monomials used by every other module.
    """
    if n < 1 or j < 0:
        raise ValueError("need n >= 1 and j >= 0")
    out: list[MultiIndex] = []

    def rec(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], j, n)
    out.sort(key=grevlex_key, reverse=True)
    assert len(out) == comb(n - 1 + j, j)
    return out


_MONO_CACHE: dict = {}


def mono_index(n: int, j: int) -> dict:
    """Map multi-index -> 0-based position in mono_basis(n, j)."""
    key = (n, j)
    if key not in _MONO_CACHE:
        _MONO_CACHE[key] = {a: p for p, a in enumerate(mono_basis(n, j))}
    return _MONO_CACHE[key]


class RatPoly:
    """Sparse polynomial over Fraction coefficients; immutable by convention."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms: dict = {}
        if terms:
            for a, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[a] = c

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "RatPoly":
        return cls(n)

    @classmethod
    def const(cls, n: int, c) -> "RatPoly":
        return cls(n, {tuple([0] * n): Fraction(c)})

    @classmethod
    def var(cls, n: int, i: int) -> "RatPoly":
        """x_{i+1} as a polynomial (0-based axis)."""
        return cls(n, {mi_unit(n, i): Fraction(1)})

    @classmethod
    def monomial(cls, a: MultiIndex, c=1) -> "RatPoly":
        return cls(len(a), {tuple(a): Fraction(c)})

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, a: MultiIndex) -> Fraction:
        return self.terms.get(tuple(a), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(a) for a in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(a) for a in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, j: int) -> "RatPoly":
        return RatPoly(self.n, {a: c for a, c in self.terms.items() if sum(a) == j})

    def leading_monomial(self) -> MultiIndex:
        """The grevlex-maximal stored multi-index."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "RatPoly") -> None:
        if self.n != other.n:
            raise ValueError("dimension mismatch: %d vs %d" % (self.n, other.n))

    def __add__(self, other: "RatPoly") -> "RatPoly":
        self._check(other)
        terms = dict(self.terms)
        for a, c in other.terms.items():
            s = terms.get(a, Fraction(0)) + c
            if s:
                terms[a] = s
            else:
                terms.pop(a, None)
        return RatPoly(self.n, terms)

    def __neg__(self) -> "RatPoly":
        return RatPoly(self.n, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            return self.scale(other)
        self._check(other)
        terms: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                k = mi_add(a, b)
                s = terms.get(k, Fraction(0)) + ca * cb
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
        return RatPoly(self.n, terms)

    __rmul__ = __mul__

    def scale(self, c) -> "RatPoly":
        c = Fraction(c)
        if not c:
            return RatPoly(self.n)
        return RatPoly(self.n, {a: c * v for a, v in self.terms.items()})

    def partial(self, i: int) -> "RatPoly":
        """Exact partial derivative along axis i (0-based)."""
        if not (0 <= i < self.n):
            raise ValueError("axis out of range")
        terms: dict = {}
        for a, c in self.terms.items():
            if a[i] == 0:
                continue
            b = list(a)
            b[i] -= 1
            terms[tuple(b)] = c * a[i]
        return RatPoly(self.n, terms)

    def partial_multi(self, a: MultiIndex) -> "RatPoly":
        p = self
        for i, e in enumerate(a):
            for _ in range(e):
                p = p.partial(i)
        return p

    def __eq__(self, other) -> bool:
        return isinstance(other, RatPoly) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __repr__(self) -> str:
        return "RatPoly(%d, %s)" % (self.n, format_poly(self))

    def __str__(self) -> str:
        return format_poly(self)


def poly_mul(p: RatPoly, q: RatPoly) -> RatPoly:
    return p * q


def leading_monomial(p: RatPoly) -> MultiIndex:
    return p.leading_monomial()


# ----------------------------------------------------------------------
# Text syntax: integer/rational coefficients, x1..xn variables, + - * ^;
# implicit multiplication is not accepted (write 4*x1*x2 + x3^2).
# ----------------------------------------------------------------------

class PolyParseError(ValueError):
    pass


def _tokenize(text: str) -> Iterator[tuple]:
    i, m = 0, len(text)
    while i < m:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            yield ("op", ch)
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < m and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            # rational literal a/b
            if j < m and text[j] == "/":
                k = j + 1
                while k < m and text[k].isdigit():
                    k += 1
                if k == j + 1:
                    raise PolyParseError("bad rational literal near %r" % text[i:j + 1])
                yield ("num", Fraction(num, int(text[j + 1:k])))
                i = k
            else:
                yield ("num", Fraction(num))
                i = j
            continue
        if ch in ("x", "d"):
            j = i + 1
            while j < m and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise PolyParseError("bad symbol near %r" % text[i:i + 2])
            yield (ch, int(text[i + 1:j]))
            i = j
            continue
        raise PolyParseError("unexpected character %r" % ch)
    yield ("end", None)


class _Parser:
    """Recursive descent for sums of *-joined powered atoms."""

    def __init__(self, text: str, n: int):
        self.toks = list(_tokenize(text))
        self.pos = 0
        self.n = n

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def parse_poly(self) -> RatPoly:
        p = self.parse_sum()
        if self.peek()[0] != "end":
            raise PolyParseError("trailing input at token %r" % (self.peek(),))
        return p

    def parse_sum(self) -> RatPoly:
        sign = 1
        if self.peek() == ("op", "+"):
            self.take()
        elif self.peek() == ("op", "-"):
            self.take()
            sign = -1
        p = self.parse_term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.parse_term()
            p = p + q.scale(-1 if op == "-" else 1)
        return p

    def parse_term(self) -> RatPoly:
        p = self.parse_factor()
        while self.peek() == ("op", "*"):
            self.take()
            p = p * self.parse_factor()
        return p

    def parse_factor(self) -> RatPoly:
        p = self.parse_atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1 or val < 0:
                raise PolyParseError("exponent must be a non-negative integer")
            out = RatPoly.const(self.n, 1)
            for _ in range(int(val)):
                out = out * p
            return out
        return p

    def parse_atom(self) -> RatPoly:
        kind, val = self.take()
        if kind == "num":
            return RatPoly.const(self.n, val)
        if kind == "x":
            if not (1 <= val <= self.n):
                raise PolyParseError("variable x%d out of range for n=%d" % (val, self.n))
            return RatPoly.var(self.n, val - 1)
        if kind == "op" and val == "(":
            p = self.parse_sum()
            if self.take() != ("op", ")"):
                raise PolyParseError("missing closing parenthesis")
            return p
        raise PolyParseError("unexpected token %r" % ((kind, val),))


def parse_poly(text: str, n: int) -> RatPoly:
    return _Parser(text, n).parse_poly()


def format_poly(p: RatPoly) -> str:
    """Canonical text form; round-trips through parse_poly."""
    if p.is_zero():
        return "0"
    parts = []
    for a, c in p.sorted_terms():
        factors = []
        for i, e in enumerate(a):
            if e == 1:
                factors.append("x%d" % (i + 1))
            elif e > 1:
                factors.append("x%d^%d" % (i + 1, e))
        mag = abs(c)
        if not factors or mag != 1:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]
