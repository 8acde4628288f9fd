"""Exact arithmetic on ordinals below epsilon_0 in Cantor normal form.

An ordinal is a finite sum  w^e_r * c_r + ... + w^e_1 * c_1  with ordinal
exponents e_r > ... > e_1 >= 0 (themselves in the same representation) and
integer coefficients c_i >= 1.  The empty sum is 0; the single term
(0, n) is the natural number n.  Naturals are plain Python ints throughout
(arbitrary precision, never negative).

All values are immutable and structurally canonical: two ordinals are equal
iff their term sequences are identical.  Every operation is a pure function.
"""

from __future__ import annotations

import re
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, Tuple


class Order(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class UndefinedForZero(ValueError):
    """Operation requires a nonzero ordinal."""


class LeftSubtractionError(ValueError):
    """left_sub(l, m) requires l <= m."""


class OrdinalSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


Term = Tuple["Ordinal", int]


class Ordinal:
    """Canonical CNF value.  The constructor trusts its input; build values
    through from_int / omega_power / the arithmetic functions, or run
    validate() on anything of dubious provenance."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Term] = ()):
        self.terms: Tuple[Term, ...] = tuple(terms)
        self._hash = None

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other: object) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(self.terms)
            self._hash = h
        return h

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __lt__(self, other: "Ordinal") -> bool:
        return compare(self, _coerce(other)) is Order.LESS

    def __le__(self, other: "Ordinal") -> bool:
        return compare(self, _coerce(other)) is not Order.GREATER

    def __gt__(self, other: "Ordinal") -> bool:
        return compare(self, _coerce(other)) is Order.GREATER

    def __ge__(self, other: "Ordinal") -> bool:
        return compare(self, _coerce(other)) is not Order.LESS

    def __add__(self, other) -> "Ordinal":
        return add(self, _coerce(other))

    def __radd__(self, other) -> "Ordinal":
        return add(_coerce(other), self)

    def __mul__(self, other) -> "Ordinal":
        return mul(self, _coerce(other))

    def __rmul__(self, other) -> "Ordinal":
        return mul(_coerce(other), self)

    def __pow__(self, n: int) -> "Ordinal":
        return power(self, n)

    def __int__(self) -> int:
        if not self.terms:
            return 0
        if len(self.terms) == 1 and not self.terms[0][0]:
            return self.terms[0][1]
        raise OverflowError(f"{self} is not a natural number")

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0])

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal<{format_ordinal(self)}>"


def _coerce(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return from_int(x)
    raise TypeError(f"cannot treat {x!r} as an ordinal")


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))


@lru_cache(maxsize=None)
def from_int(n: int) -> Ordinal:
    if n < 0:
        raise ValueError(f"ordinals are nonnegative, got {n}")
    if n == 0:
        return ZERO
    return Ordinal(((ZERO, n),))


def omega_power(exponent: Ordinal, coefficient: int = 1) -> Ordinal:
    """w^exponent * coefficient as a single-term ordinal."""
    if coefficient < 1:
        raise ValueError(f"coefficient must be >= 1, got {coefficient}")
    return Ordinal(((exponent, coefficient),))


OMEGA = omega_power(ONE)
OMEGA_PLUS_ONE = Ordinal(((ONE, 1), (ZERO, 1)))
OMEGA_SQUARED = omega_power(from_int(2))
OMEGA_SQUARED_PLUS_ONE = Ordinal(((from_int(2), 1), (ZERO, 1)))


def validate(a: Ordinal) -> None:
    """Check the CNF invariants recursively; raise ValueError on violation."""
    if not isinstance(a, Ordinal):
        raise ValueError(f"not an Ordinal: {a!r}")
    prev = None
    for exponent, coefficient in a.terms:
        validate(exponent)
        if not isinstance(coefficient, int) or coefficient < 1:
            raise ValueError(f"bad coefficient {coefficient!r} in {a!r}")
        if prev is not None and compare(exponent, prev) is not Order.LESS:
            raise ValueError(f"exponents not strictly decreasing in {a!r}")
        prev = exponent


def nesting_depth(a: Ordinal) -> int:
    """Height of the exponent tower: 0 for naturals, 1 for w^k shapes, etc."""
    if a.is_finite():
        return 0
    return 1 + max(nesting_depth(e) for e, _ in a.terms)


def compare(a: Ordinal, b: Ordinal) -> Order:
    if a is b:
        return Order.EQUAL
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if ea is not eb and ea.terms != eb.terms:
            return compare(ea, eb)
        if ca != cb:
            return Order.LESS if ca < cb else Order.GREATER
    if len(a.terms) == len(b.terms):
        return Order.EQUAL
    return Order.LESS if len(a.terms) < len(b.terms) else Order.GREATER


@lru_cache(maxsize=None)
def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    if not a.terms:
        return b
    eb, cb = b.terms[0]
    keep = []
    for i, (e, c) in enumerate(a.terms):
        cmp = compare(e, eb)
        if cmp is Order.GREATER:
            keep.append((e, c))
        elif cmp is Order.EQUAL:
            return Ordinal(tuple(keep) + ((eb, c + cb),) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(keep) + b.terms)


@lru_cache(maxsize=None)
def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if not a.terms or not b.terms:
        return ZERO
    da, ca = a.terms[0]
    out = []
    for e, c in b.terms:
        if e.terms:
            out.append((add(da, e), c))
        else:
            # finite part of b multiplies the leading coefficient of a and
            # the tail of a survives unchanged
            out.append((da, ca * c))
            out.extend(a.terms[1:])
    return Ordinal(out)


def power(a: Ordinal, n: int) -> Ordinal:
    """n-fold product by binary exponentiation; power(a, 0) = 1."""
    if n < 0:
        raise ValueError(f"exponent must be >= 0, got {n}")
    result = ONE
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result


def degree(a: Ordinal) -> Ordinal:
    if not a.terms:
        raise UndefinedForZero("degree of 0 is undefined")
    return a.terms[0][0]


def valuation(a: Ordinal) -> Ordinal:
    if not a.terms:
        raise UndefinedForZero("valuation of 0 is undefined")
    return a.terms[-1][0]


def is_successor(a: Ordinal) -> bool:
    if not a.terms:
        raise UndefinedForZero("0 is neither successor nor limit")
    return not a.terms[-1][0]


def is_limit(a: Ordinal) -> bool:
    return not is_successor(a)


def left_sub(l: Ordinal, m: Ordinal) -> Ordinal:
    """The unique v with l + v = m; requires l <= m."""
    lt, mt = l.terms, m.terms
    for i, ((el, cl), (em, cm)) in enumerate(zip(lt, mt)):
        cmp = compare(el, em)
        if cmp is Order.EQUAL and cl == cm:
            continue
        if cmp is Order.LESS or (cmp is Order.EQUAL and cl < cm):
            if cmp is Order.EQUAL:
                return Ordinal(((em, cm - cl),) + mt[i + 1:])
            return Ordinal(mt[i:])
        raise LeftSubtractionError(f"{l} > {m}")
    if len(lt) > len(mt):
        raise LeftSubtractionError(f"{l} > {m}")
    return Ordinal(mt[len(lt):])


# --- text grammar ----------------------------------------------------------
#
#   ordinal := term ("+" term)* | "0"
#   term    := NAT | "w" ("^" "(" ordinal ")" | "^" NAT)? ("*"? NAT)?
#
# The parser accepts non-canonical sums and folds them with add; the printer
# always emits canonical CNF, e.g. "w^(w)*2 + w*3 + 5".

_TOKEN = re.compile(r"\s*(\d+|[w^*+()])")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise OrdinalSyntaxError(f"unexpected character {text[pos]!r}", pos)
            break
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def next(self):
        if self.i >= len(self.tokens):
            raise OrdinalSyntaxError("unexpected end of input", -1)
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, symbol):
        tok, pos = self.next()
        if tok != symbol:
            raise OrdinalSyntaxError(f"expected {symbol!r}, found {tok!r}", pos)

    def ordinal(self) -> Ordinal:
        total = self.term()
        while self.peek() == "+":
            self.next()
            total = add(total, self.term())
        return total

    def term(self) -> Ordinal:
        tok, pos = self.next()
        if tok.isdigit():
            return from_int(int(tok))
        if tok != "w":
            raise OrdinalSyntaxError(f"expected a term, found {tok!r}", pos)
        exponent = ONE
        if self.peek() == "^":
            self.next()
            nxt, npos = self.next()
            if nxt == "(":
                exponent = self.ordinal()
                self.expect(")")
            elif nxt.isdigit():
                exponent = from_int(int(nxt))
            else:
                raise OrdinalSyntaxError(f"expected exponent, found {nxt!r}", npos)
        coefficient = 1
        if self.peek() == "*":
            self.next()
            nxt, npos = self.next()
            if not nxt.isdigit():
                raise OrdinalSyntaxError(f"expected coefficient, found {nxt!r}", npos)
            coefficient = int(nxt)
        elif self.peek() is not None and self.peek().isdigit():
            coefficient = int(self.next()[0])
        if coefficient == 0:
            return ZERO
        return omega_power(exponent, coefficient)


def parse_ordinal(text: str) -> Ordinal:
    tokens = _tokenize(text)
    if not tokens:
        raise OrdinalSyntaxError("empty ordinal literal", 0)
    parser = _Parser(tokens)
    value = parser.ordinal()
    if parser.i != len(tokens):
        raise OrdinalSyntaxError(f"trailing input {parser.peek()!r}", parser.tokens[parser.i][1])
    return value


def format_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for exponent, coefficient in a.terms:
        if not exponent.terms:
            parts.append(str(coefficient))
            continue
        if exponent == ONE:
            body = "w"
        elif exponent.is_finite():
            body = f"w^{int(exponent)}"
        else:
            body = f"w^({format_ordinal(exponent)})"
        if coefficient != 1:
            body += f"*{coefficient}"
        parts.append(body)
    return " + ".join(parts)
