"""Jacobsthal canonical factorization and the commutation theory of
successor ordinals.

Every ordinal a >= 1 factors uniquely as  w^A1 * A2  where A1 is the
valuation of a and A2 (the maximal successor right factor) is an
alternating product

    a0 (w^mu_1 + 1) a1 (w^mu_2 + 1) ... (w^mu_n + 1) a_n

with integers a_i >= 1 and ordinal exponents mu_i >= 1.  The limit part
w^A1 splits into limit primes (w^(w^xi_1))^n_1 ... with xi_1 > xi_2 > ...
read directly off the CNF of A1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple, Union

from .ordinal import (
    ONE,
    OMEGA_PLUS_ONE,
    OMEGA_SQUARED_PLUS_ONE,
    ZERO,
    Order,
    Ordinal,
    UndefinedForZero,
    add,
    compare,
    format_ordinal,
    from_int,
    is_successor,
    left_sub,
    mul,
    omega_power,
    parse_ordinal,
    power,
    valuation,
)


@dataclass(frozen=True)
class NaturalPrime:
    value: int


@dataclass(frozen=True)
class SuccessorPrime:
    """The prime w^mu + 1 with mu >= 1."""

    mu: Ordinal


@dataclass(frozen=True)
class LimitPrime:
    """The prime w^(w^xi)."""

    xi: Ordinal


PrimeKind = Union[NaturalPrime, SuccessorPrime, LimitPrime]


@dataclass(frozen=True)
class Factorization:
    limit_part: Tuple[Tuple[Ordinal, int], ...]  # (xi, n), xi strictly decreasing
    a0: int
    syllables: Tuple[Tuple[Ordinal, int], ...]  # (mu, a), mu >= 1, a >= 1

    def prime_factors(self) -> Iterator[Tuple[Ordinal, int]]:
        """(prime, multiplicity) pairs in canonical product order."""
        for xi, n in self.limit_part:
            yield omega_power(omega_power(xi)), n
        if self.a0 != 1 or (not self.syllables and not self.limit_part):
            yield from_int(self.a0), 1
        for mu, a in self.syllables:
            yield add(omega_power(mu), ONE), 1
            if a != 1:
                yield from_int(a), 1


class RootSearchBoundExceeded(Exception):
    """The pair commutes but no common root was found within the bound.

    Distinct from a definitive absence: a root may exist with exponents
    beyond the search bound."""

    def __init__(self, a: Ordinal, b: Ordinal, bound: int):
        super().__init__(f"no common root of {a} and {b} with exponents <= {bound}")
        self.pair = (a, b)
        self.bound = bound


def _is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def classify_prime(a: Ordinal) -> Optional[PrimeKind]:
    """The prime kind of a if a is prime (exactly two right divisors),
    decided purely by CNF shape plus integer primality for finite a."""
    if not a:
        raise UndefinedForZero("0 is not in the factorization domain")
    terms = a.terms
    if a.is_finite():
        value = terms[0][1]
        return NaturalPrime(value) if _is_prime_int(value) else None
    if len(terms) == 1 and terms[0][1] == 1:
        exponent = terms[0][0]
        if len(exponent.terms) == 1 and exponent.terms[0][1] == 1:
            return LimitPrime(exponent.terms[0][0])
        return None
    if (
        len(terms) == 2
        and terms[0][1] == 1
        and terms[1] == (ZERO, 1)
    ):
        return SuccessorPrime(terms[0][0])
    return None


def jacobsthal_factorize(a: Ordinal) -> Factorization:
    if not a:
        raise UndefinedForZero("0 has no factorization")
    a1 = valuation(a)
    # divide out w^A1: left-subtract A1 from every exponent
    shifted = [(left_sub(a1, e), c) for e, c in a.terms]
    ascending = shifted[::-1]
    a0 = ascending[0][1]  # exponent 0 after the shift
    syllables = []
    previous = ZERO
    for e, c in ascending[1:]:
        syllables.append((left_sub(previous, e), c))
        previous = e
    return Factorization(limit_part=a1.terms, a0=a0, syllables=tuple(syllables))


def recompose(f: Factorization) -> Ordinal:
    a1 = Ordinal(f.limit_part)
    a2 = from_int(f.a0)
    for mu, a in f.syllables:
        a2 = mul(a2, add(omega_power(mu), ONE))
        if a != 1:
            a2 = mul(a2, from_int(a))
    if not a1:
        return a2
    return mul(omega_power(a1), a2)


def max_successor_right_factor(a: Ordinal) -> Ordinal:
    f = jacobsthal_factorize(a)
    return recompose(Factorization((), f.a0, f.syllables))


def validate_factorization(f: Factorization) -> None:
    previous = None
    for xi, n in f.limit_part:
        if n < 1:
            raise ValueError(f"limit multiplicity {n} < 1")
        if previous is not None and compare(xi, previous) is not Order.LESS:
            raise ValueError("limit exponents not strictly decreasing")
        previous = xi
    if f.a0 < 1:
        raise ValueError(f"a0 = {f.a0} < 1")
    for mu, a in f.syllables:
        if not mu:
            raise ValueError("syllable exponent must be >= 1")
        if a < 1:
            raise ValueError(f"syllable coefficient {a} < 1")


def product_of_factorizations(f: Factorization, g: Factorization) -> Factorization:
    """Factorization of the product, computed without recomposing to CNF.

    When the right factor has no limit part the successor parts concatenate,
    merging the junction coefficient multiplicatively; otherwise the whole
    successor part of f collapses into the exponent of the limit part."""
    if not g.limit_part:
        if not f.syllables:
            return Factorization(f.limit_part, f.a0 * g.a0, g.syllables)
        mu_last, a_last = f.syllables[-1]
        merged = f.syllables[:-1] + ((mu_last, a_last * g.a0),)
        return Factorization(f.limit_part, f.a0, merged + g.syllables)
    degree_a2 = ZERO
    for mu, _ in f.syllables:
        degree_a2 = add(degree_a2, mu)
    exponent = add(add(Ordinal(f.limit_part), degree_a2), Ordinal(g.limit_part))
    return Factorization(exponent.terms, g.a0, g.syllables)


def commute(a: Ordinal, b: Ordinal) -> bool:
    return mul(a, b) == mul(b, a)


def _int_nth_root(value: int, n: int) -> int:
    if value < 2 or n == 1:
        return value
    lo, hi = 1, value
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**n <= value:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _root_candidates(a: Ordinal, bound: int) -> Iterator[Tuple[Ordinal, int]]:
    """Candidate (gamma, j) with power(gamma, j) == a, j ascending.

    Finite a: integer j-th roots.  Otherwise a prefix split of the syllable
    sequence: a j-th root must consist of the first k = n/j syllables with
    the last coefficient replaced by the tail coefficient of a (the junction
    coefficient a_k of a equals that tail coefficient times a0)."""
    if a.is_finite():
        value = int(a)
        for j in range(1, bound + 1):
            root = _int_nth_root(value, j)
            if root**j == value:
                yield from_int(root), j
            if root <= 1 and j > 1:
                break
        return
    f = jacobsthal_factorize(a)
    n = len(f.syllables)
    if n == 0:
        return
    for j in range(1, bound + 1):
        if n % j:
            continue
        k = n // j
        tail_coefficient = f.syllables[-1][1]
        candidate_syllables = f.syllables[: k - 1] + (
            (f.syllables[k - 1][0], tail_coefficient),
        )
        gamma = recompose(Factorization((), f.a0, candidate_syllables))
        if power(gamma, j) == a:
            yield gamma, j


def successor_common_root(
    a: Ordinal, b: Ordinal, search_bound: int = 8
) -> Optional[Tuple[Ordinal, int, int]]:
    """A triple (root, j, n) with root^j = a and root^n = b, both exponents
    within search_bound; None when a and b do not commute (no root can
    exist); RootSearchBoundExceeded when they commute but no root was found
    within the bound."""
    if not a or not b:
        raise UndefinedForZero("roots are defined for ordinals >= 1")
    if not (is_successor(a) and is_successor(b)):
        raise ValueError("both arguments must be successor ordinals")
    if not commute(a, b):
        return None
    if a == ONE and b == ONE:
        return (ONE, 1, 1)
    if a == ONE:
        return (b, 0, 1)
    if b == ONE:
        return (a, 1, 0)
    if a.is_finite() != b.is_finite():
        # a finite and b infinite cannot share a root; commute() above is
        # False for such pairs, so reaching here would be a logic error
        raise RootSearchBoundExceeded(a, b, search_bound)
    for gamma, j in _root_candidates(a, search_bound):
        for n in range(search_bound + 1):
            p = power(gamma, n)
            if p == b:
                return (gamma, j, n)
            if compare(p, b) is Order.GREATER:
                break
    raise RootSearchBoundExceeded(a, b, search_bound)


def commutant_powers(n: int, r_max: int) -> Tuple[Ordinal, ...]:
    """The powers ((w+1)^n (w^2+1))^r for r = 0..r_max: exactly the nonzero
    solutions of z * (w+1)^n (w^2+1) = (w+1)^n (w^2+1) * z."""
    generator = mul(power(OMEGA_PLUS_ONE, n), OMEGA_SQUARED_PLUS_ONE)
    return tuple(power(generator, r) for r in range(r_max + 1))


# --- text form --------------------------------------------------------------
#
# Prime-power products like "2(w+1)" or "(w)^2(w^(w))(w^2+1)3": integers
# bare, successor primes "(w^mu+1)" (mu in the ordinal grammar), limit
# primes "(w^(w^xi))" printed as the parenthesised ordinal with an optional
# "^n" multiplicity.  Used by the CLI's factor command.


def format_factorization(f: Factorization) -> str:
    parts = []
    for prime, multiplicity in f.prime_factors():
        if prime.is_finite():
            parts.append(str(int(prime)))
        else:
            body = f"({format_ordinal(prime).replace(' ', '')})"
            if multiplicity != 1:
                body += f"^{multiplicity}"
            parts.append(body)
    return "".join(parts) if parts else "1"


def parse_factorization(text: str) -> Factorization:
    """Parse the format_factorization output back into a Factorization by
    multiplying the factors and refactorizing."""
    import re

    product = ONE
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos].isdigit():
            m = re.match(r"\d+", text[pos:])
            product = mul(product, from_int(int(m.group(0))))
            pos += m.end()
            continue
        if text[pos] == "(":
            depth = 0
            for end in range(pos, len(text)):
                if text[end] == "(":
                    depth += 1
                elif text[end] == ")":
                    depth -= 1
                    if depth == 0:
                        break
            else:
                raise ValueError(f"unbalanced parentheses in {text!r}")
            factor = parse_ordinal(text[pos + 1 : end])
            pos = end + 1
            multiplicity = 1
            if pos < len(text) and text[pos] == "^":
                m = re.match(r"\^(\d+)", text[pos:])
                if not m:
                    raise ValueError(f"expected multiplicity after ^ in {text!r}")
                multiplicity = int(m.group(1))
                pos += m.end()
            if classify_prime(factor) is None:
                raise ValueError(f"{factor} is not prime")
            product = mul(product, power(factor, multiplicity))
            continue
        raise ValueError(f"unexpected character {text[pos]!r} in factorization")
    return jacobsthal_factorize(product)
