"""Formula constructions over the multiplicative monoid: the seven basic
definable predicates, divisibility / lcm / multiplication of encoded
naturals, monomial and equation encoders, translation of existential
divisibility systems, constant elimination, and the word-equation bridge.

Naturals are encoded as powers of w+1: the natural i is represented by the
ordinal (w+1)^i, so products of codes encode sums and the lcm identity

    x*y = (lcm(x+y, x+y+1) - lcm(x, x+1) - lcm(y, y+1)) / 2

carries multiplication through lcm, which itself reduces to divisibility.

Bound-variable base names are stable so witness families can be bound per
base name in an EvalConfig:

    zc  commuting witness, shape ((w+1)^n (w^2+1))^r
    tw  power-of-(w+1) witness
    m   common-multiple candidate (universal), power of w+1
    s   scaling factor (universal), power of w
    r   lcm value, power of w+1 at exponents k(k+1)
    p   partial product of monomial encodings, power of w+1
    lv, rv  encoded linear-term values, powers of w+1
    ca, cb, cc, cd  stand-ins for the constants 1, w, w+1, w^2+1
    cz  auxiliary witnesses for the stand-in matrices
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .factorization import jacobsthal_factorize
from .logic import (
    And,
    Const,
    Eq,
    Exists,
    Forall,
    Formula,
    FreshNames,
    Implies,
    LTerm,
    Neq,
    Not,
    Or,
    Prod,
    Var,
    all_var_names,
    conj,
    disj,
    free_vars,
    is_prenex,
    matrix_of,
    prefix_blocks,
    prenex,
    product_of,
    rename_var,
    substitute,
    substitute_parallel,
)
from .ordinal import ONE, Ordinal, is_successor

C1 = Const("1")
CW = Const("w")
CW1 = Const("w+1")
CW21 = Const("w2+1")


def _times(*factors: LTerm) -> LTerm:
    return product_of(list(factors))


def _const_power(symbol_term: LTerm, n: int) -> LTerm:
    return product_of([symbol_term] * n) if n else C1


# --- the domain formula -------------------------------------------------------


def theta(var: str = "x") -> Formula:
    """Quantifier-free formula satisfied exactly by the powers (w+1)^i:
    x(w+1) = (w+1)x and x(w+1) != x."""
    x = Var(var)
    return And(
        Eq(_times(x, CW1), _times(CW1, x)),
        Neq(_times(x, CW1), x),
    )


# --- the seven basic predicates -------------------------------------------------


def _prime_matrix(x: LTerm, y: LTerm, z: LTerm) -> Formula:
    """x has exactly two right divisors: x*x != x and any successor-like
    right divisor of x is x itself."""
    return And(
        Neq(_times(x, x), x),
        Implies(And(Neq(_times(y, y), y), Eq(x, _times(z, y))), Eq(y, x)),
    )


def _left_absorbed_matrix(x: LTerm, t: LTerm) -> Formula:
    """t is not idempotent and t*x = x."""
    return And(Neq(_times(t, t), t), Eq(_times(t, x), x))


def _lim_prime_matrix(x: LTerm, y: LTerm, z: LTerm, t: LTerm) -> Formula:
    return And(_prime_matrix(x, y, z), _left_absorbed_matrix(x, t))


def _left_divisors_commute_matrix(x: LTerm, y: LTerm, z: LTerm) -> Formula:
    return Implies(
        And(Eq(_times(y, x), x), Eq(_times(z, x), x)),
        Eq(_times(y, z), _times(z, y)),
    )


def _omega_matrix(x: LTerm, y: LTerm, z: LTerm, t: LTerm) -> Formula:
    return And(_lim_prime_matrix(x, y, z, t), _left_divisors_commute_matrix(x, y, z))


def _omega_plus_one_matrix(x: LTerm, y: LTerm, z: LTerm, u: LTerm, t: LTerm) -> Formula:
    """x is the one prime p != w with p*w = w^2."""
    return conj(
        _prime_matrix(x, y, z),
        _omega_matrix(u, y, z, t),
        Eq(_times(x, u), _times(u, u)),
        Neq(_times(x, u), _times(u, x)),
    )


def _omega_square_plus_one_matrix(
    x: LTerm, y: LTerm, z: LTerm, u: LTerm, t: LTerm
) -> Formula:
    """x is the one prime with x*w = w^3 (and x*w != w*x, mirroring the
    w+1 case)."""
    return conj(
        _prime_matrix(x, y, z),
        _omega_matrix(u, y, z, t),
        Eq(_times(x, u), _times(u, u, u)),
        Neq(_times(x, u), _times(u, x)),
    )


def build_predicate(which: str, variant: Optional[str] = None, var: str = "x") -> Formula:
    """Constant-free defining formula for one of: zero, one, prime,
    lim_prime, omega, omega_plus_one, omega_square_plus_one.

    zero, one and lim_prime come in an "existential" and a "universal"
    variant (for lim_prime these are the Et Ayz and Ayz Et forms); the
    default is the universal one where both exist."""
    x = Var(var)
    y, z, t, u = Var("y"), Var("z"), Var("t"), Var("u")
    if which == "zero":
        if variant == "existential":
            return Exists(("y",), And(Neq(_times(y, y), y), Eq(_times(x, y), x)))
        return Forall(("y",), Eq(_times(x, y), x))
    if which == "one":
        if variant == "existential":
            return Exists(("y",), And(Eq(_times(x, x), x), Neq(_times(x, y), x)))
        return Forall(("y",), Eq(_times(x, y), y))
    if which == "prime":
        return Forall(("y", "z"), _prime_matrix(x, y, z))
    if which == "lim_prime":
        if variant == "existential":
            return Exists(("t",), Forall(("y", "z"), _lim_prime_matrix(x, y, z, t)))
        return Forall(("y", "z"), Exists(("t",), _lim_prime_matrix(x, y, z, t)))
    if which == "omega":
        return Exists(("t",), Forall(("y", "z"), _omega_matrix(x, y, z, t)))
    if which == "omega_plus_one":
        return Exists(
            ("u", "t"), Forall(("y", "z"), _omega_plus_one_matrix(x, y, z, u, t))
        )
    if which == "omega_square_plus_one":
        return Exists(
            ("u", "t"),
            Forall(("y", "z"), _omega_square_plus_one_matrix(x, y, z, u, t)),
        )
    raise ValueError(f"unknown predicate {which!r}")


# --- divisibility of encoded naturals -------------------------------------------


def _div_matrix(x: LTerm, y: LTerm, zc: LTerm, tw: LTerm) -> Formula:
    """E(x, y, zc, tw): x = (w+1)^i divides-into y = (w+1)^j.

    Disjuncts: i = 1 (divides everything in the domain); i = j = 0; or the
    generic case via a commuting witness: x = tw*(w+1)^2 pins tw = (w+1)^(i-2),
    zc commutes with tw*(w^2+1) so zc = (tw (w^2+1))^r, and y*w = zc*w forces
    j = i*r."""
    case_one = And(Eq(x, CW1), Eq(_times(y, CW1), _times(CW1, y)))
    case_zero = And(Eq(x, C1), Eq(y, C1))
    witnessed = conj(
        theta_term(x),
        theta_term(y),
        Eq(x, _times(tw, CW1, CW1)),
        Eq(_times(zc, tw, CW21), _times(tw, CW21, zc)),
        Eq(_times(y, CW), _times(zc, CW)),
    )
    return disj(case_one, case_zero, witnessed)


def theta_term(t: LTerm) -> Formula:
    return And(Eq(_times(t, CW1), _times(CW1, t)), Neq(_times(t, CW1), t))


def div_formula(x: str = "x", y: str = "y") -> Formula:
    """Exists zc, tw E(x, y, zc, tw) defining divisibility of the encoded
    naturals; quantifier-free matrix, prefix class E2."""
    names = FreshNames({x, y})
    zc, tw = names.claim("zc"), names.claim("tw")
    return Exists((zc, tw), _div_matrix(Var(x), Var(y), Var(zc), Var(tw)))


def _div_instance(x: LTerm, y: LTerm) -> Formula:
    """Divisibility with arbitrary argument terms; bound names are renamed
    apart later by prenexing."""
    return Exists(("zc", "tw"), _div_matrix(x, y, Var("zc"), Var("tw")))


# --- lcm and multiplication -----------------------------------------------------


def lcm_formula(x: str = "x", y: str = "y", z: str = "z") -> Formula:
    """z encodes lcm(i, j) for x = (w+1)^i, y = (w+1)^j: both divide z,
    every other nonzero common multiple m lies above it (no s scales m*w up
    to z*w), and z = 1 only when x or y is 1 (lcm is 0 exactly when an
    argument is 0; 0 is every natural's multiple, so the minimality guard
    must skip the code of 0).  Prenexed to an E4 A6 formula."""
    names = FreshNames({x, y, z})
    m_name, s_name = names.claim("m"), names.claim("s")
    xv, yv, zv = Var(x), Var(y), Var(z)
    m, s = Var(m_name), Var(s_name)
    guard = conj(
        _div_instance(xv, m),
        _div_instance(yv, m),
        Neq(m, C1),
        Neq(_times(m, CW), _times(zv, CW)),
    )
    above = Forall((s_name,), Neq(_times(s, m, CW), _times(zv, CW)))
    universal = Forall((m_name,), Implies(guard, above))
    zero_only_from_zero = disj(Neq(zv, C1), Eq(xv, C1), Eq(yv, C1))
    return prenex(
        conj(
            _div_instance(xv, zv),
            _div_instance(yv, zv),
            zero_only_from_zero,
            universal,
        )
    )


def _lcm_instance(a: LTerm, b: LTerm, result: LTerm) -> Formula:
    f = lcm_formula("x", "y", "z")
    return substitute_parallel(f, {"x": a, "y": b, "z": result})


def mult_formula(x: str = "x", y: str = "y", z: str = "z") -> Formula:
    """z encodes i*j via three lcm values: with r1 = lcm(i, i+1),
    r2 = lcm(j, j+1), r3 = lcm(i+j, i+j+1) the codes satisfy
    z*z*r1*r2 = r3.  Prenexed to an E15 A6 formula."""
    names = FreshNames({x, y, z})
    r_names = tuple(names.claim(f"r_{i}") for i in (1, 2, 3))
    xv, yv, zv = Var(x), Var(y), Var(z)
    r1, r2, r3 = (Var(n) for n in r_names)
    xy = _times(xv, yv)
    body = conj(
        Eq(_times(zv, zv, r1, r2), r3),
        _lcm_instance(xy, _times(xy, CW1), r3),
        _lcm_instance(xv, _times(xv, CW1), r1),
        _lcm_instance(yv, _times(yv, CW1), r2),
    )
    return prenex(Exists(r_names, body))


def _mult_instance(a: LTerm, b: LTerm, result: LTerm) -> Formula:
    f = mult_formula("x", "y", "z")
    return substitute_parallel(f, {"x": a, "y": b, "z": result})


# --- monomials and equations ----------------------------------------------------

Monomial = Tuple[str, ...]  # variable occurrences; empty = the constant 1


def term_formula(
    w: Sequence[str], result_var: str = "y"
) -> Tuple[Formula, int]:
    """Formula defining "result encodes the product of the occurrence
    values" for a monomial w, together with the size m of its existential
    prefix.  Shape is always E^m A6: the single-occurrence and constant
    cases are padded with a dummy existential and a vacuous universal
    block; longer monomials fold occurrences through the multiplication
    encoder."""
    result = Var(result_var)
    occurrences = tuple(w)
    names = FreshNames(set(occurrences) | {result_var})
    if len(occurrences) <= 1:
        equality = (
            Eq(result, Var(occurrences[0])) if occurrences else Eq(result, C1)
        )
        dummy = names.claim("p")
        universals = tuple(names.fresh("v") for _ in range(6))
        padded = Exists((dummy,), Forall(universals, equality))
        return padded, 1
    if len(occurrences) == 2:
        f = _mult_instance(Var(occurrences[0]), Var(occurrences[1]), result)
        return f, _existential_width(f)
    prefix, last = occurrences[:-1], occurrences[-1]
    partial = names.claim("p")
    sub, _ = term_formula(prefix, result_var=partial)
    f = prenex(
        Exists((partial,), And(sub, _mult_instance(Var(partial), Var(last), result)))
    )
    return f, _existential_width(f)


def _existential_width(f: Formula) -> int:
    return sum(len(vs) for q, vs in prefix_blocks(f) if q == "E")


@dataclass(frozen=True)
class DiophEquation:
    """Sides are multisets of monomials; a monomial is a multiset of
    variable occurrences (empty = the constant 1)."""

    lhs: Tuple[Monomial, ...]
    rhs: Tuple[Monomial, ...]

    def __post_init__(self):
        if not self.lhs or not self.rhs:
            raise ValueError("each side needs at least one monomial")

    def variables(self) -> Tuple[str, ...]:
        seen = []
        for monomial in self.lhs + self.rhs:
            for v in monomial:
                if v not in seen:
                    seen.append(v)
        return tuple(sorted(seen))


def eq_formula(e: DiophEquation) -> Formula:
    """One product variable per monomial, each pinned by its monomial
    encoder, plus the product equation matching the two sides; prenexed to
    E^m A6."""
    n, m = len(e.lhs), len(e.rhs)
    names = FreshNames(e.variables())
    product_vars = [names.claim(f"p_{i}") for i in range(1, n + m + 1)]
    parts: List[Formula] = []
    for name, monomial in zip(product_vars, e.lhs + e.rhs):
        sub, _ = term_formula(monomial, result_var=name)
        parts.append(sub)
    lhs_product = product_of([Var(v) for v in product_vars[:n]])
    rhs_product = product_of([Var(v) for v in product_vars[n:]])
    parts.append(Eq(lhs_product, rhs_product))
    return prenex(Exists(tuple(product_vars), conj(*parts)))


# --- existential divisibility systems --------------------------------------------


@dataclass(frozen=True)
class NatLinearTerm:
    """constant + sum of coeff * variable with nonnegative coefficients."""

    coefficients: Tuple[Tuple[str, int], ...]
    constant: int = 0

    def __post_init__(self):
        if self.constant < 0 or any(c < 0 for _, c in self.coefficients):
            raise ValueError("linear terms have nonnegative coefficients")

    def variables(self) -> Tuple[str, ...]:
        return tuple(v for v, c in self.coefficients if c)

    def value(self, assignment: Mapping[str, int]) -> int:
        return self.constant + sum(c * assignment[v] for v, c in self.coefficients)


@dataclass(frozen=True)
class DivAtom:
    left: NatLinearTerm
    right: NatLinearTerm


@dataclass(frozen=True)
class EqAtom:
    left: NatLinearTerm
    right: NatLinearTerm


NatAtom = (DivAtom, EqAtom)


@dataclass(frozen=True)
class NatSystem:
    """Negation-free disjunction of conjunctions of divisibility and
    equality atoms over linear terms."""

    disjuncts: Tuple[Tuple[object, ...], ...]

    def variables(self) -> Tuple[str, ...]:
        seen = set()
        for conjunction in self.disjuncts:
            for atom in conjunction:
                seen.update(atom.left.variables())
                seen.update(atom.right.variables())
        return tuple(sorted(seen))


def _encode_linear(term: NatLinearTerm) -> LTerm:
    factors: List[LTerm] = []
    for v, c in term.coefficients:
        factors.extend([Var(v)] * c)
    factors.extend([CW1] * term.constant)
    return product_of(factors)


def _divisibility_conjunct(left: NatLinearTerm, right: NatLinearTerm, index: int) -> Formula:
    lv, rv = Var(f"lv_{index}"), Var(f"rv_{index}")
    zc, tw = Var(f"zc_{index}"), Var(f"tw_{index}")
    thetas = [theta_term(Var(v)) for v in sorted(set(left.variables()) | set(right.variables()))]
    body = conj(
        _div_matrix(lv, rv, zc, tw),
        *thetas,
        Eq(lv, _encode_linear(left)),
        Eq(rv, _encode_linear(right)),
    )
    return Exists((lv.name, rv.name, zc.name, tw.name), body)


def translate_nat_existential(s: NatSystem) -> Formula:
    """Existential formula over the enriched signature whose satisfaction at
    the codes (w+1)^i mirrors satisfaction of the system over the naturals,
    and whose every guided solution consists of powers of w+1 (enforced by
    the domain formula on all system variables)."""
    system_vars = s.variables()
    disjunct_formulas = []
    for conjunction in s.disjuncts:
        parts: List[Formula] = []
        covered = set()
        index = 0
        for atom in conjunction:
            if isinstance(atom, DivAtom):
                index += 1
                parts.append(_divisibility_conjunct(atom.left, atom.right, index))
            elif isinstance(atom, EqAtom):
                index += 1
                parts.append(_divisibility_conjunct(atom.left, atom.right, index))
                index += 1
                parts.append(_divisibility_conjunct(atom.right, atom.left, index))
            else:
                raise ValueError(f"negations are not supported: {atom!r}")
            covered.update(atom.left.variables())
            covered.update(atom.right.variables())
        for v in system_vars:
            if v not in covered:
                parts.append(theta_term(Var(v)))
        disjunct_formulas.append(conj(*parts) if parts else Eq(C1, C1))
    return prenex(disj(*disjunct_formulas))


# --- constant elimination ---------------------------------------------------------


class EliminationError(ValueError):
    pass


_CONSTANT_STAND_INS = {"1": "ca", "w": "cb", "w+1": "cc", "w2+1": "cd"}


def _replace_constants(t: LTerm, mapping: Dict[str, str]) -> LTerm:
    if isinstance(t, Const):
        if t.symbol == "0":
            raise EliminationError("the constant 0 has no stand-in")
        return Var(mapping[t.symbol])
    if isinstance(t, Var):
        return t
    return Prod(
        _replace_constants(t.left, mapping), _replace_constants(t.right, mapping)
    )


def _replace_constants_formula(f: Formula, mapping: Dict[str, str]) -> Formula:
    if isinstance(f, Eq):
        return Eq(_replace_constants(f.left, mapping), _replace_constants(f.right, mapping))
    if isinstance(f, Neq):
        return Neq(_replace_constants(f.left, mapping), _replace_constants(f.right, mapping))
    if isinstance(f, And):
        return And(
            _replace_constants_formula(f.left, mapping),
            _replace_constants_formula(f.right, mapping),
        )
    if isinstance(f, Or):
        return Or(
            _replace_constants_formula(f.left, mapping),
            _replace_constants_formula(f.right, mapping),
        )
    raise EliminationError(f"matrix must be negation-free and quantifier-free: {f!r}")


def eliminate_constants(f: Formula) -> Formula:
    """Rewrite a prenex E^m A^k formula (k <= 6) over the enriched signature
    into a constant-free E^(m+8) A6 formula: four stand-in variables pinned
    by the defining matrices of 1, w, w+1 and w^2+1 (the stand-in for w is
    reused as the distinguished-prime witness inside the w+1 and w^2+1
    matrices), plus four auxiliary witnesses."""
    blocks = prefix_blocks(f)
    if not is_prenex(f):
        raise EliminationError("input must be prenex")
    if len(blocks) > 2 or (len(blocks) == 2 and (blocks[0][0] != "E" or blocks[1][0] != "A")):
        raise EliminationError("input prefix must be E^m A^k")
    if len(blocks) == 1 and blocks[0][0] == "A":
        existing_e: Tuple[str, ...] = ()
        existing_a = blocks[0][1]
    else:
        existing_e = blocks[0][1] if blocks else ()
        existing_a = blocks[1][1] if len(blocks) == 2 else ()
    if len(existing_a) > 6:
        raise EliminationError("universal block is wider than 6")

    names = FreshNames(all_var_names(f))
    ca, cb, cc, cd = (names.claim(n) for n in ("ca", "cb", "cc", "cd"))
    witnesses = [names.claim(f"cz_{i}") for i in range(1, 5)]
    universals = list(existing_a)
    while len(universals) < 6:
        universals.append(names.fresh("v"))
    v1, v2 = Var(universals[0]), Var(universals[1])

    matrix = matrix_of(f)
    mapping = {"1": ca, "w": cb, "w+1": cc, "w2+1": cd}
    from .logic import _nnf  # matrices of prenexed inputs are negation-free

    rewritten = _replace_constants_formula(_nnf(matrix), mapping)

    a, b, c, d = Var(ca), Var(cb), Var(cc), Var(cd)
    z1, z2, z3, z4 = (Var(w) for w in witnesses)
    pinned = conj(
        And(Eq(_times(a, a), a), Neq(_times(a, z1), a)),
        _omega_matrix(b, v1, v2, z2),
        _omega_plus_one_matrix(c, v1, v2, b, z3),
        _omega_square_plus_one_matrix(d, v1, v2, b, z4),
        rewritten,
    )
    prefix_vars = (ca, cb, cc, cd, *witnesses, *existing_e)
    return Exists(prefix_vars, Forall(tuple(universals), pinned))


# --- word equations ---------------------------------------------------------------


@dataclass(frozen=True)
class WordEquation:
    """Sides are strings over the alphabet {a, b} plus single-letter
    variables distinct from a and b."""

    lhs: str
    rhs: str

    def variables(self) -> Tuple[str, ...]:
        return tuple(sorted({c for c in self.lhs + self.rhs if c not in "ab"}))


def parse_word_equation(text: str) -> WordEquation:
    if text.count("=") != 1:
        raise ValueError("word equation needs exactly one '='")
    lhs, rhs = (side.strip() for side in text.split("="))
    for side in (lhs, rhs):
        for ch in side:
            if not ch.isalpha():
                raise ValueError(f"bad symbol {ch!r} in word equation")
    return WordEquation(lhs, rhs)


def _word_side_term(side: str) -> LTerm:
    factors: List[LTerm] = []
    for ch in side:
        if ch == "a":
            factors.append(CW1)
        elif ch == "b":
            factors.append(CW21)
        else:
            factors.append(Var(ch))
    return product_of(factors)


def encode_word_equation(we: WordEquation) -> Tuple[Formula, Tuple[Formula, ...]]:
    """The equation with a -> w+1 and b -> w^2+1 substituted, plus one
    inequation (w+1)x != wx per variable forcing each value to be a nonzero
    successor."""
    equation = Eq(_word_side_term(we.lhs), _word_side_term(we.rhs))
    inequations = tuple(
        Neq(_times(CW1, Var(v)), _times(CW, Var(v))) for v in we.variables()
    )
    return equation, inequations


class DecodeError(ValueError):
    pass


def decode_ordinal_solution(solution: Mapping[str, Ordinal]) -> Dict[str, str]:
    """Map each ordinal value back to a word over {a, b}: the value must be
    a successor whose factorization carries no integer coefficients above 1;
    each syllable exponent mu becomes a letter via min(mu, 2) -> a | b."""
    decoded: Dict[str, str] = {}
    for variable, value in solution.items():
        if not value:
            raise DecodeError(f"{variable} = 0 is not a successor")
        if not is_successor(value):
            raise DecodeError(f"{variable} = {value} is a limit ordinal")
        factors = jacobsthal_factorize(value)
        if factors.a0 != 1 or any(a != 1 for _, a in factors.syllables):
            raise DecodeError(
                f"{variable} = {value} carries integer coefficients > 1; "
                "its image is not a product of w+1 and w^2+1"
            )
        word = []
        for mu, _ in factors.syllables:
            word.append("a" if mu == ONE else "b")
        decoded[variable] = "".join(word)
    return decoded


# --- s-expression input for systems and equations ---------------------------------
#
#   NatSystem: (and (div L R) (eq L R) ...) / (or ...) nested; linear term
#   L := (+ item ...) | item, item := (* COEFF var) | var | INT
#   DiophEquation: (= (+ (m x x) (m)) (+ (m y)))


def _linear_from_sexpr(s) -> NatLinearTerm:
    items = s[1:] if isinstance(s, list) and s and s[0] == "+" else [s]
    coefficients: Dict[str, int] = {}
    constant = 0
    for item in items:
        if isinstance(item, str):
            if item.isdigit():
                constant += int(item)
            else:
                coefficients[item] = coefficients.get(item, 0) + 1
        elif isinstance(item, list) and len(item) == 3 and item[0] == "*":
            coefficient, variable = int(item[1]), item[2]
            coefficients[variable] = coefficients.get(variable, 0) + coefficient
        else:
            raise ValueError(f"bad linear term item {item!r}")
    return NatLinearTerm(tuple(sorted(coefficients.items())), constant)


def _system_disjuncts(s) -> List[List[object]]:
    if isinstance(s, list) and s and s[0] == "or":
        out: List[List[object]] = []
        for part in s[1:]:
            out.extend(_system_disjuncts(part))
        return out
    if isinstance(s, list) and s and s[0] == "and":
        product: List[List[object]] = [[]]
        for part in s[1:]:
            branches = _system_disjuncts(part)
            product = [existing + branch for existing in product for branch in branches]
        return product
    if isinstance(s, list) and s and s[0] in ("div", "eq"):
        ctor = DivAtom if s[0] == "div" else EqAtom
        return [[ctor(_linear_from_sexpr(s[1]), _linear_from_sexpr(s[2]))]]
    if isinstance(s, list) and s and s[0] == "not":
        raise ValueError("negations are not supported in divisibility systems")
    raise ValueError(f"bad system node {s!r}")


def parse_nat_system(text: str) -> NatSystem:
    from .logic import _parse_sexprs

    exprs = _parse_sexprs(text)
    if len(exprs) != 1:
        raise ValueError("expected a single system expression")
    return NatSystem(tuple(tuple(c) for c in _system_disjuncts(exprs[0])))


def parse_dioph_equation(text: str) -> DiophEquation:
    from .logic import _parse_sexprs

    exprs = _parse_sexprs(text)
    if len(exprs) != 1 or not isinstance(exprs[0], list) or exprs[0][0] != "=":
        raise ValueError("expected (= lhs rhs)")

    def side(s) -> Tuple[Monomial, ...]:
        items = s[1:] if isinstance(s, list) and s and s[0] == "+" else [s]
        monomials = []
        for item in items:
            if not (isinstance(item, list) and item and item[0] == "m"):
                raise ValueError(f"bad monomial {item!r}")
            monomials.append(tuple(item[1:]))
        return tuple(monomials)

    return DiophEquation(side(exprs[0][1]), side(exprs[0][2]))
