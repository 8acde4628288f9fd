"""Exact evaluation of formulas over CNF ordinals, and family-restricted
(guided) evaluation of quantified formulas.

Quantified variables range over named finite witness families, so a guided
check is exact for the finite restricted structure the families induce.
Relative to the full structure, HoldsInFamilies is sound evidence for a
purely existential formula and FailsInFamilies is sound evidence against a
purely universal one; for mixed prefixes the verdict is family-relative
evidence only, and the Verdict carries a note saying which case applies.

Family bindings are resolved per variable name, falling back to the
variable's base name (the part before a deterministic rename suffix such
as "_3") and then to the configured default family.  Encoders give their
bound variables stable base names precisely so a single config can drive
whole formula batteries.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cmp_to_key, lru_cache
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from . import logic
from .logic import (
    And,
    Const,
    Eq,
    Exists,
    Forall,
    Formula,
    LTerm,
    Neq,
    Not,
    Or,
    Prod,
    Var,
    base_name,
    free_vars,
    is_prenex,
    term_vars,
)
from .factorization import classify_prime, LimitPrime, commutant_powers
from .ordinal import (
    ONE,
    OMEGA,
    OMEGA_PLUS_ONE,
    OMEGA_SQUARED_PLUS_ONE,
    ZERO,
    Order,
    Ordinal,
    compare,
    from_int,
    mul,
    power,
)

Assignment = Mapping[str, Ordinal]

CONSTANT_VALUES: Dict[str, Ordinal] = {
    "0": ZERO,
    "1": ONE,
    "w": OMEGA,
    "w+1": OMEGA_PLUS_ONE,
    "w2+1": OMEGA_SQUARED_PLUS_ONE,
}

DEFAULT_FAMILY_CAP = 100_000


class EvaluationError(ValueError):
    pass


class UnboundVariable(EvaluationError):
    pass


class FamilyTooLarge(EvaluationError):
    pass


class NotPrenex(EvaluationError):
    pass


# --- domain enumeration -------------------------------------------------------


@dataclass(frozen=True)
class DomainBounds:
    """Bounds for exhaustive CNF enumeration.

    depth 1 enumerates flat CNFs whose exponents are the naturals
    0..max_nat_exp; each further level lets exponents range over the whole
    previous level.  Terms per level and coefficients are bounded by
    max_terms and max_coeff."""

    depth: int = 1
    max_terms: int = 3
    max_coeff: int = 3
    max_nat_exp: int = 4


def _level_count(pool_size: int, max_terms: int, max_coeff: int) -> int:
    from math import comb

    return 1 + sum(
        comb(pool_size, k) * max_coeff**k for k in range(1, max_terms + 1)
    )


def enumerate_domain(bounds: DomainBounds, cap: Optional[int] = None) -> Tuple[Ordinal, ...]:
    """All CNF ordinals within the bounds, duplicate-free, sorted ascending."""
    cap = cap if cap is not None else DEFAULT_FAMILY_CAP
    pool: List[Ordinal] = [from_int(i) for i in range(bounds.max_nat_exp + 1)]
    values: List[Ordinal] = list(pool)
    for _ in range(max(bounds.depth, 0)):
        expected = _level_count(len(pool), bounds.max_terms, bounds.max_coeff)
        if expected > cap:
            raise FamilyTooLarge(
                f"domain enumeration would produce {expected} > {cap} ordinals"
            )
        descending = sorted(
            pool, key=cmp_to_key(lambda a, b: compare(a, b).value), reverse=True
        )
        out: List[Ordinal] = [ZERO]
        for k in range(1, bounds.max_terms + 1):
            for exponents in itertools.combinations(descending, k):
                for coefficients in itertools.product(
                    range(1, bounds.max_coeff + 1), repeat=k
                ):
                    out.append(Ordinal(tuple(zip(exponents, coefficients))))
        values = out
        pool = out
    ordered = sorted(set(values), key=cmp_to_key(lambda a, b: compare(a, b).value))
    return tuple(ordered)


# --- witness families ---------------------------------------------------------


@dataclass(frozen=True)
class OmegaPlusOnePowers:
    """(w+1)^i for i = 0..max_exp."""

    max_exp: int


@dataclass(frozen=True)
class CommutantPowers:
    """((w+1)^n (w^2+1))^r for all n <= max_n and r <= max_r."""

    max_n: int
    max_r: int


@dataclass(frozen=True)
class Naturals:
    max: int


@dataclass(frozen=True)
class SyllableWords:
    """Products of words over {w+1, w^2+1} of length <= max_len."""

    max_len: int


@dataclass(frozen=True)
class DomainEnum:
    bounds: DomainBounds


@dataclass(frozen=True)
class Explicit:
    elements: Tuple[Ordinal, ...]


WitnessFamily = Union[
    OmegaPlusOnePowers, CommutantPowers, Naturals, SyllableWords, DomainEnum, Explicit
]


@lru_cache(maxsize=None)
def expand_family(family: WitnessFamily, cap: int) -> Tuple[Ordinal, ...]:
    """Duplicate-free expansion in deterministic order; errors beyond cap."""
    if isinstance(family, OmegaPlusOnePowers):
        _check_cap(family.max_exp + 1, cap, family)
        elements = [power(OMEGA_PLUS_ONE, i) for i in range(family.max_exp + 1)]
    elif isinstance(family, CommutantPowers):
        _check_cap((family.max_n + 1) * (family.max_r + 1), cap, family)
        elements = []
        for n in range(family.max_n + 1):
            elements.extend(commutant_powers(n, family.max_r))
    elif isinstance(family, Naturals):
        _check_cap(family.max + 1, cap, family)
        elements = [from_int(i) for i in range(family.max + 1)]
    elif isinstance(family, SyllableWords):
        _check_cap(2 ** (family.max_len + 1), cap, family)
        elements = []
        for length in range(family.max_len + 1):
            for letters in itertools.product(
                (OMEGA_PLUS_ONE, OMEGA_SQUARED_PLUS_ONE), repeat=length
            ):
                value = ONE
                for letter in letters:
                    value = mul(value, letter)
                elements.append(value)
    elif isinstance(family, DomainEnum):
        elements = list(enumerate_domain(family.bounds, cap))
    elif isinstance(family, Explicit):
        _check_cap(len(family.elements), cap, family)
        elements = list(family.elements)
    else:
        raise TypeError(f"unknown family {family!r}")
    seen = set()
    unique = []
    for e in elements:
        if e not in seen:
            seen.add(e)
            unique.append(e)
    _check_cap(len(unique), cap, family)
    return tuple(unique)


def _check_cap(size: int, cap: int, family) -> None:
    if size > cap:
        raise FamilyTooLarge(f"family {family!r} expands to {size} > {cap} elements")


# --- configuration ------------------------------------------------------------


@dataclass
class EvalConfig:
    families: Dict[str, WitnessFamily]
    bindings: Dict[str, str]  # variable name or base name -> family name
    default_family: str
    domain: DomainBounds = field(default_factory=DomainBounds)
    max_family_size: Optional[int] = None

    def cap(self) -> int:
        env = os.environ.get("ORDLAB_MAX_FAMILY")
        if env is not None:
            return int(env)
        if self.max_family_size is not None:
            return self.max_family_size
        return DEFAULT_FAMILY_CAP

    def family_name_for(self, variable: str) -> str:
        if variable in self.bindings:
            return self.bindings[variable]
        base = base_name(variable)
        if base in self.bindings:
            return self.bindings[base]
        return self.default_family

    def family_for(self, variable: str) -> Tuple[Ordinal, ...]:
        name = self.family_name_for(variable)
        if name not in self.families:
            raise EvaluationError(f"no family named {name!r} for variable {variable!r}")
        return expand_family(self.families[name], self.cap())

    def with_bindings(self, **bindings: str) -> "EvalConfig":
        merged = dict(self.bindings)
        merged.update(bindings)
        return EvalConfig(
            dict(self.families), merged, self.default_family, self.domain, self.max_family_size
        )


D1_BOUNDS = DomainBounds(depth=1, max_terms=3, max_coeff=3, max_nat_exp=4)


def default_config() -> EvalConfig:
    """Config that runs the whole formula battery with zero setup: the
    enumerated base domain as default family plus shape families sized for
    encoded naturals up to the standard test box."""
    lcm_shaped = tuple(power(OMEGA_PLUS_ONE, m * (m + 1)) for m in range(17))
    multiples = tuple(power(OMEGA_PLUS_ONE, e) for e in range(65)) + lcm_shaped
    families: Dict[str, WitnessFamily] = {
        "domain": DomainEnum(D1_BOUNDS),
        "small_domain": DomainEnum(DomainBounds(1, 2, 2, 2)),
        "powers": OmegaPlusOnePowers(80),
        "commutant": CommutantPowers(15, 18),
        "omega_powers": DomainEnum(DomainBounds(1, 1, 1, 300)),
        "lcm_shaped": Explicit(lcm_shaped),
        "multiples": Explicit(multiples),
        "words": SyllableWords(4),
        "const_one": Explicit((ONE,)),
        "const_omega": Explicit((OMEGA,)),
        "const_omega_plus_one": Explicit((OMEGA_PLUS_ONE,)),
        "const_omega_sq_plus_one": Explicit((OMEGA_SQUARED_PLUS_ONE,)),
        "const_witness": Explicit((from_int(2),)),
    }
    bindings = {
        "zc": "commutant",
        "tw": "powers",
        "m": "multiples",
        "s": "omega_powers",
        "r": "lcm_shaped",
        "p": "powers",
        "lv": "powers",
        "rv": "powers",
        "wv": "words",
        "ca": "const_one",
        "cb": "const_omega",
        "cc": "const_omega_plus_one",
        "cd": "const_omega_sq_plus_one",
        "cz": "const_witness",
        "v": "small_domain",
    }
    return EvalConfig(families, bindings, "domain", D1_BOUNDS)


# --- config file format -------------------------------------------------------
#
#   domain.depth = 1              bounds of the default enumeration
#   domain.max_terms = 3
#   domain.max_coeff = 3
#   domain.max_nat_exp = 4
#   family.U = powers 16          powers | commutant | naturals | words |
#   family.C = commutant 2 3        domain | explicit
#   family.D = domain 1 3 3 4
#   family.X = explicit 1, w, w+1
#   bind.u = U                    variable (or base name) -> family
#   default = D
#   max_family_size = 100000


def parse_config(text: str) -> EvalConfig:
    from .ordinal import parse_ordinal

    families: Dict[str, WitnessFamily] = {}
    bindings: Dict[str, str] = {}
    default = None
    domain_kwargs: Dict[str, int] = {}
    max_family_size = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise EvaluationError(f"config line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key.startswith("domain."):
            domain_kwargs[key[len("domain."):]] = int(value)
        elif key.startswith("family."):
            families[key[len("family."):]] = _parse_family(value, lineno, parse_ordinal)
        elif key.startswith("bind."):
            bindings[key[len("bind."):]] = value
        elif key == "default":
            default = value
        elif key == "max_family_size":
            max_family_size = int(value)
        else:
            raise EvaluationError(f"config line {lineno}: unknown key {key!r}")
    domain = DomainBounds(**domain_kwargs) if domain_kwargs else DomainBounds()
    if "domain" not in families:
        families["domain"] = DomainEnum(domain)
    if default is None:
        default = "domain"
    return EvalConfig(families, bindings, default, domain, max_family_size)


def _parse_family(value: str, lineno: int, parse_ordinal) -> WitnessFamily:
    kind, _, rest = value.partition(" ")
    args = rest.split()
    if kind == "powers":
        return OmegaPlusOnePowers(int(args[0]))
    if kind == "commutant":
        return CommutantPowers(int(args[0]), int(args[1]))
    if kind == "naturals":
        return Naturals(int(args[0]))
    if kind == "words":
        return SyllableWords(int(args[0]))
    if kind == "domain":
        if args:
            return DomainEnum(DomainBounds(*map(int, args)))
        return DomainEnum(DomainBounds())
    if kind == "explicit":
        elements = tuple(parse_ordinal(part.strip()) for part in rest.split(",") if part.strip())
        return Explicit(elements)
    raise EvaluationError(f"config line {lineno}: unknown family kind {kind!r}")


# --- term and quantifier-free evaluation ---------------------------------------


def eval_term(t: LTerm, assignment: Assignment) -> Ordinal:
    if isinstance(t, Var):
        try:
            return assignment[t.name]
        except KeyError:
            raise UnboundVariable(f"variable {t.name!r} is unbound") from None
    if isinstance(t, Const):
        return CONSTANT_VALUES[t.symbol]
    return mul(eval_term(t.left, assignment), eval_term(t.right, assignment))


def eval_qf(f: Formula, assignment: Assignment) -> bool:
    if isinstance(f, Eq):
        return eval_term(f.left, assignment) == eval_term(f.right, assignment)
    if isinstance(f, Neq):
        return eval_term(f.left, assignment) != eval_term(f.right, assignment)
    if isinstance(f, Not):
        return not eval_qf(f.body, assignment)
    if isinstance(f, And):
        return eval_qf(f.left, assignment) and eval_qf(f.right, assignment)
    if isinstance(f, Or):
        return eval_qf(f.left, assignment) or eval_qf(f.right, assignment)
    if isinstance(f, logic.Implies):
        return (not eval_qf(f.left, assignment)) or eval_qf(f.right, assignment)
    if isinstance(f, (Exists, Forall)):
        raise EvaluationError("eval_qf requires a quantifier-free formula")
    raise TypeError(f"not a formula: {f!r}")


def eval_in_families(f: Formula, assignment: Assignment, cfg: EvalConfig) -> bool:
    """Reference semantics: direct recursive evaluation of an arbitrary
    formula with every quantifier ranging over its family.  Exponential in
    the quantifier depth; meant for small cross-checks."""
    if isinstance(f, (Eq, Neq)):
        return eval_qf(f, assignment)
    if isinstance(f, Not):
        return not eval_in_families(f.body, assignment, cfg)
    if isinstance(f, And):
        return eval_in_families(f.left, assignment, cfg) and eval_in_families(
            f.right, assignment, cfg
        )
    if isinstance(f, Or):
        return eval_in_families(f.left, assignment, cfg) or eval_in_families(
            f.right, assignment, cfg
        )
    if isinstance(f, logic.Implies):
        return (not eval_in_families(f.left, assignment, cfg)) or eval_in_families(
            f.right, assignment, cfg
        )
    if isinstance(f, (Exists, Forall)):
        combine = any if isinstance(f, Exists) else all
        families = [cfg.family_for(v) for v in f.vars]
        env = dict(assignment)

        def candidates():
            for values in itertools.product(*families):
                for v, value in zip(f.vars, values):
                    env[v] = value
                yield eval_in_families(f.body, env, cfg)

        return combine(candidates())
    raise TypeError(f"not a formula: {f!r}")


# --- guided (family-restricted) checking ---------------------------------------


@dataclass
class Verdict:
    """HoldsInFamilies / FailsInFamilies outcome.

    witness: values of the leading existential prefix on the holding branch
    (empty when there is none).  counterexample: values of the universal
    variables on the first refutation found, taken from the first
    existential branch that satisfied its own constraints; None when no
    branch reached the universal part."""

    holds: bool
    witness: Optional[Dict[str, Ordinal]] = None
    counterexample: Optional[Dict[str, Ordinal]] = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds


def _soundness_note(blocks, holds: bool) -> str:
    kinds = {q for q, _ in blocks}
    if not kinds:
        return "quantifier-free: exact"
    if kinds == {"E"}:
        return (
            "sound for the full structure" if holds else "family-relative evidence"
        )
    if kinds == {"A"}:
        return (
            "family-relative evidence" if holds else "sound for the full structure"
        )
    return "family-relative evidence (mixed prefix)"


def _compile_term(t: LTerm) -> Callable[[Dict[str, Ordinal]], Ordinal]:
    if isinstance(t, Var):
        name = t.name
        return lambda env: env[name]
    if isinstance(t, Const):
        value = CONSTANT_VALUES[t.symbol]
        return lambda env: value
    left = _compile_term(t.left)
    right = _compile_term(t.right)
    return lambda env: mul(left(env), right(env))


# Reduction trees: a compiled matrix that partially evaluates as variables
# bind.  Nodes are ("atom", undecided-vars, eval, negated-eval),
# ("and", children, vars) or ("or", children, vars); reduction against a
# newly bound variable folds decided atoms to booleans and collapses
# decided connectives, so a search prunes as early as the formula allows.

_ATOM, _AND, _OR = 0, 1, 2


def _compile_tree(f: Formula):
    if isinstance(f, (Eq, Neq)):
        left, right = _compile_term(f.left), _compile_term(f.right)
        if isinstance(f, Eq):
            pos = lambda env: left(env) == right(env)  # noqa: E731
            neg = lambda env: left(env) != right(env)  # noqa: E731
        else:
            pos = lambda env: left(env) != right(env)  # noqa: E731
            neg = lambda env: left(env) == right(env)  # noqa: E731
        variables = frozenset(term_vars(f.left) | term_vars(f.right))
        return (_ATOM, variables, pos, neg)
    if isinstance(f, (And, Or)):
        children = (_compile_tree(f.left), _compile_tree(f.right))
        variables = children[0][1] | children[1][1]
        return (_AND if isinstance(f, And) else _OR, variables, children)
    raise EvaluationError(f"matrix must be negation-free and quantifier-free: {f!r}")


def _negate_tree(node):
    if node is True:
        return False
    if node is False:
        return True
    if node[0] == _ATOM:
        return (_ATOM, node[1], node[3], node[2])
    kind = _OR if node[0] == _AND else _AND
    return (kind, node[1], tuple(_negate_tree(c) for c in node[2]))


def _reduce_tree(node, variable: str, env: Dict[str, Ordinal]):
    """Fold the newly bound variable into the tree; returns a node or bool."""
    if variable not in node[1]:
        return node
    if node[0] == _ATOM:
        remaining = node[1] - {variable}
        if not remaining:
            return node[2](env)
        return (_ATOM, remaining, node[2], node[3])
    collapsed = []
    if node[0] == _AND:
        for child in node[2]:
            reduced = child if variable not in child[1] else _reduce_tree(child, variable, env)
            if reduced is False:
                return False
            if reduced is True:
                continue
            collapsed.append(reduced)
        if not collapsed:
            return True
        if len(collapsed) == 1:
            return collapsed[0]
        variables = frozenset().union(*(c[1] for c in collapsed))
        return (_AND, variables, tuple(collapsed))
    for child in node[2]:
        reduced = child if variable not in child[1] else _reduce_tree(child, variable, env)
        if reduced is True:
            return True
        if reduced is False:
            continue
        collapsed.append(reduced)
    if not collapsed:
        return False
    if len(collapsed) == 1:
        return collapsed[0]
    variables = frozenset().union(*(c[1] for c in collapsed))
    return (_OR, variables, tuple(collapsed))


def _tree_conjuncts(node) -> List:
    if node is True:
        return []
    if node is not False and node[0] == _AND:
        out = []
        for child in node[2]:
            out.extend(_tree_conjuncts(child))
        return out
    return [node]


def decompose_prenex(f: Formula) -> Tuple[List[Tuple[str, Tuple[str, ...]]], Formula]:
    blocks = []
    g = f
    while isinstance(g, (Exists, Forall)):
        blocks.append(("E" if isinstance(g, Exists) else "A", g.vars))
        g = g.body
    if not logic._is_quantifier_free(g):
        raise NotPrenex("check_guided requires a prenex formula")
    return blocks, g


def check_guided(f: Formula, assignment: Assignment, cfg: EvalConfig) -> Verdict:
    """Exact truth value of a prenex formula in the family-restricted
    interpretation.  Deterministic: quantified variables are scanned in
    prefix order, families in their enumeration order, and the reported
    witness or counterexample is the first the scan meets (universal
    refutations are searched conjunct by conjunct, in conjunct order)."""
    blocks, matrix = decompose_prenex(f)
    matrix = logic._nnf(matrix)
    for v in free_vars(f):
        if v not in assignment:
            raise UnboundVariable(f"free variable {v!r} is unbound")

    qvars: List[Tuple[str, str]] = []
    for quantifier, variables in blocks:
        for v in variables:
            qvars.append((quantifier, v))
    families = {v: cfg.family_for(v) for _, v in qvars}
    position = {v: i for i, v in enumerate(v for _, v in qvars)}

    leading_exists = []
    for q, v in qvars:
        if q != "E":
            break
        leading_exists.append(v)

    env: Dict[str, Ordinal] = dict(assignment)
    root = _freeze_free(_compile_tree(matrix), env, set(position))

    for q, v in qvars:
        if q == "E" and not families[v]:
            verdict = Verdict(False, counterexample=None)
            verdict.note = _soundness_note(blocks, False)
            return verdict

    state = {"first_cex": None}

    def pad_universals(start: int) -> Dict[str, Ordinal]:
        return {
            u: families[u][0]
            for q, u in qvars[start:]
            if q == "A" and families[u]
        }

    def refute_conjunct(node) -> Optional[Dict[str, Ordinal]]:
        """Falsifying assignment of the undecided universal variables of one
        residual conjunct, branching in prefix order on variables still
        present after each reduction; None if none exists in the families."""
        conjunct_vars = node[1]

        def pad(found: Dict[str, Ordinal]) -> Dict[str, Ordinal]:
            for u in conjunct_vars:
                if u not in found:
                    found[u] = families[u][0]
            return found

        def dfs(current) -> Optional[Dict[str, Ordinal]]:
            variable = min(current[1], key=position.__getitem__)
            for value in families[variable]:
                env[variable] = value
                reduced = _reduce_tree(current, variable, env)
                if reduced is True:
                    found = {u: env[u] for u in conjunct_vars if u in env}
                    del env[variable]
                    return pad(found)
                if reduced is not False:
                    found = dfs(reduced)
                    if found is not None:
                        del env[variable]
                        return found
            del env[variable]
            return None

        return dfs(_negate_tree(node))

    def universal_tail(node, i: int) -> Verdict:
        holding = Verdict(
            True, witness={u: env[u] for u in leading_exists if u in env}
        )
        if node is True:
            return holding
        tail = [v for _, v in qvars[i:]]
        if any(not families[u] for u in tail):
            return holding  # an empty universal family leaves no tuple to refute
        if node is False:
            return Verdict(
                False, counterexample={u: families[u][0] for u in tail}
            )
        for conjunct in _tree_conjuncts(node):
            refutation = refute_conjunct(conjunct)
            if refutation is not None:
                cex = {u: refutation.get(u, families[u][0]) for u in tail}
                for q, u in qvars[:i]:
                    if q == "A" and u in env:
                        cex[u] = env[u]
                return Verdict(False, counterexample=cex)
        return holding

    def run(node, i: int) -> Verdict:
        if i == len(qvars):
            if node is True:
                return Verdict(True, witness={u: env[u] for u in leading_exists})
            return Verdict(False, counterexample={})
        quantifier, v = qvars[i]
        if quantifier == "A" and all(q == "A" for q, _ in qvars[i:]):
            return universal_tail(node, i)
        fam = families[v]
        occurs = node is not True and node is not False and v in node[1]
        if quantifier == "E":
            if node is False:
                return Verdict(False, counterexample=state["first_cex"])
            if not occurs:
                # any element works; bind the first for the witness
                env[v] = fam[0]
                sub = run(node, i + 1)
                if sub.holds:
                    sub.witness = dict(sub.witness or {})
                    if v in leading_exists:
                        sub.witness[v] = fam[0]
                if sub.counterexample is not None and state["first_cex"] is None:
                    state["first_cex"] = sub.counterexample
                del env[v]
                return sub
            for value in fam:
                env[v] = value
                reduced = _reduce_tree(node, v, env)
                if reduced is not False:
                    sub = run(reduced, i + 1)
                    if sub.holds:
                        sub.witness = dict(sub.witness or {})
                        if v in leading_exists:
                            sub.witness[v] = value
                        del env[v]
                        return sub
                    if sub.counterexample is not None and state["first_cex"] is None:
                        state["first_cex"] = sub.counterexample
            if v in env:
                del env[v]
            return Verdict(False, counterexample=state["first_cex"])
        # universal variable followed by an existential somewhere
        if not fam:
            return Verdict(
                True, witness={u: env[u] for u in leading_exists if u in env}
            )
        if node is True:
            return Verdict(True, witness={u: env[u] for u in leading_exists if u in env})
        if not occurs:
            sub = run(node, i + 1)
            if not sub.holds and sub.counterexample is not None:
                sub.counterexample.setdefault(v, fam[0])
            return sub
        for value in fam:
            env[v] = value
            reduced = _reduce_tree(node, v, env)
            if reduced is False:
                cex = {v: value}
                cex.update(pad_universals(i + 1))
                for q, u in qvars[:i]:
                    if q == "A" and u in env:
                        cex[u] = env[u]
                del env[v]
                return Verdict(False, counterexample=cex)
            sub = run(reduced, i + 1)
            if not sub.holds:
                if sub.counterexample is not None:
                    sub.counterexample.setdefault(v, value)
                del env[v]
                return sub
        if v in env:
            del env[v]
        return Verdict(True, witness={u: env[u] for u in leading_exists if u in env})

    verdict = run(root, 0)
    verdict.note = _soundness_note(blocks, verdict.holds)
    if verdict.holds and verdict.witness is None:
        verdict.witness = {}
    return verdict


def _freeze_free(root, env: Dict[str, Ordinal], quantified: set):
    """Fold every atom that depends only on free variables."""
    if root is True or root is False:
        return root
    for variable in sorted(root[1] - quantified):
        root = _reduce_tree(root, variable, env)
        if root is True or root is False:
            break
    return root


# --- semantic oracles -----------------------------------------------------------

PREDICATE_NAMES = (
    "zero",
    "one",
    "prime",
    "lim_prime",
    "omega",
    "omega_plus_one",
    "omega_square_plus_one",
)


def semantic_oracle(which: str, a: Ordinal) -> bool:
    """Membership decided directly on the CNF / factorization, independently
    of any formula."""
    if which == "zero":
        return a == ZERO
    if which == "one":
        return a == ONE
    if which == "prime":
        return bool(a) and classify_prime(a) is not None
    if which == "lim_prime":
        return bool(a) and isinstance(classify_prime(a), LimitPrime)
    if which == "omega":
        return a == OMEGA
    if which == "omega_plus_one":
        return a == OMEGA_PLUS_ONE
    if which == "omega_square_plus_one":
        return a == OMEGA_SQUARED_PLUS_ONE
    raise ValueError(f"unknown predicate {which!r}")


# --- verdict serialization -------------------------------------------------------


def verdict_to_lines(verdict: Verdict) -> List[str]:
    from .ordinal import format_ordinal

    lines = [f"verdict = {'holds_in_families' if verdict.holds else 'fails_in_families'}"]
    if verdict.witness:
        for name in sorted(verdict.witness):
            lines.append(f"witness.{name} = {format_ordinal(verdict.witness[name])}")
    if verdict.counterexample:
        for name in sorted(verdict.counterexample):
            lines.append(
                f"counterexample.{name} = {format_ordinal(verdict.counterexample[name])}"
            )
    if verdict.note:
        lines.append(f"note = {verdict.note}")
    return lines


def verdict_to_json(verdict: Verdict) -> Dict:
    from .ordinal import format_ordinal

    return {
        "verdict": "holds_in_families" if verdict.holds else "fails_in_families",
        "witness": {k: format_ordinal(v) for k, v in (verdict.witness or {}).items()},
        "counterexample": {
            k: format_ordinal(v) for k, v in (verdict.counterexample or {}).items()
        },
        "note": verdict.note,
    }
