"""First-order terms and formulas over the multiplicative signature
{*, =, constants 0, 1, w, w+1, w2+1}, with prenex transformation and
quantifier-prefix classification.

Formulas are immutable trees.  != is a primitive atom, not sugar for
not-equals; negation and implication are eliminated during prenexing by
the usual dualities, so a prenexed matrix contains only =, !=, and, or.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

CONSTANT_SYMBOLS = ("0", "1", "w", "w+1", "w2+1")


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# --- terms -------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    symbol: str

    def __post_init__(self):
        if self.symbol not in CONSTANT_SYMBOLS:
            raise ValueError(f"unknown constant {self.symbol!r}")


@dataclass(frozen=True)
class Prod:
    left: "LTerm"
    right: "LTerm"


LTerm = Union[Var, Const, Prod]


def product_of(factors: Sequence[LTerm]) -> LTerm:
    """Right-nested product; the empty product is the constant 1."""
    if not factors:
        return Const("1")
    result = factors[-1]
    for f in reversed(factors[:-1]):
        result = Prod(f, result)
    return result


def term_vars(t: LTerm) -> FrozenSet[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Const):
        return frozenset()
    return term_vars(t.left) | term_vars(t.right)


# --- formulas ----------------------------------------------------------------


@dataclass(frozen=True)
class Eq:
    left: LTerm
    right: LTerm


@dataclass(frozen=True)
class Neq:
    left: LTerm
    right: LTerm


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    vars: Tuple[str, ...]
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    vars: Tuple[str, ...]
    body: "Formula"


Formula = Union[Eq, Neq, Not, And, Or, Implies, Exists, Forall]


def conj(*formulas: Formula) -> Formula:
    if not formulas:
        raise ValueError("empty conjunction")
    result = formulas[-1]
    for f in reversed(formulas[:-1]):
        result = And(f, result)
    return result


def disj(*formulas: Formula) -> Formula:
    if not formulas:
        raise ValueError("empty disjunction")
    result = formulas[-1]
    for f in reversed(formulas[:-1]):
        result = Or(f, result)
    return result


def free_vars(f: Formula) -> FrozenSet[str]:
    if isinstance(f, (Eq, Neq)):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - frozenset(f.vars)
    raise TypeError(f"not a formula: {f!r}")


def all_var_names(f: Formula) -> FrozenSet[str]:
    """Every variable name occurring in f, free or bound."""
    if isinstance(f, (Eq, Neq)):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return all_var_names(f.body)
    if isinstance(f, (And, Or, Implies)):
        return all_var_names(f.left) | all_var_names(f.right)
    if isinstance(f, (Exists, Forall)):
        return all_var_names(f.body) | frozenset(f.vars)
    raise TypeError(f"not a formula: {f!r}")


def base_name(name: str) -> str:
    """Strip the deterministic rename suffix: 'zc_3' -> 'zc'."""
    m = re.fullmatch(r"(.+?)(?:_\d+)?", name)
    return m.group(1)


class FreshNames:
    """Deterministic fresh-name supply: base, base_1, base_2, ..."""

    def __init__(self, used: Iterable[str] = ()):
        self.used = set(used)
        self._counters: dict = {}

    def claim(self, name: str) -> str:
        if name not in self.used:
            self.used.add(name)
            return name
        return self.fresh(base_name(name))

    def fresh(self, base: str) -> str:
        k = self._counters.get(base, 0)
        while True:
            k += 1
            candidate = f"{base}_{k}"
            if candidate not in self.used:
                self._counters[base] = k
                self.used.add(candidate)
                return candidate


def _subst_term(t: LTerm, var: str, replacement: LTerm) -> LTerm:
    if isinstance(t, Var):
        return replacement if t.name == var else t
    if isinstance(t, Const):
        return t
    return Prod(
        _subst_term(t.left, var, replacement),
        _subst_term(t.right, var, replacement),
    )


def substitute(f: Formula, var: str, replacement: LTerm) -> Formula:
    """Capture-avoiding substitution of a term for every free occurrence of
    var; binders that would capture variables of the replacement are renamed
    with the deterministic fresh-name scheme."""
    replacement_vars = term_vars(replacement)
    names = FreshNames(all_var_names(f) | replacement_vars | {var})

    def go(g: Formula) -> Formula:
        if isinstance(g, Eq):
            return Eq(_subst_term(g.left, var, replacement), _subst_term(g.right, var, replacement))
        if isinstance(g, Neq):
            return Neq(_subst_term(g.left, var, replacement), _subst_term(g.right, var, replacement))
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, And):
            return And(go(g.left), go(g.right))
        if isinstance(g, Or):
            return Or(go(g.left), go(g.right))
        if isinstance(g, Implies):
            return Implies(go(g.left), go(g.right))
        if isinstance(g, (Exists, Forall)):
            if var in g.vars:
                return g
            if var not in free_vars(g.body):
                return g
            body = g.body
            new_vars = list(g.vars)
            for i, v in enumerate(g.vars):
                if v in replacement_vars:
                    fresh = names.fresh(base_name(v))
                    body = substitute(body, v, Var(fresh))
                    new_vars[i] = fresh
            return type(g)(tuple(new_vars), go(body))
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


def rename_var(f: Formula, old: str, new: str) -> Formula:
    return substitute(f, old, Var(new))


def substitute_parallel(f: Formula, mapping: dict) -> Formula:
    """Simultaneous capture-avoiding substitution: replacements are never
    rewritten by other entries of the mapping."""
    placeholders = {}
    names = FreshNames(
        all_var_names(f)
        | set(mapping)
        | frozenset().union(*(term_vars(t) for t in mapping.values()))
    )
    result = f
    for var in sorted(mapping):
        placeholder = names.fresh("subst")
        placeholders[placeholder] = mapping[var]
        result = substitute(result, var, Var(placeholder))
    for placeholder, replacement in placeholders.items():
        result = substitute(result, placeholder, replacement)
    return result


# --- prenex transformation ---------------------------------------------------


def _nnf(f: Formula, negate: bool = False) -> Formula:
    if isinstance(f, Eq):
        return Neq(f.left, f.right) if negate else f
    if isinstance(f, Neq):
        return Eq(f.left, f.right) if negate else f
    if isinstance(f, Not):
        return _nnf(f.body, not negate)
    if isinstance(f, Implies):
        return _nnf(Or(Not(f.left), f.right), negate)
    if isinstance(f, And):
        ctor = Or if negate else And
        return ctor(_nnf(f.left, negate), _nnf(f.right, negate))
    if isinstance(f, Or):
        ctor = And if negate else Or
        return ctor(_nnf(f.left, negate), _nnf(f.right, negate))
    if isinstance(f, Exists):
        ctor = Forall if negate else Exists
        return ctor(f.vars, _nnf(f.body, negate))
    if isinstance(f, Forall):
        ctor = Exists if negate else Forall
        return ctor(f.vars, _nnf(f.body, negate))
    raise TypeError(f"not a formula: {f!r}")


Block = Tuple[str, List[str]]  # ("E" | "A", variable names)


def _lift(f: Formula, names: FreshNames) -> Tuple[List[Block], Formula]:
    """Pull quantifiers of an NNF formula to the front, returning blocks and
    a quantifier-free matrix.  Every bound variable is renamed to a globally
    unique name, so matrix-level substitutions need no capture checks.

    Conjunction lifts existential blocks and merges universal blocks
    positionally (sharing variables, widening to the larger block);
    disjunction does the dual.  Positional sharing keeps base names, so
    family bindings keyed by base name survive the merge."""
    if isinstance(f, (Eq, Neq)):
        return [], f
    if isinstance(f, (Exists, Forall)):
        quantifier = "E" if isinstance(f, Exists) else "A"
        blocks, matrix = _lift(f.body, names)
        claimed = []
        for v in f.vars:
            fresh = names.claim(v)
            if fresh != v:
                matrix = _rename_in_qf(matrix, v, fresh)
            claimed.append(fresh)
        return [(quantifier, claimed)] + blocks, matrix
    if isinstance(f, (And, Or)):
        lift_quant = "E" if isinstance(f, And) else "A"  # lifted w/o merging
        merge_quant = "A" if isinstance(f, And) else "E"  # merged positionally
        left_blocks, left_matrix = _lift(f.left, names)
        right_blocks, right_matrix = _lift(f.right, names)
        out: List[Block] = []
        while left_blocks or right_blocks:
            lifted: List[str] = []
            while left_blocks and left_blocks[0][0] == lift_quant:
                lifted.extend(left_blocks.pop(0)[1])
            while right_blocks and right_blocks[0][0] == lift_quant:
                lifted.extend(right_blocks.pop(0)[1])
            if lifted:
                out.append((lift_quant, lifted))
                continue
            shared: List[str] = []
            if left_blocks:
                shared.extend(left_blocks.pop(0)[1])
            if right_blocks:
                block = right_blocks.pop(0)[1]
                for i, v in enumerate(block):
                    if i < len(shared):
                        right_matrix = _rename_in_qf(right_matrix, v, shared[i])
                    else:
                        shared.append(v)
            out.append((merge_quant, shared))
        ctor = And if isinstance(f, And) else Or
        return out, ctor(left_matrix, right_matrix)
    raise TypeError(f"unexpected node in NNF formula: {f!r}")


def _rename_in_qf(f: Formula, old: str, new: str) -> Formula:
    if isinstance(f, Eq):
        return Eq(_subst_term(f.left, old, Var(new)), _subst_term(f.right, old, Var(new)))
    if isinstance(f, Neq):
        return Neq(_subst_term(f.left, old, Var(new)), _subst_term(f.right, old, Var(new)))
    if isinstance(f, And):
        return And(_rename_in_qf(f.left, old, new), _rename_in_qf(f.right, old, new))
    if isinstance(f, Or):
        return Or(_rename_in_qf(f.left, old, new), _rename_in_qf(f.right, old, new))
    raise TypeError(f"matrix is not quantifier-free: {f!r}")


def prenex(f: Formula) -> Formula:
    """Logically equivalent prenex form: negation-free matrix, deterministic
    fresh naming, existential blocks concatenated and universal blocks shared
    across conjunctions (dually for disjunctions)."""
    names = FreshNames(free_vars(f))
    blocks, matrix = _lift(_nnf(f), names)
    result: Formula = matrix
    for quantifier, variables in reversed(blocks):
        if not variables:
            continue
        ctor = Exists if quantifier == "E" else Forall
        result = ctor(tuple(variables), result)
    return _merge_adjacent(result)


def _merge_adjacent(f: Formula) -> Formula:
    if isinstance(f, (Exists, Forall)):
        body = _merge_adjacent(f.body)
        if type(body) is type(f):
            return type(f)(f.vars + body.vars, body.body)
        return type(f)(f.vars, body)
    return f


def is_prenex(f: Formula) -> bool:
    g = f
    while isinstance(g, (Exists, Forall)):
        g = g.body
    return _is_quantifier_free(g)


def _is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, (Eq, Neq)):
        return True
    if isinstance(f, Not):
        return _is_quantifier_free(f.body)
    if isinstance(f, (And, Or, Implies)):
        return _is_quantifier_free(f.left) and _is_quantifier_free(f.right)
    return False


def matrix_of(f: Formula) -> Formula:
    g = f
    while isinstance(g, (Exists, Forall)):
        g = g.body
    return g


def prefix_blocks(f: Formula) -> Tuple[Tuple[str, Tuple[str, ...]], ...]:
    """The leading quantifier blocks of f, adjacent same-quantifier merged."""
    blocks: List[Tuple[str, Tuple[str, ...]]] = []
    g = f
    while isinstance(g, (Exists, Forall)):
        quantifier = "E" if isinstance(g, Exists) else "A"
        if blocks and blocks[-1][0] == quantifier:
            blocks[-1] = (quantifier, blocks[-1][1] + g.vars)
        else:
            blocks.append((quantifier, g.vars))
        g = g.body
    return tuple(blocks)


PrefixClass = Tuple[Tuple[str, int], ...]


def prefix_class(f: Formula) -> PrefixClass:
    """Quantifier-prefix signature of a prenex formula, e.g. (("E", 4),
    ("A", 6)).  On non-prenex input only the leading prefix is reported;
    apply prenex first for the full class."""
    return tuple((q, len(vs)) for q, vs in prefix_blocks(f))


def format_prefix_class(pc: PrefixClass) -> str:
    return "".join(f"{q}{n}" for q, n in pc) if pc else "qf"


def existential_count(f: Formula) -> int:
    return sum(n for q, n in prefix_class(f) if q == "E")


# --- s-expression grammar ----------------------------------------------------
#
#   term    := IDENT | (c 0|1|w|w+1|w2+1) | (* term term)
#   formula := (= t u) | (!= t u) | (and f g ...) | (or f g ...) | (not f)
#            | (=> f g) | (exists (x y) f) | (forall (x) f)
#
# and/or accept two or more arguments and canonicalize to right-nested
# binary nodes; the printer always emits the binary form.

_ATOM = re.compile(r"[^\s()]+")


def _parse_sexprs(text: str):
    pos = 0
    stack: List[list] = [[]]
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch == "(":
            stack.append([])
            pos += 1
        elif ch == ")":
            if len(stack) == 1:
                raise FormulaSyntaxError("unbalanced ')'", pos)
            done = stack.pop()
            stack[-1].append(done)
            pos += 1
        else:
            m = _ATOM.match(text, pos)
            stack[-1].append(m.group(0))
            pos = m.end()
    if len(stack) != 1:
        raise FormulaSyntaxError("unbalanced '('", len(text))
    return stack[0]


def _term_from_sexpr(s) -> LTerm:
    if isinstance(s, str):
        return Var(s)
    if not s:
        raise ValueError("empty term")
    head = s[0]
    if head == "c":
        if len(s) != 2 or not isinstance(s[1], str):
            raise ValueError(f"malformed constant {s!r}")
        return Const(s[1])
    if head == "*":
        if len(s) < 3:
            raise ValueError(f"product needs two factors: {s!r}")
        factors = [_term_from_sexpr(x) for x in s[1:]]
        result = factors[-1]
        for f in reversed(factors[:-1]):
            result = Prod(f, result)
        return result
    raise ValueError(f"unknown term head {head!r}")


def _formula_from_sexpr(s) -> Formula:
    if isinstance(s, str) or not s:
        raise ValueError(f"not a formula: {s!r}")
    head = s[0]
    if head == "=":
        return Eq(_term_from_sexpr(s[1]), _term_from_sexpr(s[2]))
    if head == "!=":
        return Neq(_term_from_sexpr(s[1]), _term_from_sexpr(s[2]))
    if head == "not":
        return Not(_formula_from_sexpr(s[1]))
    if head == "=>":
        return Implies(_formula_from_sexpr(s[1]), _formula_from_sexpr(s[2]))
    if head in ("and", "or"):
        if len(s) < 3:
            raise ValueError(f"{head} needs at least two arguments")
        parts = [_formula_from_sexpr(x) for x in s[1:]]
        return conj(*parts) if head == "and" else disj(*parts)
    if head in ("exists", "forall"):
        if len(s) != 3 or not isinstance(s[1], list):
            raise ValueError(f"malformed {head}: {s!r}")
        variables = []
        for v in s[1]:
            if not isinstance(v, str) or not v:
                raise ValueError(f"bad bound variable in {s!r}")
            variables.append(v)
        ctor = Exists if head == "exists" else Forall
        return ctor(tuple(variables), _formula_from_sexpr(s[2]))
    raise ValueError(f"unknown formula head {head!r}")


def parse_formula(text: str) -> Formula:
    exprs = _parse_sexprs(text)
    if len(exprs) != 1:
        raise FormulaSyntaxError(f"expected one formula, found {len(exprs)}", 0)
    try:
        return _formula_from_sexpr(exprs[0])
    except (ValueError, IndexError) as exc:
        if isinstance(exc, FormulaSyntaxError):
            raise
        raise FormulaSyntaxError(str(exc), 0) from exc


def print_term(t: LTerm) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return f"(c {t.symbol})"
    return f"(* {print_term(t.left)} {print_term(t.right)})"


def print_formula(f: Formula) -> str:
    if isinstance(f, Eq):
        return f"(= {print_term(f.left)} {print_term(f.right)})"
    if isinstance(f, Neq):
        return f"(!= {print_term(f.left)} {print_term(f.right)})"
    if isinstance(f, Not):
        return f"(not {print_formula(f.body)})"
    if isinstance(f, And):
        return f"(and {print_formula(f.left)} {print_formula(f.right)})"
    if isinstance(f, Or):
        return f"(or {print_formula(f.left)} {print_formula(f.right)})"
    if isinstance(f, Implies):
        return f"(=> {print_formula(f.left)} {print_formula(f.right)})"
    if isinstance(f, Exists):
        return f"(exists ({' '.join(f.vars)}) {print_formula(f.body)})"
    if isinstance(f, Forall):
        return f"(forall ({' '.join(f.vars)}) {print_formula(f.body)})"
    raise TypeError(f"not a formula: {f!r}")
