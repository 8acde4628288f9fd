"""Ground-truth brute-force solvers on the integer and word sides.

Conventions: divisibility over the naturals is x | y iff some z has
x*z = y, so 0 | 0 holds and 0 | y fails for y > 0; accordingly
lcm(0, n) = 0.  Solutions are enumerated in lexicographic order over the
variables sorted by name, so outputs are deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .encoders import DiophEquation, DivAtom, EqAtom, Monomial, NatSystem, WordEquation


@dataclass(frozen=True)
class SearchBox:
    """Per-variable inclusive upper bounds with a shared default."""

    default: int
    per_var: Tuple[Tuple[str, int], ...] = ()

    def bound(self, variable: str) -> int:
        for name, value in self.per_var:
            if name == variable:
                return value
        return self.default


def nat_divides(i: int, j: int) -> bool:
    if i == 0:
        return j == 0
    return j % i == 0


def nat_lcm(i: int, j: int) -> int:
    return math.lcm(i, j)


def _atom_holds(atom, assignment: Mapping[str, int]) -> bool:
    left = atom.left.value(assignment)
    right = atom.right.value(assignment)
    if isinstance(atom, DivAtom):
        return nat_divides(left, right)
    if isinstance(atom, EqAtom):
        return left == right
    raise TypeError(f"unknown atom {atom!r}")


def system_holds(s: NatSystem, assignment: Mapping[str, int]) -> bool:
    return any(
        all(_atom_holds(atom, assignment) for atom in conjunction)
        for conjunction in s.disjuncts
    )


def sat_system(
    s: NatSystem, box: SearchBox, exclude_zero: bool = False
) -> Optional[Dict[str, int]]:
    """First satisfying assignment in lexicographic order within the box."""
    variables = s.variables()
    lo = 1 if exclude_zero else 0
    ranges = [range(lo, box.bound(v) + 1) for v in variables]
    for values in itertools.product(*ranges):
        assignment = dict(zip(variables, values))
        if system_holds(s, assignment):
            return assignment
    return None


def monomial_value(monomial: Monomial, assignment: Mapping[str, int]) -> int:
    value = 1
    for v in monomial:
        value *= assignment[v]
    return value


def equation_holds(e: DiophEquation, assignment: Mapping[str, int]) -> bool:
    lhs = sum(monomial_value(m, assignment) for m in e.lhs)
    rhs = sum(monomial_value(m, assignment) for m in e.rhs)
    return lhs == rhs


def solve_diophantine(e: DiophEquation, box: SearchBox) -> List[Dict[str, int]]:
    """All solutions within the box, lexicographic order."""
    variables = e.variables()
    ranges = [range(box.bound(v) + 1) for v in variables]
    solutions = []
    for values in itertools.product(*ranges):
        assignment = dict(zip(variables, values))
        if equation_holds(e, assignment):
            solutions.append(assignment)
    return solutions


def _words_up_to(max_len: int) -> List[str]:
    words = [""]
    for length in range(1, max_len + 1):
        words.extend("".join(p) for p in itertools.product("ab", repeat=length))
    return words


def word_equation_holds(we: WordEquation, assignment: Mapping[str, str]) -> bool:
    def expand(side: str) -> str:
        return "".join(assignment.get(ch, ch) for ch in side)

    return expand(we.lhs) == expand(we.rhs)


def solve_word_equation(we: WordEquation, max_len: int) -> List[Dict[str, str]]:
    """All solutions with every word of length <= max_len, lexicographic in
    (length, word) order per variable."""
    variables = we.variables()
    words = _words_up_to(max_len)
    solutions = []
    for values in itertools.product(words, repeat=len(variables)):
        assignment = dict(zip(variables, values))
        if word_equation_holds(we, assignment):
            solutions.append(assignment)
    return solutions
