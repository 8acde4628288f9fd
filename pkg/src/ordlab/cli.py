"""Command-line front door: ordinal arithmetic, formula building and
checking, the word-equation bridge, and the brute-force oracles.

Exit status: 0 on success, 1 on a semantic failure (an --expect that the
verdict contradicts), 2 on usage or parse errors.  Output is deterministic;
--json emits a structured equivalent of the text output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional

from . import encoders, evaluator, oracles
from .evaluator import EvalConfig, check_guided, default_config, parse_config
from .factorization import (
    classify_prime,
    commute,
    format_factorization,
    jacobsthal_factorize,
    successor_common_root,
    RootSearchBoundExceeded,
)
from .logic import (
    Formula,
    format_prefix_class,
    parse_formula,
    prefix_class,
    prenex,
    print_formula,
)
from .ordinal import (
    OMEGA_PLUS_ONE,
    Order,
    compare,
    format_ordinal,
    parse_ordinal,
    power,
)


class UsageError(Exception):
    pass


def _emit(payload: Dict, lines: List[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _load_config(path: Optional[str]) -> EvalConfig:
    if path is None:
        return default_config()
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())


def _read_formula_argument(args) -> str:
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as handle:
            return handle.read()
    if getattr(args, "expr", None):
        return args.expr
    return sys.stdin.read()


# --- ord ------------------------------------------------------------------


def cmd_ord_eval(args) -> int:
    value = parse_ordinal(args.expr)
    _emit({"value": format_ordinal(value)}, [format_ordinal(value)], args.json)
    return 0


def cmd_ord_cmp(args) -> int:
    order = compare(parse_ordinal(args.left), parse_ordinal(args.right))
    name = {Order.LESS: "Less", Order.EQUAL: "Equal", Order.GREATER: "Greater"}[order]
    _emit({"order": name}, [name], args.json)
    return 0


def cmd_ord_factor(args) -> int:
    value = parse_ordinal(args.expr)
    f = jacobsthal_factorize(value)
    text = format_factorization(f)
    payload = {
        "input": format_ordinal(value),
        "factorization": text,
        "limit_part": [[format_ordinal(xi), n] for xi, n in f.limit_part],
        "a0": f.a0,
        "syllables": [[format_ordinal(mu), a] for mu, a in f.syllables],
        "prime": classify_prime(value) is not None,
    }
    _emit(payload, [text], args.json)
    return 0


def cmd_ord_commute(args) -> int:
    result = commute(parse_ordinal(args.left), parse_ordinal(args.right))
    _emit({"commute": result}, ["true" if result else "false"], args.json)
    return 0


def cmd_ord_root(args) -> int:
    a, b = parse_ordinal(args.left), parse_ordinal(args.right)
    try:
        found = successor_common_root(a, b, args.bound)
    except RootSearchBoundExceeded:
        _emit(
            {"result": "bound_exceeded", "bound": args.bound},
            [f"bound exceeded (no root with exponents <= {args.bound})"],
            args.json,
        )
        return 1
    if found is None:
        _emit({"result": "none"}, ["none (the pair does not commute)"], args.json)
        return 0
    root, j, n = found
    _emit(
        {"result": "root", "root": format_ordinal(root), "j": j, "n": n},
        [f"root = {format_ordinal(root)}, exponents {j} and {n}"],
        args.json,
    )
    return 0


# --- logic ----------------------------------------------------------------


def _build_named_formula(name: str, variant: Optional[str]) -> Formula:
    if name == "theta":
        return encoders.theta()
    if name == "div":
        return encoders.div_formula()
    if name == "lcm":
        return encoders.lcm_formula()
    if name == "mult":
        return encoders.mult_formula()
    if name in evaluator.PREDICATE_NAMES:
        return encoders.build_predicate(name, variant)
    raise UsageError(f"unknown formula name {name!r}")


def cmd_logic_build(args) -> int:
    formula = _build_named_formula(args.name, args.variant)
    text = print_formula(formula)
    _emit(
        {"formula": text, "prefix_class": format_prefix_class(prefix_class(formula))},
        [text],
        args.json,
    )
    return 0


def cmd_logic_prenex(args) -> int:
    formula = prenex(parse_formula(_read_formula_argument(args)))
    text = print_formula(formula)
    _emit(
        {"formula": text, "prefix_class": format_prefix_class(prefix_class(formula))},
        [text],
        args.json,
    )
    return 0


def cmd_logic_class(args) -> int:
    formula = prenex(parse_formula(_read_formula_argument(args)))
    text = format_prefix_class(prefix_class(formula))
    _emit({"prefix_class": text}, [text], args.json)
    return 0


def cmd_logic_translate(args) -> int:
    system = encoders.parse_nat_system(_read_formula_argument(args))
    formula = encoders.translate_nat_existential(system)
    text = print_formula(formula)
    _emit(
        {"formula": text, "prefix_class": format_prefix_class(prefix_class(formula))},
        [text],
        args.json,
    )
    return 0


def cmd_logic_eliminate(args) -> int:
    formula = encoders.eliminate_constants(parse_formula(_read_formula_argument(args)))
    text = print_formula(formula)
    _emit(
        {"formula": text, "prefix_class": format_prefix_class(prefix_class(formula))},
        [text],
        args.json,
    )
    return 0


def _assignment_for_check(args, formula_name: str) -> Dict:
    values = [part.strip() for part in args.args.split(",")] if args.args else []
    if formula_name in ("div", "lcm", "mult"):
        needed = {"div": 2, "lcm": 3, "mult": 3}[formula_name]
        if len(values) != needed:
            raise UsageError(f"{formula_name} needs {needed} integer arguments")
        integers = [int(v) for v in values]
        names = ["x", "y", "z"][:needed]
        return {
            name: power(OMEGA_PLUS_ONE, i) for name, i in zip(names, integers)
        }
    if formula_name == "theta" or formula_name in evaluator.PREDICATE_NAMES:
        if len(values) != 1:
            raise UsageError(f"{formula_name} needs one ordinal argument")
        return {"x": parse_ordinal(values[0])}
    raise UsageError(f"cannot build an assignment for {formula_name!r}")


def cmd_logic_check(args) -> int:
    config = _load_config(args.config)
    if args.formula:
        formula = _build_named_formula(args.formula, args.variant)
        assignment = _assignment_for_check(args, args.formula)
    else:
        formula = prenex(parse_formula(_read_formula_argument(args)))
        assignment = {}
        for pair in args.assign or []:
            name, _, literal = pair.partition("=")
            if not literal:
                raise UsageError(f"bad --assign {pair!r}, expected var=ordinal")
            assignment[name.strip()] = parse_ordinal(literal)
    verdict = check_guided(formula, assignment, config)
    _emit(
        evaluator.verdict_to_json(verdict),
        evaluator.verdict_to_lines(verdict),
        args.json,
    )
    if args.expect:
        expected = args.expect == "holds"
        if verdict.holds != expected:
            return 1
    return 0


# --- bridge ---------------------------------------------------------------


def cmd_bridge_encode(args) -> int:
    we = encoders.parse_word_equation(args.equation)
    equation, inequations = encoders.encode_word_equation(we)
    lines = [print_formula(equation)] + [print_formula(f) for f in inequations]
    _emit(
        {
            "equation": print_formula(equation),
            "inequations": [print_formula(f) for f in inequations],
        },
        lines,
        args.json,
    )
    return 0


def cmd_bridge_decode(args) -> int:
    solution = {}
    for pair in args.assign:
        name, _, literal = pair.partition("=")
        if not literal:
            raise UsageError(f"bad assignment {pair!r}, expected var=ordinal")
        solution[name.strip()] = parse_ordinal(literal)
    decoded = encoders.decode_ordinal_solution(solution)
    lines = [f"{name}={decoded[name] or 'ε'}" for name in sorted(decoded)]
    _emit({"words": decoded}, lines, args.json)
    return 0


# --- oracle ---------------------------------------------------------------


def cmd_oracle_divsys(args) -> int:
    system = encoders.parse_nat_system(_read_formula_argument(args))
    box = oracles.SearchBox(args.bound)
    solution = oracles.sat_system(system, box, exclude_zero=args.exclude_zero)
    if solution is None:
        _emit({"solution": None}, ["none"], args.json)
    else:
        lines = [f"{name}={solution[name]}" for name in sorted(solution)]
        _emit({"solution": solution}, lines, args.json)
    return 0


def cmd_oracle_dioph(args) -> int:
    equation = encoders.parse_dioph_equation(_read_formula_argument(args))
    box = oracles.SearchBox(args.bound)
    solutions = oracles.solve_diophantine(equation, box)
    lines = [
        " ".join(f"{name}={solution[name]}" for name in sorted(solution)) or "(empty)"
        for solution in solutions
    ] or ["none"]
    _emit({"solutions": solutions}, lines, args.json)
    return 0


def cmd_oracle_wordeq(args) -> int:
    we = encoders.parse_word_equation(args.equation)
    solutions = oracles.solve_word_equation(we, args.bound)
    lines = [
        " ".join(f"{name}={solution[name] or 'ε'}" for name in sorted(solution))
        or "(empty)"
        for solution in solutions
    ] or ["none"]
    _emit({"solutions": solutions}, lines, args.json)
    return 0


# --- wiring ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordlab",
        description="exact workbench for the multiplicative monoid of ordinals",
    )
    top = parser.add_subparsers(dest="group", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="structured output")

    ord_parser = top.add_parser("ord", help="ordinal arithmetic")
    ord_sub = ord_parser.add_subparsers(dest="command", required=True)
    p = ord_sub.add_parser("eval", help="canonicalize an ordinal expression")
    p.add_argument("expr")
    common(p)
    p.set_defaults(fn=cmd_ord_eval)
    p = ord_sub.add_parser("cmp", help="compare two ordinals")
    p.add_argument("left")
    p.add_argument("right")
    common(p)
    p.set_defaults(fn=cmd_ord_cmp)
    p = ord_sub.add_parser("factor", help="canonical prime factorization")
    p.add_argument("expr")
    common(p)
    p.set_defaults(fn=cmd_ord_factor)
    p = ord_sub.add_parser("commute", help="do the two products agree")
    p.add_argument("left")
    p.add_argument("right")
    common(p)
    p.set_defaults(fn=cmd_ord_commute)
    p = ord_sub.add_parser("root", help="common root of two successor ordinals")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--bound", type=int, default=8)
    common(p)
    p.set_defaults(fn=cmd_ord_root)

    logic_parser = top.add_parser("logic", help="formulas and guided checking")
    logic_sub = logic_parser.add_subparsers(dest="command", required=True)
    p = logic_sub.add_parser("build", help="build a named formula")
    p.add_argument("name")
    p.add_argument("--variant", choices=["existential", "universal"])
    common(p)
    p.set_defaults(fn=cmd_logic_build)
    for name, fn in (
        ("prenex", cmd_logic_prenex),
        ("class", cmd_logic_class),
        ("translate", cmd_logic_translate),
        ("eliminate", cmd_logic_eliminate),
    ):
        p = logic_sub.add_parser(name)
        p.add_argument("expr", nargs="?")
        p.add_argument("--file")
        common(p)
        p.set_defaults(fn=fn)
    p = logic_sub.add_parser("check", help="guided family-restricted evaluation")
    p.add_argument("expr", nargs="?")
    p.add_argument("--file")
    p.add_argument("--formula", help="named formula: div, lcm, mult, theta, predicates")
    p.add_argument("--variant", choices=["existential", "universal"])
    p.add_argument("--args", help="comma-separated arguments for --formula")
    p.add_argument("--assign", action="append", help="var=ordinal (repeatable)")
    p.add_argument("--config", help="evaluation config file")
    p.add_argument("--expect", choices=["holds", "fails"])
    common(p)
    p.set_defaults(fn=cmd_logic_check)

    bridge_parser = top.add_parser("bridge", help="word-equation bridge")
    bridge_sub = bridge_parser.add_subparsers(dest="command", required=True)
    p = bridge_sub.add_parser("encode")
    p.add_argument("equation", help="e.g. xab=abx")
    common(p)
    p.set_defaults(fn=cmd_bridge_encode)
    p = bridge_sub.add_parser("decode")
    p.add_argument("assign", nargs="+", help="var=ordinal")
    common(p)
    p.set_defaults(fn=cmd_bridge_decode)

    oracle_parser = top.add_parser("oracle", help="brute-force ground truth")
    oracle_sub = oracle_parser.add_subparsers(dest="command", required=True)
    p = oracle_sub.add_parser("divsys")
    p.add_argument("expr", nargs="?")
    p.add_argument("--file")
    p.add_argument("--bound", type=int, default=10)
    p.add_argument("--exclude-zero", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_oracle_divsys)
    p = oracle_sub.add_parser("dioph")
    p.add_argument("expr", nargs="?")
    p.add_argument("--file")
    p.add_argument("--bound", type=int, default=10)
    common(p)
    p.set_defaults(fn=cmd_oracle_dioph)
    p = oracle_sub.add_parser("wordeq")
    p.add_argument("equation")
    p.add_argument("--bound", type=int, default=4)
    common(p)
    p.set_defaults(fn=cmd_oracle_wordeq)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
