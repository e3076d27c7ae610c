"""Command-line driver.

Exit codes: 0 success or a true answer, 1 a false answer or no plan,
2 usage or input errors, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .aspio import AnswerSetError, emit_program, extract_plan, parse_answer_set
from .bench import FAMILIES, BenchmarkSpec, generate
from .model import And, Atom, Formula, Not, Or, Query, QueryMode
from .plans import parse_plan, print_plan
from .search import BudgetExhausted, SearchBudget, solve_conditional, solve_iterative
from .semantics import entails
from .theory_io import (
    ParseError,
    TheoryValidationError,
    _parse_literal,
    _TokenStream,
    parse_theory,
    print_theory,
    tokenize,
)

OK, FALSE, USAGE, BUDGET = 0, 1, 2, 3


def parse_formula(text: str) -> Formula:
    """Formula syntax: literals plus infix & and |, prefix ~, parentheses."""
    ts = _TokenStream(tokenize(text), text)

    def parse_or() -> Formula:
        node = parse_and()
        while ts.peek() is not None and ts.peek().text == "|":
            ts.next("|")
            node = Or(node, parse_and())
        return node

    def parse_and() -> Formula:
        node = parse_unary()
        while ts.peek() is not None and ts.peek().text == "&":
            ts.next("&")
            node = And(node, parse_unary())
        return node

    def parse_unary() -> Formula:
        tok = ts.peek()
        if tok is None:
            raise ParseError("formula ends unexpectedly", 1, len(text) + 1)
        if tok.text == "~":
            ts.next("~")
            return Not(parse_unary())
        if tok.text == "(":
            ts.next("(")
            node = parse_or()
            ts.next(")")
            return node
        return Atom(_parse_literal(ts))

    node = parse_or()
    tok = ts.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.column)
    return node


def _load_theory(path: str):
    return parse_theory(Path(path).read_text())


def _cmd_solve(args) -> int:
    theory = _load_theory(args.file)
    w = 1 if args.conformant else args.w
    if args.iterative:
        result = solve_iterative(theory, SearchBudget(args.h, w))
        if result is None:
            print("no plan")
            return FALSE
        plan, h, width = result
        print(print_plan(plan))
        print(f"bounds: {h}x{width}", file=sys.stderr)
        return OK
    plan = solve_conditional(theory, args.h, w)
    if plan is None:
        print("no plan")
        return FALSE
    print(print_plan(plan))
    return OK


def _cmd_verify(args) -> int:
    from .plans import is_solution

    theory = _load_theory(args.file)
    plan = parse_plan(Path(args.planfile).read_text().strip(), theory)
    if is_solution(theory, plan):
        print("solution")
        return OK
    print("not a solution")
    return FALSE


def _cmd_query(args) -> int:
    theory = _load_theory(args.file)
    plan = parse_plan(Path(args.planfile).read_text().strip(), theory)
    formula = parse_formula(args.formula)
    mode = QueryMode.WHETHER if args.whether else QueryMode.KNOWS
    if entails(theory, Query(mode, formula, plan)):
        print("true")
        return OK
    print("false")
    return FALSE


def _cmd_encode(args) -> int:
    theory = _load_theory(args.file)
    text = emit_program(theory, args.h, args.w)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def _cmd_extract(args) -> int:
    from .plans import is_solution

    theory = _load_theory(args.file)
    atoms = parse_answer_set(Path(args.answers).read_text(), args.h, args.w)
    plan = extract_plan(theory, atoms)
    print(print_plan(plan))
    return OK if is_solution(theory, plan) else FALSE


def _cmd_bench(args) -> int:
    spec = BenchmarkSpec(args.family, tuple(args.params))
    text = print_theory(generate(spec))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sensplan",
        description="Plan with sensing actions under incomplete information.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="search for a plan")
    p.add_argument("file")
    p.add_argument("--h", type=int, required=True, help="height bound")
    p.add_argument("--w", type=int, default=1, help="width bound")
    p.add_argument("--iterative", action="store_true", help="minimize h, then w")
    p.add_argument("--conformant", action="store_true", help="branch-free plans only")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check that a plan achieves the goal")
    p.add_argument("file")
    p.add_argument("planfile")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("query", help="evaluate a knows/whether query")
    p.add_argument("file")
    p.add_argument("planfile")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--knows", action="store_true")
    group.add_argument("--whether", action="store_true")
    p.add_argument("formula")
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser("encode", help="emit the solver program")
    p.add_argument("file")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("extract", help="read an answer-set dump back into a plan")
    p.add_argument("file")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--answers", required=True)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("bench", help="generate a benchmark instance")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("params", type=int, nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return BUDGET
    except (ParseError, TheoryValidationError, AnswerSetError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
