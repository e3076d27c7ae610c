"""Conditional plans: structure, text form, grid numbering, reduct, verification.

A plan is the empty plan, a non-sensing action followed by a plan, or a
sensing action with one branch per sensed literal. Text form:

    []
    [push_down; flip_lock]
    [check; cases(open -> []; closed -> [flip_lock]; locked -> [])]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import (
    ActionTheory,
    Literal,
    LiteralSet,
    Query,
    QueryMode,
    conjunction,
    holds,
    is_consistent,
)
from .theory_io import ParseError, _parse_literal, _TokenStream, tokenize


class Plan:
    __slots__ = ()

    def __str__(self) -> str:
        return print_plan(self)


@dataclass(frozen=True)
class Empty(Plan):
    pass


@dataclass(frozen=True)
class Seq(Plan):
    action: str
    rest: Plan


@dataclass(frozen=True)
class Case(Plan):
    action: str
    branches: tuple[tuple[Literal, Plan], ...]


EMPTY = Empty()


def seq(*actions: str) -> Plan:
    """Build a plain action sequence."""
    plan: Plan = EMPTY
    for a in reversed(actions):
        plan = Seq(a, plan)
    return plan


def plan_size(plan: Plan) -> int:
    """0 for the empty plan; each action costs 1, each case branch 1 more."""
    if isinstance(plan, Empty):
        return 0
    if isinstance(plan, Seq):
        return 1 + plan_size(plan.rest)
    if isinstance(plan, Case):
        return 1 + sum(1 + plan_size(sub) for _, sub in plan.branches)
    raise TypeError(f"not a plan: {plan!r}")


def plan_height(plan: Plan) -> int:
    """Longest root-to-leaf node count of the plan tree.

    A trailing empty plan after an action adds no node, but an empty case
    branch is a leaf node of its own.
    """
    if isinstance(plan, Empty):
        return 1
    if isinstance(plan, Seq):
        return 1 if isinstance(plan.rest, Empty) else 1 + plan_height(plan.rest)
    if isinstance(plan, Case):
        return 1 + max(plan_height(sub) for _, sub in plan.branches)
    raise TypeError(f"not a plan: {plan!r}")


def plan_width(plan: Plan) -> int:
    """Number of leaves of the plan tree."""
    if isinstance(plan, (Empty,)):
        return 1
    if isinstance(plan, Seq):
        return 1 if isinstance(plan.rest, Empty) else plan_width(plan.rest)
    if isinstance(plan, Case):
        return sum(plan_width(sub) for _, sub in plan.branches)
    raise TypeError(f"not a plan: {plan!r}")


def actions_of(plan: Plan) -> list[str]:
    """Actions of a branch-free plan, in order."""
    out: list[str] = []
    node = plan
    while isinstance(node, Seq):
        out.append(node.action)
        node = node.rest
    if not isinstance(node, Empty):
        raise ValueError("plan contains case branching")
    return out


# --- text form --------------------------------------------------------------


def print_plan(plan: Plan) -> str:
    return "[" + _print_steps(plan) + "]"


def _print_steps(plan: Plan) -> str:
    parts: list[str] = []
    node = plan
    while True:
        if isinstance(node, Empty):
            break
        if isinstance(node, Seq):
            parts.append(node.action)
            node = node.rest
            continue
        if isinstance(node, Case):
            branches = "; ".join(
                f"{g} -> {print_plan(sub)}" for g, sub in node.branches
            )
            parts.append(f"{node.action}; cases({branches})")
            break
        raise TypeError(f"not a plan: {node!r}")
    return "; ".join(parts)


def parse_plan(text: str, theory: Optional[ActionTheory] = None) -> Plan:
    """Parse the plan text form; with a theory, check actions and branch labels."""
    ts = _TokenStream(tokenize(text), text)
    plan = _parse_plan(ts)
    tok = ts.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.column)
    if theory is not None:
        check_plan(theory, plan)
    return plan


def _parse_plan(ts: _TokenStream) -> Plan:
    ts.next("[")
    tok = ts.peek()
    if tok is not None and tok.text == "]":
        ts.next("]")
        return EMPTY
    plan = _parse_steps(ts)
    ts.next("]")
    return plan


def _parse_steps(ts: _TokenStream) -> Plan:
    name_tok = ts.next_ident("an action name")
    tok = ts.peek()
    if tok is not None and tok.text == ";":
        ts.next(";")
        nxt = ts.peek()
        if nxt is not None and nxt.text == "cases":
            ts.next("cases")
            ts.next("(")
            branches: list[tuple[Literal, Plan]] = []
            while True:
                lit = _parse_literal(ts)
                _expect_arrow(ts)
                sub = _parse_plan(ts)
                branches.append((lit, sub))
                sep = ts.next(None)
                if sep.text == ")":
                    break
                if sep.text != ";":
                    raise ParseError(
                        f"expected ';' or ')', found {sep.text!r}", sep.line, sep.column
                    )
            return Case(name_tok.text, tuple(branches))
        return Seq(name_tok.text, _parse_steps(ts))
    return Seq(name_tok.text, EMPTY)


def _expect_arrow(ts: _TokenStream) -> None:
    tok = ts.next(None)
    if tok.text != "-":
        raise ParseError(f"expected '->', found {tok.text!r}", tok.line, tok.column)
    tok2 = ts.next(None)
    if tok2.text != ">":
        raise ParseError(f"expected '->', found {tok2.text!r}", tok2.line, tok2.column)


def check_plan(theory: ActionTheory, plan: Plan) -> None:
    """Raise if the plan uses unknown actions or mislabeled branches."""
    if isinstance(plan, Empty):
        return
    if isinstance(plan, Seq):
        if not theory.has_action(plan.action):
            raise ValueError(f"unknown action {plan.action!r} in plan")
        if theory.is_sensing(plan.action):
            raise ValueError(f"sensing action {plan.action!r} used without cases")
        check_plan(theory, plan.rest)
        return
    if isinstance(plan, Case):
        k = theory.k_prop_for(plan.action)
        if k is None:
            raise ValueError(f"{plan.action!r} is not a sensing action")
        if tuple(g for g, _ in plan.branches) != k.sensed:
            raise ValueError(
                f"branch labels for {plan.action!r} must be exactly its sensed "
                f"literals, in order"
            )
        for _, sub in plan.branches:
            check_plan(theory, sub)
        return
    raise TypeError(f"not a plan: {plan!r}")


# --- grid numbering ---------------------------------------------------------


@dataclass(frozen=True)
class GridNode:
    time: int
    path: int
    action: Optional[str]  # None at unlabeled leaves
    leaf: bool


@dataclass(frozen=True)
class GridBranch:
    literal: Literal
    time: int
    path: int
    child_path: int


@dataclass(frozen=True)
class PlanGrid:
    height: int
    width: int
    nodes: tuple[GridNode, ...]
    branches: tuple[GridBranch, ...]


class PlanTooLarge(ValueError):
    pass


def number_plan(plan: Plan, h: int, w: int) -> PlanGrid:
    """Place the plan tree on an h-by-w grid.

    Leaves take path numbers 1.. left to right, every interior node takes
    the path of its leftmost leaf, and times count nodes from the root; the
    root always lands on (1, 1).
    """
    if h < 1 or w < 1:
        raise ValueError("grid bounds must be at least 1")
    height, width = plan_height(plan), plan_width(plan)
    if height > h or width > w:
        raise PlanTooLarge(
            f"plan needs a {height}x{width} grid, got {h}x{w}"
        )
    nodes: list[GridNode] = []
    branches: list[GridBranch] = []

    def walk(node: Plan, t: int, p: int) -> None:
        if isinstance(node, Empty):
            nodes.append(GridNode(t, p, None, True))
            return
        if isinstance(node, Seq):
            if isinstance(node.rest, Empty):
                nodes.append(GridNode(t, p, node.action, True))
                return
            nodes.append(GridNode(t, p, node.action, False))
            walk(node.rest, t + 1, p)
            return
        if isinstance(node, Case):
            nodes.append(GridNode(t, p, node.action, False))
            child = p
            for g, sub in node.branches:
                branches.append(GridBranch(g, t, p, child))
                walk(sub, t + 1, child)
                child += plan_width(sub)
            return
        raise TypeError(f"not a plan: {node!r}")

    walk(plan, 1, 1)
    return PlanGrid(h, w, tuple(nodes), tuple(branches))


# --- reduct and verification ------------------------------------------------


def reduct(theory: ActionTheory, delta: LiteralSet, plan: Plan) -> Plan:
    """Normalize a plan against an a-state.

    Drops everything after the goal is reached, cuts steps with no possible
    successor, and resolves case branches whose sensed literal is already
    settled. The plan must be executable from delta.
    """
    from .semantics import closure, step

    def rec(d: LiteralSet, p: Plan) -> Plan:
        if isinstance(p, Empty) or holds(d, theory.goal):
            return EMPTY
        if isinstance(p, Seq):
            succ = step(theory, p.action, d)
            if succ is None:
                raise ValueError("plan is not executable from the given a-state")
            if len(succ) == 1:
                (nxt,) = succ
                return Seq(p.action, rec(nxt, p.rest))
            return Seq(p.action, EMPTY)
        if isinstance(p, Case):
            for g, sub in p.branches:
                if g in d:
                    return rec(d, sub)
            out = []
            for g, sub in p.branches:
                ext = closure(theory, d | {g})
                if not is_consistent(ext):
                    out.append((g, EMPTY))
                else:
                    out.append((g, rec(ext, sub)))
            return Case(p.action, tuple(out))
        raise TypeError(f"not a plan: {p!r}")

    return rec(delta, plan)


def is_solution(theory: ActionTheory, plan: Plan) -> bool:
    """True iff the goal is known after running the plan from the initial a-state."""
    from .semantics import entails

    return entails(
        theory, Query(QueryMode.KNOWS, conjunction(theory.goal), plan)
    )
