"""Depth-first search for conformant and conditional plans on a bounded grid.

The search works on a-states. For a given remaining height it computes the
minimal tree width of any acceptable plan (memoized per a-state and height),
then reconstructs one deterministically: actions are tried in declaration
order and case branches keep the sensed-literal order. Returned plans never
act once the goal holds and never sense a literal that already holds, which
mirrors the constraints the program encoding imposes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import inf
from typing import Optional

from .model import ActionTheory, LiteralSet, holds, is_consistent
from .plans import EMPTY, Case, Plan, Seq, actions_of
from .semantics import closure, initial_astate, is_executable, step_nonsensing


class BudgetExhausted(RuntimeError):
    """Search ran out of nodes or time; distinct from "no plan within bounds"."""


@dataclass(frozen=True)
class SearchBudget:
    h_max: int
    w_max: int
    node_limit: Optional[int] = None
    deadline: Optional[float] = None  # seconds of search time

    def __post_init__(self) -> None:
        if self.h_max < 1 or self.w_max < 1:
            raise ValueError("bounds must be at least 1")


class _Search:
    """Per-theory search state: memo table shared across all (h, w) probes."""

    def __init__(self, theory: ActionTheory, budget: Optional[SearchBudget] = None):
        self.theory = theory
        self.goal = tuple(theory.goal)
        self.budget = budget
        self.nodes = 0
        self.started = time.monotonic()
        # (a-state, remaining height) -> minimal plan-tree width, inf if none
        self.memo: dict[tuple[LiteralSet, int], float] = {}

    def _tick(self) -> None:
        self.nodes += 1
        b = self.budget
        if b is None:
            return
        if b.node_limit is not None and self.nodes > b.node_limit:
            raise BudgetExhausted(f"node limit {b.node_limit} exceeded")
        if b.deadline is not None and self.nodes % 256 == 0:
            if time.monotonic() - self.started > b.deadline:
                raise BudgetExhausted(f"deadline of {b.deadline}s exceeded")

    def _branches(self, sensed, delta: LiteralSet):
        for g in sensed:
            ext = closure(self.theory, delta | {g})
            yield g, (ext if is_consistent(ext) else None)

    def min_width(self, delta: LiteralSet, d: int) -> float:
        """Minimal width of an acceptable plan from delta with height <= d."""
        if holds(delta, self.goal):
            return 1
        if d <= 0:
            return inf
        key = (delta, d)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        self._tick()
        best: float = inf
        for action in self.theory.actions:
            if not is_executable(self.theory, action.name, delta):
                continue
            if action.sensing:
                if d < 2:
                    continue
                k = self.theory.k_prop_for(action.name)
                if any(g in delta for g in k.sensed):
                    continue  # sensing an already settled literal is never emitted
                total = 0.0
                for _, ext in self._branches(k.sensed, delta):
                    total += 1 if ext is None else self.min_width(ext, d - 1)
                    if total >= best:
                        break
                best = min(best, total)
            else:
                succ = step_nonsensing(self.theory, action.name, delta)
                if not succ:
                    cand: float = 1  # successor is contradictory: branch ends here
                else:
                    (nxt,) = succ
                    cand = self.min_width(nxt, d - 1)
                best = min(best, cand)
        self.memo[key] = best
        return best

    def build(self, delta: LiteralSet, d: int, w: float) -> Plan:
        """First plan in canonical order whose width fits w; assumes one exists."""
        if holds(delta, self.goal):
            return EMPTY
        for action in self.theory.actions:
            if not is_executable(self.theory, action.name, delta):
                continue
            if action.sensing:
                if d < 2:
                    continue
                k = self.theory.k_prop_for(action.name)
                if any(g in delta for g in k.sensed):
                    continue
                parts = list(self._branches(k.sensed, delta))
                widths = [
                    1 if ext is None else self.min_width(ext, d - 1)
                    for _, ext in parts
                ]
                if sum(widths) > w:
                    continue
                branches = tuple(
                    (g, EMPTY if ext is None else self.build(ext, d - 1, wd))
                    for (g, ext), wd in zip(parts, widths)
                )
                return Case(action.name, branches)
            succ = step_nonsensing(self.theory, action.name, delta)
            if not succ:
                return Seq(action.name, EMPTY)
            (nxt,) = succ
            if self.min_width(nxt, d - 1) <= w:
                return Seq(action.name, self.build(nxt, d - 1, w))
        raise AssertionError("no plan to reconstruct; min_width disagrees")


def solve_conditional(
    theory: ActionTheory, h: int, w: int, budget: Optional[SearchBudget] = None
) -> Optional[Plan]:
    """A solution plan of height <= h and width <= w, or None if none exists."""
    if h < 1 or w < 1:
        raise ValueError("bounds must be at least 1")
    search = _Search(theory, budget)
    delta = initial_astate(theory)
    if search.min_width(delta, h) <= w:
        return search.build(delta, h, w)
    return None


def solve_conformant(
    theory: ActionTheory, h: int, budget: Optional[SearchBudget] = None
) -> Optional[list[str]]:
    """A branch-free solution of at most h actions, as a list of action names."""
    plan = solve_conditional(theory, h, 1, budget)
    return None if plan is None else actions_of(plan)


def solve_iterative(
    theory: ActionTheory, budget: SearchBudget
) -> Optional[tuple[Plan, int, int]]:
    """Smallest workable bounds: minimal height first, then minimal width.

    Returns (plan, h, w) for the first (h, w) in that order admitting a
    solution, or None when none exists within the budget's bounds.
    """
    search = _Search(theory, budget)
    delta = initial_astate(theory)
    for h in range(1, budget.h_max + 1):
        width = search.min_width(delta, h)
        if width <= budget.w_max:
            return search.build(delta, h, width), h, int(width)
    return None
