"""Approximate progression of knowledge states.

The agent's knowledge is an a-state: a consistent literal set closed under
the theory's static laws. Single actions map a-states to sets of successor
a-states; ``None`` throughout this module marks the undefined outcome (the
action or plan is not executable), which is distinct from an empty
successor set.

A brute-force possible-world oracle over complete states is included for
testing; it is exponential and guarded by a fluent-count limit.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Optional

from .model import (
    ActionTheory,
    Literal,
    LiteralSet,
    Query,
    QueryMode,
    TruthValue,
    complements,
    eval_formula,
    holds,
    is_consistent,
    possibly_holds,
)
from . import plans as _plans

AStateSet = frozenset[LiteralSet]
StepResult = Optional[AStateSet]

DEFAULT_STATE_GUARD = 16


class SizeGuardError(RuntimeError):
    """Raised when a brute-force enumeration would exceed the fluent guard."""


class InconsistentInitialState(ValueError):
    """The closure of the initial facts contains complementary literals."""


def closure(theory: ActionTheory, sigma: Iterable[Literal]) -> LiteralSet:
    """Least superset of sigma satisfying every static law.

    Computed by iterating the one-step consequence operator to its fixpoint;
    the result may be inconsistent, which callers detect themselves.
    """
    current = set(sigma)
    changed = True
    while changed:
        changed = False
        for law in theory.statics:
            if law.head not in current and set(law.body) <= current:
                current.add(law.head)
                changed = True
    return frozenset(current)


def is_executable(theory: ActionTheory, action: str, delta: Iterable[Literal]) -> bool:
    """True iff some executability law's condition holds in delta."""
    d = set(delta)
    return any(set(law.condition) <= d for law in theory.executables_for(action))


def _require_nonsensing(theory: ActionTheory, action: str, delta: LiteralSet) -> None:
    if theory.is_sensing(action):
        raise ValueError(f"{action!r} is a sensing action")
    if not is_executable(theory, action, delta):
        raise ValueError(f"{action!r} is not executable in the given a-state")


def definite_effects(theory: ActionTheory, action: str, delta: LiteralSet) -> LiteralSet:
    """Closure of the direct effects whose conditions hold in delta."""
    _require_nonsensing(theory, action, delta)
    base = {
        law.effect for law in theory.dynamics_for(action) if holds(delta, law.condition)
    }
    return closure(theory, base)


def possible_changes(theory: ActionTheory, action: str, delta: LiteralSet) -> LiteralSet:
    """Literals outside delta that may hold after the action.

    Seeded with dynamic-law effects whose conditions possibly hold in delta,
    then grown through static laws whose body meets the current set and
    possibly holds in the definite effects, until nothing is added.
    """
    _require_nonsensing(theory, action, delta)
    eff = definite_effects(theory, action, delta)
    pc = {
        law.effect
        for law in theory.dynamics_for(action)
        if law.effect not in delta and possibly_holds(delta, law.condition)
    }
    changed = True
    while changed:
        changed = False
        for law in theory.statics:
            if (
                law.head not in delta
                and law.head not in pc
                and any(l in pc for l in law.body)
                and possibly_holds(eff, law.body)
            ):
                pc.add(law.head)
                changed = True
    return frozenset(pc)


def step_nonsensing(theory: ActionTheory, action: str, delta: LiteralSet) -> AStateSet:
    """Successor a-states of a non-sensing action: one, or none if inconsistent.

    The successor keeps the definite effects plus whatever part of delta
    cannot be affected, closed under the static laws.
    """
    eff = definite_effects(theory, action, delta)
    pc = possible_changes(theory, action, delta)
    succ = closure(theory, eff | (delta - complements(pc)))
    if is_consistent(succ):
        return frozenset({succ})
    return frozenset()


def step_sensing(theory: ActionTheory, action: str, delta: LiteralSet) -> AStateSet:
    """One successor per sensed literal whose addition keeps delta consistent."""
    k = theory.k_prop_for(action)
    if k is None:
        raise ValueError(f"{action!r} is not a sensing action")
    if not is_executable(theory, action, delta):
        raise ValueError(f"{action!r} is not executable in the given a-state")
    out = set()
    for g in k.sensed:
        ext = closure(theory, delta | {g})
        if is_consistent(ext):
            out.add(ext)
    return frozenset(out)


def step(theory: ActionTheory, action: str, delta: LiteralSet) -> StepResult:
    """All successor a-states of one action, or None when not executable."""
    if not theory.has_action(action):
        raise ValueError(f"unknown action {action!r}")
    if not is_executable(theory, action, delta):
        return None
    if theory.is_sensing(action):
        return step_sensing(theory, action, delta)
    return step_nonsensing(theory, action, delta)


def run_plan(theory: ActionTheory, plan: "_plans.Plan", delta: LiteralSet) -> StepResult:
    """Final a-states of a conditional plan; None as soon as any step is.

    Case branches are followed only in successors where their sensed literal
    holds; branches whose assumption turns out inconsistent later simply
    contribute nothing, so the result may be empty.
    """
    if isinstance(plan, _plans.Empty):
        return frozenset({frozenset(delta)})
    if isinstance(plan, _plans.Seq):
        succ = step(theory, plan.action, delta)
        if succ is None:
            return None
        out: set[LiteralSet] = set()
        for nxt in succ:
            sub = run_plan(theory, plan.rest, nxt)
            if sub is None:
                return None
            out.update(sub)
        return frozenset(out)
    if isinstance(plan, _plans.Case):
        k = theory.k_prop_for(plan.action)
        if k is None:
            raise ValueError(f"{plan.action!r} is not a sensing action of the theory")
        if tuple(g for g, _ in plan.branches) != k.sensed:
            raise ValueError(
                f"case branches for {plan.action!r} do not match its sensed literals"
            )
        succ = step(theory, plan.action, delta)
        if succ is None:
            return None
        out = set()
        for nxt in succ:
            for g, sub_plan in plan.branches:
                if g in nxt:
                    sub = run_plan(theory, sub_plan, nxt)
                    if sub is None:
                        return None
                    out.update(sub)
        return frozenset(out)
    raise TypeError(f"not a plan: {plan!r}")


def initial_astate(theory: ActionTheory) -> LiteralSet:
    """Closure of the initial facts; raises if that closure is inconsistent."""
    delta = closure(theory, theory.initially)
    if not is_consistent(delta):
        raise InconsistentInitialState(
            "closure of the initial facts is inconsistent"
        )
    return delta


def entails(theory: ActionTheory, query: Query) -> bool:
    """Decide a knows/whether query against the initial a-state.

    False whenever the plan is not executable; vacuously true when every
    execution branch dies on an inconsistent a-state.
    """
    delta = initial_astate(theory)
    result = run_plan(theory, query.plan, delta)
    if result is None:
        return False
    if query.mode is QueryMode.KNOWS:
        return all(
            eval_formula(d, query.formula) is TruthValue.TRUE for d in result
        )
    return all(
        eval_formula(d, query.formula) is not TruthValue.UNKNOWN for d in result
    )


# --- brute-force possible-world oracle -------------------------------------


def _guard(theory: ActionTheory, max_fluents: int) -> None:
    if len(theory.fluents) > max_fluents:
        raise SizeGuardError(
            f"{len(theory.fluents)} fluents exceed the enumeration guard "
            f"({max_fluents}); raise max_fluents explicitly to override"
        )


def enumerate_states(
    theory: ActionTheory, max_fluents: int = DEFAULT_STATE_GUARD
) -> list[LiteralSet]:
    """All complete interpretations satisfying the static laws."""
    _guard(theory, max_fluents)
    states = []
    for signs in product((True, False), repeat=len(theory.fluents)):
        interp = frozenset(
            Literal(f, sign) for f, sign in zip(theory.fluents, signs)
        )
        if all(
            law.head in interp or not set(law.body) <= interp
            for law in theory.statics
        ):
            states.append(interp)
    return states


def oracle_successors(
    theory: ActionTheory,
    action: str,
    state: LiteralSet,
    max_fluents: int = DEFAULT_STATE_GUARD,
) -> AStateSet:
    """Possible next worlds of a non-sensing action under full knowledge.

    A complete interpretation s' is a successor of s iff it equals the
    closure of the direct effects together with the literals it inherits
    from s. Used as the test oracle for the approximate transition.
    """
    _guard(theory, max_fluents)
    if theory.is_sensing(action):
        raise ValueError(f"{action!r} is a sensing action")
    if not is_executable(theory, action, state):
        raise ValueError(f"{action!r} is not executable in the given state")
    direct = frozenset(
        law.effect for law in theory.dynamics_for(action) if holds(state, law.condition)
    )
    out = set()
    for signs in product((True, False), repeat=len(theory.fluents)):
        candidate = frozenset(
            Literal(f, sign) for f, sign in zip(theory.fluents, signs)
        )
        if candidate == closure(theory, direct | (state & candidate)):
            out.add(candidate)
    return frozenset(out)


def is_valid_astate(
    theory: ActionTheory, delta: LiteralSet, max_fluents: int = DEFAULT_STATE_GUARD
) -> bool:
    """True iff some complete state extends delta."""
    return any(delta <= s for s in enumerate_states(theory, max_fluents))


def is_consistent_theory(
    theory: ActionTheory, max_fluents: int = DEFAULT_STATE_GUARD
) -> bool:
    """Every executable non-sensing action has a next world everywhere,
    and the initial a-state is consistent and valid."""
    states = enumerate_states(theory, max_fluents)
    for s in states:
        for a in theory.actions:
            if a.sensing or not is_executable(theory, a.name, s):
                continue
            if not oracle_successors(theory, a.name, s, max_fluents):
                return False
    try:
        delta = initial_astate(theory)
    except InconsistentInitialState:
        return False
    return any(delta <= s for s in states)
