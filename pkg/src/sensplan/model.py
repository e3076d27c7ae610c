"""Core vocabulary for action theories: fluents, literals, formulas, laws.

Everything here is an immutable value object; instances can be shared freely
across threads. Literal sets are plain frozensets; use :func:`sort_literals`
wherever a deterministic order is needed for output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional

IDENT_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


class TruthValue(Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Literal:
    """A fluent or its negation."""

    fluent: str
    positive: bool = True

    def complement(self) -> "Literal":
        return Literal(self.fluent, not self.positive)

    @property
    def key(self) -> tuple[str, int]:
        return (self.fluent, 0 if self.positive else 1)

    def __str__(self) -> str:
        return self.fluent if self.positive else f"neg({self.fluent})"

    def __repr__(self) -> str:
        return f"Literal({str(self)!r})"


def pos(fluent: str) -> Literal:
    return Literal(fluent, True)


def neg(fluent: str) -> Literal:
    return Literal(fluent, False)


def complement(literal: Literal) -> Literal:
    """The complementary literal; an involution."""
    return literal.complement()


LiteralSet = frozenset[Literal]


def sort_literals(literals: Iterable[Literal]) -> list[Literal]:
    """Canonical order: fluent name first, positive before negative."""
    return sorted(literals, key=lambda l: l.key)


def complements(literals: Iterable[Literal]) -> LiteralSet:
    return frozenset(l.complement() for l in literals)


def is_consistent(literals: Iterable[Literal]) -> bool:
    s = frozenset(literals)
    return not any(l.complement() in s for l in s)


def holds(sigma: Iterable[Literal], gamma: Iterable[Literal]) -> bool:
    """A literal set holds in sigma when all of its members are in sigma."""
    return set(gamma) <= set(sigma)


def possibly_holds(sigma: Iterable[Literal], gamma: Iterable[Literal]) -> bool:
    """True iff no complement of gamma appears in sigma."""
    s = set(sigma)
    return not any(l.complement() in s for l in gamma)


def format_literals(literals: Iterable[Literal]) -> str:
    return "{" + ", ".join(str(l) for l in sort_literals(literals)) + "}"


# --- fluent formulas ------------------------------------------------------


class Formula:
    """Base class for fluent formulas (literal leaves, ~, &, |)."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    literal: Literal


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


def conjunction(literals: Iterable[Literal]) -> Formula:
    """Build the conjunction of a nonempty literal collection."""
    items = list(literals)
    if not items:
        raise ValueError("conjunction of an empty literal collection")
    node: Formula = Atom(items[0])
    for l in items[1:]:
        node = And(node, Atom(l))
    return node


def eval_formula(sigma: Iterable[Literal], rho: Formula) -> TruthValue:
    """Three-valued truth of a formula in a consistent literal set.

    A literal is true when it is a member, false when its complement is,
    unknown otherwise; the connectives follow the strong Kleene tables.
    """
    s = frozenset(sigma)
    if not is_consistent(s):
        raise ValueError("formula evaluated in an inconsistent literal set")
    return _eval(s, rho)


def _eval(sigma: LiteralSet, rho: Formula) -> TruthValue:
    if isinstance(rho, Atom):
        if rho.literal in sigma:
            return TruthValue.TRUE
        if rho.literal.complement() in sigma:
            return TruthValue.FALSE
        return TruthValue.UNKNOWN
    if isinstance(rho, Not):
        v = _eval(sigma, rho.operand)
        if v is TruthValue.TRUE:
            return TruthValue.FALSE
        if v is TruthValue.FALSE:
            return TruthValue.TRUE
        return TruthValue.UNKNOWN
    if isinstance(rho, And):
        a, b = _eval(sigma, rho.left), _eval(sigma, rho.right)
        if a is TruthValue.TRUE and b is TruthValue.TRUE:
            return TruthValue.TRUE
        if a is TruthValue.FALSE or b is TruthValue.FALSE:
            return TruthValue.FALSE
        return TruthValue.UNKNOWN
    if isinstance(rho, Or):
        a, b = _eval(sigma, rho.left), _eval(sigma, rho.right)
        if a is TruthValue.TRUE or b is TruthValue.TRUE:
            return TruthValue.TRUE
        if a is TruthValue.FALSE and b is TruthValue.FALSE:
            return TruthValue.FALSE
        return TruthValue.UNKNOWN
    raise TypeError(f"not a formula node: {rho!r}")


# --- actions and laws -----------------------------------------------------


@dataclass(frozen=True)
class Action:
    name: str
    sensing: bool = False


@dataclass(frozen=True)
class ExecutabilityLaw:
    """executable(action, condition): the action can run where the condition holds."""

    action: str
    condition: tuple[Literal, ...] = ()


@dataclass(frozen=True)
class DynamicLaw:
    """causes(action, effect, condition): conditional direct effect of a non-sensing action."""

    action: str
    effect: Literal
    condition: tuple[Literal, ...] = ()


@dataclass(frozen=True)
class StaticLaw:
    """if(head, body): the head holds in any situation where the body holds."""

    head: Literal
    body: tuple[Literal, ...]


@dataclass(frozen=True)
class KProposition:
    """determines(action, sensed): executing the action reveals which sensed literal holds."""

    action: str
    sensed: tuple[Literal, ...]


class QueryMode(Enum):
    KNOWS = "knows"
    WHETHER = "whether"


@dataclass(frozen=True)
class ActionTheory:
    """A domain description plus initial facts and a conjunctive goal.

    ``statics`` always contains the mutual-exclusion laws implied by the
    recorded ``oneofs``; the macro tuples are kept only so printers can
    re-emit the compact form.
    """

    fluents: tuple[str, ...]
    actions: tuple[Action, ...]
    executables: tuple[ExecutabilityLaw, ...]
    dynamics: tuple[DynamicLaw, ...]
    statics: tuple[StaticLaw, ...]
    k_props: tuple[KProposition, ...]
    initially: tuple[Literal, ...]
    goal: tuple[Literal, ...]
    oneofs: tuple[tuple[Literal, ...], ...] = ()

    def fluent_set(self) -> frozenset[str]:
        return frozenset(self.fluents)

    def action_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.actions)

    def is_sensing(self, action: str) -> bool:
        return any(a.name == action and a.sensing for a in self.actions)

    def has_action(self, action: str) -> bool:
        return any(a.name == action for a in self.actions)

    def executables_for(self, action: str) -> Iterator[ExecutabilityLaw]:
        return (law for law in self.executables if law.action == action)

    def dynamics_for(self, action: str) -> Iterator[DynamicLaw]:
        return (law for law in self.dynamics if law.action == action)

    def k_prop_for(self, action: str) -> Optional[KProposition]:
        for k in self.k_props:
            if k.action == action:
                return k
        return None

    def all_literals(self) -> frozenset[Literal]:
        return frozenset(
            l for f in self.fluents for l in (Literal(f, True), Literal(f, False))
        )


@dataclass(frozen=True)
class Query:
    mode: QueryMode
    formula: Formula
    plan: "object"  # a plans.Plan; untyped here to avoid a circular import


def _formula_literals(rho: Formula) -> Iterator[Literal]:
    stack = [rho]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            yield node.literal
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or)):
            stack.extend((node.left, node.right))


def validate_theory(theory: ActionTheory) -> list[str]:
    """Collect structural violations; an empty list means the theory is well formed."""
    problems: list[str] = []
    fluents = theory.fluent_set()

    for f in theory.fluents:
        if not IDENT_RE.match(f):
            problems.append(f"invalid fluent name: {f!r}")
    if len(set(theory.fluents)) != len(theory.fluents):
        problems.append("duplicate fluent declarations")

    names = [a.name for a in theory.actions]
    for n in names:
        if not IDENT_RE.match(n):
            problems.append(f"invalid action name: {n!r}")
    if len(set(names)) != len(names):
        problems.append("duplicate action declarations")

    def check_lits(lits: Iterable[Literal], where: str) -> None:
        for l in lits:
            if l.fluent not in fluents:
                problems.append(f"unknown fluent {l.fluent!r} in {where}")

    sensing = {k.action for k in theory.k_props}
    dynamic_actions = {d.action for d in theory.dynamics}
    for a in sorted(sensing & dynamic_actions):
        problems.append(f"action {a!r} has both dynamic laws and a sensing proposition")
    for a in sorted(sensing):
        if not theory.has_action(a):
            problems.append(f"undeclared sensing action {a!r}")
    seen_k: set[str] = set()
    for k in theory.k_props:
        if k.action in seen_k:
            problems.append(f"sensing action {k.action!r} appears in more than one determines")
        seen_k.add(k.action)
        if len(k.sensed) < 2:
            problems.append(f"determines({k.action},...) senses fewer than two literals")
        check_lits(k.sensed, f"determines({k.action},...)")
        if not _is_complementary_pair(k.sensed):
            missing = [
                law
                for law in _exclusion_laws(k.sensed)
                if law not in theory.statics
            ]
            if missing:
                problems.append(
                    f"sensed literals of {k.action!r} lack mutual-exclusion laws"
                )
    for a in theory.actions:
        if a.sensing != (a.name in sensing):
            problems.append(f"action {a.name!r} sensing flag disagrees with determines")

    for law in theory.executables:
        if not theory.has_action(law.action):
            problems.append(f"executable law for undeclared action {law.action!r}")
        check_lits(law.condition, f"executable({law.action},...)")
    for dyn in theory.dynamics:
        if not theory.has_action(dyn.action):
            problems.append(f"causes law for undeclared action {dyn.action!r}")
        if dyn.action in sensing:
            problems.append(f"causes law for sensing action {dyn.action!r}")
        check_lits((dyn.effect, *dyn.condition), f"causes({dyn.action},...)")
    for st in theory.statics:
        if not st.body:
            problems.append(f"static law if({st.head},[]) has an empty body")
        check_lits((st.head, *st.body), f"if({st.head},...)")

    check_lits(theory.initially, "initially(...)")
    if not is_consistent(theory.initially):
        problems.append("initial facts contain complementary literals")

    if not theory.goal:
        problems.append("goal is empty")
    check_lits(theory.goal, "goal(...)")

    return problems


def _is_complementary_pair(sensed: tuple[Literal, ...]) -> bool:
    return len(sensed) == 2 and sensed[0] == sensed[1].complement()


def _exclusion_laws(sensed: tuple[Literal, ...]) -> list[StaticLaw]:
    # Single source of truth; theory_io.expand_oneof is the public wrapper.
    laws = []
    for x in sensed:
        for y in sensed:
            if y != x:
                laws.append(StaticLaw(x.complement(), (y,)))
        laws.append(StaticLaw(x, tuple(y.complement() for y in sensed if y != x)))
    return laws
