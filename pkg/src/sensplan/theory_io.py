"""Text format for action theories.

A theory file is a sequence of declarations, one per statement:

    fluent(f).  action(a).  executable(a,[l,...]).  causes(a,l,[l,...]).
    if(l,[l,...]).  determines(a,[l,...]).  oneof([l,...]).
    initially(l).  goal(l).

Literals are written ``f`` or ``neg(f)``; ``%`` starts a comment that runs
to end of line. Duplicate declarations are idempotent. ``oneof`` is kept as
a macro marker for printing, but its mutual-exclusion laws are always added
to the theory's static laws.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .model import (
    Action,
    ActionTheory,
    DynamicLaw,
    ExecutabilityLaw,
    KProposition,
    Literal,
    StaticLaw,
    _exclusion_laws,
    _is_complementary_pair,
    validate_theory,
)

DECLARATION_HEADS = (
    "fluent",
    "action",
    "executable",
    "causes",
    "if",
    "determines",
    "oneof",
    "initially",
    "goal",
)


class ParseError(ValueError):
    """Syntax error with a 1-based source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class TheoryValidationError(ValueError):
    def __init__(self, problems: list[str]):
        super().__init__("invalid theory:\n" + "\n".join(f"  - {p}" for p in problems))
        self.problems = problems


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident' | 'punct'
    text: str
    line: int
    column: int


_PUNCT = "()[],.;->&|~"


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            col += 1
            i += 1
            continue
        if c in _PUNCT:
            tokens.append(Token("punct", c, line, col))
            col += 1
            i += 1
            continue
        if c.isalnum() or c == "_":
            start = i
            startcol = col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            tokens.append(Token("ident", text[start:i], line, startcol))
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    return tokens


class _TokenStream:
    def __init__(self, tokens: list[Token], text: str):
        self.tokens = tokens
        self.pos = 0
        lines = text.splitlines() or [""]
        self._end = (len(lines), len(lines[-1]) + 1)

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self, expected: str | None = None) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(
                f"unexpected end of input{f', expected {expected!r}' if expected else ''}",
                *self._end,
            )
        if expected is not None and tok.text != expected:
            raise ParseError(
                f"expected {expected!r}, found {tok.text!r}", tok.line, tok.column
            )
        self.pos += 1
        return tok

    def next_ident(self, what: str) -> Token:
        tok = self.next(None)
        if tok.kind != "ident":
            raise ParseError(f"expected {what}, found {tok.text!r}", tok.line, tok.column)
        return tok


def _parse_literal(ts: _TokenStream) -> Literal:
    tok = ts.next_ident("a literal")
    if tok.text == "neg":
        ts.next("(")
        inner = ts.next_ident("a fluent name")
        ts.next(")")
        return Literal(inner.text, False)
    return Literal(tok.text, True)


def _parse_literal_list(ts: _TokenStream) -> tuple[Literal, ...]:
    ts.next("[")
    items: list[Literal] = []
    if ts.peek() is not None and ts.peek().text == "]":
        ts.next("]")
        return ()
    while True:
        items.append(_parse_literal(ts))
        tok = ts.next(None)
        if tok.text == "]":
            return tuple(items)
        if tok.text != ",":
            raise ParseError(f"expected ',' or ']', found {tok.text!r}", tok.line, tok.column)


def parse_literal_text(text: str) -> Literal:
    """Parse a standalone ``f`` / ``neg(f)`` literal token."""
    ts = _TokenStream(tokenize(text), text)
    lit = _parse_literal(ts)
    if ts.peek() is not None:
        tok = ts.peek()
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.column)
    return lit


def expand_oneof(theta: Iterable[Literal]) -> list[StaticLaw]:
    """Static laws making the literals mutually exclusive and jointly exhaustive.

    For every ordered pair x != y this yields if(neg(x), [y]), plus for every
    x the law if(x, [neg(y) for y != x]); |theta|^2 laws in total.
    """
    items = tuple(theta)
    if len(items) < 2:
        raise ValueError("oneof needs at least two literals")
    return _exclusion_laws(items)


def parse_theory(text: str) -> ActionTheory:
    """Parse a theory file and validate it; raises on the first syntax error."""
    ts = _TokenStream(tokenize(text), text)

    fluents: list[str] = []
    action_names: list[str] = []
    executables: list[ExecutabilityLaw] = []
    dynamics: list[DynamicLaw] = []
    statics: list[StaticLaw] = []
    k_props: list[KProposition] = []
    oneofs: list[tuple[Literal, ...]] = []
    initially: list[Literal] = []
    goal: list[Literal] = []

    def add_unique(seq: list, item) -> None:
        if item not in seq:
            seq.append(item)

    while ts.peek() is not None:
        head = ts.next_ident("a declaration")
        if head.text not in DECLARATION_HEADS:
            raise ParseError(
                f"unknown declaration {head.text!r}", head.line, head.column
            )
        ts.next("(")
        if head.text == "fluent":
            add_unique(fluents, ts.next_ident("a fluent name").text)
        elif head.text == "action":
            add_unique(action_names, ts.next_ident("an action name").text)
        elif head.text == "executable":
            name = ts.next_ident("an action name").text
            ts.next(",")
            cond = _parse_literal_list(ts)
            add_unique(executables, ExecutabilityLaw(name, cond))
        elif head.text == "causes":
            name = ts.next_ident("an action name").text
            ts.next(",")
            effect = _parse_literal(ts)
            ts.next(",")
            cond = _parse_literal_list(ts)
            add_unique(dynamics, DynamicLaw(name, effect, cond))
        elif head.text == "if":
            head_lit = _parse_literal(ts)
            ts.next(",")
            body = _parse_literal_list(ts)
            add_unique(statics, StaticLaw(head_lit, body))
        elif head.text == "determines":
            name = ts.next_ident("an action name").text
            ts.next(",")
            sensed = _parse_literal_list(ts)
            if len(sensed) < 2:
                raise ParseError(
                    f"determines({name},...) needs at least two sensed literals",
                    head.line,
                    head.column,
                )
            add_unique(k_props, KProposition(name, sensed))
        elif head.text == "oneof":
            theta = _parse_literal_list(ts)
            if len(theta) < 2:
                raise ParseError(
                    "oneof needs at least two literals", head.line, head.column
                )
            add_unique(oneofs, theta)
        elif head.text == "initially":
            add_unique(initially, _parse_literal(ts))
        elif head.text == "goal":
            add_unique(goal, _parse_literal(ts))
        ts.next(")")
        ts.next(".")

    return build_theory(
        fluents=fluents,
        actions=action_names,
        executables=executables,
        dynamics=dynamics,
        statics=statics,
        k_props=k_props,
        oneofs=oneofs,
        initially=initially,
        goal=goal,
    )


def build_theory(
    fluents: Iterable[str],
    actions: Iterable[str],
    executables: Iterable[ExecutabilityLaw],
    dynamics: Iterable[DynamicLaw],
    statics: Iterable[StaticLaw],
    k_props: Iterable[KProposition],
    oneofs: Iterable[tuple[Literal, ...]] = (),
    initially: Iterable[Literal] = (),
    goal: Iterable[Literal] = (),
) -> ActionTheory:
    """Assemble and validate a theory; sensing kinds come from the k-propositions.

    Mutual-exclusion laws for every oneof group are appended to the static
    laws; a complementary pair {f, neg(f)} is exclusive already and gets none.
    """
    k_props = tuple(k_props)
    sensing = {k.action for k in k_props}
    action_tuple = tuple(Action(a, a in sensing) for a in actions)

    static_list = list(statics)
    oneof_list = [tuple(t) for t in oneofs]
    for theta in oneof_list:
        if _is_complementary_pair(theta):
            continue
        for law in _exclusion_laws(theta):
            if law not in static_list:
                static_list.append(law)
    theory = ActionTheory(
        fluents=tuple(fluents),
        actions=action_tuple,
        executables=tuple(executables),
        dynamics=tuple(dynamics),
        statics=tuple(static_list),
        k_props=k_props,
        initially=tuple(initially),
        goal=tuple(goal),
        oneofs=tuple(oneof_list),
    )
    problems = validate_theory(theory)
    if problems:
        raise TheoryValidationError(problems)
    return theory


def _fmt_list(literals: Iterable[Literal]) -> str:
    return "[" + ",".join(str(l) for l in literals) + "]"


def print_theory(theory: ActionTheory) -> str:
    """Render a theory in the canonical file syntax; a parse fixed point."""
    expanded = set()
    for theta in theory.oneofs:
        expanded.update(_exclusion_laws(theta))

    out: list[str] = []
    out.extend(f"fluent({f})." for f in theory.fluents)
    out.append("")
    out.extend(f"action({a.name})." for a in theory.actions)
    out.append("")
    out.extend(
        f"executable({law.action},{_fmt_list(law.condition)})."
        for law in theory.executables
    )
    out.append("")
    out.extend(
        f"causes({law.action},{law.effect},{_fmt_list(law.condition)})."
        for law in theory.dynamics
    )
    out.append("")
    explicit = [law for law in theory.statics if law not in expanded]
    if explicit:
        out.extend(f"if({law.head},{_fmt_list(law.body)})." for law in explicit)
        out.append("")
    if theory.k_props:
        out.extend(
            f"determines({k.action},{_fmt_list(k.sensed)})." for k in theory.k_props
        )
        out.append("")
    if theory.oneofs:
        out.extend(f"oneof({_fmt_list(t)})." for t in theory.oneofs)
        out.append("")
    out.extend(f"initially({l})." for l in theory.initially)
    if theory.initially:
        out.append("")
    out.extend(f"goal({l})." for l in theory.goal)
    return "\n".join(out).strip() + "\n"


def theories_equal(a: ActionTheory, b: ActionTheory) -> bool:
    """Structural equality up to declaration order."""
    return (
        set(a.fluents) == set(b.fluents)
        and set(a.actions) == set(b.actions)
        and set(a.executables) == set(b.executables)
        and set(a.dynamics) == set(b.dynamics)
        and set(a.statics) == set(b.statics)
        and set(a.k_props) == set(b.k_props)
        and set(a.initially) == set(b.initially)
        and set(a.goal) == set(b.goal)
    )
