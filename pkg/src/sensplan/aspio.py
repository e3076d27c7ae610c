"""Logic-program emission and answer-set round-tripping.

``emit_program`` renders a planning instance as an lparse-dialect program
whose answer sets encode conditional plans on an h-by-w grid; the grid
bounds stay symbolic (pass ``-c h=H -c w=W`` to lparse). ``parse_answer_set``
reads a solver's atom dump and ``extract_plan`` rebuilds the plan it
encodes. ``emit_reasoner_program`` is the query-only variant that pins a
given plan's action occurrences instead of choosing them.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Union

from .model import ActionTheory, DynamicLaw, KProposition, Literal, StaticLaw
from .plans import EMPTY, Case, Plan, Seq, number_plan, plan_height, plan_width

Arg = Union[int, str]

# predicate name -> arity, for everything a plan-encoding answer set may hold
PREDICATES = {
    "occ": 3,
    "br": 4,
    "holds": 3,
    "used": 2,
    "goal": 2,
    "e": 3,
    "pc": 3,
    "poss": 3,
}


class AnswerSetError(ValueError):
    pass


@dataclass(frozen=True)
class GroundAtom:
    name: str
    args: tuple[Arg, ...]

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class AtomSet:
    atoms: frozenset[GroundAtom]
    h: int
    w: int


# --- program emission -------------------------------------------------------


def _cond(prefix: str, literals: Iterable[Literal], suffix: str) -> list[str]:
    return [f"{prefix}{l}{suffix}" for l in literals]


def _rule(head: str, body: list[str]) -> str:
    if not body:
        return f"{head}."
    return f"{head} :- {', '.join(body)}."


def _constraint(body: list[str]) -> str:
    return f":- {', '.join(body)}."


def _dynamic_rules(law: DynamicLaw) -> list[str]:
    occ = f"occ({law.action},T,P)"
    e_body = [occ] + _cond("holds(", law.condition, ",T,P)")
    pc_body = [occ] + [f"not holds({m.complement()},T,P)" for m in law.condition]
    return [
        _rule(f"e({law.effect},T+1,P)", e_body),
        _rule(f"pc({law.effect},T+1,P)", pc_body),
    ]


def _sensing_rules(k: KProposition) -> list[str]:
    occ = f"occ({k.action},T,P)"
    rules = [_constraint([occ] + [f"not br({g},T,P,P)" for g in k.sensed])]
    rules.extend(
        f"1{{br({g},T,P,X):new_br(P,X)}}1 :- {occ}." for g in k.sensed
    )
    rules.extend(_constraint([occ, f"holds({g},T,P)"]) for g in k.sensed)
    return rules


def _static_rules(law: StaticLaw) -> list[str]:
    rules = [
        _rule(f"holds({law.head},T1,P)", _cond("holds(", law.body, ",T1,P)")),
        _rule(f"e({law.head},T+1,P)", _cond("e(", law.body, ",T+1,P)")),
    ]
    blockers = [f"not e({m.complement()},T+1,P)" for m in law.body]
    for trigger in law.body:
        rules.append(
            _rule(
                f"pc({law.head},T+1,P)",
                [f"pc({trigger},T+1,P)", f"not holds({law.head},T,P)"] + blockers,
            )
        )
    return rules


def _sensed_literals(theory: ActionTheory) -> list[Literal]:
    seen: list[Literal] = []
    for k in theory.k_props:
        for g in k.sensed:
            if g not in seen:
                seen.append(g)
    return seen


def _emit(theory: ActionTheory, planner_rules: bool, epsilon: list[str]) -> str:
    out: list[str] = []

    out += [
        "#domain fluent(F).",
        "#domain literal(L;L1).",
        "#domain sense(G;G1;G2).",
        "#domain time(T).",
        "#domain time1(T1).",
        "#domain path(P;P1;P2).",
        "#domain action(A).",
        "",
        "time(1..h).",
        "time1(1..h+1).",
        "path(1..w).",
        "",
    ]
    out += [f"action({a.name})." for a in theory.actions]
    out.append("")
    out += [f"fluent({f})." for f in theory.fluents]
    out += [f"sense({g})." for g in _sensed_literals(theory)]
    out.append("")

    out += [f"holds({l},1,1)." for l in theory.initially]
    out.append("")

    for law in theory.executables:
        out.append(
            _rule(f"poss({law.action},T,P)", _cond("holds(", law.condition, ",T,P)"))
        )
    out.append("")

    for law in theory.dynamics:
        out += _dynamic_rules(law)
    out.append("")

    if planner_rules:
        for k in theory.k_props:
            out += _sensing_rules(k)
        out.append("")

    for law in theory.statics:
        out += _static_rules(law)
    out.append("")

    if planner_rules:
        out += [
            _rule("goal(T1,P)", _cond("holds(", theory.goal, ",T1,P)")),
            "goal(T1,P) :- contrary(L,L1), holds(L,T1,P), holds(L1,T1,P).",
            ":- used(h+1,P), not goal(h+1,P).",
            "",
        ]

    out += [
        "holds(L,T+1,P) :- e(L,T+1,P).",
        "holds(L,T+1,P) :- holds(L,T,P), contrary(L,L1), not pc(L1,T+1,P).",
        "",
    ]
    if planner_rules:
        out += [
            ":- P1 < P2, P2 < P, br(G1,T,P1,P), br(G2,T,P2,P).",
            ":- G1 != G2, P1 <= P, br(G1,T,P1,P), br(G2,T,P1,P).",
            ":- P1 < P, br(G,T,P1,P), used(T,P).",
            "",
        ]
    out += [
        "used(T+1,P) :- P1 < P, br(G,T,P1,P).",
        "holds(G,T+1,P) :- P1 <= P, br(G,T,P1,P).",
        "holds(L,T+1,P) :- P1 < P, br(G,T,P1,P), holds(L,T,P1).",
        "",
    ]
    if planner_rules:
        out.append("1{occ(X,T,P):action(X)}1 :- used(T,P), not goal(T,P).")
    out += [
        ":- occ(A,T,P), not poss(A,T,P).",
        "",
        "literal(F).",
        "literal(neg(F)).",
        "",
        "contrary(F,neg(F)).",
        "contrary(neg(F),F).",
        "",
    ]
    if planner_rules:
        out += ["new_br(P,P1) :- P <= P1.", ""]
    out += [
        "used(1,1).",
        "used(T+1,P) :- used(T,P).",
        "",
    ]
    if epsilon:
        out += epsilon
        out.append("")
    if planner_rules:
        out += ["hide.", "show occ(A,T,P).", "show br(G,T,P,P1)."]
    else:
        out += ["hide.", "show holds(L,T1,P).", "show used(T1,P)."]
    return "\n".join(out).strip() + "\n"


def emit_program(theory: ActionTheory, h: int, w: int) -> str:
    """The planning program for an h-by-w grid (bounds stay symbolic)."""
    if h < 1 or w < 1:
        raise ValueError("grid bounds must be at least 1")
    return _emit(theory, planner_rules=True, epsilon=[])


def emit_reasoner_program(theory: ActionTheory, plan: Plan) -> str:
    """The query variant: plan occurrences fixed as facts, no plan generation.

    Drops the branch-generation, goal, branch-ordering, choice and new-path
    rules, and adds the occ/br facts of the plan tree numbered at its own
    height and width. Run with ``-c h=<height> -c w=<width>`` of that tree.
    """
    grid = number_plan(plan, plan_height(plan), plan_width(plan))
    eps = [
        f"occ({n.action},{n.time},{n.path})." for n in grid.nodes if n.action
    ]
    eps += [
        f"br({b.literal},{b.time},{b.path},{b.child_path})." for b in grid.branches
    ]
    return _emit(theory, planner_rules=False, epsilon=eps)


# --- answer-set parsing ------------------------------------------------------


def _parse_atom(token: str) -> GroundAtom:
    token = token.strip()
    lparen = token.find("(")
    if lparen == -1:
        if not token.isidentifier():
            raise AnswerSetError(f"malformed atom {token!r}")
        return GroundAtom(token, ())
    if not token.endswith(")"):
        raise AnswerSetError(f"malformed atom {token!r}")
    name = token[:lparen]
    if not name.isidentifier():
        raise AnswerSetError(f"malformed atom {token!r}")
    args: list[Arg] = []
    depth = 0
    current = []
    for ch in token[lparen + 1 : -1]:
        if ch == "," and depth == 0:
            args.append("".join(current))
            current = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise AnswerSetError(f"malformed atom {token!r}")
        current.append(ch)
    args.append("".join(current))
    if depth != 0 or any(not a for a in args):
        raise AnswerSetError(f"malformed atom {token!r}")
    return GroundAtom(name, tuple(int(a) if a.lstrip("-").isdigit() else a for a in args))


def _tokenize_payload(text: str) -> list[str]:
    tokens: list[str] = []
    for line in text.splitlines():
        if ":" in line:
            colon = line.index(":")
            if "(" not in line[:colon]:
                line = line[colon + 1 :]
        tokens.extend(line.split())
    return tokens


_TIME_ARG = {"occ": 1, "br": 1, "holds": 1, "used": 0, "goal": 0, "e": 1, "pc": 1, "poss": 1}
_PATH_ARGS = {"occ": (2,), "br": (2, 3), "holds": (2,), "used": (1,), "goal": (1,), "e": (2,), "pc": (2,), "poss": (2,)}


def _check_range(atom: GroundAtom, h: int, w: int) -> None:
    t = atom.args[_TIME_ARG[atom.name]]
    limit = h if atom.name in ("occ", "br", "poss") else h + 1
    if not isinstance(t, int) or not 1 <= t <= limit:
        raise AnswerSetError(f"time argument of {atom} out of range 1..{limit}")
    for i in _PATH_ARGS[atom.name]:
        p = atom.args[i]
        if not isinstance(p, int) or not 1 <= p <= w:
            raise AnswerSetError(f"path argument of {atom} out of range 1..{w}")


def parse_answer_set(text: str, h: int, w: int) -> AtomSet:
    """Read a solver's atom dump for a program grounded at bounds (h, w).

    Accepts the payload of an smodels "Stable Model:" or cmodels
    "Answer set:" line (the prefix is stripped), or atoms one per line.
    Atoms with unrecognized predicate names are skipped with a warning.
    """
    atoms = set()
    for token in _tokenize_payload(text):
        atom = _parse_atom(token)
        if atom.name not in PREDICATES:
            warnings.warn(f"ignoring atom with unknown predicate: {atom}")
            continue
        if len(atom.args) != PREDICATES[atom.name]:
            raise AnswerSetError(
                f"{atom.name} expects {PREDICATES[atom.name]} arguments, got {atom}"
            )
        _check_range(atom, h, w)
        atoms.add(atom)
    return AtomSet(frozenset(atoms), h, w)


def format_atoms(atom_set: AtomSet) -> str:
    """Canonical one-line rendering; parse_answer_set inverts it."""
    return " ".join(sorted(str(a) for a in atom_set.atoms))


# --- plan extraction ---------------------------------------------------------


def extract_plan(theory: ActionTheory, atom_set: AtomSet) -> Plan:
    """Rebuild the conditional plan rooted at grid node (1, 1).

    Walks occ atoms downward; a sensing occurrence needs one br atom per
    sensed literal, pointing at the subplans of its branches.
    """
    occ: dict[tuple[int, int], str] = {}
    br: dict[tuple[int, int], dict[Literal, int]] = {}
    for atom in atom_set.atoms:
        if atom.name == "occ":
            a, t, p = atom.args
            key = (int(t), int(p))
            if key in occ and occ[key] != a:
                raise AnswerSetError(f"two actions occur at node {key}")
            occ[key] = str(a)
        elif atom.name == "br":
            g, t, p, p1 = atom.args
            lit = _arg_literal(g)
            br.setdefault((int(t), int(p)), {})[lit] = int(p1)

    def rec(i: int, k: int) -> Plan:
        if i == atom_set.h + 1:
            return EMPTY
        action = occ.get((i, k))
        if action is None:
            return EMPTY
        if not theory.has_action(action):
            raise AnswerSetError(f"occ atom names unknown action {action!r}")
        if theory.is_sensing(action):
            kp = theory.k_prop_for(action)
            targets = br.get((i, k), {})
            branches = []
            for g in kp.sensed:
                if g not in targets:
                    raise AnswerSetError(
                        f"missing br atom for sensed literal {g} at node ({i},{k})"
                    )
                branches.append((g, rec(i + 1, targets[g])))
            return Case(action, tuple(branches))
        return Seq(action, rec(i + 1, k))

    return rec(1, 1)


def _arg_literal(arg: Arg) -> Literal:
    s = str(arg)
    if s.startswith("neg(") and s.endswith(")"):
        return Literal(s[4:-1], False)
    return Literal(s, True)
