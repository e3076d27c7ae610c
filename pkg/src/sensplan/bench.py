"""Benchmark-family generators.

Each family builds a planning instance whose hard part is knowledge, not
geometry: uncertainty comes from omitted initial facts, exclusivity from
oneof groups. The classic problem statements fix only the story and the
parameters, so the exact fluent inventories here are this package's own
reconstruction; sizes grow linearly in the parameters.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ActionTheory, DynamicLaw, ExecutabilityLaw, KProposition, Literal, StaticLaw, neg, pos
from .theory_io import build_theory

# family name -> number of integer parameters
FAMILIES = {
    "BT": 1,
    "BMT": 2,
    "BTC": 1,
    "BMTC": 2,
    "BTUC": 1,
    "BMTUC": 2,
    "RING": 1,
    "DOM": 1,
    "BTS1": 1,
    "BTS2": 1,
    "BTS3": 1,
    "BTS4": 1,
    "MED": 1,
    "SICK": 1,
    "RINGS": 1,
    "DOMS": 1,
}


@dataclass(frozen=True)
class BenchmarkSpec:
    family: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if len(self.params) != FAMILIES[self.family]:
            raise ValueError(
                f"{self.family} takes {FAMILIES[self.family]} parameter(s), "
                f"got {len(self.params)}"
            )
        if any(p < 1 for p in self.params):
            raise ValueError("parameters must be at least 1")


def generate(spec: BenchmarkSpec) -> ActionTheory:
    builder = _BUILDERS[spec.family]
    return builder(*spec.params)


# --- bomb-in-the-toilet variants --------------------------------------------
#
# Packages may each hide a bomb; nothing is known about them initially, so a
# conformant plan has to dunk every package. Clogging variants thread the
# dunks through flushes; the "UC" variants drop the known-unclogged facts.


def _bomb(m: int, toilets: int, clogging: bool, clog_known: bool) -> ActionTheory:
    fluents = [f"armed_{i}" for i in range(1, m + 1)]
    executables = []
    dynamics = []
    initially: list[Literal] = []
    actions = []
    if toilets == 1:
        dunk = {i: f"dunk_{i}" for i in range(1, m + 1)}
        pairs = [(i, 1) for i in range(1, m + 1)]
    else:
        dunk = {}
        pairs = [(i, j) for i in range(1, m + 1) for j in range(1, toilets + 1)]
    if clogging:
        fluents += [f"clogged_{j}" for j in range(1, toilets + 1)]
    for i, j in pairs:
        name = dunk.get(i, f"dunk_{i}_{j}")
        actions.append(name)
        if clogging:
            executables.append(ExecutabilityLaw(name, (neg(f"clogged_{j}"),)))
            dynamics.append(DynamicLaw(name, pos(f"clogged_{j}")))
        else:
            executables.append(ExecutabilityLaw(name))
        dynamics.append(DynamicLaw(name, neg(f"armed_{i}")))
    if clogging:
        for j in range(1, toilets + 1):
            name = "flush" if toilets == 1 else f"flush_{j}"
            actions.append(name)
            executables.append(ExecutabilityLaw(name))
            dynamics.append(DynamicLaw(name, neg(f"clogged_{j}")))
        if clog_known:
            initially = [neg(f"clogged_{j}") for j in range(1, toilets + 1)]
    return build_theory(
        fluents=fluents,
        actions=actions,
        executables=executables,
        dynamics=dynamics,
        statics=[],
        k_props=[],
        initially=initially,
        goal=[neg(f"armed_{i}") for i in range(1, m + 1)],
    )


def bt(m: int) -> ActionTheory:
    return _bomb(m, 1, clogging=False, clog_known=True)


def bmt(m: int, toilets: int) -> ActionTheory:
    return _bomb(m, toilets, clogging=False, clog_known=True)


def btc(m: int) -> ActionTheory:
    return _bomb(m, 1, clogging=True, clog_known=True)


def bmtc(m: int, toilets: int) -> ActionTheory:
    return _bomb(m, toilets, clogging=True, clog_known=True)


def btuc(m: int) -> ActionTheory:
    return _bomb(m, 1, clogging=True, clog_known=False)


def bmtuc(m: int, toilets: int) -> ActionTheory:
    return _bomb(m, toilets, clogging=True, clog_known=False)


# Sensing variant: exactly one package holds the bomb (a oneof group), and a
# per-package test reveals whether it is that one. Dunking the right package
# disarms; the toilet still clogs, but a branch never needs two dunks.

_BTS_SENSORS = {
    1: ["detect_metal"],
    2: ["detect_metal", "sniff"],
    3: ["detect_metal", "sniff", "xray"],
    4: ["detect_metal", "sniff", "xray", "listen_for_ticking"],
}


def bts(variant: int, m: int) -> ActionTheory:
    if m < 2:
        raise ValueError("BTS needs at least two packages")
    fluents = [f"in_{i}" for i in range(1, m + 1)] + ["disarmed", "clogged"]
    actions = []
    executables = []
    dynamics = []
    k_props = []
    for i in range(1, m + 1):
        name = f"dunk_{i}"
        actions.append(name)
        executables.append(ExecutabilityLaw(name, (neg("clogged"),)))
        dynamics.append(DynamicLaw(name, pos("clogged")))
        dynamics.append(DynamicLaw(name, pos("disarmed"), (pos(f"in_{i}"),)))
    actions.append("flush")
    executables.append(ExecutabilityLaw("flush"))
    dynamics.append(DynamicLaw("flush", neg("clogged")))
    for sensor in _BTS_SENSORS[variant]:
        for i in range(1, m + 1):
            name = f"{sensor}_{i}"
            actions.append(name)
            executables.append(ExecutabilityLaw(name))
            k_props.append(KProposition(name, (pos(f"in_{i}"), neg(f"in_{i}"))))
    return build_theory(
        fluents=fluents,
        actions=actions,
        executables=executables,
        dynamics=dynamics,
        statics=[],
        k_props=k_props,
        oneofs=[tuple(pos(f"in_{i}") for i in range(1, m + 1))],
        initially=[neg("disarmed"), neg("clogged")],
        goal=[pos("disarmed")],
    )


# --- ring of rooms -----------------------------------------------------------
#
# The robot walks a cycle of rooms; each room's window is open, closed or
# locked (a oneof group), unknown at the start. Closing works regardless of
# the window state in the conformant version; the sensing version (RINGS)
# requires an open window to close, a closed one to lock, and offers a
# per-room observation action.


def _ring(n: int, sensing: bool) -> ActionTheory:
    rooms = range(1, n + 1)
    fluents = [f"at_{r}" for r in rooms]
    for r in rooms:
        fluents += [f"open_{r}", f"closed_{r}", f"locked_{r}"]
    actions = []
    executables = []
    dynamics = []
    k_props = []
    oneofs = [
        tuple((pos(f"open_{r}"), pos(f"closed_{r}"), pos(f"locked_{r}")))
        for r in rooms
    ]
    if n > 1:
        for name, delta in (("forward", 1), ("backward", -1)):
            actions.append(name)
            executables.append(ExecutabilityLaw(name))
            for r in rooms:
                dest = (r - 1 + delta) % n + 1
                dynamics.append(DynamicLaw(name, pos(f"at_{dest}"), (pos(f"at_{r}"),)))
                dynamics.append(DynamicLaw(name, neg(f"at_{r}"), (pos(f"at_{r}"),)))
    actions += ["close", "lock"]
    for r in rooms:
        if sensing:
            executables.append(ExecutabilityLaw("close", (pos(f"at_{r}"), pos(f"open_{r}"))))
        else:
            executables.append(ExecutabilityLaw("close", (pos(f"at_{r}"),)))
        dynamics.append(DynamicLaw("close", pos(f"closed_{r}"), (pos(f"at_{r}"),)))
        executables.append(ExecutabilityLaw("lock", (pos(f"at_{r}"), pos(f"closed_{r}"))))
        dynamics.append(DynamicLaw("lock", pos(f"locked_{r}"), (pos(f"at_{r}"),)))
    if sensing:
        for r in rooms:
            name = f"observe_{r}"
            actions.append(name)
            executables.append(ExecutabilityLaw(name, (pos(f"at_{r}"),)))
            k_props.append(
                KProposition(
                    name, (pos(f"open_{r}"), pos(f"closed_{r}"), pos(f"locked_{r}"))
                )
            )
    initially = [pos("at_1")] + [neg(f"at_{r}") for r in rooms if r != 1]
    return build_theory(
        fluents=fluents,
        actions=actions,
        executables=executables,
        dynamics=dynamics,
        statics=[],
        k_props=k_props,
        oneofs=oneofs,
        initially=initially,
        goal=[pos(f"locked_{r}") for r in rooms],
    )


def ring(n: int) -> ActionTheory:
    return _ring(n, sensing=False)


def rings(n: int) -> ActionTheory:
    return _ring(n, sensing=True)


# --- dominos ------------------------------------------------------------------
#
# A line of dominos; each falls when its left neighbor does. DOM drives the
# whole chain through static laws from one touch. DOMS adds glue: a domino
# can only fall if unglued, glue states are unknown, an observation senses
# them, and ungluing requires knowing the domino is glued.


def dom(n: int) -> ActionTheory:
    fluents = [f"fall_{i}" for i in range(1, n + 1)]
    statics = [
        StaticLaw(pos(f"fall_{i}"), (pos(f"fall_{i - 1}"),)) for i in range(2, n + 1)
    ]
    return build_theory(
        fluents=fluents,
        actions=["touch"],
        executables=[ExecutabilityLaw("touch")],
        dynamics=[DynamicLaw("touch", pos("fall_1"))],
        statics=statics,
        k_props=[],
        initially=[],
        goal=[pos(f"fall_{n}")],
    )


def doms(n: int) -> ActionTheory:
    fluents = [f"fall_{i}" for i in range(1, n + 1)]
    fluents += [f"glued_{i}" for i in range(1, n + 1)]
    statics = [
        StaticLaw(pos(f"fall_{i}"), (pos(f"fall_{i - 1}"), neg(f"glued_{i}")))
        for i in range(2, n + 1)
    ]
    actions = ["touch"]
    executables = [ExecutabilityLaw("touch")]
    dynamics = [DynamicLaw("touch", pos("fall_1"), (neg("glued_1"),))]
    k_props = []
    for i in range(1, n + 1):
        actions.append(f"observe_{i}")
        executables.append(ExecutabilityLaw(f"observe_{i}"))
        k_props.append(
            KProposition(f"observe_{i}", (pos(f"glued_{i}"), neg(f"glued_{i}")))
        )
    for i in range(1, n + 1):
        actions.append(f"unglue_{i}")
        executables.append(ExecutabilityLaw(f"unglue_{i}", (pos(f"glued_{i}"),)))
        dynamics.append(DynamicLaw(f"unglue_{i}", neg(f"glued_{i}")))
    return build_theory(
        fluents=fluents,
        actions=actions,
        executables=executables,
        dynamics=dynamics,
        statics=statics,
        k_props=k_props,
        initially=[],
        goal=[pos(f"fall_{n}")],
    )


# --- medical diagnosis --------------------------------------------------------
#
# Five illnesses in three color groups. A throat culture enables inspecting
# the stain color (three-way sensing); a blood test separates the two
# illnesses inside the red and blue groups. Medicating against the wrong
# illness is fatal, so a plan must pin the illness down before treating.
# The parameter only varies what is known at the start; level 1 names the
# illness outright, level k >= 3 rules out the last k - 2 illnesses.

_MED_GROUPS = {"red": (1, 2), "blue": (3, 4), "white": (5,)}


def med(level: int) -> ActionTheory:
    if level > 5:
        raise ValueError("MED has levels 1..5")
    ills = [f"ill_{i}" for i in range(1, 6)]
    fluents = ills + ["red", "blue", "white", "hwcc", "infected", "dead",
                      "cultured", "sampled"]
    statics = []
    for color, members in _MED_GROUPS.items():
        for i in members:
            statics.append(StaticLaw(pos(color), (pos(f"ill_{i}"),)))
        for i in range(1, 6):
            if i not in members:
                statics.append(StaticLaw(neg(f"ill_{i}"), (pos(color),)))
    for i in (1, 3):
        statics.append(StaticLaw(pos("hwcc"), (pos(f"ill_{i}"),)))
    for i in (2, 4):
        statics.append(StaticLaw(neg("hwcc"), (pos(f"ill_{i}"),)))
    statics += [
        StaticLaw(pos("ill_1"), (pos("red"), pos("hwcc"))),
        StaticLaw(pos("ill_2"), (pos("red"), neg("hwcc"))),
        StaticLaw(pos("ill_3"), (pos("blue"), pos("hwcc"))),
        StaticLaw(pos("ill_4"), (pos("blue"), neg("hwcc"))),
        StaticLaw(pos("ill_5"), (pos("white"),)),
    ]
    actions = ["throat_culture", "inspect_color", "blood_sample", "analyze_blood"]
    executables = [
        ExecutabilityLaw("throat_culture"),
        ExecutabilityLaw("inspect_color", (pos("cultured"),)),
        ExecutabilityLaw("blood_sample"),
        ExecutabilityLaw("analyze_blood", (pos("sampled"),)),
    ]
    dynamics = [
        DynamicLaw("throat_culture", pos("cultured")),
        DynamicLaw("blood_sample", pos("sampled")),
    ]
    k_props = [
        KProposition("inspect_color", (pos("red"), pos("blue"), pos("white"))),
        KProposition("analyze_blood", (pos("hwcc"), neg("hwcc"))),
    ]
    for i in range(1, 6):
        name = f"medicate_{i}"
        actions.append(name)
        executables.append(ExecutabilityLaw(name))
        dynamics.append(DynamicLaw(name, neg("infected"), (pos(f"ill_{i}"),)))
        dynamics.append(DynamicLaw(name, pos("dead"), (neg(f"ill_{i}"),)))
    initially = [pos("infected"), neg("dead"), neg("cultured"), neg("sampled")]
    if level == 1:
        initially.append(pos("ill_1"))
    else:
        initially += [neg(f"ill_{i}") for i in range(8 - level, 6)]
    return build_theory(
        fluents=fluents,
        actions=actions,
        executables=executables,
        dynamics=dynamics,
        statics=statics,
        k_props=k_props,
        oneofs=[
            tuple(pos(i) for i in ills),
            (pos("red"), pos("blue"), pos("white")),
        ],
        initially=initially,
        goal=[neg("infected"), neg("dead")],
    )


# --- sick patient ---------------------------------------------------------------
#
# n illnesses, n stain colors, one medication each. The culture enables the
# color inspection, whose outcome pins the illness down exactly, and the
# matching medication cures. Plans are always three actions deep but branch
# once per color.


def sick(n: int) -> ActionTheory:
    if n < 2:
        raise ValueError("SICK needs at least two illnesses")
    fluents = [f"ill_{i}" for i in range(1, n + 1)]
    fluents += [f"col_{i}" for i in range(1, n + 1)]
    fluents += ["cured", "cultured"]
    statics = []
    for i in range(1, n + 1):
        statics.append(StaticLaw(pos(f"col_{i}"), (pos(f"ill_{i}"),)))
        statics.append(StaticLaw(pos(f"ill_{i}"), (pos(f"col_{i}"),)))
    actions = ["throat_culture", "inspect_color"]
    executables = [
        ExecutabilityLaw("throat_culture"),
        ExecutabilityLaw("inspect_color", (pos("cultured"),)),
    ]
    dynamics = [DynamicLaw("throat_culture", pos("cultured"))]
    k_props = [
        KProposition("inspect_color", tuple(pos(f"col_{i}") for i in range(1, n + 1)))
    ]
    for i in range(1, n + 1):
        name = f"medicate_{i}"
        actions.append(name)
        executables.append(ExecutabilityLaw(name))
        dynamics.append(DynamicLaw(name, pos("cured"), (pos(f"ill_{i}"),)))
    return build_theory(
        fluents=fluents,
        actions=actions,
        executables=executables,
        dynamics=dynamics,
        statics=statics,
        k_props=k_props,
        oneofs=[
            tuple(pos(f"ill_{i}") for i in range(1, n + 1)),
            tuple(pos(f"col_{i}") for i in range(1, n + 1)),
        ],
        initially=[neg("cured"), neg("cultured")],
        goal=[pos("cured")],
    )


_BUILDERS = {
    "BT": bt,
    "BMT": bmt,
    "BTC": btc,
    "BMTC": bmtc,
    "BTUC": btuc,
    "BMTUC": bmtuc,
    "RING": ring,
    "DOM": dom,
    "BTS1": lambda m: bts(1, m),
    "BTS2": lambda m: bts(2, m),
    "BTS3": lambda m: bts(3, m),
    "BTS4": lambda m: bts(4, m),
    "MED": med,
    "SICK": sick,
    "RINGS": rings,
    "DOMS": doms,
}
