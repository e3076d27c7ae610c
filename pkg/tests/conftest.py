from pathlib import Path

import pytest

from sensplan.model import DynamicLaw, ExecutabilityLaw, KProposition, StaticLaw, neg, pos
from sensplan.theory_io import build_theory, parse_theory

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def window_text() -> str:
    return (DATA / "window.akc").read_text()


@pytest.fixture(scope="session")
def window(window_text):
    """The security-window domain: check/push/flip with a three-way oneof."""
    return parse_theory(window_text)


@pytest.fixture(scope="session")
def nondet_domain():
    """Non-sensing action with ramifications that fork the oracle worlds."""
    return build_theory(
        fluents=["f", "g", "h", "k"],
        actions=["a"],
        executables=[ExecutabilityLaw("a")],
        dynamics=[DynamicLaw("a", pos("f"))],
        statics=[
            StaticLaw(pos("g"), (pos("f"), neg("h"))),
            StaticLaw(pos("h"), (pos("f"), neg("g"))),
            StaticLaw(pos("k"), (neg("f"),)),
        ],
        k_props=[],
        initially=[],
        goal=[pos("f")],
    )


@pytest.fixture(scope="session")
def assume_then_fail_domain():
    """Sensing splits on f; acting on the neg(f) branch exposes the contradiction."""
    return build_theory(
        fluents=["f", "g", "h"],
        actions=["a", "b"],
        executables=[ExecutabilityLaw("a"), ExecutabilityLaw("b")],
        dynamics=[DynamicLaw("b", pos("h"))],
        statics=[
            StaticLaw(pos("f"), (pos("g"), pos("h"))),
            StaticLaw(pos("f"), (pos("g"), neg("h"))),
        ],
        k_props=[KProposition("a", (pos("f"), neg("f")))],
        initially=[],
        goal=[pos("f")],
    )


@pytest.fixture(scope="session")
def unconditional_effect_domain():
    """f becomes true either way, but no single branch certifies it."""
    return build_theory(
        fluents=["f", "g"],
        actions=["a"],
        executables=[ExecutabilityLaw("a")],
        dynamics=[
            DynamicLaw("a", pos("f"), (pos("g"),)),
            DynamicLaw("a", pos("f"), (neg("g"),)),
        ],
        statics=[],
        k_props=[],
        initially=[],
        goal=[pos("f")],
    )
