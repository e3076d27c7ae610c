"""Planning with sensing actions, incomplete information, and static causal laws.

The package parses action theories from a small text format, progresses
approximate knowledge states, searches for conformant and conditional
plans, and emits/reads the lparse-dialect encoding whose answer sets are
plans.
"""

from .model import (
    Action,
    ActionTheory,
    And,
    Atom,
    DynamicLaw,
    ExecutabilityLaw,
    Formula,
    KProposition,
    Literal,
    Not,
    Or,
    Query,
    QueryMode,
    StaticLaw,
    TruthValue,
    complement,
    conjunction,
    eval_formula,
    neg,
    pos,
    possibly_holds,
    validate_theory,
)
from .theory_io import (
    ParseError,
    TheoryValidationError,
    build_theory,
    expand_oneof,
    parse_theory,
    print_theory,
)
from .semantics import (
    InconsistentInitialState,
    SizeGuardError,
    closure,
    definite_effects,
    entails,
    enumerate_states,
    initial_astate,
    is_consistent_theory,
    is_executable,
    is_valid_astate,
    oracle_successors,
    possible_changes,
    run_plan,
    step,
    step_nonsensing,
    step_sensing,
)
from .plans import (
    EMPTY,
    Case,
    Empty,
    Plan,
    PlanGrid,
    Seq,
    is_solution,
    number_plan,
    parse_plan,
    plan_height,
    plan_size,
    plan_width,
    print_plan,
    reduct,
    seq,
)
from .search import (
    BudgetExhausted,
    SearchBudget,
    solve_conditional,
    solve_conformant,
    solve_iterative,
)
from .aspio import (
    AnswerSetError,
    AtomSet,
    GroundAtom,
    emit_program,
    emit_reasoner_program,
    extract_plan,
    format_atoms,
    parse_answer_set,
)
from .bench import BenchmarkSpec, generate

__all__ = [name for name in dir() if not name.startswith("_")]
