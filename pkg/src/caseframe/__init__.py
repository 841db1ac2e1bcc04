"""Case frames for statutory interpretation and prior-case argumentation.

The package models decided interpretation cases as structured frames,
synthesizes arguments that transfer elements from those cases to a new
problem, challenges them with critical questions, and evaluates the
resulting defeat graph under grounded (or preferred) semantics.
"""

from .arguments import (
    Argument,
    ArgumentKind,
    Attack,
    AttackType,
    CQ,
    Conclusion,
    Preference,
    conflicting_conclusions,
    directive_preference,
    instantiate_canon_argument,
    shared_elements,
    synthesize_arguments,
)
from .casebase import (
    CaseBase,
    CQConfig,
    OpinionLine,
    add_case,
    case_base_to_dict,
    citation_graph,
    lines_of_opinion,
    load_case_base,
    parse_case_base,
    query_cases,
    save_case_base,
)
from .critical import (
    CQResult,
    DifferenceReport,
    auto_critical_attacks,
    counterexample_search,
    difference_report,
    directive_conflict_attacks,
    years_between,
)
from .errors import (
    CapExceededError,
    CaseBaseError,
    DomainError,
    FrameValidationError,
    InvalidAssertionError,
    SlotFilledError,
    TransferError,
    UnknownIdError,
)
from .frames import (
    Canon,
    CanonClass,
    CaseData,
    CaseFrame,
    Characteristic,
    CharacteristicCategory,
    DirectiveKind,
    DirectiveSpec,
    DocumentRef,
    Exhaustiveness,
    Forum,
    Interpretandum,
    InterpretansType,
    InterpretiveStatement,
    Origin,
    Polarity,
    ProblemFrame,
    Procedural,
    SIMILARITY_SLOTS,
    Slot,
    SlotElementRef,
    ValidationReport,
    WinningInterpretation,
    case_frame_to_dict,
    filled_slots,
    frame_elements,
    normalize_term,
    parse_case_frame,
    parse_problem_frame,
    problem_frame_to_dict,
    validate_frame,
)
from .framework import (
    ArgumentationFramework,
    Label,
    build_framework,
    framework_to_dict,
    framework_to_dot,
    framework_to_json,
    grounded_labeling,
    preferred_labelings,
)
from .session import (
    Assertion,
    Session,
    apply_transfer,
    assert_cq,
    create_session,
    export_log,
    replay_log,
    session_state,
)

__version__ = "0.1.0"
