"""Domain model for interpretive case frames.

A case frame is the knowledge unit extracted from one decided case of
statutory interpretation: the case's identifying data, the interpretation
that won, the interpretations the court rejected, and the second-order
directive the court used to settle the conflict.  A problem frame is the
partially filled counterpart for the fact situation currently under
analysis; its empty slots are the targets for transfers from decided
cases.

All types are immutable after construction and safe to share across
threads.  Validation is centralised in ``validate_frame`` /
``parse_case_frame`` which collect every violation instead of stopping at
the first.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping


class Procedural(str, Enum):
    """Procedural status of a decision, in particular its finality."""

    FINAL = "final"
    NON_FINAL = "non-final"
    UNKNOWN = "unknown"


class CharacteristicCategory(str, Enum):
    """What aspect of the source of law a characteristic describes.

    Categories are assigned at ingestion so that branch-of-law, provision
    type, and goal differences between two frames are mechanically
    checkable.
    """

    BRANCH = "branch"
    PROVISION_TYPE = "provision-type"
    GOAL = "goal"
    OTHER = "other"


class InterpretansType(str, Enum):
    """Whether an interpretans states criteria or designates objects."""

    INTENSIONAL = "intensional"
    EXTENSIONAL = "extensional"


class Polarity(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Exhaustiveness(str, Enum):
    EXHAUSTIVE = "exhaustive"
    EXEMPLARY = "exemplary"
    UNKNOWN = "unknown"


class CanonClass(str, Enum):
    """Recognised families of interpretive argument."""

    LINGUISTIC = "linguistic"
    SYSTEMIC = "systemic"
    TELEOLOGICAL = "teleological"
    HISTORICAL = "historical"
    TRANSCATEGORICAL = "transcategorical"
    APPEAL_TO_PRIOR_CASE = "appeal-to-prior-case"
    OTHER = "other"


class DirectiveKind(str, Enum):
    """Second-order directives order canon application (procedure) or
    assign default strength (preference); some courts state both."""

    PROCEDURE = "procedure"
    PREFERENCE = "preference"
    BOTH = "both"


class Slot(str, Enum):
    """Addressable slots of a frame, used for element comparison and
    transfer targeting."""

    DOCUMENT = "document"
    CHARACTERISTIC = "characteristic"
    INTERPRETANDUM = "interpretandum"
    STATE_OF_AFFAIRS = "state-of-affairs"
    INTERPRETANS = "interpretans"
    INTERPRETANS_TYPE = "interpretans-type"
    CANON = "canon"
    SECOND_ORDER_DIRECTIVE = "second-order-directive"
    CONTEXT = "context"


class Origin(str, Enum):
    """Which part of a case frame an element was taken from."""

    WINNING = "winning"
    DEFEATED = "defeated"
    CASE_LEVEL = "case-level"


#: Slots whose elements can establish similarity between a decided case
#: and the current problem.
SIMILARITY_SLOTS = frozenset(
    {Slot.DOCUMENT, Slot.CHARACTERISTIC, Slot.INTERPRETANDUM, Slot.STATE_OF_AFFAIRS}
)


def normalize_term(text: str, aliases: Mapping[str, str] | None = None) -> str:
    """Case-fold, collapse whitespace, and resolve aliases to a fixpoint.

    Idempotent: normalising an already-normalised token returns it
    unchanged.  Alias cycles are cut at the first revisited token.
    """
    token = " ".join(str(text).split()).casefold()
    if aliases:
        seen: set[str] = set()
        while token in aliases and token not in seen:
            seen.add(token)
            token = " ".join(str(aliases[token]).split()).casefold()
    return token


@dataclass(frozen=True)
class CaseData:
    """Identifying data of the decided case the knowledge comes from."""

    jurisdiction: str
    court: str
    identifier: str
    date: dt.date
    procedural: Procedural = Procedural.UNKNOWN
    procedural_note: str = ""


@dataclass(frozen=True)
class Characteristic:
    """One feature of the source of law relevant to its interpretation."""

    category: CharacteristicCategory
    value: str


@dataclass(frozen=True)
class Canon:
    """One canon backing an interpretive statement.

    ``cited_case_id`` is set exactly when the canon is an appeal to a
    prior case; ``label`` preserves the source's own wording.
    """

    canon_class: CanonClass
    cited_case_id: str | None = None
    label: str = ""


@dataclass(frozen=True)
class InterpretiveStatement:
    """An interpretans with its type, polarity, and supporting canons."""

    interpretans: str
    interpretans_type: InterpretansType
    canons: tuple[Canon, ...]
    polarity: Polarity = Polarity.POSITIVE
    exhaustiveness: Exhaustiveness = Exhaustiveness.UNKNOWN


@dataclass(frozen=True)
class DocumentRef:
    """Identifying data of the source of law containing the interpretandum."""

    citation: str
    title: str = ""


@dataclass(frozen=True)
class Interpretandum:
    """The interpreted expression with its systematic unit in the source."""

    expression: str
    locus: str = ""


@dataclass(frozen=True)
class WinningInterpretation:
    """The interpretation the court adopted, with its full context."""

    document: DocumentRef
    characteristics: tuple[Characteristic, ...]
    interpretandum: Interpretandum
    state_of_affairs: tuple[str, ...]
    statement: InterpretiveStatement


@dataclass(frozen=True)
class DirectiveSpec:
    """A second-order directive made machine-comparable.

    ``text`` keeps the court's verbatim formulation; ``directive_class``
    is the normalized tag assigned at ingestion; ``tiers`` orders canon
    classes by default strength (earlier tier = stronger), empty when the
    directive does not rank canons.
    """

    kind: DirectiveKind
    text: str
    directive_class: str
    tiers: tuple[frozenset[CanonClass], ...] = ()
    override_condition: str = ""
    context: str = ""


@dataclass(frozen=True)
class CaseFrame:
    """The four-part knowledge unit extracted from one decided case."""

    case_data: CaseData
    winning: WinningInterpretation
    defeated: tuple[InterpretiveStatement, ...] = ()
    second_order: DirectiveSpec | None = None

    @property
    def identifier(self) -> str:
        return self.case_data.identifier


@dataclass(frozen=True)
class Forum:
    """The court that will decide the current problem."""

    jurisdiction: str
    court: str


@dataclass(frozen=True)
class ProblemFrame:
    """A partially filled frame for the current fact situation.

    Empty slots are candidates for transfer from decided cases.  At least
    the interpretandum or some established facts must be present.
    """

    forum: Forum
    as_of_date: dt.date
    document: DocumentRef | None = None
    characteristics: tuple[Characteristic, ...] = ()
    interpretandum: Interpretandum | None = None
    state_of_affairs: tuple[str, ...] = ()
    interpretans: str = ""
    interpretans_type: InterpretansType | None = None
    canons: tuple[Canon, ...] = ()
    second_order: DirectiveSpec | None = None


@dataclass(frozen=True)
class SlotElementRef:
    """One normalized atomic slot value, comparable across frames."""

    slot: Slot
    value: str
    origin: Origin

    def key(self) -> tuple[str, str]:
        """Comparison key: two refs share an element iff keys are equal."""
        return (self.slot.value, self.value)


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors


# ---------------------------------------------------------------------------
# Parsing (interchange format -> domain types)
# ---------------------------------------------------------------------------

_CASE_KEYS = {"caseData", "winning", "defeated", "secondOrder"}
_CASE_DATA_KEYS = {"jurisdiction", "court", "identifier", "date", "procedural", "proceduralNote"}
_WINNING_KEYS = {"document", "characteristics", "interpretandum", "stateOfAffairs", "statement"}
_STATEMENT_KEYS = {"interpretans", "interpretansType", "polarity", "exhaustiveness", "canons"}
_CANON_KEYS = {"class", "citedCaseId", "label"}
_DIRECTIVE_KEYS = {"kind", "text", "directiveClass", "tiers", "overrideCondition", "context"}
_DOCUMENT_KEYS = {"title", "citation"}
_INTERPRETANDUM_KEYS = {"expression", "locus"}
_PROBLEM_KEYS = {
    "forum",
    "asOfDate",
    "document",
    "characteristics",
    "interpretandum",
    "stateOfAffairs",
    "interpretans",
    "interpretansType",
    "canons",
    "secondOrder",
}


class _Collector:
    """Accumulates errors/warnings while a document is picked apart."""

    def __init__(self, lenient: bool):
        self.errors: list[str] = []
        self.warnings: list[str] = []
        self.lenient = lenient

    def error(self, msg: str) -> None:
        self.errors.append(msg)

    def warn(self, msg: str) -> None:
        self.warnings.append(msg)

    def check_keys(self, raw: Mapping[str, Any], allowed: set[str], where: str) -> None:
        unknown = sorted(set(raw) - allowed)
        if unknown:
            msg = f"{where}: unknown field(s) {', '.join(unknown)}"
            if self.lenient:
                self.warnings.append(msg)
            else:
                self.errors.append(msg)


def _parse_enum(cls: type, raw: Any, where: str, col: _Collector, default=None):
    if raw is None:
        return default
    try:
        return cls(str(raw))
    except ValueError:
        col.error(f"{where}: {raw!r} is not one of {[m.value for m in cls]}")
        return default


def _parse_date(raw: Any, where: str, col: _Collector) -> dt.date | None:
    if raw is None:
        col.error(f"{where}: missing date")
        return None
    try:
        return dt.date.fromisoformat(str(raw))
    except ValueError:
        col.error(f"{where}: {raw!r} is not a valid ISO-8601 calendar date")
        return None


def _parse_str(raw: Any, where: str, col: _Collector, required: bool = False, missing: str = "") -> str:
    if raw is None:
        if required:
            col.error(missing or f"{where}: missing value")
        return ""
    if not isinstance(raw, str):
        col.error(f"{where}: expected a string, got {type(raw).__name__}")
        return ""
    if required and not raw.strip():
        col.error(missing or f"{where}: value must be non-empty")
    return raw


def _parse_canon(raw: Any, where: str, col: _Collector) -> Canon | None:
    if not isinstance(raw, Mapping):
        col.error(f"{where}: canon must be an object")
        return None
    col.check_keys(raw, _CANON_KEYS, where)
    cls = _parse_enum(CanonClass, raw.get("class"), f"{where}.class", col)
    cited = raw.get("citedCaseId")
    label = _parse_str(raw.get("label"), f"{where}.label", col)
    if cls is None:
        return None
    if cls is CanonClass.APPEAL_TO_PRIOR_CASE and not cited:
        col.error(f"{where}: appeal-to-prior-case canon requires citedCaseId")
        return None
    if cls is not CanonClass.APPEAL_TO_PRIOR_CASE and cited:
        col.error(f"{where}: citedCaseId only allowed on appeal-to-prior-case canons")
        return None
    return Canon(canon_class=cls, cited_case_id=str(cited) if cited else None, label=label)


def _parse_statement(raw: Any, where: str, col: _Collector) -> InterpretiveStatement | None:
    if not isinstance(raw, Mapping):
        col.error(f"{where}: interpretive statement must be an object")
        return None
    col.check_keys(raw, _STATEMENT_KEYS, where)
    interpretans = _parse_str(
        raw.get("interpretans"), f"{where}.interpretans", col,
        required=True, missing=f"{where}: interpretans must be non-empty",
    )
    itype = _parse_enum(
        InterpretansType, raw.get("interpretansType"), f"{where}.interpretansType", col
    )
    if itype is None and raw.get("interpretansType") is None:
        col.error(f"{where}: missing interpretansType")
    polarity = _parse_enum(Polarity, raw.get("polarity"), f"{where}.polarity", col, Polarity.POSITIVE)
    exhaustiveness = _parse_enum(
        Exhaustiveness, raw.get("exhaustiveness"), f"{where}.exhaustiveness", col, Exhaustiveness.UNKNOWN
    )
    raw_canons = raw.get("canons")
    canons: list[Canon] = []
    if not isinstance(raw_canons, list) or not raw_canons:
        col.error(f"{where}: canons must be a non-empty list")
    else:
        for i, rc in enumerate(raw_canons):
            canon = _parse_canon(rc, f"{where}.canons[{i}]", col)
            if canon is not None:
                canons.append(canon)
    if interpretans and itype is not None and canons:
        return InterpretiveStatement(
            interpretans=interpretans,
            interpretans_type=itype,
            canons=tuple(canons),
            polarity=polarity or Polarity.POSITIVE,
            exhaustiveness=exhaustiveness or Exhaustiveness.UNKNOWN,
        )
    return None


def _parse_characteristics(raw: Any, where: str, col: _Collector) -> tuple[Characteristic, ...]:
    if raw is None:
        return ()
    if not isinstance(raw, list):
        col.error(f"{where}: characteristics must be a list")
        return ()
    out: list[Characteristic] = []
    seen: set[tuple[str, str]] = set()
    for i, rc in enumerate(raw):
        if not isinstance(rc, Mapping):
            col.error(f"{where}[{i}]: characteristic must be an object")
            continue
        col.check_keys(rc, {"category", "value"}, f"{where}[{i}]")
        category = _parse_enum(
            CharacteristicCategory, rc.get("category"), f"{where}[{i}].category", col,
            CharacteristicCategory.OTHER,
        )
        value = _parse_str(
            rc.get("value"), f"{where}[{i}].value", col,
            required=True, missing=f"{where}[{i}]: characteristic value must be non-empty",
        )
        if not value:
            continue
        key = (category.value, normalize_term(value))
        if key in seen:
            col.error(f"{where}[{i}]: duplicate characteristic ({category.value}, {value})")
            continue
        seen.add(key)
        out.append(Characteristic(category=category, value=value))
    return tuple(out)


def _parse_document(raw: Any, where: str, col: _Collector, required: bool) -> DocumentRef | None:
    if raw is None:
        if required:
            col.error(f"{where}: missing document")
        return None
    if not isinstance(raw, Mapping):
        col.error(f"{where}: document must be an object")
        return None
    col.check_keys(raw, _DOCUMENT_KEYS, where)
    citation = _parse_str(
        raw.get("citation"), f"{where}.citation", col,
        required=True, missing=f"{where}: document citation must be non-empty",
    )
    title = _parse_str(raw.get("title"), f"{where}.title", col)
    if not citation:
        return None
    return DocumentRef(citation=citation, title=title)


def _parse_interpretandum(raw: Any, where: str, col: _Collector, required: bool) -> Interpretandum | None:
    if raw is None:
        if required:
            col.error(f"{where}: missing interpretandum")
        return None
    if not isinstance(raw, Mapping):
        col.error(f"{where}: interpretandum must be an object")
        return None
    col.check_keys(raw, _INTERPRETANDUM_KEYS, where)
    expression = _parse_str(
        raw.get("expression"), f"{where}.expression", col,
        required=True, missing=f"{where}: interpretandum expression must be non-empty",
    )
    locus = _parse_str(raw.get("locus"), f"{where}.locus", col)
    if not expression:
        return None
    return Interpretandum(expression=expression, locus=locus)


def _parse_facts(raw: Any, where: str, col: _Collector) -> tuple[str, ...]:
    if raw is None:
        return ()
    if not isinstance(raw, list):
        col.error(f"{where}: stateOfAffairs must be a list of fact strings")
        return ()
    out: list[str] = []
    for i, fact in enumerate(raw):
        if not isinstance(fact, str) or not fact.strip():
            col.error(f"{where}[{i}]: fact must be a non-empty string")
            continue
        out.append(fact)
    return tuple(out)


def _parse_directive(raw: Any, where: str, col: _Collector) -> DirectiveSpec | None:
    if raw is None:
        return None
    if not isinstance(raw, Mapping):
        col.error(f"{where}: second-order directive must be an object")
        return None
    col.check_keys(raw, _DIRECTIVE_KEYS, where)
    kind = _parse_enum(DirectiveKind, raw.get("kind"), f"{where}.kind", col)
    if kind is None and raw.get("kind") is None:
        col.error(f"{where}: missing directive kind")
    text = _parse_str(
        raw.get("text"), f"{where}.text", col,
        required=True, missing=f"{where}: directive text must be non-empty",
    )
    directive_class = _parse_str(
        raw.get("directiveClass"), f"{where}.directiveClass", col,
        required=True, missing=f"{where}: directiveClass must be set at ingestion",
    )
    tiers: list[frozenset[CanonClass]] = []
    raw_tiers = raw.get("tiers")
    if raw_tiers is not None:
        if not isinstance(raw_tiers, list):
            col.error(f"{where}.tiers: must be a list of canon-class lists")
        else:
            for i, tier in enumerate(raw_tiers):
                if not isinstance(tier, list):
                    col.error(f"{where}.tiers[{i}]: must be a list of canon classes")
                    continue
                members: set[CanonClass] = set()
                for j, cls in enumerate(tier):
                    parsed = _parse_enum(CanonClass, cls, f"{where}.tiers[{i}][{j}]", col)
                    if parsed is not None:
                        members.add(parsed)
                tiers.append(frozenset(members))
    flat: set[CanonClass] = set()
    for i, tier in enumerate(tiers):
        if tier & flat:
            col.error(f"{where}.tiers: tiers must be pairwise disjoint")
        flat |= tier
    override = _parse_str(raw.get("overrideCondition"), f"{where}.overrideCondition", col)
    context = _parse_str(raw.get("context"), f"{where}.context", col)
    if kind is None or not text or not directive_class:
        return None
    return DirectiveSpec(
        kind=kind,
        text=text,
        directive_class=directive_class,
        tiers=tuple(tiers),
        override_condition=override,
        context=context,
    )


def parse_case_frame(
    raw: Mapping[str, Any], lenient: bool = False
) -> tuple[CaseFrame | None, ValidationReport]:
    """Parse one case document, collecting every violation found.

    Returns ``(frame, report)``; the frame is None whenever the report
    carries errors.
    """
    col = _Collector(lenient)
    if not isinstance(raw, Mapping):
        col.error("case: document must be an object")
        return None, ValidationReport(errors=tuple(col.errors))
    col.check_keys(raw, _CASE_KEYS, "case")

    raw_cd = raw.get("caseData")
    case_data: CaseData | None = None
    if not isinstance(raw_cd, Mapping):
        col.error("caseData: missing or not an object")
    else:
        col.check_keys(raw_cd, _CASE_DATA_KEYS, "caseData")
        identifier = _parse_str(
            raw_cd.get("identifier"), "caseData.identifier", col,
            required=True, missing="missing case identifier",
        )
        jurisdiction = _parse_str(
            raw_cd.get("jurisdiction"), "caseData.jurisdiction", col,
            required=True, missing="caseData: jurisdiction must be non-empty",
        )
        court = _parse_str(
            raw_cd.get("court"), "caseData.court", col,
            required=True, missing="caseData: court must be non-empty",
        )
        date = _parse_date(raw_cd.get("date"), "caseData.date", col)
        procedural = _parse_enum(
            Procedural, raw_cd.get("procedural"), "caseData.procedural", col, Procedural.UNKNOWN
        )
        note = _parse_str(raw_cd.get("proceduralNote"), "caseData.proceduralNote", col)
        if identifier and jurisdiction and court and date is not None:
            case_data = CaseData(
                jurisdiction=jurisdiction,
                court=court,
                identifier=identifier,
                date=date,
                procedural=procedural or Procedural.UNKNOWN,
                procedural_note=note,
            )

    raw_w = raw.get("winning")
    winning: WinningInterpretation | None = None
    if not isinstance(raw_w, Mapping):
        col.error("winning: missing or not an object")
    else:
        col.check_keys(raw_w, _WINNING_KEYS, "winning")
        document = _parse_document(raw_w.get("document"), "winning.document", col, required=True)
        characteristics = _parse_characteristics(
            raw_w.get("characteristics"), "winning.characteristics", col
        )
        interpretandum = _parse_interpretandum(
            raw_w.get("interpretandum"), "winning.interpretandum", col, required=True
        )
        facts = _parse_facts(raw_w.get("stateOfAffairs"), "winning.stateOfAffairs", col)
        statement = _parse_statement(raw_w.get("statement"), "winning.statement", col)
        if document and interpretandum and statement:
            winning = WinningInterpretation(
                document=document,
                characteristics=characteristics,
                interpretandum=interpretandum,
                state_of_affairs=facts,
                statement=statement,
            )
        if not characteristics:
            col.warn("winning: no characteristics recorded")
        if not facts:
            col.warn("winning: no state-of-affairs facts recorded")

    defeated: list[InterpretiveStatement] = []
    raw_d = raw.get("defeated")
    if raw_d is not None:
        if not isinstance(raw_d, list):
            col.error("defeated: must be a list of interpretive statements")
        else:
            for i, rs in enumerate(raw_d):
                stmt = _parse_statement(rs, f"defeated[{i}]", col)
                if stmt is not None:
                    defeated.append(stmt)
    if not defeated:
        col.warn("defeated: no defeated interpretations recorded")

    second_order = _parse_directive(raw.get("secondOrder"), "secondOrder", col)
    if raw.get("secondOrder") is None:
        col.warn("secondOrder: no second-order directive recorded")

    if winning is not None:
        for i, stmt in enumerate(defeated):
            same_value = normalize_term(stmt.interpretans) == normalize_term(
                winning.statement.interpretans
            )
            if same_value and stmt.polarity == winning.statement.polarity:
                col.error(
                    f"defeated[{i}]: statement duplicates the winning interpretation "
                    "(same interpretans and polarity)"
                )

    if col.errors or case_data is None or winning is None:
        return None, ValidationReport(errors=tuple(col.errors), warnings=tuple(col.warnings))
    frame = CaseFrame(
        case_data=case_data,
        winning=winning,
        defeated=tuple(defeated),
        second_order=second_order,
    )
    return frame, ValidationReport(warnings=tuple(col.warnings))


def validate_frame(raw: Mapping[str, Any], lenient: bool = False) -> ValidationReport:
    """Validate one case document; the report carries all failures."""
    _, report = parse_case_frame(raw, lenient=lenient)
    return report


def parse_problem_frame(
    raw: Mapping[str, Any], lenient: bool = False
) -> tuple[ProblemFrame | None, ValidationReport]:
    """Parse the current fact situation's partial frame."""
    col = _Collector(lenient)
    if not isinstance(raw, Mapping):
        col.error("problem: document must be an object")
        return None, ValidationReport(errors=tuple(col.errors))
    col.check_keys(raw, _PROBLEM_KEYS, "problem")

    forum: Forum | None = None
    raw_forum = raw.get("forum")
    if not isinstance(raw_forum, Mapping):
        col.error("problem: missing forum (deciding court)")
    else:
        col.check_keys(raw_forum, {"jurisdiction", "court"}, "forum")
        jurisdiction = _parse_str(
            raw_forum.get("jurisdiction"), "forum.jurisdiction", col,
            required=True, missing="forum: jurisdiction must be non-empty",
        )
        court = _parse_str(
            raw_forum.get("court"), "forum.court", col,
            required=True, missing="forum: court must be non-empty",
        )
        if jurisdiction and court:
            forum = Forum(jurisdiction=jurisdiction, court=court)

    as_of = _parse_date(raw.get("asOfDate"), "problem.asOfDate", col)
    document = _parse_document(raw.get("document"), "problem.document", col, required=False)
    characteristics = _parse_characteristics(
        raw.get("characteristics"), "problem.characteristics", col
    )
    interpretandum = _parse_interpretandum(
        raw.get("interpretandum"), "problem.interpretandum", col, required=False
    )
    facts = _parse_facts(raw.get("stateOfAffairs"), "problem.stateOfAffairs", col)
    interpretans = _parse_str(raw.get("interpretans"), "problem.interpretans", col)
    itype = _parse_enum(InterpretansType, raw.get("interpretansType"), "problem.interpretansType", col)
    canons: list[Canon] = []
    raw_canons = raw.get("canons")
    if raw_canons is not None:
        if not isinstance(raw_canons, list):
            col.error("problem.canons: must be a list")
        else:
            for i, rc in enumerate(raw_canons):
                canon = _parse_canon(rc, f"problem.canons[{i}]", col)
                if canon is not None:
                    canons.append(canon)
    second_order = _parse_directive(raw.get("secondOrder"), "problem.secondOrder", col)

    if interpretandum is None and not facts:
        col.error("problem: either the interpretandum or some established facts must be present")

    if col.errors or forum is None or as_of is None:
        return None, ValidationReport(errors=tuple(col.errors), warnings=tuple(col.warnings))
    problem = ProblemFrame(
        forum=forum,
        as_of_date=as_of,
        document=document,
        characteristics=characteristics,
        interpretandum=interpretandum,
        state_of_affairs=facts,
        interpretans=interpretans,
        interpretans_type=itype,
        canons=tuple(canons),
        second_order=second_order,
    )
    return problem, ValidationReport(warnings=tuple(col.warnings))


# ---------------------------------------------------------------------------
# Serialization (domain types -> interchange format)
# ---------------------------------------------------------------------------

def _canon_to_dict(canon: Canon) -> dict[str, Any]:
    out: dict[str, Any] = {"class": canon.canon_class.value}
    if canon.cited_case_id:
        out["citedCaseId"] = canon.cited_case_id
    if canon.label:
        out["label"] = canon.label
    return out


def _statement_to_dict(stmt: InterpretiveStatement) -> dict[str, Any]:
    out: dict[str, Any] = {
        "interpretans": stmt.interpretans,
        "interpretansType": stmt.interpretans_type.value,
        "polarity": stmt.polarity.value,
        "canons": [_canon_to_dict(c) for c in stmt.canons],
    }
    if stmt.exhaustiveness is not Exhaustiveness.UNKNOWN:
        out["exhaustiveness"] = stmt.exhaustiveness.value
    return out


def directive_to_dict(spec: DirectiveSpec) -> dict[str, Any]:
    out: dict[str, Any] = {
        "kind": spec.kind.value,
        "text": spec.text,
        "directiveClass": spec.directive_class,
        "tiers": [sorted(cls.value for cls in tier) for tier in spec.tiers],
    }
    if spec.override_condition:
        out["overrideCondition"] = spec.override_condition
    out["context"] = spec.context
    return out


def case_frame_to_dict(frame: CaseFrame) -> dict[str, Any]:
    """Serialize a case frame into the interchange shape."""
    out: dict[str, Any] = {
        "caseData": {
            "jurisdiction": frame.case_data.jurisdiction,
            "court": frame.case_data.court,
            "identifier": frame.case_data.identifier,
            "date": frame.case_data.date.isoformat(),
            "procedural": frame.case_data.procedural.value,
        },
        "winning": {
            "document": {
                "title": frame.winning.document.title,
                "citation": frame.winning.document.citation,
            },
            "characteristics": [
                {"category": ch.category.value, "value": ch.value}
                for ch in frame.winning.characteristics
            ],
            "interpretandum": {
                "expression": frame.winning.interpretandum.expression,
                "locus": frame.winning.interpretandum.locus,
            },
            "stateOfAffairs": list(frame.winning.state_of_affairs),
            "statement": _statement_to_dict(frame.winning.statement),
        },
        "defeated": [_statement_to_dict(s) for s in frame.defeated],
    }
    if frame.case_data.procedural_note:
        out["caseData"]["proceduralNote"] = frame.case_data.procedural_note
    if frame.second_order is not None:
        out["secondOrder"] = directive_to_dict(frame.second_order)
    return out


def problem_frame_to_dict(problem: ProblemFrame) -> dict[str, Any]:
    out: dict[str, Any] = {
        "forum": {
            "jurisdiction": problem.forum.jurisdiction,
            "court": problem.forum.court,
        },
        "asOfDate": problem.as_of_date.isoformat(),
    }
    if problem.document is not None:
        out["document"] = {"title": problem.document.title, "citation": problem.document.citation}
    if problem.characteristics:
        out["characteristics"] = [
            {"category": ch.category.value, "value": ch.value} for ch in problem.characteristics
        ]
    if problem.interpretandum is not None:
        out["interpretandum"] = {
            "expression": problem.interpretandum.expression,
            "locus": problem.interpretandum.locus,
        }
    if problem.state_of_affairs:
        out["stateOfAffairs"] = list(problem.state_of_affairs)
    if problem.interpretans:
        out["interpretans"] = problem.interpretans
    if problem.interpretans_type is not None:
        out["interpretansType"] = problem.interpretans_type.value
    if problem.canons:
        out["canons"] = [_canon_to_dict(c) for c in problem.canons]
    if problem.second_order is not None:
        out["secondOrder"] = directive_to_dict(problem.second_order)
    return out


# ---------------------------------------------------------------------------
# Element flattening
# ---------------------------------------------------------------------------

def canon_token(canon: Canon, aliases: Mapping[str, str] | None = None) -> str:
    """Normalized comparable token for a canon element."""
    if canon.canon_class is CanonClass.APPEAL_TO_PRIOR_CASE and canon.cited_case_id:
        return f"appeal-to-prior-case:{normalize_term(canon.cited_case_id, aliases)}"
    return canon.canon_class.value


def characteristic_token(ch: Characteristic, aliases: Mapping[str, str] | None = None) -> str:
    return f"{ch.category.value}:{normalize_term(ch.value, aliases)}"


def _statement_elements(
    stmt: InterpretiveStatement, origin: Origin, aliases: Mapping[str, str] | None
) -> Iterable[SlotElementRef]:
    yield SlotElementRef(Slot.INTERPRETANS, normalize_term(stmt.interpretans, aliases), origin)
    yield SlotElementRef(Slot.INTERPRETANS_TYPE, stmt.interpretans_type.value, origin)
    for canon in stmt.canons:
        yield SlotElementRef(Slot.CANON, canon_token(canon, aliases), origin)


def frame_elements(
    frame: CaseFrame | ProblemFrame, aliases: Mapping[str, str] | None = None
) -> tuple[SlotElementRef, ...]:
    """Flatten a frame into its comparable atomic elements.

    Multi-valued slots expand to one ref per member; values are
    normalized; duplicates collapse to the first occurrence; ordering is
    deterministic (slot declaration order, then frame order).
    """
    refs: list[SlotElementRef] = []
    if isinstance(frame, CaseFrame):
        w = frame.winning
        refs.append(
            SlotElementRef(Slot.DOCUMENT, normalize_term(w.document.citation, aliases), Origin.WINNING)
        )
        for ch in w.characteristics:
            refs.append(
                SlotElementRef(Slot.CHARACTERISTIC, characteristic_token(ch, aliases), Origin.WINNING)
            )
        refs.append(
            SlotElementRef(
                Slot.INTERPRETANDUM, normalize_term(w.interpretandum.expression, aliases), Origin.WINNING
            )
        )
        for fact in w.state_of_affairs:
            refs.append(SlotElementRef(Slot.STATE_OF_AFFAIRS, normalize_term(fact, aliases), Origin.WINNING))
        refs.extend(_statement_elements(w.statement, Origin.WINNING, aliases))
        for stmt in frame.defeated:
            refs.extend(_statement_elements(stmt, Origin.DEFEATED, aliases))
        if frame.second_order is not None:
            refs.append(
                SlotElementRef(
                    Slot.SECOND_ORDER_DIRECTIVE,
                    normalize_term(frame.second_order.directive_class, aliases),
                    Origin.CASE_LEVEL,
                )
            )
            if frame.second_order.context:
                refs.append(
                    SlotElementRef(
                        Slot.CONTEXT, normalize_term(frame.second_order.context, aliases), Origin.CASE_LEVEL
                    )
                )
    else:
        if frame.document is not None:
            refs.append(
                SlotElementRef(
                    Slot.DOCUMENT, normalize_term(frame.document.citation, aliases), Origin.WINNING
                )
            )
        for ch in frame.characteristics:
            refs.append(
                SlotElementRef(Slot.CHARACTERISTIC, characteristic_token(ch, aliases), Origin.WINNING)
            )
        if frame.interpretandum is not None:
            refs.append(
                SlotElementRef(
                    Slot.INTERPRETANDUM,
                    normalize_term(frame.interpretandum.expression, aliases),
                    Origin.WINNING,
                )
            )
        for fact in frame.state_of_affairs:
            refs.append(SlotElementRef(Slot.STATE_OF_AFFAIRS, normalize_term(fact, aliases), Origin.WINNING))
        if frame.interpretans:
            refs.append(
                SlotElementRef(Slot.INTERPRETANS, normalize_term(frame.interpretans, aliases), Origin.WINNING)
            )
        if frame.interpretans_type is not None:
            refs.append(
                SlotElementRef(Slot.INTERPRETANS_TYPE, frame.interpretans_type.value, Origin.WINNING)
            )
        for canon in frame.canons:
            refs.append(SlotElementRef(Slot.CANON, canon_token(canon, aliases), Origin.WINNING))
        if frame.second_order is not None:
            refs.append(
                SlotElementRef(
                    Slot.SECOND_ORDER_DIRECTIVE,
                    normalize_term(frame.second_order.directive_class, aliases),
                    Origin.CASE_LEVEL,
                )
            )
            if frame.second_order.context:
                refs.append(
                    SlotElementRef(
                        Slot.CONTEXT, normalize_term(frame.second_order.context, aliases), Origin.CASE_LEVEL
                    )
                )
    seen: set[tuple[str, str]] = set()
    out: list[SlotElementRef] = []
    for ref in refs:
        if ref.key() not in seen:
            seen.add(ref.key())
            out.append(ref)
    return tuple(out)


def filled_slots(problem: ProblemFrame) -> frozenset[Slot]:
    """Slots of the problem frame that already hold a value."""
    filled: set[Slot] = set()
    if problem.document is not None:
        filled.add(Slot.DOCUMENT)
    if problem.characteristics:
        filled.add(Slot.CHARACTERISTIC)
    if problem.interpretandum is not None:
        filled.add(Slot.INTERPRETANDUM)
    if problem.state_of_affairs:
        filled.add(Slot.STATE_OF_AFFAIRS)
    if problem.interpretans:
        filled.add(Slot.INTERPRETANS)
    if problem.interpretans_type is not None:
        filled.add(Slot.INTERPRETANS_TYPE)
    if problem.canons:
        filled.add(Slot.CANON)
    if problem.second_order is not None:
        filled.add(Slot.SECOND_ORDER_DIRECTIVE)
        if problem.second_order.context:
            filled.add(Slot.CONTEXT)
    return frozenset(filled)
