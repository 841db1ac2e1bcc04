"""Argument synthesis from prior cases and canon applications.

Two schemes are instantiated here.  The prior-case scheme: a decided case
that shares an element with the current problem supports transferring
another of its elements into the problem's empty slots (positively from
the winning interpretation, directive, or context; negatively from the
defeated interpretations).  The canon scheme: a single canon applied to an
interpretandum yields an interpretive conclusion directly.

Critical-question attackers are built in ``critical``; conflict and
preference resolution feed ``framework.build_framework``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable

from .casebase import CaseBase
from .frames import (
    Canon,
    CaseFrame,
    DirectiveSpec,
    Origin,
    Polarity,
    ProblemFrame,
    SIMILARITY_SLOTS,
    Slot,
    SlotElementRef,
    canon_token,
    characteristic_token,
    filled_slots,
    frame_elements,
    normalize_term,
)


class ArgumentKind(str, Enum):
    PRIOR_CASE = "prior-case"
    CANON_BASED = "canon-based"
    CQ_ATTACKER = "cq-attacker"


class AttackType(str, Enum):
    REBUTTAL = "rebuttal"
    UNDERCUT = "undercut"


class CQ(str, Enum):
    """The critical questions against a prior-case argument."""

    CQ1 = "CQ1"    # similarity relevance (manual)
    CQ2 = "CQ2"    # distinguishing (manual)
    CQ2A = "CQ2a"  # different branch of law
    CQ2B = "CQ2b"  # different provision type
    CQ2C = "CQ2c"  # different goal
    CQ3 = "CQ3"    # counterexample case
    CQ4 = "CQ4"    # different jurisdiction
    CQ5A = "CQ5a"  # obsolete precedent
    CQ5B = "CQ5b"  # not yet established
    CQ6 = "CQ6"    # lower court
    CQ7 = "CQ7"    # non-final decision
    CQ8 = "CQ8"    # different second-order rule


class Preference(str, Enum):
    A_PREFERRED = "a-preferred"
    B_PREFERRED = "b-preferred"
    NO_PREFERENCE = "no-preference"


@dataclass(frozen=True)
class Conclusion:
    """What an argument claims: a value for a slot, or a challenge.

    ``about`` ties interpretans conclusions to their interpretandum so
    that proposals for different expressions never count as conflicting.
    """

    value: str
    polarity: Polarity
    target_slot: Slot | None = None
    about: str = ""


@dataclass(frozen=True)
class Argument:
    id: str
    kind: ArgumentKind
    conclusion: Conclusion
    rationale: str
    cited_case_id: str | None = None
    alpha: SlotElementRef | None = None
    shared: tuple[SlotElementRef, ...] = ()
    beta: SlotElementRef | None = None
    canons: tuple[Canon, ...] = ()
    cq: CQ | None = None
    #: verbatim domain value a transfer would write into the problem slot
    payload: Any = None

    @property
    def polarity(self) -> Polarity:
        return self.conclusion.polarity


@dataclass(frozen=True)
class Attack:
    attacker: str
    target: str
    type: AttackType
    cq: CQ | None = None
    auto: bool = True

    def __post_init__(self) -> None:
        if self.attacker == self.target:
            raise ValueError("an argument cannot attack itself")


def _digest(*parts: str) -> str:
    return hashlib.sha256("|".join(parts).encode("utf-8")).hexdigest()[:12]


# ---------------------------------------------------------------------------
# Similarity
# ---------------------------------------------------------------------------

def shared_elements(c: CaseFrame, p: ProblemFrame, base: CaseBase | None = None) -> tuple[SlotElementRef, ...]:
    """Elements of the four similarity slots present in both frames.

    Comparison ignores origin; the returned refs are the case's, in the
    case's element order.
    """
    aliases = base.aliases if base is not None else None
    problem_keys = {
        ref.key() for ref in frame_elements(p, aliases) if ref.slot in SIMILARITY_SLOTS
    }
    return tuple(
        ref
        for ref in frame_elements(c, aliases)
        if ref.slot in SIMILARITY_SLOTS and ref.key() in problem_keys
    )


# ---------------------------------------------------------------------------
# Prior-case scheme
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Candidate:
    ref: SlotElementRef
    payload: Any
    canons: tuple[Canon, ...]
    polarity: Polarity
    display: str


def _transfer_candidates(c: CaseFrame, p: ProblemFrame, base: CaseBase) -> Iterable[_Candidate]:
    """Enumerate transferable elements of c in deterministic slot order."""
    aliases = base.aliases
    open_slots = set(Slot) - filled_slots(p)
    w = c.winning
    backing = w.statement.canons

    if Slot.DOCUMENT in open_slots:
        yield _Candidate(
            SlotElementRef(Slot.DOCUMENT, normalize_term(w.document.citation, aliases), Origin.WINNING),
            w.document, backing, Polarity.POSITIVE, w.document.citation,
        )
    if Slot.CHARACTERISTIC in open_slots:
        for ch in w.characteristics:
            yield _Candidate(
                SlotElementRef(Slot.CHARACTERISTIC, characteristic_token(ch, aliases), Origin.WINNING),
                ch, backing, Polarity.POSITIVE, f"{ch.category.value}: {ch.value}",
            )
    if Slot.INTERPRETANDUM in open_slots:
        yield _Candidate(
            SlotElementRef(
                Slot.INTERPRETANDUM, normalize_term(w.interpretandum.expression, aliases), Origin.WINNING
            ),
            w.interpretandum, backing, Polarity.POSITIVE, w.interpretandum.expression,
        )
    if Slot.STATE_OF_AFFAIRS in open_slots:
        for fact in w.state_of_affairs:
            yield _Candidate(
                SlotElementRef(Slot.STATE_OF_AFFAIRS, normalize_term(fact, aliases), Origin.WINNING),
                fact, backing, Polarity.POSITIVE, fact,
            )
    if Slot.INTERPRETANS in open_slots:
        yield _Candidate(
            SlotElementRef(Slot.INTERPRETANS, normalize_term(w.statement.interpretans, aliases), Origin.WINNING),
            w.statement.interpretans, backing, Polarity.POSITIVE, w.statement.interpretans,
        )
    if Slot.INTERPRETANS_TYPE in open_slots:
        yield _Candidate(
            SlotElementRef(Slot.INTERPRETANS_TYPE, w.statement.interpretans_type.value, Origin.WINNING),
            w.statement.interpretans_type, backing, Polarity.POSITIVE,
            w.statement.interpretans_type.value,
        )
    if Slot.CANON in open_slots:
        for canon in w.statement.canons:
            yield _Candidate(
                SlotElementRef(Slot.CANON, canon_token(canon, aliases), Origin.WINNING),
                canon, backing, Polarity.POSITIVE, canon.label or canon.canon_class.value,
            )
    if c.second_order is not None:
        if Slot.SECOND_ORDER_DIRECTIVE in open_slots:
            yield _Candidate(
                SlotElementRef(
                    Slot.SECOND_ORDER_DIRECTIVE,
                    normalize_term(c.second_order.directive_class, aliases),
                    Origin.CASE_LEVEL,
                ),
                c.second_order, (), Polarity.POSITIVE, c.second_order.directive_class,
            )
        # A bare context is only transferable onto an already-present
        # directive; without one there is nothing for it to qualify.
        if (
            Slot.CONTEXT in open_slots
            and p.second_order is not None
            and c.second_order.context
        ):
            yield _Candidate(
                SlotElementRef(
                    Slot.CONTEXT, normalize_term(c.second_order.context, aliases), Origin.CASE_LEVEL
                ),
                c.second_order.context, (), Polarity.POSITIVE, c.second_order.context,
            )

    for stmt in c.defeated:
        if Slot.INTERPRETANS in open_slots:
            yield _Candidate(
                SlotElementRef(Slot.INTERPRETANS, normalize_term(stmt.interpretans, aliases), Origin.DEFEATED),
                stmt.interpretans, stmt.canons, Polarity.NEGATIVE, stmt.interpretans,
            )
        if Slot.INTERPRETANS_TYPE in open_slots:
            yield _Candidate(
                SlotElementRef(Slot.INTERPRETANS_TYPE, stmt.interpretans_type.value, Origin.DEFEATED),
                stmt.interpretans_type, stmt.canons, Polarity.NEGATIVE,
                stmt.interpretans_type.value,
            )
        if Slot.CANON in open_slots:
            for canon in stmt.canons:
                yield _Candidate(
                    SlotElementRef(Slot.CANON, canon_token(canon, aliases), Origin.DEFEATED),
                    canon, stmt.canons, Polarity.NEGATIVE, canon.label or canon.canon_class.value,
                )


def synthesize_arguments(p: ProblemFrame, base: CaseBase) -> list[Argument]:
    """Instantiate the prior-case scheme for every sharing case.

    One argument per (case, transferred element, polarity); the full
    shared-element set is recorded on the argument, with the first shared
    element as the nominal point of similarity.
    """
    problem_interpretandum = (
        normalize_term(p.interpretandum.expression, base.aliases) if p.interpretandum else ""
    )
    out: list[Argument] = []
    seen: set[str] = set()
    for identifier, c in base.cases.items():
        shared = shared_elements(c, p, base)
        if not shared:
            continue
        alpha = shared[0]
        for cand in _transfer_candidates(c, p, base):
            arg_id = "pc-" + _digest(
                identifier,
                alpha.slot.value, alpha.value,
                cand.ref.slot.value, cand.ref.value,
                cand.polarity.value,
            )
            if arg_id in seen:
                continue
            seen.add(arg_id)
            about = problem_interpretandum if cand.ref.slot is Slot.INTERPRETANS else ""
            if cand.polarity is Polarity.POSITIVE:
                rationale = (
                    f"{identifier} shares {alpha.slot.value} {alpha.value!r} with the problem; "
                    f"it supports {cand.ref.slot.value} = {cand.display!r}"
                )
            else:
                rationale = (
                    f"{identifier} shares {alpha.slot.value} {alpha.value!r} with the problem; "
                    f"it rejected {cand.ref.slot.value} = {cand.display!r}"
                )
            out.append(
                Argument(
                    id=arg_id,
                    kind=ArgumentKind.PRIOR_CASE,
                    conclusion=Conclusion(
                        value=cand.ref.value,
                        polarity=cand.polarity,
                        target_slot=cand.ref.slot,
                        about=about,
                    ),
                    rationale=rationale,
                    cited_case_id=identifier,
                    alpha=alpha,
                    shared=shared,
                    beta=cand.ref,
                    canons=cand.canons,
                    payload=cand.payload,
                )
            )
    return out


# ---------------------------------------------------------------------------
# Canon scheme
# ---------------------------------------------------------------------------

def instantiate_canon_argument(
    interpretandum: str,
    document: str,
    interpretans: str,
    canon: Canon,
    polarity: Polarity = Polarity.POSITIVE,
) -> Argument:
    """One canon applied to one expression yields one interpretive claim."""
    for name, value in (
        ("interpretandum", interpretandum),
        ("document", document),
        ("interpretans", interpretans),
    ):
        if not value or not str(value).strip():
            raise ValueError(f"canon argument requires a non-empty {name}")
    if canon is None:
        raise ValueError("canon argument requires a canon")
    verb = "should" if polarity is Polarity.POSITIVE else "should not"
    arg_id = "cn-" + _digest(
        normalize_term(interpretandum), normalize_term(document),
        normalize_term(interpretans), canon.canon_class.value, polarity.value,
    )
    return Argument(
        id=arg_id,
        kind=ArgumentKind.CANON_BASED,
        conclusion=Conclusion(
            value=normalize_term(interpretans),
            polarity=polarity,
            target_slot=Slot.INTERPRETANS,
            about=normalize_term(interpretandum),
        ),
        rationale=(
            f"by the {canon.canon_class.value} canon, {interpretandum!r} in {document} "
            f"{verb} be interpreted as {interpretans!r}"
        ),
        canons=(canon,),
        payload=interpretans,
    )


# ---------------------------------------------------------------------------
# Conflict and preference
# ---------------------------------------------------------------------------

def conflicting_conclusions(a: Argument, b: Argument) -> bool:
    """True when the two conclusions cannot stand together."""
    ca, cb = a.conclusion, b.conclusion
    if ca.target_slot is None or cb.target_slot is None:
        return False
    if ca.target_slot is not cb.target_slot:
        return False
    if ca.value == cb.value and ca.polarity is not cb.polarity:
        return True
    if (
        ca.target_slot is Slot.INTERPRETANS
        and ca.about == cb.about
        and ca.value != cb.value
        and ca.polarity is Polarity.POSITIVE
        and cb.polarity is Polarity.POSITIVE
    ):
        return True
    return False


def _tier_index(active: DirectiveSpec, arg: Argument) -> int | None:
    """Earliest tier containing any canon class of the argument."""
    best: int | None = None
    for canon in arg.canons:
        for i, tier in enumerate(active.tiers):
            if canon.canon_class in tier:
                if best is None or i < best:
                    best = i
                break
    return best


def directive_preference(
    active: DirectiveSpec | None,
    a: Argument,
    b: Argument,
    overridden: frozenset[str] = frozenset(),
) -> Preference:
    """Default strength ordering under the active directive of preference.

    Arguments whose canons sit in an earlier tier are preferred.  An
    argument outside every tier yields no preference either way; an
    override assertion against the preferred side neutralizes the result.
    """
    if active is None or not active.tiers:
        return Preference.NO_PREFERENCE
    ia, ib = _tier_index(active, a), _tier_index(active, b)
    if ia is None or ib is None or ia == ib:
        return Preference.NO_PREFERENCE
    if ia < ib:
        return Preference.NO_PREFERENCE if a.id in overridden else Preference.A_PREFERRED
    return Preference.NO_PREFERENCE if b.id in overridden else Preference.B_PREFERRED
