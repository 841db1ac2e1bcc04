"""Stateful what-if workspace over one problem frame.

A session owns a problem frame, the arguments synthesized for it, and the
user's assertions (critical questions, counter-challenges, preference
overrides).  Every mutation triggers a full recomputation of the defeat
graph and its grounded labeling; desk-scale graphs make that cheap and
keep replay determinism trivial.

Assertions never remove nodes; a challenged challenge is neutralized by
labeling, not deletion.  The exported event log replays to a
byte-identical final state.
"""

from __future__ import annotations

import dataclasses
import json
import uuid
from typing import Any, Iterable

from .arguments import (
    Argument,
    ArgumentKind,
    Attack,
    AttackType,
    CQ,
    Conclusion,
    _digest,
    synthesize_arguments,
)
from .casebase import CaseBase
from .critical import (
    CQResult,
    auto_critical_attacks,
    counterexample_search,
    difference_report,
    directive_conflict_attacks,
)
from .errors import (
    FrameValidationError,
    InvalidAssertionError,
    SlotFilledError,
    TransferError,
    UnknownIdError,
)
from .frames import (
    Polarity,
    ProblemFrame,
    Slot,
    filled_slots,
    parse_problem_frame,
    problem_frame_to_dict,
)
from .framework import ArgumentationFramework, Label, build_framework, grounded_labeling

OVERRIDE = "override"

_CQ_VALUES = {tag.value: tag for tag in CQ}


@dataclasses.dataclass(frozen=True)
class Assertion:
    id: str
    cq: str  # a CQ tag or "override"
    target_argument_id: str
    payload: str = ""
    counter_to: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "id": self.id,
            "cq": self.cq,
            "targetArgumentId": self.target_argument_id,
            "payload": self.payload,
        }
        if self.counter_to:
            out["counterTo"] = self.counter_to
        return out


class Session:
    """One problem frame under dialectical scrutiny.  Single writer."""

    def __init__(self, session_id: str, problem: ProblemFrame, base: CaseBase):
        self.id = session_id
        self.problem = problem
        self.base = base
        self.assertions: list[Assertion] = []
        self.history: list[dict[str, Any]] = []
        self.framework: ArgumentationFramework = ArgumentationFramework((), ())
        self.labeling: dict[str, Label] = {}
        self.notes: tuple[str, ...] = ()
        self._assertion_nodes: dict[str, str] = {}  # assertion id -> node id
        self._transferred: dict[str, Argument] = {}  # applied transfers, by id
        self._directive_transfer_id: str | None = None
        self._step = 0

    # -- internals ---------------------------------------------------------

    def _record(self, event_type: str, **payload: Any) -> None:
        event = {"step": self._step, "type": event_type}
        event.update(payload)
        self.history.append(event)
        self._step += 1

    def _recompute(self) -> None:
        """Rebuild arguments, attacks, and labels from first principles."""
        args = list(synthesize_arguments(self.problem, self.base))
        # an applied transfer's argument stays on the books even though its
        # target slot is now filled, so it can still be challenged later
        fresh = {a.id for a in args}
        args.extend(a for a in self._transferred.values() if a.id not in fresh)
        all_args: list[Argument] = list(args)
        attacks: list[Attack] = []
        notes: list[str] = []

        def absorb(results: Iterable[CQResult]) -> None:
            for result in results:
                all_args.append(result.attacker)
                attacks.extend(result.attacks)

        for arg in args:
            auto_results, auto_notes = auto_critical_attacks(arg, self.problem, self.base)
            absorb(auto_results)
            for note in auto_notes:
                if note not in notes:
                    notes.append(note)
            absorb(counterexample_search(arg, self.problem, self.base))
        absorb(directive_conflict_attacks(args, self.problem, self.base))

        known = {a.id for a in all_args}
        overridden: set[str] = set()
        self._assertion_nodes = {}
        for assertion in self.assertions:
            if assertion.cq == OVERRIDE:
                if assertion.target_argument_id in known:
                    overridden.add(assertion.target_argument_id)
                continue
            if assertion.counter_to:
                target_id = self._assertion_nodes.get(assertion.counter_to, "")
            else:
                target_id = assertion.target_argument_id
            if target_id not in known:
                # the target fell away in a re-synthesis; keep the
                # assertion on the books but give it no node this round
                continue
            node = Argument(
                id="as-" + _digest(assertion.cq, target_id, assertion.id),
                kind=ArgumentKind.CQ_ATTACKER,
                conclusion=Conclusion(
                    value=assertion.payload or f"{assertion.cq} challenge",
                    polarity=Polarity.NEGATIVE,
                ),
                rationale=assertion.payload or f"{assertion.cq} asserted against {target_id}",
                cq=_CQ_VALUES[assertion.cq],
            )
            all_args.append(node)
            known.add(node.id)
            self._assertion_nodes[assertion.id] = node.id
            attacks.append(
                Attack(
                    attacker=node.id,
                    target=target_id,
                    type=AttackType.UNDERCUT,
                    cq=_CQ_VALUES[assertion.cq],
                    auto=False,
                )
            )

        self.framework = build_framework(
            all_args, attacks, self.problem.second_order, frozenset(overridden)
        )
        self.labeling = grounded_labeling(self.framework)
        # a directive adopted by transfer is only as good as its argument:
        # once that argument is defeated the preference it carried is dropped
        did = self._directive_transfer_id
        if did is not None and self.labeling.get(did) is Label.OUT:
            self.framework = build_framework(
                all_args, attacks, None, frozenset(overridden)
            )
            self.labeling = grounded_labeling(self.framework)
        self.notes = tuple(notes)

    # -- views -------------------------------------------------------------

    def argument(self, arg_id: str) -> Argument | None:
        return self.framework.argument(arg_id)


def create_session(
    problem: ProblemFrame, base: CaseBase, session_id: str | None = None
) -> Session:
    """Synthesize, question, and label everything for a fresh problem."""
    session = Session(session_id or uuid.uuid4().hex, problem, base)
    session._record(
        "created", sessionId=session.id, problem=problem_frame_to_dict(problem)
    )
    session._recompute()
    return session


def assert_cq(
    session: Session,
    cq: str,
    target_argument_id: str = "",
    payload: str = "",
    counter_to: str | None = None,
) -> Assertion:
    """Record a manual critical question, counter-challenge, or override."""
    if cq != OVERRIDE and cq not in _CQ_VALUES:
        raise InvalidAssertionError(
            f"unknown critical question {cq!r}; expected one of "
            f"{sorted(_CQ_VALUES)} or {OVERRIDE!r}"
        )
    if counter_to:
        if not any(a.id == counter_to for a in session.assertions):
            raise UnknownIdError(f"no assertion {counter_to!r} to counter")
        if counter_to not in session._assertion_nodes:
            raise InvalidAssertionError(
                f"assertion {counter_to!r} has no attackable node (override or detached)"
            )
        if cq == OVERRIDE:
            raise InvalidAssertionError("an override cannot counter an assertion")
        target_id = session._assertion_nodes[counter_to]
    else:
        target_id = target_argument_id
        target = session.argument(target_id)
        if target is None:
            raise UnknownIdError(f"unknown argument {target_id!r}")
        if cq == OVERRIDE:
            if target.kind is ArgumentKind.CQ_ATTACKER:
                raise InvalidAssertionError("overrides apply to substantive arguments only")
        elif target.kind is ArgumentKind.CANON_BASED:
            raise InvalidAssertionError(
                f"{cq} questions a prior-case appeal; it does not apply to a "
                "canon-based argument"
            )

    assertion = Assertion(
        id=f"a{len(session.assertions) + 1}",
        cq=cq,
        target_argument_id=target_argument_id,
        payload=payload,
        counter_to=counter_to,
    )
    session.assertions.append(assertion)
    session._record(
        "assertion",
        assertionId=assertion.id,
        cq=cq,
        targetArgumentId=target_argument_id,
        payload=payload,
        counterTo=counter_to,
    )
    session._recompute()
    return assertion


_SLOT_WRITERS = {
    Slot.DOCUMENT: lambda p, v: dataclasses.replace(p, document=v),
    Slot.CHARACTERISTIC: lambda p, v: dataclasses.replace(p, characteristics=(v,)),
    Slot.INTERPRETANDUM: lambda p, v: dataclasses.replace(p, interpretandum=v),
    Slot.STATE_OF_AFFAIRS: lambda p, v: dataclasses.replace(p, state_of_affairs=(v,)),
    Slot.INTERPRETANS: lambda p, v: dataclasses.replace(p, interpretans=v),
    Slot.INTERPRETANS_TYPE: lambda p, v: dataclasses.replace(p, interpretans_type=v),
    Slot.CANON: lambda p, v: dataclasses.replace(p, canons=(v,)),
    Slot.SECOND_ORDER_DIRECTIVE: lambda p, v: dataclasses.replace(p, second_order=v),
    Slot.CONTEXT: lambda p, v: dataclasses.replace(
        p, second_order=dataclasses.replace(p.second_order, context=v)
    ),
}


def apply_transfer(session: Session, argument_id: str) -> Session:
    """Fill the problem slot with the argument's transferred element.

    Only a positive, currently IN prior-case argument may transfer, and
    only into a still-empty slot; everything is then re-synthesized
    against the updated problem.  The applied argument itself survives
    the re-synthesis so later critical questions can still reach it.
    """
    arg = session.argument(argument_id)
    if arg is None:
        raise UnknownIdError(f"unknown argument {argument_id!r}")
    if arg.kind is not ArgumentKind.PRIOR_CASE or arg.beta is None:
        raise TransferError("only prior-case transfer arguments can fill a slot")
    if arg.polarity is not Polarity.POSITIVE:
        raise TransferError(
            "negative conclusions exclude values; they do not fill slots"
        )
    slot = arg.beta.slot
    if slot in filled_slots(session.problem):
        raise SlotFilledError(f"problem slot {slot.value!r} is already filled")
    if slot is Slot.CONTEXT and session.problem.second_order is None:
        raise TransferError("a context transfer requires an active directive")
    if session.labeling.get(argument_id) is not Label.IN:
        raise TransferError(
            f"unsupported transfer: argument {argument_id} is "
            f"{session.labeling.get(argument_id, Label.UNDEC).value}, not in"
        )

    session.problem = _SLOT_WRITERS[slot](session.problem, arg.payload)
    session._transferred[argument_id] = arg
    if slot is Slot.SECOND_ORDER_DIRECTIVE:
        session._directive_transfer_id = argument_id
    session._record("transfer", argumentId=argument_id, slot=slot.value)
    session._recompute()
    return session


def session_state(session: Session) -> dict[str, Any]:
    """Read-only snapshot for clients; deterministic for equal histories."""
    from .framework import framework_to_dict

    state = framework_to_dict(session.framework, session.labeling)
    sharing_cases: list[str] = []
    for arg in session.framework.arguments:
        if (
            arg.kind is ArgumentKind.PRIOR_CASE
            and arg.cited_case_id
            and arg.cited_case_id not in sharing_cases
        ):
            sharing_cases.append(arg.cited_case_id)
    suggestions = []
    for cid in sharing_cases:
        frame = session.base.get(cid)
        if frame is None:
            continue
        report = difference_report(frame, session.problem, session.base)
        suggestions.append(
            {
                "caseId": cid,
                "cqs": [CQ.CQ1.value, CQ.CQ2.value],
                "differences": {
                    "onlyInCase": [
                        {"slot": r.slot.value, "value": r.value} for r in report.only_in_case
                    ],
                    "onlyInProblem": [
                        {"slot": r.slot.value, "value": r.value} for r in report.only_in_problem
                    ],
                },
            }
        )
    return {
        "sessionId": session.id,
        "problem": problem_frame_to_dict(session.problem),
        "arguments": state["arguments"],
        "defeats": state["defeats"],
        "labeling": state["labeling"],
        "assertions": [a.to_dict() for a in session.assertions],
        "notes": list(session.notes),
        "pendingCQSuggestions": suggestions,
    }


# ---------------------------------------------------------------------------
# Event log
# ---------------------------------------------------------------------------

def export_log(session: Session) -> str:
    """One JSON object per line, oldest first."""
    return "".join(
        json.dumps(event, ensure_ascii=False, sort_keys=True) + "\n"
        for event in session.history
    )


def replay_log(log: str, base: CaseBase) -> Session:
    """Rebuild a session from its exported event log.

    Replaying the log of a live session yields a session whose state is
    byte-identical (same ids, same labels) to the original.
    """
    session: Session | None = None
    for line_no, line in enumerate(log.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            event = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FrameValidationError([f"log line {line_no}: invalid JSON: {exc}"]) from exc
        event_type = event.get("type")
        if event_type == "created":
            problem, report = parse_problem_frame(event.get("problem") or {})
            if problem is None:
                raise FrameValidationError(
                    [f"log line {line_no}: {e}" for e in report.errors]
                )
            session = create_session(problem, base, session_id=event.get("sessionId"))
        elif session is None:
            raise FrameValidationError(
                [f"log line {line_no}: {event_type!r} event before 'created'"]
            )
        elif event_type == "assertion":
            assert_cq(
                session,
                cq=event.get("cq", ""),
                target_argument_id=event.get("targetArgumentId", ""),
                payload=event.get("payload", ""),
                counter_to=event.get("counterTo"),
            )
        elif event_type == "transfer":
            apply_transfer(session, event.get("argumentId", ""))
        else:
            raise FrameValidationError(
                [f"log line {line_no}: unknown event type {event_type!r}"]
            )
    if session is None:
        raise FrameValidationError(["log contains no 'created' event"])
    return session
