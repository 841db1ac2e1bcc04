import datetime as dt
import json

import pytest

from caseframe import (
    CQ,
    Forum,
    Interpretandum,
    InvalidAssertionError,
    Label,
    ProblemFrame,
    Slot,
    SlotFilledError,
    TransferError,
    UnknownIdError,
    apply_transfer,
    assert_cq,
    create_session,
    export_log,
    replay_log,
    session_state,
)

TABLE1_INTERPRETANS = "Documenting and recording the cost in the company's books"


def interpretans_arg(session, polarity="positive"):
    for arg in session.framework.arguments:
        if (
            arg.beta is not None
            and arg.beta.slot is Slot.INTERPRETANS
            and arg.conclusion.polarity.value == polarity
        ):
            return arg
    raise AssertionError("no interpretans transfer argument found")


# ---------------------------------------------------------------------------
# creation
# ---------------------------------------------------------------------------

def test_table1_session_has_both_polarities(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    assert len(s.framework.arguments) >= 2
    assert interpretans_arg(s, "positive")
    assert interpretans_arg(s, "negative")
    assert s.labeling[interpretans_arg(s, "positive").id] is Label.IN


def test_unrelated_problem_yields_empty_session(table1_base):
    p = ProblemFrame(
        forum=Forum(jurisdiction="Poland", court="Supreme Administrative Court"),
        as_of_date=dt.date(2014, 6, 1),
        interpretandum=Interpretandum(expression="nothing shared at all"),
    )
    s = create_session(p, table1_base)
    assert s.framework.arguments == ()
    assert s.labeling == {}


def test_table2_session_all_undecided(table2_base, table2_problem):
    s = create_session(table2_problem, table2_base)
    directive_args = [
        a for a in s.framework.arguments
        if a.beta is not None and a.beta.slot is Slot.SECOND_ORDER_DIRECTIVE
    ]
    assert len(directive_args) == 5
    assert {s.labeling[a.id] for a in directive_args} == {Label.UNDEC}


def test_session_ids_stable_for_same_input(table1_base, table1_problem):
    a = create_session(table1_problem, table1_base, session_id="one")
    b = create_session(table1_problem, table1_base, session_id="two")
    assert [x.id for x in a.framework.arguments] == [x.id for x in b.framework.arguments]
    assert a.labeling == b.labeling


def test_notes_deduplicated(table2_base, table2_problem):
    s = create_session(table2_problem, table2_base)
    assert len(s.notes) == len(set(s.notes))


# ---------------------------------------------------------------------------
# assertions
# ---------------------------------------------------------------------------

def test_cq1_defeats_then_counter_reinstates(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    target = interpretans_arg(s, "positive")
    first = assert_cq(s, "CQ1", target_argument_id=target.id, payload="feature irrelevant")
    assert s.labeling[target.id] is Label.OUT

    assert_cq(s, "CQ1", counter_to=first.id, payload="the feature is central")
    assert s.labeling[target.id] is Label.IN


def test_assertion_ids_sequential(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    target = interpretans_arg(s, "positive")
    a1 = assert_cq(s, "CQ1", target_argument_id=target.id)
    a2 = assert_cq(s, "CQ2", target_argument_id=target.id)
    assert (a1.id, a2.id) == ("a1", "a2")


def test_unknown_cq_rejected(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    target = interpretans_arg(s, "positive")
    with pytest.raises(InvalidAssertionError):
        assert_cq(s, "CQ99", target_argument_id=target.id)


def test_unknown_target_rejected(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    with pytest.raises(UnknownIdError):
        assert_cq(s, "CQ1", target_argument_id="pc-missing")


def test_counter_must_reference_existing_assertion(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    with pytest.raises(UnknownIdError):
        assert_cq(s, "CQ1", counter_to="a9")


def test_override_cannot_target_cq_node(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    target = interpretans_arg(s, "positive")
    challenge = assert_cq(s, "CQ1", target_argument_id=target.id)
    node_id = s._assertion_nodes[challenge.id]
    with pytest.raises(InvalidAssertionError):
        assert_cq(s, "override", target_argument_id=node_id)


def test_assertions_accumulate_nodes_monotonically(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    target = interpretans_arg(s, "positive")
    sizes = [len(s.framework.arguments)]
    assert_cq(s, "CQ1", target_argument_id=target.id)
    sizes.append(len(s.framework.arguments))
    assert_cq(s, "CQ2", target_argument_id=target.id, payload="facts differ")
    sizes.append(len(s.framework.arguments))
    assert sizes == sorted(sizes)
    assert sizes[2] == sizes[0] + 2


def test_labeling_still_lawful_after_assertions(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    target = interpretans_arg(s, "positive")
    assert_cq(s, "CQ1", target_argument_id=target.id)
    attackers = {}
    for d in s.framework.defeats:
        attackers.setdefault(d.target, set()).add(d.attacker)
    for arg in s.framework.arguments:
        atts = attackers.get(arg.id, set())
        if s.labeling[arg.id] is Label.IN:
            assert all(s.labeling[a] is Label.OUT for a in atts)
        elif s.labeling[arg.id] is Label.OUT:
            assert any(s.labeling[a] is Label.IN for a in atts)


# ---------------------------------------------------------------------------
# transfers
# ---------------------------------------------------------------------------

def test_transfer_fills_interpretans(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    arg = interpretans_arg(s, "positive")
    apply_transfer(s, arg.id)
    assert s.problem.interpretans == TABLE1_INTERPRETANS


def test_transfer_requires_in_label(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    arg = interpretans_arg(s, "positive")
    assert_cq(s, "CQ1", target_argument_id=arg.id)
    assert s.labeling[arg.id] is Label.OUT
    with pytest.raises(TransferError) as err:
        apply_transfer(s, arg.id)
    assert "unsupported transfer" in str(err.value)


def test_transfer_rejects_negative_conclusions(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    arg = interpretans_arg(s, "negative")
    with pytest.raises(TransferError):
        apply_transfer(s, arg.id)


def test_transfer_never_overwrites(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    arg = interpretans_arg(s, "positive")
    apply_transfer(s, arg.id)
    with pytest.raises(SlotFilledError):
        apply_transfer(s, arg.id)


def test_transferred_argument_survives_resynthesis(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    arg = interpretans_arg(s, "positive")
    apply_transfer(s, arg.id)
    assert s.framework.argument(arg.id) is not None
    # and can still be challenged
    assert_cq(s, "CQ2", target_argument_id=arg.id, payload="late doubt")
    assert s.labeling[arg.id] is Label.OUT


def test_directive_transfer_activates_preference(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    directive_arg = next(
        a for a in s.framework.arguments
        if a.beta is not None and a.beta.slot is Slot.SECOND_ORDER_DIRECTIVE
    )
    apply_transfer(s, directive_arg.id)
    assert s.problem.second_order is not None
    assert s.problem.second_order.directive_class == "holistic"
    # the transfer argument is pinned and still IN
    assert s.labeling[directive_arg.id] is Label.IN


def test_unknown_transfer_target(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    with pytest.raises(UnknownIdError):
        apply_transfer(s, "pc-nothere")


def test_cq_node_cannot_transfer(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    target = interpretans_arg(s, "positive")
    challenge = assert_cq(s, "CQ1", target_argument_id=target.id)
    node_id = s._assertion_nodes[challenge.id]
    with pytest.raises(TransferError):
        apply_transfer(s, node_id)


# ---------------------------------------------------------------------------
# state view
# ---------------------------------------------------------------------------

def test_state_contains_difference_reports(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    state = session_state(s)
    assert state["sessionId"] == s.id
    (suggestion,) = state["pendingCQSuggestions"]
    assert suggestion["caseId"] == "II FSK 2051/10"
    assert suggestion["cqs"] == ["CQ1", "CQ2"]
    only_case = {(d["slot"], d["value"]) for d in suggestion["differences"]["onlyInCase"]}
    assert ("state-of-affairs",
            "company documented the cost and intends to apply for tax exemption") in only_case


def test_state_changes_after_assertion(table1_base, table1_problem):
    s = create_session(table1_problem, table1_base)
    before = session_state(s)
    target = interpretans_arg(s, "positive")
    assert_cq(s, "CQ1", target_argument_id=target.id)
    after = session_state(s)
    assert before["labeling"][target.id] != after["labeling"][target.id]
    assert after["assertions"] and not before["assertions"]


def test_state_is_json_serializable(table2_base, table2_problem):
    s = create_session(table2_problem, table2_base)
    text = json.dumps(session_state(s), sort_keys=True)
    assert "second-order-directive" in text


# ---------------------------------------------------------------------------
# event log and replay
# ---------------------------------------------------------------------------

def full_loop_session(base, problem):
    s = create_session(problem, base)
    target = interpretans_arg(s, "positive")
    first = assert_cq(s, "CQ1", target_argument_id=target.id, payload="irrelevant feature")
    assert_cq(s, "CQ1", counter_to=first.id, payload="feature is central")
    apply_transfer(s, target.id)
    return s


def test_replay_reproduces_state(table1_base, table1_problem):
    s = full_loop_session(table1_base, table1_problem)
    log = export_log(s)
    twin = replay_log(log, table1_base)
    assert json.dumps(session_state(twin), sort_keys=True) == json.dumps(
        session_state(s), sort_keys=True
    )
    assert export_log(twin) == log


def test_log_is_one_json_object_per_line(table1_base, table1_problem):
    s = full_loop_session(table1_base, table1_problem)
    lines = export_log(s).splitlines()
    assert len(lines) == 4  # created, two assertions, one transfer
    types = [json.loads(line)["type"] for line in lines]
    assert types == ["created", "assertion", "assertion", "transfer"]
    steps = [json.loads(line)["step"] for line in lines]
    assert steps == [0, 1, 2, 3]


def test_replay_rejects_garbage_line(table1_base):
    with pytest.raises(Exception) as err:
        replay_log('{"type": "created"}\nnot json\n', table1_base)
    assert "line" in str(err.value)


def test_replay_rejects_event_before_created(table1_base):
    log = json.dumps({"type": "assertion", "cq": "CQ1"}) + "\n"
    with pytest.raises(Exception):
        replay_log(log, table1_base)


def test_replay_rejects_empty_log(table1_base):
    with pytest.raises(Exception):
        replay_log("", table1_base)


def test_replay_is_deterministic_across_runs(table2_base, table2_problem):
    s = create_session(table2_problem, table2_base, session_id="fixed")
    log = export_log(s)
    states = [
        json.dumps(session_state(replay_log(log, table2_base)), sort_keys=True)
        for _ in range(3)
    ]
    assert len(set(states)) == 1
