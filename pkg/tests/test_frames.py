import datetime as dt
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caseframe import (
    CaseFrame,
    Characteristic,
    CharacteristicCategory,
    Forum,
    ProblemFrame,
    SIMILARITY_SLOTS,
    Slot,
    case_frame_to_dict,
    filled_slots,
    frame_elements,
    normalize_term,
    parse_case_frame,
    parse_problem_frame,
    problem_frame_to_dict,
)

from conftest import deep


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

def test_normalize_casefolds_and_collapses_whitespace():
    assert normalize_term("  Tax   LAW \t", {}) == "tax law"


def test_normalize_applies_alias_chain():
    aliases = {"nsa": "supreme administrative court", "the nsa": "nsa"}
    assert normalize_term("The NSA", aliases) == "supreme administrative court"


def test_normalize_survives_alias_cycle():
    aliases = {"a": "b", "b": "a"}
    # must terminate; either member of the cycle is acceptable
    assert normalize_term("a", aliases) in {"a", "b"}


@given(st.text(max_size=60))
def test_normalize_idempotent(text):
    once = normalize_term(text, {})
    assert normalize_term(once, {}) == once


@given(st.text(max_size=40))
def test_normalize_ignores_case_and_padding(text):
    assert normalize_term(text.upper() + "  ", {}) == normalize_term(text, {})


# ---------------------------------------------------------------------------
# case frame parsing
# ---------------------------------------------------------------------------

def minimal_case() -> dict:
    return {
        "caseData": {
            "jurisdiction": "Poland",
            "court": "Supreme Administrative Court",
            "identifier": "X 1/20",
            "date": "2020-05-01",
            "procedural": "final",
        },
        "winning": {
            "document": {"citation": "Journal of Laws of 1985, No. 14, item 60"},
            "interpretandum": {"expression": "public road"},
            "statement": {
                "interpretans": "a road open to everyone",
                "interpretansType": "intensional",
                "polarity": "positive",
                "canons": [{"class": "linguistic"}],
            },
        },
    }


def test_parse_minimal_case_ok():
    frame, report = parse_case_frame(minimal_case())
    assert report.ok
    assert isinstance(frame, CaseFrame)
    assert frame.identifier == "X 1/20"
    assert frame.case_data.date == dt.date(2020, 5, 1)


def test_parse_reports_missing_identifier():
    doc = minimal_case()
    del doc["caseData"]["identifier"]
    frame, report = parse_case_frame(doc)
    assert frame is None
    assert "missing case identifier" in report.errors


def test_parse_rejects_unknown_field_strict():
    doc = minimal_case()
    doc["surprise"] = 1
    frame, report = parse_case_frame(doc)
    assert frame is None
    assert any("unknown field" in e for e in report.errors)


def test_parse_tolerates_unknown_field_lenient():
    doc = minimal_case()
    doc["surprise"] = 1
    frame, report = parse_case_frame(doc, lenient=True)
    assert frame is not None
    assert any("unknown field" in w for w in report.warnings)


def test_parse_rejects_bad_date():
    doc = minimal_case()
    doc["caseData"]["date"] = "01/05/2020"
    frame, report = parse_case_frame(doc)
    assert frame is None
    assert any("ISO-8601" in e for e in report.errors)


def test_parse_rejects_bad_enum():
    doc = minimal_case()
    doc["caseData"]["procedural"] = "pending appeal"
    frame, report = parse_case_frame(doc)
    assert frame is None


def test_parse_rejects_winning_statement_among_defeated():
    doc = minimal_case()
    doc["defeated"] = [deep(doc["winning"]["statement"])]
    frame, report = parse_case_frame(doc)
    assert frame is None


def test_parse_warns_on_missing_optional_parts():
    frame, report = parse_case_frame(minimal_case())
    assert frame is not None
    assert any("defeated" in w for w in report.warnings)
    assert any("second-order" in w or "secondOrder" in w for w in report.warnings)


def test_parse_requires_cited_case_for_appeal_canon():
    doc = minimal_case()
    doc["winning"]["statement"]["canons"] = [{"class": "appeal-to-prior-case"}]
    frame, report = parse_case_frame(doc)
    assert frame is None
    assert any("citedCaseId" in e for e in report.errors)


def test_parse_collects_multiple_errors_in_one_pass():
    doc = minimal_case()
    del doc["caseData"]["identifier"]
    doc["caseData"]["date"] = "never"
    _, report = parse_case_frame(doc)
    assert len(report.errors) >= 2


def test_round_trip_table1(table1_doc):
    raw = table1_doc["cases"][0]
    frame, report = parse_case_frame(raw)
    assert report.ok
    emitted = case_frame_to_dict(frame)
    assert json.dumps(emitted, sort_keys=True) == json.dumps(raw, sort_keys=True)
    reparsed, report2 = parse_case_frame(emitted)
    assert report2.ok
    assert reparsed == frame


def test_round_trip_preserves_explicit_exhaustiveness():
    doc = minimal_case()
    doc["winning"]["statement"]["exhaustiveness"] = "exhaustive"
    frame, report = parse_case_frame(doc)
    assert report.ok
    out = case_frame_to_dict(frame)
    assert out["winning"]["statement"]["exhaustiveness"] == "exhaustive"


# ---------------------------------------------------------------------------
# problem frame parsing
# ---------------------------------------------------------------------------

def minimal_problem() -> dict:
    return {
        "forum": {"jurisdiction": "Poland", "court": "Supreme Administrative Court"},
        "asOfDate": "2021-01-01",
        "interpretandum": {"expression": "public road"},
    }


def test_parse_problem_ok():
    p, report = parse_problem_frame(minimal_problem())
    assert report.ok
    assert p.forum.jurisdiction == "Poland"
    assert p.as_of_date == dt.date(2021, 1, 1)


def test_problem_requires_forum():
    doc = minimal_problem()
    del doc["forum"]
    p, report = parse_problem_frame(doc)
    assert p is None
    assert any("forum" in e for e in report.errors)


def test_problem_requires_interpretandum_or_facts():
    doc = minimal_problem()
    del doc["interpretandum"]
    p, report = parse_problem_frame(doc)
    assert p is None
    doc["stateOfAffairs"] = ["the fee was paid late"]
    p, report = parse_problem_frame(doc)
    assert report.ok


def test_problem_round_trip(table2_problem):
    emitted = problem_frame_to_dict(table2_problem)
    reparsed, report = parse_problem_frame(emitted)
    assert report.ok
    assert reparsed == table2_problem


# ---------------------------------------------------------------------------
# elements and slots
# ---------------------------------------------------------------------------

def test_frame_elements_cover_similarity_slots(table1_base):
    frame = table1_base.get("II FSK 2051/10")
    elements = frame_elements(frame, table1_base.aliases)
    slots = {ref.slot for ref in elements}
    assert SIMILARITY_SLOTS <= slots
    # normalized values, first occurrence wins, no duplicates
    keys = [ref.key() for ref in elements]
    assert len(keys) == len(set(keys))


def test_frame_elements_deterministic(table1_base):
    frame = table1_base.get("II FSK 2051/10")
    a = frame_elements(frame, table1_base.aliases)
    b = frame_elements(frame, table1_base.aliases)
    assert a == b


def test_filled_slots_tracks_problem_content():
    p, _ = parse_problem_frame(minimal_problem())
    assert Slot.INTERPRETANDUM in filled_slots(p)
    assert Slot.INTERPRETANS not in filled_slots(p)
    assert Slot.SECOND_ORDER_DIRECTIVE not in filled_slots(p)


def test_filled_slots_empty_problem_lists_nothing():
    p = ProblemFrame(
        forum=Forum(jurisdiction="PL", court="NSA"),
        as_of_date=dt.date(2020, 1, 1),
        characteristics=(
            Characteristic(CharacteristicCategory.BRANCH, "tax law"),
        ),
    )
    assert filled_slots(p) == frozenset({Slot.CHARACTERISTIC})
