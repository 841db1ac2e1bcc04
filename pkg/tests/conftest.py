import copy
import json
import pathlib

import pytest

from caseframe import load_case_base, parse_problem_frame

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

# acceptance results collected by tests/test_acceptance.py, printed at the end
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def load_fixture(name: str) -> dict:
    with open(FIXTURES / f"{name}.json", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture
def table1_doc():
    return load_fixture("table1")


@pytest.fixture
def table2_doc():
    return load_fixture("table2")


@pytest.fixture
def table1_base():
    return load_case_base(FIXTURES / "table1.json")


@pytest.fixture
def table2_base():
    return load_case_base(FIXTURES / "table2.json")


@pytest.fixture
def chain_base():
    return load_case_base(FIXTURES / "chain.json")


@pytest.fixture
def diamond_base():
    return load_case_base(FIXTURES / "diamond.json")


def problem(name: str):
    frame, report = parse_problem_frame(load_fixture(name))
    assert report.ok, report.errors
    return frame


@pytest.fixture
def table1_problem():
    return problem("problem_table1")


@pytest.fixture
def table2_problem():
    return problem("problem_table2")


def deep(doc: dict) -> dict:
    """Mutable copy for fixture-tampering tests."""
    return copy.deepcopy(doc)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[name]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{name} {verdict}: {detail}")
