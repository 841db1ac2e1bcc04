"""Request and response bodies for the HTTP API.

Case and problem documents travel as plain interchange-format objects and
are validated by the core parsers, so their rules live in one place; the
models here cover the envelopes around them.
"""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from ..frames import CaseFrame


class CaseSummary(BaseModel):
    identifier: str
    jurisdiction: str
    court: str
    date: str
    procedural: str
    interpretandum: str
    interpretans: str
    canonClasses: list[str]
    directiveClass: str | None = None

    @classmethod
    def from_frame(cls, frame: CaseFrame) -> "CaseSummary":
        return cls(
            identifier=frame.identifier,
            jurisdiction=frame.case_data.jurisdiction,
            court=frame.case_data.court,
            date=frame.case_data.date.isoformat(),
            procedural=frame.case_data.procedural.value,
            interpretandum=frame.winning.interpretandum.expression,
            interpretans=frame.winning.statement.interpretans,
            canonClasses=[c.canon_class.value for c in frame.winning.statement.canons],
            directiveClass=(
                frame.second_order.directive_class if frame.second_order else None
            ),
        )


class SessionRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    problem: dict[str, Any]


class AssertionRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    cq: str
    target_argument_id: str = Field(default="", alias="targetArgumentId")
    payload: str = ""
    counter_to: str | None = Field(default=None, alias="counterTo")


class TransferRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    argument_id: str = Field(alias="argumentId")


class LinesResponse(BaseModel):
    lines: list[list[str]]


class ErrorResponse(BaseModel):
    errors: list[str]
