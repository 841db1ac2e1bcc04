"""Domain exceptions shared across the package."""

from __future__ import annotations


class DomainError(Exception):
    """Base class for all domain-level failures."""


class FrameValidationError(DomainError):
    """A frame document violates the frame invariants."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors) or "invalid frame")
        self.errors = list(errors)


class CaseBaseError(DomainError):
    """A case-base document could not be loaded; carries every problem found."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors) or "invalid case base")
        self.errors = list(errors)


class UnknownIdError(DomainError):
    """A case, session, argument, or assertion id does not resolve."""


class SlotFilledError(DomainError):
    """A transfer targets a problem slot that already holds a value."""


class TransferError(DomainError):
    """A transfer is not allowed (argument not IN, or negative polarity)."""


class InvalidAssertionError(DomainError):
    """A critical-question assertion is malformed or inapplicable."""


class CapExceededError(DomainError):
    """An exhaustive computation was refused because the input is too large."""
