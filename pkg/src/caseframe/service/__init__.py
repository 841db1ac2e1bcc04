"""HTTP facade over the case-frame engine."""

from .app import ServiceConfig, SessionStore, create_app

__all__ = ["ServiceConfig", "SessionStore", "create_app"]
