"""Error types raised by the database modules.

Each maps to exactly one (HTTP status, code) pair in the API layer; the
mapping table lives in incidentdb.api and is enumerated by tests.
"""

from __future__ import annotations


class IncidentDbError(Exception):
    """Base class for all database errors."""


class DuplicateReport(IncidentDbError):
    pass


class UnknownReport(IncidentDbError):
    pass


class DuplicateUrl(IncidentDbError):
    pass


class UnknownIncident(IncidentDbError):
    pass


class WouldOrphanIncident(IncidentDbError):
    pass


class DuplicateNamespace(IncidentDbError):
    pass


class InvalidName(IncidentDbError):
    pass


class UnknownNamespace(IncidentDbError):
    pass


class UnknownTag(IncidentDbError):
    pass


class DuplicateClassification(IncidentDbError):
    pass


class UnknownClassification(IncidentDbError):
    pass


class ValidationError(IncidentDbError):
    """Field-level validation failure; `field_errors` names the bad fields."""

    def __init__(self, field_errors: list[str], message: str | None = None):
        self.field_errors = list(field_errors)
        super().__init__(message or f"invalid fields: {', '.join(self.field_errors)}")


class UnknownSubmission(IncidentDbError):
    pass


class AlreadyDecided(IncidentDbError):
    pass


class UnknownView(IncidentDbError):
    pass


class StorageError(IncidentDbError):
    pass


class CorruptLog(IncidentDbError):
    pass


class IngestError(IncidentDbError):
    """Bulk-load data error; the message names the offending line."""

