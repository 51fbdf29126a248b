"""Incident database: reports joined into numbered incidents, instant
faceted search, submission review, namespaced taxonomies, and pre-rendered
static views."""

from .index import Query, SearchResult
from .models import (
    Candidate,
    Citation,
    Classification,
    Incident,
    Report,
    ReportDraft,
    Submission,
    TagDefinition,
    TaxonomyNamespace,
)
from .service import IncidentDatabase

__version__ = "0.1.0"

__all__ = [
    "IncidentDatabase",
    "Query",
    "SearchResult",
    "Report",
    "ReportDraft",
    "Incident",
    "Citation",
    "Candidate",
    "Classification",
    "Submission",
    "TagDefinition",
    "TaxonomyNamespace",
    "__version__",
]
