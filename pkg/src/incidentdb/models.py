"""Domain records and their JSON wire forms.

Wire field names (camelCase) are the canonical schema used by the log file,
the ingest format, the API, and the static views; dates are ISO-8601 strings.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import date
from typing import Any
from urllib.parse import parse_qsl, urlencode, urlsplit, urlunsplit

__all__ = [
    "ReportDraft",
    "Report",
    "Incident",
    "Citation",
    "TagDefinition",
    "TaxonomyNamespace",
    "Classification",
    "Candidate",
    "Submission",
    "normalize_url",
    "parse_draft",
    "parse_iso_date",
]

# Query parameters stripped during URL normalization (tracking noise only).
TRACKING_PARAMS = frozenset(
    {
        "utm_source",
        "utm_medium",
        "utm_campaign",
        "utm_term",
        "utm_content",
        "gclid",
        "fbclid",
        "igshid",
        "mc_cid",
        "mc_eid",
        "ref",
    }
)


def normalize_url(url: str) -> str:
    """Canonical URL for duplicate detection.

    Lowercases scheme and host, strips the fragment and pinned tracking
    query parameters, and trims a trailing slash from the path.
    """
    parts = urlsplit(url.strip())
    scheme = parts.scheme.lower()
    netloc = parts.netloc.lower()
    path = parts.path.rstrip("/")
    query_pairs = [
        (k, v) for k, v in parse_qsl(parts.query, keep_blank_values=True)
        if k.lower() not in TRACKING_PARAMS
    ]
    return urlunsplit((scheme, netloc, path, urlencode(query_pairs), ""))


def parse_iso_date(value: Any) -> date:
    if isinstance(value, date):
        return value
    return date.fromisoformat(value)


@dataclass(frozen=True)
class ReportDraft:
    """All Report fields except the system-assigned id and incident number."""

    title: str
    text: str
    url: str
    source: str
    authors: tuple[str, ...] = ()
    submitters: tuple[str, ...] = ()
    date_published: date | None = None
    date_submitted: date | None = None
    incident_date: date | None = None

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "text": self.text,
            "url": self.url,
            "source": self.source,
            "authors": list(self.authors),
            "submitters": list(self.submitters),
            "datePublished": _date_str(self.date_published),
            "dateSubmitted": _date_str(self.date_submitted),
            "incidentDate": _date_str(self.incident_date),
        }


_DRAFT_DATE_FIELDS = (
    ("datePublished", "date_published"),
    ("dateSubmitted", "date_submitted"),
    ("incidentDate", "incident_date"),
)


def parse_draft(raw: dict[str, Any]) -> tuple[ReportDraft, list[str]]:
    """Build a draft from a wire document, collecting per-field errors.

    Returns the best-effort draft plus the names of unparseable fields
    (bad dates, non-list authors, and so on). Presence checks are the
    submission pipeline's job, not this parser's.
    """
    errors: list[str] = []

    def _text_field(name: str) -> str:
        value = raw.get(name, "")
        if value is None:
            return ""
        if not isinstance(value, str):
            errors.append(name)
            return ""
        return value

    def _list_field(name: str) -> tuple[str, ...]:
        value = raw.get(name, [])
        if value is None:
            return ()
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            errors.append(name)
            return ()
        return tuple(value)

    dates: dict[str, date | None] = {}
    for wire_name, attr in _DRAFT_DATE_FIELDS:
        value = raw.get(wire_name)
        if value in (None, ""):
            dates[attr] = None
            continue
        try:
            dates[attr] = parse_iso_date(value)
        except (ValueError, TypeError):
            errors.append(wire_name)
            dates[attr] = None

    draft = ReportDraft(
        title=_text_field("title"),
        text=_text_field("text"),
        url=_text_field("url"),
        source=_text_field("source"),
        authors=_list_field("authors"),
        submitters=_list_field("submitters"),
        date_published=dates["date_published"],
        date_submitted=dates["date_submitted"],
        incident_date=dates["incident_date"],
    )
    return draft, errors


@dataclass(frozen=True)
class Report:
    id: int
    incident_number: int
    title: str
    text: str
    url: str
    source: str
    authors: tuple[str, ...]
    submitters: tuple[str, ...]
    date_published: date
    date_submitted: date
    incident_date: date | None

    def with_incident(self, number: int) -> "Report":
        return replace(self, incident_number=number)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "incidentNumber": self.incident_number,
            "title": self.title,
            "text": self.text,
            "url": self.url,
            "source": self.source,
            "authors": list(self.authors),
            "submitters": list(self.submitters),
            "datePublished": _date_str(self.date_published),
            "dateSubmitted": _date_str(self.date_submitted),
            "incidentDate": _date_str(self.incident_date),
        }

    @classmethod
    def from_json_dict(cls, raw: dict[str, Any]) -> "Report":
        return cls(
            id=raw["id"],
            incident_number=raw["incidentNumber"],
            title=raw["title"],
            text=raw["text"],
            url=raw["url"],
            source=raw["source"],
            authors=tuple(raw.get("authors", ())),
            submitters=tuple(raw.get("submitters", ())),
            date_published=parse_iso_date(raw["datePublished"]),
            date_submitted=parse_iso_date(raw["dateSubmitted"]),
            incident_date=(
                parse_iso_date(raw["incidentDate"]) if raw.get("incidentDate") else None
            ),
        )


@dataclass
class Incident:
    """Numbered, untitled join of one or more reports."""

    number: int
    first_submitter: str
    report_ids: set[int] = field(default_factory=set)

    @property
    def report_count(self) -> int:
        return len(self.report_ids)


@dataclass(frozen=True)
class Citation:
    incident_number: int
    retrieved_date: date
    report_count: int

    @property
    def citation_string(self) -> str:
        noun = "report" if self.report_count == 1 else "reports"
        return (
            f"AI Incident Database, Incident {self.incident_number} "
            f"({self.report_count} {noun}), retrieved {self.retrieved_date.isoformat()}"
        )


@dataclass(frozen=True)
class TagDefinition:
    name: str
    description: str = ""


@dataclass(frozen=True)
class TaxonomyNamespace:
    name: str
    owner: str
    description: str
    tags: tuple[TagDefinition, ...]

    def tag_names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.tags)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "owner": self.owner,
            "description": self.description,
            "tags": [{"name": t.name, "description": t.description} for t in self.tags],
        }

    @classmethod
    def from_json_dict(cls, raw: dict[str, Any]) -> "TaxonomyNamespace":
        return cls(
            name=raw["name"],
            owner=raw.get("owner", ""),
            description=raw.get("description", ""),
            tags=tuple(
                TagDefinition(t["name"], t.get("description", ""))
                for t in raw.get("tags", ())
            ),
        )


@dataclass(frozen=True)
class Classification:
    incident_number: int
    namespace: str
    tag: str
    classifier: str
    date: date

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "incidentNumber": self.incident_number,
            "namespace": self.namespace,
            "tag": self.tag,
            "classifier": self.classifier,
            "date": self.date.isoformat(),
        }

    @classmethod
    def from_json_dict(cls, raw: dict[str, Any]) -> "Classification":
        return cls(
            incident_number=raw["incidentNumber"],
            namespace=raw["namespace"],
            tag=raw["tag"],
            classifier=raw.get("classifier", ""),
            date=parse_iso_date(raw["date"]),
        )


@dataclass(frozen=True)
class Candidate:
    """Resolution suggestion: an existing incident and its similarity score."""

    incident_number: int
    score: float

    def to_json_dict(self) -> dict[str, Any]:
        return {"incidentNumber": self.incident_number, "score": self.score}


PENDING = "pending"
ACCEPTED = "accepted"
REJECTED = "rejected"


@dataclass
class Submission:
    id: int
    draft: ReportDraft
    submitter: str
    date_submitted: date
    state: str = PENDING
    candidates: tuple[Candidate, ...] = ()
    resolution: int | str | None = None
    incident_number: int | None = None
    report_id: int | None = None
    reviewer: str | None = None
    reason: str | None = None

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "draft": self.draft.to_json_dict(),
            "submitter": self.submitter,
            "dateSubmitted": self.date_submitted.isoformat(),
            "state": self.state,
            "candidates": [c.to_json_dict() for c in self.candidates],
            "resolution": self.resolution,
            "incidentNumber": self.incident_number,
            "reportId": self.report_id,
            "reviewer": self.reviewer,
            "reason": self.reason,
        }


def _date_str(value: date | None) -> str | None:
    return value.isoformat() if value is not None else None
