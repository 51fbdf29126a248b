"""Bulk loading of report corpora and taxonomy definition files."""

from __future__ import annotations

import json
from pathlib import Path

from . import errors
from .models import TaxonomyNamespace, parse_draft, parse_iso_date
from .service import IncidentDatabase


def ingest_corpus(db: IncidentDatabase, path: Path | str) -> int:
    """Load a report-per-line JSONL corpus, creating incidents as numbered.

    Each document carries the report draft fields plus an explicit
    incidentNumber column. Numbers must be dense from 1, and the first
    report of each incident must appear before the first report of any
    higher-numbered incident; the first report's first submitter gets the
    incident credit.
    """
    path = Path(path)
    count = 0
    with open(path, encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                document = json.loads(line)
            except ValueError as exc:
                raise errors.IngestError(f"line {line_number}: invalid JSON ({exc})")
            if not isinstance(document, dict):
                raise errors.IngestError(f"line {line_number}: expected an object")
            number = document.get("incidentNumber")
            if not isinstance(number, int) or number < 1:
                raise errors.IngestError(
                    f"line {line_number}: incidentNumber must be a positive integer"
                )
            draft, field_errors = parse_draft(document)
            if field_errors:
                raise errors.IngestError(
                    f"line {line_number}: bad fields: {', '.join(field_errors)}"
                )
            missing = [
                name
                for name, value in (
                    ("title", draft.title),
                    ("text", draft.text),
                    ("url", draft.url),
                    ("source", draft.source),
                )
                if not value.strip()
            ]
            if draft.date_published is None:
                missing.append("datePublished")
            if missing:
                raise errors.IngestError(
                    f"line {line_number}: missing fields: {', '.join(missing)}"
                )
            submitter = draft.submitters[0] if draft.submitters else "anonymous"
            try:
                if db.registry.has_incident(number):
                    db.attach_report(number, draft)
                elif number == db.registry.next_incident_number:
                    db.create_incident(draft, submitter)
                else:
                    raise errors.IngestError(
                        f"line {line_number}: incident {number} out of order "
                        f"(next new incident must be {db.registry.next_incident_number})"
                    )
            except errors.DuplicateUrl as exc:
                raise errors.IngestError(f"line {line_number}: {exc}")
            count += 1
    return count


def load_taxonomies(db: IncidentDatabase, path: Path | str) -> list[str]:
    """Load namespace definitions (one JSON document per line).

    A document may carry an optional `classifications` list; each entry is
    applied to its incident after the namespace registers.
    """
    path = Path(path)
    names: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                document = json.loads(line)
            except ValueError as exc:
                raise errors.IngestError(f"line {line_number}: invalid JSON ({exc})")
            definition = TaxonomyNamespace.from_json_dict(document)
            db.register_namespace(definition)
            names.append(definition.name)
            for entry in document.get("classifications", ()):
                db.classify(
                    entry["incidentNumber"],
                    definition.name,
                    entry["tag"],
                    entry.get("classifier", definition.owner),
                    parse_iso_date(entry["date"]) if entry.get("date") else None,
                )
    return names
