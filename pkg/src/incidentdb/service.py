"""The database service: one object owning log, registry, taxonomy,
submissions, and search index.

Every mutation is validated, appended to the log, and then applied to the
in-memory stores through the same `_apply` path replay uses, so a restart
reproduces state exactly. Mutations serialize through the writer side of a
reader/writer lock; reads run concurrently against published state.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import replace
from pathlib import Path
from typing import Any

from filelock import FileLock, Timeout

from . import errors
from .analysis import Analyzer
from .index import METADATA_FACETS, InvertedIndex, Query, SearchResult
from .linkage import DEFAULT_K, DEFAULT_THRESHOLD, CandidateResolver
from .models import (
    ACCEPTED,
    PENDING,
    REJECTED,
    Candidate,
    Classification,
    Report,
    ReportDraft,
    Submission,
    TaxonomyNamespace,
    parse_draft,
    parse_iso_date,
)
from .locks import RWLock
from .persistence import LogFile
from .registry import IncidentRegistry
from .submissions import SubmissionQueue, validate_draft
from .taxonomy import TaxonomyStore

LOG_FILENAME = "log.jsonl"
LOCK_FILENAME = "writer.lock"
VIEWS_DIRNAME = "views"


class IncidentDatabase:
    def __init__(
        self,
        data_dir: Path | str,
        fsync: bool = True,
        stopwords_path: Path | str | None = None,
        resolver_threshold: float = DEFAULT_THRESHOLD,
    ):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.analyzer = Analyzer(stopwords_path) if stopwords_path else Analyzer()
        self.registry = IncidentRegistry()
        self.taxonomy = TaxonomyStore()
        self.queue = SubmissionQueue()
        self.index = InvertedIndex(self.analyzer)
        self.resolver = CandidateResolver(self.analyzer, threshold=resolver_threshold)
        self.log = LogFile(self.data_dir / LOG_FILENAME, fsync=fsync)
        self._rw = RWLock()
        self._flock = FileLock(str(self.data_dir / LOCK_FILENAME))
        self.read_count = 0  # instrumented database reads, used by view tests
        self.recovery_warning: str | None = None

    # -- lifecycle ---------------------------------------------------------

    @classmethod
    def open(cls, data_dir: Path | str, **kwargs) -> "IncidentDatabase":
        db = cls(data_dir, **kwargs)
        try:
            db._flock.acquire(timeout=5)
        except Timeout:
            raise errors.StorageError(
                f"data dir {db.data_dir} is in use by another writer"
            ) from None
        records = db.log.open()
        db.recovery_warning = db.log.recovery_warning
        for record in records:
            db._apply(record.kind, record.payload)
        return db

    def close(self) -> None:
        self.log.close()
        if self._flock.is_locked:
            self._flock.release()

    def __enter__(self) -> "IncidentDatabase":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    @property
    def last_sequence(self) -> int:
        return self.log.last_sequence

    @property
    def views_dir(self) -> Path:
        return self.data_dir / VIEWS_DIRNAME

    # -- registry mutations --------------------------------------------------

    def create_incident(self, draft: ReportDraft, submitter: str) -> Report:
        with self._rw.write():
            draft = _with_defaults(draft)
            if self.registry.has_url(draft.url):
                raise errors.DuplicateUrl(f"url already stored: {draft.url}")
            payload = {
                "number": self.registry.next_incident_number,
                "firstSubmitter": submitter,
                "report": self._draft_record(draft, self.registry.next_incident_number),
            }
            self.log.append("incident-created", payload)
            return self._apply("incident-created", payload)

    def attach_report(self, number: int, draft: ReportDraft) -> Report:
        with self._rw.write():
            draft = _with_defaults(draft)
            self.registry.incident(number)
            if self.registry.has_url(draft.url):
                raise errors.DuplicateUrl(f"url already stored: {draft.url}")
            payload = {"report": self._draft_record(draft, number)}
            self.log.append("report-added", payload)
            return self._apply("report-added", payload)

    def remove_report(self, report_id: int, retire_source: bool = False) -> None:
        with self._rw.write():
            report = self.registry.report(report_id)
            incident = self.registry.incident(report.incident_number)
            if incident.report_count == 1 and not retire_source:
                raise errors.WouldOrphanIncident(
                    f"incident {incident.number} would be left without reports"
                )
            payload = {"reportId": report_id, "retireSource": retire_source}
            self.log.append("report-removed", payload)
            self._apply("report-removed", payload)

    def reassign_report(
        self, report_id: int, target_number: int, retire_source: bool = False
    ) -> Report:
        with self._rw.write():
            report = self.registry.report(report_id)
            self.registry.incident(target_number)
            source = self.registry.incident(report.incident_number)
            if (
                source.number != target_number
                and source.report_count == 1
                and not retire_source
            ):
                raise errors.WouldOrphanIncident(
                    f"incident {source.number} would be left without reports"
                )
            payload = {
                "reportId": report_id,
                "target": target_number,
                "retireSource": retire_source,
            }
            self.log.append("report-reassigned", payload)
            return self._apply("report-reassigned", payload)

    # -- taxonomy mutations ----------------------------------------------------

    def register_namespace(self, definition: TaxonomyNamespace) -> None:
        with self._rw.write():
            if self.taxonomy.has_namespace(definition.name):
                raise errors.DuplicateNamespace(
                    f"namespace {definition.name!r} already registered"
                )
            _validate_namespace_name(definition)
            payload = definition.to_json_dict()
            self.log.append("namespace-registered", payload)
            self._apply("namespace-registered", payload)

    def classify(
        self,
        incident_number: int,
        namespace: str,
        tag: str,
        classifier: str,
        when: _dt.date | None = None,
    ) -> Classification:
        with self._rw.write():
            self.registry.incident(incident_number)
            definition = self.taxonomy.namespace(namespace)
            if tag not in definition.tag_names():
                raise errors.UnknownTag(
                    f"tag {tag!r} not defined in namespace {namespace!r}"
                )
            if self.taxonomy.has_classification(incident_number, namespace, tag):
                raise errors.DuplicateClassification(
                    f"incident {incident_number} already classified {namespace}:{tag}"
                )
            payload = Classification(
                incident_number=incident_number,
                namespace=namespace,
                tag=tag,
                classifier=classifier,
                date=when or _dt.date.today(),
            ).to_json_dict()
            self.log.append("classification-added", payload)
            return self._apply("classification-added", payload)

    def declassify(self, incident_number: int, namespace: str, tag: str) -> None:
        with self._rw.write():
            if not self.taxonomy.has_classification(incident_number, namespace, tag):
                raise errors.UnknownClassification(
                    f"incident {incident_number} is not classified {namespace}:{tag}"
                )
            payload = {
                "incidentNumber": incident_number,
                "namespace": namespace,
                "tag": tag,
            }
            self.log.append("classification-removed", payload)
            self._apply("classification-removed", payload)

    # -- submission pipeline -----------------------------------------------------

    def submit(self, draft: ReportDraft, submitter: str) -> Submission:
        with self._rw.write():
            validate_draft(draft, submitter)
            if self.registry.has_url(draft.url):
                raise errors.DuplicateUrl(f"url already in the database: {draft.url}")
            draft = _with_defaults(draft)
            if not draft.submitters:
                draft = replace(draft, submitters=(submitter,))
            candidates = self.resolver.resolve(self.registry, draft)
            submission = Submission(
                id=self.queue.next_id,
                draft=draft,
                submitter=submitter,
                date_submitted=draft.date_submitted or _dt.date.today(),
                state=PENDING,
                candidates=tuple(candidates),
            )
            payload = submission.to_json_dict()
            self.log.append("submission-created", payload)
            return self._apply("submission-created", payload)

    def accept(
        self, submission_id: int, resolution: int | str, reviewer: str
    ) -> Report:
        with self._rw.write():
            submission = self.queue.get(submission_id)
            if submission.state != PENDING:
                raise errors.AlreadyDecided(
                    f"submission {submission_id} is already {submission.state}"
                )
            if resolution != "new":
                self.registry.incident(int(resolution))
            if self.registry.has_url(submission.draft.url):
                raise errors.DuplicateUrl(
                    f"url already in the database: {submission.draft.url}"
                )
            if resolution == "new":
                number = self.registry.next_incident_number
            else:
                number = int(resolution)
            payload = {
                "submissionId": submission_id,
                "decision": ACCEPTED,
                "resolution": "new" if resolution == "new" else number,
                "reviewer": reviewer,
                "incidentNumber": number,
                "firstSubmitter": submission.submitter,
                "report": self._draft_record(submission.draft, number),
            }
            self.log.append("submission-decided", payload)
            return self._apply("submission-decided", payload)

    def reject(self, submission_id: int, reason: str, reviewer: str) -> Submission:
        with self._rw.write():
            submission = self.queue.get(submission_id)
            if submission.state != PENDING:
                raise errors.AlreadyDecided(
                    f"submission {submission_id} is already {submission.state}"
                )
            if not reason.strip():
                raise errors.ValidationError(["reason"])
            payload = {
                "submissionId": submission_id,
                "decision": REJECTED,
                "reason": reason,
                "reviewer": reviewer,
            }
            self.log.append("submission-decided", payload)
            return self._apply("submission-decided", payload)

    # -- compaction ---------------------------------------------------------------

    def compact(self) -> None:
        """Rewrite the log as a minimal snapshot of current entities."""
        with self._rw.write():
            self.log.compact(self._snapshot_records())

    def _snapshot_records(self):
        for definition in self.taxonomy.namespaces():
            yield "namespace-registered", definition.to_json_dict()
        live = set(self.registry.incident_numbers())
        retired = self.registry.retired_numbers()
        for number in sorted(live | retired):
            if number in retired:
                yield "incident-retired", {"number": number}
                continue
            incident = self.registry.incident(number)
            reports = self.registry.incident_reports(number)
            first, rest = reports[0], reports[1:]
            yield "incident-created", {
                "number": number,
                "firstSubmitter": incident.first_submitter,
                "report": first.to_json_dict(),
            }
            for report in rest:
                yield "report-added", {"report": report.to_json_dict()}
        for classification in self.taxonomy.classifications():
            yield "classification-added", classification.to_json_dict()
        for submission in self.queue.all_submissions():
            yield "submission-created", submission.to_json_dict()

    # -- replay / state transitions --------------------------------------------------

    def _apply(self, kind: str, payload: dict[str, Any]):
        if kind == "incident-created":
            report_doc = payload["report"]
            draft, report_id, number = _record_to_draft(report_doc)
            incident, report = self.registry.create_incident(
                draft, payload["firstSubmitter"], number=number, report_id=report_id
            )
            self.index.add_report(report, self._facets_for(report))
            return report
        if kind == "report-added":
            draft, report_id, number = _record_to_draft(payload["report"])
            report = self.registry.attach_report(number, draft, report_id=report_id)
            self.index.add_report(report, self._facets_for(report))
            return report
        if kind == "report-removed":
            report = self.registry.report(payload["reportId"])
            source_number = report.incident_number
            self.registry.remove_report(payload["reportId"], payload["retireSource"])
            self.index.remove_report(payload["reportId"])
            if not self.registry.has_incident(source_number):
                self.taxonomy.drop_incident(source_number)
            return None
        if kind == "report-reassigned":
            source_number = self.registry.report(payload["reportId"]).incident_number
            report = self.registry.reassign_report(
                payload["reportId"], payload["target"], payload["retireSource"]
            )
            if not self.registry.has_incident(source_number):
                self.taxonomy.drop_incident(source_number)
            self.index.update_facets(report.id, self._facets_for(report))
            return report
        if kind == "incident-retired":
            self.registry.note_retired(payload["number"])
            return None
        if kind == "namespace-registered":
            definition = TaxonomyNamespace.from_json_dict(payload)
            self.taxonomy.register(definition)
            self.index.register_facet_key(definition.name)
            return None
        if kind == "classification-added":
            classification = Classification.from_json_dict(payload)
            self.taxonomy.classify(
                classification.incident_number,
                classification.namespace,
                classification.tag,
                classification.classifier,
                classification.date,
            )
            self._refresh_incident_facets(classification.incident_number)
            return classification
        if kind == "classification-removed":
            self.taxonomy.declassify(
                payload["incidentNumber"], payload["namespace"], payload["tag"]
            )
            self._refresh_incident_facets(payload["incidentNumber"])
            return None
        if kind == "submission-created":
            return self._restore_submission(payload)
        if kind == "submission-decided":
            if payload["decision"] == REJECTED:
                return self.queue.mark_rejected(
                    payload["submissionId"], payload["reason"], payload["reviewer"]
                )
            report_doc = payload["report"]
            draft, report_id, number = _record_to_draft(report_doc)
            if payload["resolution"] == "new":
                _, report = self.registry.create_incident(
                    draft, payload["firstSubmitter"], number=number, report_id=report_id
                )
            else:
                report = self.registry.attach_report(number, draft, report_id=report_id)
            self.index.add_report(report, self._facets_for(report))
            self.queue.mark_accepted(
                payload["submissionId"],
                payload["resolution"],
                payload["reviewer"],
                report.id,
                report.incident_number,
            )
            return report
        raise errors.StorageError(f"unknown record kind {kind!r}")

    def _restore_submission(self, payload: dict[str, Any]) -> Submission:
        draft, _ = parse_draft(payload["draft"])
        submission = self.queue.add(
            draft,
            payload["submitter"],
            tuple(
                Candidate(c["incidentNumber"], c["score"])
                for c in payload.get("candidates", ())
            ),
            submission_id=payload["id"],
        )
        submission.date_submitted = parse_iso_date(payload["dateSubmitted"])
        # Snapshot records carry terminal states verbatim.
        submission.state = payload.get("state", PENDING)
        submission.resolution = payload.get("resolution")
        submission.incident_number = payload.get("incidentNumber")
        submission.report_id = payload.get("reportId")
        submission.reviewer = payload.get("reviewer")
        submission.reason = payload.get("reason")
        return submission

    # -- reads -------------------------------------------------------------------

    def search(self, query: Query) -> SearchResult:
        with self._rw.read():
            self.read_count += 1
            return self.index.search(query)

    def search_document(self, query: Query) -> dict[str, Any]:
        """Search result enriched with report metadata, wire-shaped."""
        with self._rw.read():
            self.read_count += 1
            result = self.index.search(query)
            hits = []
            for hit in result.hits:
                report = self.registry.report(hit.report_id)
                doc = report.to_json_dict()
                del doc["text"]
                doc["reportId"] = doc.pop("id")
                doc["score"] = hit.score
                doc["snippets"] = [
                    {"field": s.field, "fragment": s.fragment} for s in hit.snippets
                ]
                hits.append(doc)
            return {
                "totalHits": result.total_hits,
                "page": query.page,
                "pageSize": query.page_size,
                "hits": hits,
                "facetCounts": result.facet_counts,
                "elapsedMs": result.elapsed_ms,
                "warnings": list(result.warnings),
            }

    def incident_document(
        self, number: int, retrieved_date: _dt.date | None = None
    ) -> dict[str, Any]:
        with self._rw.read():
            self.read_count += 1
            incident = self.registry.incident(number)
            earliest, approximate = self.registry.earliest_incident_date(number)
            citation = self.registry.cite(number, retrieved_date or _dt.date.today())
            return {
                "number": incident.number,
                "firstSubmitter": incident.first_submitter,
                "earliestIncidentDate": earliest.isoformat(),
                "earliestDateIsApproximate": approximate,
                "reportCount": incident.report_count,
                "reports": [r.to_json_dict() for r in self.registry.incident_reports(number)],
                "classifications": [
                    c.to_json_dict() for c in self.taxonomy.for_incident(number)
                ],
                "citationString": citation.citation_string,
            }

    def resolve_candidates(self, draft: ReportDraft, k: int = DEFAULT_K) -> list[Candidate]:
        with self._rw.read():
            self.read_count += 1
            return self.resolver.resolve(self.registry, draft, k)

    def reports_snapshot(self) -> list[Report]:
        """All stored reports, id-ascending; one counted database read."""
        with self._rw.read():
            self.read_count += 1
            return self.registry.reports()

    def pending_submissions(self, page: int = 1, page_size: int = 50) -> list[Submission]:
        with self._rw.read():
            self.read_count += 1
            return self.queue.pending(page, page_size)

    def submission_document(self, submission_id: int) -> dict[str, Any]:
        with self._rw.read():
            self.read_count += 1
            return self.queue.get(submission_id).to_json_dict()

    # -- helpers ------------------------------------------------------------------

    def _facets_for(self, report: Report) -> dict[str, tuple[str, ...]]:
        facets: dict[str, tuple[str, ...]] = {
            "source": (report.source,),
            "author": report.authors,
            "submitter": report.submitters,
            "incidentNumber": (str(report.incident_number),),
        }
        for namespace, tags in self.taxonomy.tags_for_incident(
            report.incident_number
        ).items():
            facets[namespace] = tuple(sorted(tags))
        return facets

    def _refresh_incident_facets(self, incident_number: int) -> None:
        if not self.registry.has_incident(incident_number):
            return
        for report in self.registry.incident_reports(incident_number):
            self.index.update_facets(report.id, self._facets_for(report))

    def _draft_record(self, draft: ReportDraft, number: int) -> dict[str, Any]:
        doc = draft.to_json_dict()
        doc["id"] = self.registry.next_report_id
        doc["incidentNumber"] = number
        if doc["datePublished"] is None:
            doc["datePublished"] = _dt.date.today().isoformat()
        if doc["dateSubmitted"] is None:
            doc["dateSubmitted"] = _dt.date.today().isoformat()
        return doc


def _with_defaults(draft: ReportDraft) -> ReportDraft:
    today = _dt.date.today()
    return replace(
        draft,
        date_published=draft.date_published or today,
        date_submitted=draft.date_submitted or today,
    )


def _record_to_draft(doc: dict[str, Any]) -> tuple[ReportDraft, int, int]:
    report = Report.from_json_dict(doc)
    draft = ReportDraft(
        title=report.title,
        text=report.text,
        url=report.url,
        source=report.source,
        authors=report.authors,
        submitters=report.submitters,
        date_published=report.date_published,
        date_submitted=report.date_submitted,
        incident_date=report.incident_date,
    )
    return draft, report.id, report.incident_number


def _validate_namespace_name(definition: TaxonomyNamespace) -> None:
    name = definition.name
    if not name or ":" in name:
        raise errors.InvalidName(f"namespace name {name!r} is empty or contains ':'")
    if name in METADATA_FACETS:
        raise errors.InvalidName(f"namespace name {name!r} collides with a metadata facet")
