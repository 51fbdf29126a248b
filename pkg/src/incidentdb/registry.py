"""Incident/report registry: numbering, URL dedupe, membership, citations.

Incident numbers are allocated by the system, strictly increasing, and never
reused, including across retirement and restart. Every report belongs to
exactly one incident; an incident always holds at least one report unless it
is retired in the same operation that empties it.
"""

from __future__ import annotations

from datetime import date

from . import errors
from .models import Citation, Incident, Report, ReportDraft, normalize_url


class IncidentRegistry:
    def __init__(self) -> None:
        self._incidents: dict[int, Incident] = {}
        self._reports: dict[int, Report] = {}
        self._url_to_report: dict[str, int] = {}
        self._retired: set[int] = set()
        self._next_incident = 1
        self._next_report = 1

    # -- lookups ---------------------------------------------------------

    def incident(self, number: int) -> Incident:
        try:
            return self._incidents[number]
        except KeyError:
            raise errors.UnknownIncident(f"incident {number} does not exist") from None

    def report(self, report_id: int) -> Report:
        try:
            return self._reports[report_id]
        except KeyError:
            raise errors.UnknownReport(f"report {report_id} does not exist") from None

    def has_incident(self, number: int) -> bool:
        return number in self._incidents

    def has_url(self, url: str) -> bool:
        return normalize_url(url) in self._url_to_report

    def report_by_url(self, url: str) -> Report | None:
        report_id = self._url_to_report.get(normalize_url(url))
        return self._reports[report_id] if report_id is not None else None

    def incident_numbers(self) -> list[int]:
        return sorted(self._incidents)

    def retired_numbers(self) -> set[int]:
        return set(self._retired)

    def reports(self) -> list[Report]:
        return [self._reports[i] for i in sorted(self._reports)]

    def incident_reports(self, number: int) -> list[Report]:
        incident = self.incident(number)
        return [self._reports[i] for i in sorted(incident.report_ids)]

    @property
    def report_count(self) -> int:
        return len(self._reports)

    @property
    def next_incident_number(self) -> int:
        return self._next_incident

    @property
    def next_report_id(self) -> int:
        return self._next_report

    def earliest_incident_date(self, number: int) -> tuple[date, bool]:
        """Earliest date for the incident and whether it is approximate.

        Uses the minimum report incidentDate; falls back to the earliest
        datePublished (flagged approximate) when no report carries one.
        """
        reports = self.incident_reports(number)
        known = [r.incident_date for r in reports if r.incident_date is not None]
        if known:
            return min(known), False
        return min(r.date_published for r in reports), True

    # -- mutations -------------------------------------------------------

    def create_incident(
        self,
        draft: ReportDraft,
        submitter: str,
        number: int | None = None,
        report_id: int | None = None,
    ) -> tuple[Incident, Report]:
        """Allocate the next incident number and store the founding report.

        Explicit `number`/`report_id` are only passed by log replay and bulk
        ingest and must match what allocation would produce.
        """
        normalized = normalize_url(draft.url)
        if normalized in self._url_to_report:
            raise errors.DuplicateUrl(f"url already stored: {normalized}")
        number = self._allocate_incident(number)
        incident = Incident(number=number, first_submitter=submitter)
        self._incidents[number] = incident
        report = self._store_report(draft, number, report_id)
        incident.report_ids.add(report.id)
        return incident, report

    def attach_report(
        self, number: int, draft: ReportDraft, report_id: int | None = None
    ) -> Report:
        incident = self.incident(number)
        normalized = normalize_url(draft.url)
        if normalized in self._url_to_report:
            raise errors.DuplicateUrl(f"url already stored: {normalized}")
        report = self._store_report(draft, number, report_id)
        incident.report_ids.add(report.id)
        return report

    def remove_report(self, report_id: int, retire_source: bool = False) -> Report:
        report = self.report(report_id)
        incident = self._incidents[report.incident_number]
        if len(incident.report_ids) == 1 and not retire_source:
            raise errors.WouldOrphanIncident(
                f"incident {incident.number} would be left without reports"
            )
        incident.report_ids.discard(report_id)
        del self._reports[report_id]
        del self._url_to_report[normalize_url(report.url)]
        if not incident.report_ids:
            self._retire(incident.number)
        return report

    def reassign_report(
        self, report_id: int, target_number: int, retire_source: bool = False
    ) -> Report:
        report = self.report(report_id)
        target = self.incident(target_number)
        source = self._incidents[report.incident_number]
        if source.number == target.number:
            return report
        if len(source.report_ids) == 1 and not retire_source:
            raise errors.WouldOrphanIncident(
                f"incident {source.number} would be left without reports"
            )
        source.report_ids.discard(report_id)
        updated = report.with_incident(target.number)
        self._reports[report_id] = updated
        target.report_ids.add(report_id)
        if not source.report_ids:
            self._retire(source.number)
        return updated

    def cite(self, number: int, retrieved_date: date) -> Citation:
        incident = self.incident(number)
        return Citation(
            incident_number=incident.number,
            retrieved_date=retrieved_date,
            report_count=incident.report_count,
        )

    def note_retired(self, number: int) -> None:
        """Record a retired number during replay so it is never reallocated."""
        self._retired.add(number)
        self._next_incident = max(self._next_incident, number + 1)

    # -- internals -------------------------------------------------------

    def _allocate_incident(self, number: int | None) -> int:
        if number is None:
            number = self._next_incident
        if number in self._incidents or number in self._retired:
            raise errors.StorageError(f"incident number {number} already used")
        if number != self._next_incident:
            raise errors.StorageError(
                f"incident number {number} breaks dense allocation "
                f"(expected {self._next_incident})"
            )
        self._next_incident = number + 1
        return number

    def _store_report(
        self, draft: ReportDraft, number: int, report_id: int | None
    ) -> Report:
        if report_id is None:
            report_id = self._next_report
        if report_id in self._reports:
            raise errors.DuplicateReport(f"report id {report_id} already present")
        self._next_report = max(self._next_report, report_id + 1)
        report = Report(
            id=report_id,
            incident_number=number,
            title=draft.title,
            text=draft.text,
            url=normalize_url(draft.url),
            source=draft.source,
            authors=draft.authors,
            submitters=draft.submitters,
            date_published=draft.date_published or date.today(),
            date_submitted=draft.date_submitted or date.today(),
            incident_date=draft.incident_date,
        )
        self._reports[report_id] = report
        self._url_to_report[report.url] = report_id
        return report

    def _retire(self, number: int) -> None:
        del self._incidents[number]
        self._retired.add(number)
