"""Submission queue: validation, pending review, terminal decisions."""

from __future__ import annotations

from datetime import date
from urllib.parse import urlsplit

from . import errors
from .models import ACCEPTED, PENDING, REJECTED, Candidate, ReportDraft, Submission


def validate_draft(draft: ReportDraft, submitter: str = "present") -> None:
    """Check required submission fields; raise ValidationError naming them."""
    missing: list[str] = []
    if not draft.title.strip():
        missing.append("title")
    if not draft.text.strip():
        missing.append("text")
    if not draft.source.strip():
        missing.append("source")
    if draft.date_published is None:
        missing.append("datePublished")
    if not _is_absolute_http_url(draft.url):
        missing.append("url")
    if not submitter.strip():
        missing.append("submitter")
    if missing:
        raise errors.ValidationError(missing)


def _is_absolute_http_url(url: str) -> bool:
    if not url.strip():
        return False
    parts = urlsplit(url.strip())
    return parts.scheme in ("http", "https") and bool(parts.netloc)


class SubmissionQueue:
    def __init__(self) -> None:
        self._submissions: dict[int, Submission] = {}
        self._next_id = 1

    @property
    def next_id(self) -> int:
        return self._next_id

    def add(
        self,
        draft: ReportDraft,
        submitter: str,
        candidates: tuple[Candidate, ...],
        submission_id: int | None = None,
    ) -> Submission:
        if submission_id is None:
            submission_id = self._next_id
        self._next_id = max(self._next_id, submission_id + 1)
        submission = Submission(
            id=submission_id,
            draft=draft,
            submitter=submitter,
            date_submitted=draft.date_submitted or date.today(),
            state=PENDING,
            candidates=candidates,
        )
        self._submissions[submission_id] = submission
        return submission

    def get(self, submission_id: int) -> Submission:
        try:
            return self._submissions[submission_id]
        except KeyError:
            raise errors.UnknownSubmission(
                f"submission {submission_id} does not exist"
            ) from None

    def pending(self, page: int = 1, page_size: int = 50) -> list[Submission]:
        queue = sorted(
            (s for s in self._submissions.values() if s.state == PENDING),
            key=lambda s: (s.date_submitted, s.id),
        )
        start = (page - 1) * page_size
        return queue[start : start + page_size]

    def mark_accepted(
        self,
        submission_id: int,
        resolution: int | str,
        reviewer: str,
        report_id: int,
        incident_number: int,
    ) -> Submission:
        submission = self._require_pending(submission_id)
        submission.state = ACCEPTED
        submission.resolution = resolution
        submission.reviewer = reviewer
        submission.report_id = report_id
        submission.incident_number = incident_number
        return submission

    def mark_rejected(self, submission_id: int, reason: str, reviewer: str) -> Submission:
        submission = self._require_pending(submission_id)
        if not reason.strip():
            raise errors.ValidationError(["reason"])
        submission.state = REJECTED
        submission.reason = reason
        submission.reviewer = reviewer
        return submission

    def all_submissions(self) -> list[Submission]:
        return [self._submissions[k] for k in sorted(self._submissions)]

    def _require_pending(self, submission_id: int) -> Submission:
        submission = self.get(submission_id)
        if submission.state != PENDING:
            raise errors.AlreadyDecided(
                f"submission {submission_id} is already {submission.state}"
            )
        return submission
