"""Shared fixtures: the bundled 1,000-report corpus and small helpers."""

from __future__ import annotations

import datetime
import json
from pathlib import Path

import pytest

from incidentdb.ingest import ingest_corpus, load_taxonomies
from incidentdb.models import Report, ReportDraft
from incidentdb.service import IncidentDatabase

FIXTURES = Path(__file__).parent.parent / "fixtures"
CORPUS_PATH = FIXTURES / "corpus.jsonl"
TAXONOMIES_PATH = FIXTURES / "taxonomies.jsonl"


@pytest.fixture(scope="session")
def corpus_docs():
    with open(CORPUS_PATH, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh]


@pytest.fixture(scope="session")
def fixture_db(tmp_path_factory):
    """The full fixture corpus, loaded once. Tests must not mutate it."""
    data_dir = tmp_path_factory.mktemp("fixture-db")
    db = IncidentDatabase.open(data_dir, fsync=False)
    ingest_corpus(db, CORPUS_PATH)
    load_taxonomies(db, TAXONOMIES_PATH)
    yield db
    db.close()


@pytest.fixture
def make_db(tmp_path):
    """Factory for throwaway databases in this test's tmp dir."""
    opened = []
    counter = [0]

    def _open(**kwargs) -> IncidentDatabase:
        counter[0] += 1
        db = IncidentDatabase.open(tmp_path / f"db{counter[0]}", fsync=False, **kwargs)
        opened.append(db)
        return db

    yield _open
    for db in opened:
        db.close()


def make_report(
    report_id: int,
    incident_number: int = 1,
    title: str = "",
    text: str = "",
    source: str = "The Metro Herald",
    authors: tuple[str, ...] = ("Avery Abbott",),
    submitters: tuple[str, ...] = ("Rina Volkov",),
) -> Report:
    return Report(
        id=report_id,
        incident_number=incident_number,
        title=title,
        text=text,
        url=f"https://example.org/{report_id}",
        source=source,
        authors=authors,
        submitters=submitters,
        date_published=datetime.date(2020, 1, 1),
        date_submitted=datetime.date(2020, 6, 1),
        incident_date=datetime.date(2019, 12, 1),
    )


def metadata_facets(report: Report) -> dict[str, tuple[str, ...]]:
    return {
        "source": (report.source,),
        "author": report.authors,
        "submitter": report.submitters,
        "incidentNumber": (str(report.incident_number),),
    }


def make_draft(
    url: str,
    title: str = "A system failed",
    text: str = "The automated system failed in production.",
    source: str = "TechWire",
    authors: tuple[str, ...] = ("Avery Abbott",),
    submitters: tuple[str, ...] = (),
    **kwargs,
) -> ReportDraft:
    defaults = dict(
        date_published=datetime.date(2020, 3, 1),
        date_submitted=datetime.date(2020, 7, 1),
        incident_date=datetime.date(2020, 2, 1),
    )
    defaults.update(kwargs)
    return ReportDraft(
        title=title,
        text=text,
        url=url,
        source=source,
        authors=authors,
        submitters=submitters,
        **defaults,
    )
