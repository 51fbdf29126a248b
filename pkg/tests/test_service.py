"""Cross-module service behavior: removal, locking, enrichment, replay."""

import datetime

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from incidentdb import errors
from incidentdb.index import InvertedIndex, Query
from incidentdb.models import TagDefinition, TaxonomyNamespace
from incidentdb.service import IncidentDatabase

from .conftest import make_draft, make_report, metadata_facets
from .oracle import ScanOracle


class TestRemoveReport:
    def test_remove_sole_report_requires_retire(self, make_db):
        db = make_db()
        db.create_incident(make_draft("https://a.example/1"), "s")
        with pytest.raises(errors.WouldOrphanIncident):
            db.remove_report(1)

    def test_remove_with_retire_drops_incident_and_classifications(self, make_db):
        db = make_db()
        db.create_incident(make_draft("https://a.example/1", text="zorblat story"), "s")
        db.register_namespace(
            TaxonomyNamespace("Fairness", "org", "", (TagDefinition("Bias"),))
        )
        db.classify(1, "Fairness", "Bias", "x")
        db.remove_report(1, retire_source=True)
        assert db.search(Query(text="zorblat")).total_hits == 0
        assert not db.registry.has_incident(1)
        assert db.registry.retired_numbers() == {1}
        assert db.taxonomy.for_incident(1) == []

    def test_removal_persists_across_reopen(self, make_db):
        db = make_db()
        db.create_incident(make_draft("https://a.example/1", text="zorblat one"), "s")
        db.attach_report(1, make_draft("https://a.example/2", text="zorblat two"))
        db.remove_report(2)
        data_dir = db.data_dir
        db.close()
        reopened = IncidentDatabase.open(data_dir, fsync=False)
        try:
            assert reopened.search(Query(text="zorblat")).total_hits == 1
            assert reopened.registry.report_count == 1
        finally:
            reopened.close()

    def test_removed_url_can_be_resubmitted(self, make_db):
        db = make_db()
        db.create_incident(make_draft("https://a.example/1"), "s")
        db.attach_report(1, make_draft("https://a.example/2"))
        db.remove_report(2)
        report = db.attach_report(1, make_draft("https://a.example/2"))
        assert report.id == 3  # ids are not reused while the log remembers


class TestWriterLock:
    def test_second_writer_is_refused(self, tmp_path):
        first = IncidentDatabase.open(tmp_path / "d")
        try:
            with pytest.raises(errors.StorageError):
                IncidentDatabase.open(tmp_path / "d")
        finally:
            first.close()
        second = IncidentDatabase.open(tmp_path / "d")
        second.close()


class TestSearchDocument:
    def test_hits_carry_report_metadata_but_not_text(self, make_db):
        db = make_db()
        db.create_incident(
            make_draft(
                "https://a.example/1",
                title="Drone crash",
                text="A very long body that stays out of the hit payload.",
            ),
            "s",
        )
        document = db.search_document(Query(text="drone"))
        hit = document["hits"][0]
        assert hit["reportId"] == 1
        assert hit["incidentNumber"] == 1
        assert hit["title"] == "Drone crash"
        assert "text" not in hit
        assert hit["snippets"][0]["field"] == "title"
        assert document["totalHits"] == 1

    def test_reassignment_updates_incident_facet(self, make_db):
        db = make_db()
        db.create_incident(make_draft("https://a.example/1", text="zorblat"), "s")
        db.create_incident(make_draft("https://a.example/2", text="unrelated"), "s")
        db.attach_report(1, make_draft("https://a.example/3", text="zorblat too"))
        db.reassign_report(3, 2)
        result = db.search(
            Query(text="zorblat", facet_filters={"incidentNumber": frozenset({"2"})})
        )
        assert {h.report_id for h in result.hits} == {3}


class TestCitationThroughService:
    def test_incident_document_citation_matches_report_count(self, make_db):
        db = make_db()
        db.create_incident(make_draft("https://a.example/1"), "s")
        for i in range(2, 19):
            db.attach_report(1, make_draft(f"https://a.example/{i}"))
        document = db.incident_document(1, retrieved_date=datetime.date(2020, 11, 1))
        assert document["citationString"] == (
            "AI Incident Database, Incident 1 (18 reports), retrieved 2020-11-01"
        )


word_strategy = st.text(
    alphabet=st.characters(whitelist_categories=("Ll", "Lu", "Nd")),
    min_size=1,
    max_size=10,
)
doc_strategy = st.lists(word_strategy, min_size=0, max_size=25).map(" ".join)


class TestEngineOracleProperty:
    @given(
        docs=st.lists(doc_strategy, min_size=1, max_size=12),
        query=st.lists(word_strategy, min_size=1, max_size=3).map(" ".join),
        trailing_space=st.booleans(),
    )
    @settings(max_examples=120, deadline=None)
    def test_hit_sets_match_linear_scan_on_arbitrary_text(
        self, docs, query, trailing_space
    ):
        index = InvertedIndex()
        oracle = ScanOracle(index.analyzer)
        for i, text in enumerate(docs, start=1):
            report = make_report(i, text=text)
            facets = metadata_facets(report)
            index.add_report(report, facets)
            oracle.add(i, report.title, report.text, facets)
        text = query + (" " if trailing_space else "")
        expected = oracle.hit_ids(text)
        got = set()
        page = 1
        while True:
            result = index.search(Query(text=text, page=page, page_size=100))
            got.update(h.report_id for h in result.hits)
            if page * 100 >= result.total_hits:
                break
            page += 1
        assert got == expected
