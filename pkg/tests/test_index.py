"""Inverted index: matching, ranking, snippets, facets, oracle equivalence."""

import random

import pytest

from incidentdb import errors
from incidentdb.index import (
    HIGHLIGHT_CLOSE,
    HIGHLIGHT_OPEN,
    InvertedIndex,
    Query,
)

from .conftest import make_report, metadata_facets
from .oracle import ScanOracle


def add(index: InvertedIndex, report, extra_facets=None):
    facets = metadata_facets(report)
    if extra_facets:
        facets.update(extra_facets)
    index.add_report(report, facets)
    return report


def hit_ids(index: InvertedIndex, text: str, filters=None) -> set[int]:
    """Full hit set via pagination, exercising the public interface."""
    found: set[int] = set()
    page = 1
    while True:
        result = index.search(
            Query(text=text, facet_filters=filters or {}, page=page, page_size=100)
        )
        found.update(h.report_id for h in result.hits)
        if page * 100 >= result.total_hits:
            return found
        page += 1


class TestAddRemove:
    def test_add_then_search_unique_word(self):
        index = InvertedIndex()
        add(index, make_report(1, text="the zorblat experiment ended"))
        assert hit_ids(index, "zorblat") == {1}

    def test_shared_stem_posting_order(self):
        index = InvertedIndex()
        add(index, make_report(2, text="robots failing"))
        add(index, make_report(1, text="a robot failed"))
        postings = index.posting_list("robot").postings
        assert [p.report_id for p in postings] == [1, 2]
        assert all(p.frequency == len(p.positions) for p in postings)

    def test_add_remove_search(self):
        index = InvertedIndex()
        add(index, make_report(1, text="zorblat appeared"))
        index.remove_report(1)
        assert hit_ids(index, "zorblat") == set()

    def test_duplicate_add_rejected(self):
        index = InvertedIndex()
        add(index, make_report(1, text="one"))
        with pytest.raises(errors.DuplicateReport):
            add(index, make_report(1, text="two"))

    def test_remove_unknown_rejected(self):
        index = InvertedIndex()
        with pytest.raises(errors.UnknownReport):
            index.remove_report(7)

    def test_remove_one_of_two_matches(self):
        index = InvertedIndex()
        add(index, make_report(1, text="zorblat one"))
        add(index, make_report(2, text="zorblat two"))
        index.remove_report(1)
        assert hit_ids(index, "zorblat") == {2}

    def test_remove_then_readd_same_id(self):
        index = InvertedIndex()
        add(index, make_report(1, text="zorblat"))
        index.remove_report(1)
        add(index, make_report(1, text="zorblat again"))
        assert hit_ids(index, "zorblat") == {1}

    def test_title_is_indexed(self):
        index = InvertedIndex()
        add(index, make_report(1, title="Drone crashes at airshow", text="no such words"))
        assert hit_ids(index, "drone") == {1}


class TestSearchSemantics:
    def test_empty_text_matches_all(self):
        index = InvertedIndex()
        for i in range(1, 6):
            add(index, make_report(i, text=f"document number {i}"))
        result = index.search(Query(text="", page_size=100))
        assert result.total_hits == 5
        assert sum(result.facet_counts["source"].values()) == 5

    def test_conjunction_of_all_terms(self):
        index = InvertedIndex()
        add(index, make_report(1, text="facial recognition failure"))
        add(index, make_report(2, text="facial cream recall"))
        add(index, make_report(3, text="speech recognition success"))
        assert hit_ids(index, "facial recognition ") == {1}

    def test_trailing_prefix(self):
        index = InvertedIndex()
        add(index, make_report(1, text="facial recognition failure"))
        add(index, make_report(2, text="facial cream recall"))
        assert hit_ids(index, "facial rec") == {1, 2}
        assert hit_ids(index, "facial recog") == {1}

    def test_prefix_matches_stems_not_surfaces(self):
        index = InvertedIndex()
        add(index, make_report(1, text="the policing initiative"))
        # stem is "polic"; a prefix longer than the stem cannot match
        assert hit_ids(index, "polic") == {1}
        assert hit_ids(index, "policing") == set()
        # completing the token applies stemming again
        assert hit_ids(index, "policing ") == {1}

    def test_stopword_only_completed_query_matches_all(self):
        index = InvertedIndex()
        add(index, make_report(1, text="alpha"))
        add(index, make_report(2, text="beta"))
        assert hit_ids(index, "the ") == {1, 2}

    def test_facet_filter_or_within_key(self):
        index = InvertedIndex()
        add(index, make_report(1, source="A", text="x"))
        add(index, make_report(2, source="B", text="x"))
        add(index, make_report(3, source="C", text="x"))
        assert hit_ids(index, "", {"source": frozenset({"A", "B"})}) == {1, 2}

    def test_facet_filter_and_across_keys(self):
        index = InvertedIndex()
        add(index, make_report(1, source="A", authors=("X",), text="w"))
        add(index, make_report(2, source="A", authors=("Y",), text="w"))
        add(index, make_report(3, source="B", authors=("X",), text="w"))
        filters = {"source": frozenset({"A"}), "author": frozenset({"X"})}
        assert hit_ids(index, "", filters) == {1}

    def test_filters_and_with_text(self):
        index = InvertedIndex()
        add(index, make_report(1, source="A", text="drone crash"))
        add(index, make_report(2, source="B", text="drone crash"))
        add(index, make_report(3, source="A", text="robot crash"))
        assert hit_ids(index, "drone", {"source": frozenset({"A"})}) == {1}

    def test_unknown_facet_key_warns_and_is_ignored(self):
        index = InvertedIndex()
        add(index, make_report(1, text="x"))
        result = index.search(Query(text="", facet_filters={"bogus": frozenset({"v"})}))
        assert result.total_hits == 1
        assert any("bogus" in w for w in result.warnings)

    def test_known_key_unknown_value_matches_nothing(self):
        index = InvertedIndex()
        add(index, make_report(1, source="A", text="x"))
        result = index.search(Query(text="", facet_filters={"source": frozenset({"Z"})}))
        assert result.total_hits == 0
        assert result.warnings == ()

    def test_pagination_window(self):
        index = InvertedIndex()
        for i in range(1, 26):
            add(index, make_report(i, text="common topic"))
        first = index.search(Query(text="common", page=1, page_size=10))
        third = index.search(Query(text="common", page=3, page_size=10))
        assert first.total_hits == 25
        assert len(first.hits) == 10
        assert len(third.hits) == 5

    def test_invalid_pagination_rejected(self):
        with pytest.raises(ValueError):
            Query(text="", page_size=0)
        with pytest.raises(ValueError):
            Query(text="", page_size=101)
        with pytest.raises(ValueError):
            Query(text="", page=0)


class TestRanking:
    def test_deterministic_ordering_and_tiebreak(self):
        index = InvertedIndex()
        add(index, make_report(2, text="drone drone crash"))
        add(index, make_report(1, text="drone drone crash"))
        add(index, make_report(3, text="drone crash plus unrelated padding words here"))
        first = index.search(Query(text="drone"))
        second = index.search(Query(text="drone"))
        assert [h.report_id for h in first.hits] == [h.report_id for h in second.hits]
        # identical docs tie; lower id first
        ids = [h.report_id for h in first.hits]
        assert ids.index(1) < ids.index(2)

    def test_title_weighted_above_body(self):
        index = InvertedIndex()
        add(index, make_report(1, title="padding words", text="drone incident report text"))
        add(index, make_report(2, title="drone incident", text="padding words report text"))
        result = index.search(Query(text="drone"))
        assert [h.report_id for h in result.hits][0] == 2

    def test_rarer_term_scores_higher(self):
        index = InvertedIndex()
        add(index, make_report(1, text="common rare"))
        for i in range(2, 10):
            add(index, make_report(i, text="common filler"))
        result = index.search(Query(text="common rare"))
        assert result.hits[0].report_id == 1

    def test_scores_non_increasing(self):
        index = InvertedIndex()
        rng = random.Random(7)
        vocabulary = ["drone", "robot", "crash", "audit", "model", "sensor"]
        for i in range(1, 40):
            words = rng.choices(vocabulary, k=rng.randint(3, 12))
            add(index, make_report(i, text=" ".join(words)))
        result = index.search(Query(text="drone crash", page_size=100))
        scores = [h.score for h in result.hits]
        assert scores == sorted(scores, reverse=True)


class TestSnippets:
    def test_single_cluster_highlighted(self):
        index = InvertedIndex()
        add(index, make_report(1, text="The facial recognition system failed."))
        result = index.search(Query(text="facial recognition "))
        snippets = result.hits[0].snippets
        text_snippets = [s for s in snippets if s.field == "text"]
        assert len(text_snippets) == 1
        fragment = text_snippets[0].fragment
        assert f"{HIGHLIGHT_OPEN}facial{HIGHLIGHT_CLOSE}" in fragment
        assert f"{HIGHLIGHT_OPEN}recognition{HIGHLIGHT_CLOSE}" in fragment

    def test_title_only_match_flagged(self):
        index = InvertedIndex()
        add(index, make_report(1, title="Drone mishap", text="entirely unrelated body"))
        snippets = index.snippet(1, {"drone"})
        assert len(snippets) == 1
        assert snippets[0].field == "title"
        assert f"{HIGHLIGHT_OPEN}Drone{HIGHLIGHT_CLOSE}" in snippets[0].fragment

    def test_at_most_three_fragments(self):
        index = InvertedIndex()
        gap = " ".join(["filler"] * 40)
        text = gap.join([" drone crash "] * 5)
        add(index, make_report(1, text=text))
        snippets = index.snippet(1, {"drone"})
        assert 1 <= len(snippets) <= 3

    def test_fragments_ordered_and_markers_balanced(self):
        index = InvertedIndex()
        gap = " ".join(["filler"] * 50)
        add(index, make_report(1, text=f"drone alpha {gap} drone beta {gap} drone gamma"))
        snippets = index.snippet(1, {"drone"})
        assert len(snippets) == 3
        assert "alpha" in snippets[0].fragment
        assert "beta" in snippets[1].fragment
        assert "gamma" in snippets[2].fragment
        for snippet in snippets:
            assert snippet.fragment.count(HIGHLIGHT_OPEN) == snippet.fragment.count(
                HIGHLIGHT_CLOSE
            )
            assert snippet.fragment.count(HIGHLIGHT_OPEN) >= 1

    def test_window_bounded(self):
        index = InvertedIndex()
        words = [f"w{i}" for i in range(60)]
        words[30] = "needle"
        add(index, make_report(1, text=" ".join(words)))
        snippets = index.snippet(1, {"needl"})
        fragment = snippets[0].fragment
        rendered_words = fragment.replace(HIGHLIGHT_OPEN, "").replace(
            HIGHLIGHT_CLOSE, ""
        ).split()
        assert len(rendered_words) == 21  # ten each side plus the match

    def test_unknown_report_rejected(self):
        index = InvertedIndex()
        with pytest.raises(errors.UnknownReport):
            index.snippet(99, {"x"})

    def test_surface_preserved_in_highlight(self):
        index = InvertedIndex()
        add(index, make_report(1, text="POLICING Initiative Announced"))
        snippets = index.snippet(1, {"polic"})
        assert f"{HIGHLIGHT_OPEN}POLICING{HIGHLIGHT_CLOSE}" in snippets[0].fragment


class TestFacetCounts:
    def test_simple_tally(self):
        index = InvertedIndex()
        add(index, make_report(1, source="X", text="a1"))
        add(index, make_report(2, source="X", text="a2"))
        add(index, make_report(3, source="X", text="a3"))
        add(index, make_report(4, source="Y", text="a4"))
        counts = index.facet_counts({1, 2, 3, 4})
        assert counts["source"] == {"X": 3, "Y": 1}

    def test_empty_hit_set(self):
        index = InvertedIndex()
        add(index, make_report(1, text="x"))
        assert index.facet_counts(set()) == {}

    def test_multivalued_keys_can_exceed_hits(self):
        index = InvertedIndex()
        add(index, make_report(1, authors=("A", "B"), text="x"))
        add(index, make_report(2, authors=("A",), text="x"))
        counts = index.facet_counts({1, 2})
        assert counts["author"] == {"A": 2, "B": 1}
        assert sum(counts["author"].values()) > 2 - 1

    def test_single_valued_facets_sum_to_hits(self):
        index = InvertedIndex()
        for i in range(1, 8):
            add(index, make_report(i, source=f"S{i % 3}", text="topic"))
        result = index.search(Query(text="topic", page_size=100))
        assert sum(result.facet_counts["source"].values()) == result.total_hits
        assert sum(result.facet_counts["incidentNumber"].values()) == result.total_hits


VOCABULARY = [
    "drone", "drones", "robot", "robots", "facial", "recognition", "translate",
    "translation", "policing", "police", "crash", "crashed", "failure", "failed",
    "audit", "model", "sensor", "camera", "the", "a", "of", "hospital",
    "patients", "loan", "credit", "warehouse", "worker", "exam", "students",
]

SOURCES = ["A", "B", "C", "D", "E"]
AUTHORS = ["AA", "BB", "CC", "DD"]


def random_corpus(rng: random.Random, size: int):
    reports = []
    for i in range(1, size + 1):
        title = " ".join(rng.choices(VOCABULARY, k=rng.randint(2, 6)))
        text = " ".join(rng.choices(VOCABULARY, k=rng.randint(10, 60)))
        reports.append(
            make_report(
                i,
                incident_number=rng.randint(1, max(2, size // 3)),
                title=title,
                text=text,
                source=rng.choice(SOURCES),
                authors=tuple(rng.sample(AUTHORS, rng.randint(1, 2))),
            )
        )
    return reports


def random_query(rng: random.Random) -> tuple[str, dict]:
    words = rng.choices(VOCABULARY, k=rng.randint(1, 3))
    text = " ".join(words)
    if rng.random() < 0.35:
        text = text[: max(1, len(text) - rng.randint(1, 3))]  # mid-token cut
    elif rng.random() < 0.5:
        text = text + " "
    filters = {}
    if rng.random() < 0.4:
        filters["source"] = frozenset(rng.sample(SOURCES, rng.randint(1, 2)))
    if rng.random() < 0.2:
        filters["author"] = frozenset(rng.sample(AUTHORS, 1))
    return text, filters


class TestOracleEquivalence:
    def test_random_corpora_and_queries_match_linear_scan(self):
        rng = random.Random(20201101)
        for round_number in range(6):
            size = rng.choice([5, 20, 60, 120])
            reports = random_corpus(rng, size)
            index = InvertedIndex()
            oracle = ScanOracle(index.analyzer)
            for report in reports:
                facets = metadata_facets(report)
                index.add_report(report, facets)
                oracle.add(report.id, report.title, report.text, facets)
            known = {"source", "author", "submitter", "incidentNumber"}
            for _ in range(30):
                text, filters = random_query(rng)
                expected = oracle.hit_ids(text, filters, known)
                got = hit_ids(index, text, filters)
                assert got == expected, f"divergence on {text!r} {filters!r}"
                counts = index.facet_counts(got)
                assert counts == oracle.facet_counts(expected)

    def test_prefix_monotonicity_random(self):
        rng = random.Random(42)
        reports = random_corpus(rng, 80)
        index = InvertedIndex()
        for report in reports:
            index.add_report(report, metadata_facets(report))
        for _ in range(25):
            base = rng.choice(VOCABULARY)
            previous = None
            for cut in range(1, len(base) + 1):
                current = hit_ids(index, base[:cut])
                if previous is not None:
                    assert current <= previous
                previous = current

    def test_filter_conjunction_identity(self):
        rng = random.Random(99)
        reports = random_corpus(rng, 60)
        index = InvertedIndex()
        for report in reports:
            index.add_report(report, metadata_facets(report))
        for _ in range(20):
            text, filters = random_query(rng)
            if not filters:
                filters = {"source": frozenset({"A"})}
            combined = hit_ids(index, text, filters)
            text_only = hit_ids(index, text)
            filter_only = hit_ids(index, "", filters)
            assert combined == text_only & filter_only
