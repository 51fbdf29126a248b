"""Tokenizer and analyzer chain behavior."""

import unicodedata

from hypothesis import given, settings
from hypothesis import strategies as st

from incidentdb.analysis import (
    Analyzer,
    analyze,
    analyze_query,
    load_stopwords,
    normalize,
    tokenize,
    DEFAULT_STOPWORDS_PATH,
)
from incidentdb.analysis.porter2 import stem


class TestTokenize:
    def test_punctuation_and_whitespace_split(self):
        tokens = tokenize("Good morning!")
        assert [(t.surface, t.position) for t in tokens] == [("Good", 0), ("morning", 1)]

    def test_digit_runs_are_tokens(self):
        tokens = tokenize("737 MAX 8")
        assert [(t.surface, t.position) for t in tokens] == [("737", 0), ("MAX", 1), ("8", 2)]

    def test_hyphen_separates(self):
        tokens = tokenize("state-of-the-art")
        assert [t.surface for t in tokens] == ["state", "of", "the", "art"]
        assert [t.position for t in tokens] == [0, 1, 2, 3]

    def test_slash_separates(self):
        assert [t.surface for t in tokenize("input/output")] == ["input", "output"]

    def test_empty_text(self):
        assert tokenize("") == []
        assert tokenize("  ...  ") == []

    def test_surface_preserved(self):
        tokens = tokenize("Facial Recognition")
        assert tokens[0].surface == "Facial"

    def test_byte_offsets_slice_back_to_surface(self):
        text = "naïve café — robots"
        data = normalize(text).encode("utf-8")
        for token in tokenize(text):
            assert data[token.start : token.end].decode("utf-8") == token.surface

    def test_offsets_ordered_and_non_overlapping(self):
        tokens = tokenize("one two three four")
        for a, b in zip(tokens, tokens[1:]):
            assert a.end <= b.start
            assert a.position + 1 == b.position


class TestAnalyze:
    def test_stopword_removed_and_positions_gapped(self):
        terms = analyze("the robot failed")
        assert [(t.stem, t.position) for t in terms] == [("robot", 1), ("fail", 2)]

    def test_porter_forms(self):
        assert [t.stem for t in analyze("recommended")] == ["recommend"]
        assert [t.stem for t in analyze("policing")] == ["polic"]

    def test_lowercasing(self):
        assert [t.stem for t in analyze("ROBOT Failures")] == ["robot", "failur"]

    def test_empty(self):
        assert analyze("") == []

    def test_no_stopwords_in_output(self):
        stopwords = load_stopwords(DEFAULT_STOPWORDS_PATH)
        terms = analyze("the a robot of and failure with it")
        assert all(t.stem not in stopwords for t in terms)


class TestAnalyzeQuery:
    def test_trailing_partial_token_is_prefix(self):
        result = analyze_query("facial recog")
        assert [t.stem for t in result.terms] == ["facial"]
        assert result.prefix is not None
        assert result.prefix.stem == "recog"

    def test_trailing_separator_means_no_prefix(self):
        result = analyze_query("facial recognition ")
        assert [t.stem for t in result.terms] == ["facial", "recognit"]
        assert result.prefix is None

    def test_single_partial_token(self):
        result = analyze_query("t")
        assert result.terms == ()
        assert result.prefix.stem == "t"

    def test_stopword_retained_as_prefix(self):
        result = analyze_query("robot the")
        assert [t.stem for t in result.terms] == ["robot"]
        assert result.prefix.stem == "the"

    def test_completed_stopword_dropped(self):
        result = analyze_query("robot the ")
        assert [t.stem for t in result.terms] == ["robot"]
        assert result.prefix is None

    def test_prefix_is_unstemmed(self):
        result = analyze_query("translating")
        assert result.prefix.stem == "translating"

    def test_empty_query(self):
        result = analyze_query("")
        assert result.terms == () and result.prefix is None


class TestStopwordFile:
    def test_classic_list_pinned(self):
        stopwords = load_stopwords(DEFAULT_STOPWORDS_PATH)
        assert len(stopwords) == 174
        for word in ("the", "a", "and", "of", "with"):
            assert word in stopwords

    def test_custom_list(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("robot\n", encoding="utf-8")
        analyzer = Analyzer(stopwords_path=path)
        assert [t.stem for t in analyzer.analyze("the robot")] == ["the"]


printable_text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",)), max_size=200
)


class TestProperties:
    @given(printable_text)
    @settings(max_examples=200)
    def test_determinism(self, text):
        assert analyze(text) == analyze(text)

    @given(printable_text)
    @settings(max_examples=200)
    def test_offset_fidelity(self, text):
        data = normalize(text).encode("utf-8")
        for term in analyze(text):
            sliced = data[term.start : term.end].decode("utf-8").lower()
            assert stem(unicodedata.normalize("NFC", sliced)) == term.stem

    @given(printable_text)
    @settings(max_examples=200)
    def test_positions_strictly_increase(self, text):
        tokens = tokenize(text)
        positions = [t.position for t in tokens]
        assert positions == sorted(set(positions))
        terms = analyze(text)
        term_positions = [t.position for t in terms]
        assert term_positions == sorted(set(term_positions))

    @given(printable_text)
    @settings(max_examples=200)
    def test_tokens_have_no_separators(self, text):
        for token in tokenize(text):
            assert token.surface
            assert not any(ch.isspace() for ch in token.surface)

    @given(printable_text)
    @settings(max_examples=100)
    def test_query_matches_analyze_when_separator_terminated(self, text):
        result = analyze_query(text + " ")
        assert list(result.terms) == analyze(text + " ")
        assert result.prefix is None
