"""In-memory inverted index: conjunctive search with trailing-prefix
matching, BM25 ranking, snippet extraction, and facet counting.

Reports are indexed over title and body. Ranking is BM25 (k1=1.2, b=0.75)
on a weighted field model: title term occurrences count double, both in
term frequency and in document length. The trailing query prefix matches
indexed stems by prefix and contributes the best single-stem BM25 score.

Readers run concurrently; mutations take the write lock and publish
atomically, so every search sees a consistent point-in-time index.
"""

from __future__ import annotations

import math
import time
from bisect import bisect_left, insort
from collections import Counter
from dataclasses import dataclass, field

from . import errors
from .analysis import Analyzer, Token, normalize
from .analysis.porter2 import stem as _stem_word
from .locks import RWLock

BM25_K1 = 1.2
BM25_B = 0.75
TITLE_WEIGHT = 2
SNIPPET_WINDOW = 10
SNIPPET_MAX_FRAGMENTS = 3
HIGHLIGHT_OPEN = "«"   # «
HIGHLIGHT_CLOSE = "»"  # »

METADATA_FACETS = ("source", "author", "submitter", "incidentNumber")

TITLE_FIELD = "title"
TEXT_FIELD = "text"


@dataclass(frozen=True)
class Posting:
    report_id: int
    positions: tuple[int, ...]

    @property
    def frequency(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class PostingList:
    stem: str
    postings: tuple[Posting, ...]


@dataclass(frozen=True)
class Query:
    text: str = ""
    facet_filters: dict[str, frozenset[str]] = field(default_factory=dict)
    page: int = 1
    page_size: int = 10

    def __post_init__(self):
        if not 1 <= self.page_size <= 100:
            raise ValueError(f"pageSize must be in [1, 100], got {self.page_size}")
        if self.page < 1:
            raise ValueError(f"page must be >= 1, got {self.page}")


@dataclass(frozen=True)
class Snippet:
    field: str
    fragment: str


@dataclass(frozen=True)
class Hit:
    report_id: int
    score: float
    snippets: tuple[Snippet, ...]


@dataclass(frozen=True)
class SearchResult:
    total_hits: int
    hits: tuple[Hit, ...]
    facet_counts: dict[str, dict[str, int]]
    elapsed_ms: float
    warnings: tuple[str, ...] = ()


@dataclass
class _FieldData:
    tokens: list[Token]
    stems: list[str | None]  # aligned with tokens; None marks a stopword
    counts: Counter


@dataclass
class _Doc:
    report_id: int
    title: str  # normalized forms, sliced by snippet offsets
    text: str
    fields: dict[str, _FieldData]
    weighted_len: int
    facets: dict[str, tuple[str, ...]]


class InvertedIndex:
    def __init__(self, analyzer: Analyzer | None = None):
        self.analyzer = analyzer or Analyzer()
        self._lock = RWLock()
        self._docs: dict[int, _Doc] = {}
        # stem -> report_id -> per-field positions
        self._postings: dict[str, dict[int, dict[str, tuple[int, ...]]]] = {}
        self._sorted_stems: list[str] = []
        self._facet_ids: dict[str, dict[str, set[int]]] = {
            key: {} for key in METADATA_FACETS
        }
        self._taxonomy_keys: set[str] = set()
        self._total_weighted_len = 0

    # -- write side --------------------------------------------------------

    def add_report(self, report, facets: dict[str, tuple[str, ...]]) -> None:
        """Index a report's title and text plus its facet values.

        `facets` must include the metadata facets and any taxonomy facets;
        the service layer derives them from the registry and taxonomy store.
        """
        with self._lock.write():
            if report.id in self._docs:
                raise errors.DuplicateReport(f"report {report.id} already indexed")
            title_data = self._analyze_field(report.title)
            text_data = self._analyze_field(report.text)
            doc = _Doc(
                report_id=report.id,
                title=normalize(report.title),
                text=normalize(report.text),
                fields={TITLE_FIELD: title_data, TEXT_FIELD: text_data},
                weighted_len=TITLE_WEIGHT * sum(title_data.counts.values())
                + sum(text_data.counts.values()),
                facets={},
            )
            self._docs[report.id] = doc
            self._total_weighted_len += doc.weighted_len
            for field_name, data in doc.fields.items():
                for position, stem in enumerate(data.stems):
                    if stem is None:
                        continue
                    by_doc = self._postings.get(stem)
                    if by_doc is None:
                        by_doc = self._postings[stem] = {}
                        insort(self._sorted_stems, stem)
                    by_field = by_doc.setdefault(report.id, {})
                    by_field[field_name] = by_field.get(field_name, ()) + (position,)
            self._set_facets(doc, facets)

    def remove_report(self, report_id: int) -> None:
        with self._lock.write():
            doc = self._docs.get(report_id)
            if doc is None:
                raise errors.UnknownReport(f"report {report_id} is not indexed")
            for data in doc.fields.values():
                for stem in set(s for s in data.stems if s is not None):
                    by_doc = self._postings.get(stem)
                    if by_doc and report_id in by_doc:
                        del by_doc[report_id]
                        if not by_doc:
                            del self._postings[stem]
                            position = bisect_left(self._sorted_stems, stem)
                            del self._sorted_stems[position]
            self._set_facets(doc, {})
            self._total_weighted_len -= doc.weighted_len
            del self._docs[report_id]

    def update_facets(self, report_id: int, facets: dict[str, tuple[str, ...]]) -> None:
        """Replace a report's facet values (classification or reassignment)."""
        with self._lock.write():
            doc = self._docs.get(report_id)
            if doc is None:
                raise errors.UnknownReport(f"report {report_id} is not indexed")
            self._set_facets(doc, facets)

    def register_facet_key(self, key: str) -> None:
        """Declare a taxonomy namespace as a legal facet key."""
        with self._lock.write():
            self._taxonomy_keys.add(key)
            self._facet_ids.setdefault(key, {})

    # -- read side -----------------------------------------------------------

    def search(self, query: Query) -> SearchResult:
        started = time.perf_counter()
        with self._lock.read():
            analyzed = self.analyzer.analyze_query(query.text)
            stems = sorted({t.stem for t in analyzed.terms})
            prefix = analyzed.prefix.stem if analyzed.prefix is not None else None

            candidate_ids = self._match(stems, prefix)
            warnings: list[str] = []
            hit_ids = self._apply_filters(candidate_ids, query.facet_filters, warnings)

            scores = self._score(hit_ids, stems, prefix)
            ordered = sorted(hit_ids, key=lambda rid: (-scores[rid], rid))
            start = (query.page - 1) * query.page_size
            page_ids = ordered[start : start + query.page_size]

            facet_counts = self._facet_counts(hit_ids)
            hits = tuple(
                Hit(
                    report_id=rid,
                    score=scores[rid],
                    snippets=tuple(self._snippets(self._docs[rid], set(stems), prefix)),
                )
                for rid in page_ids
            )
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        return SearchResult(
            total_hits=len(hit_ids),
            hits=hits,
            facet_counts=facet_counts,
            elapsed_ms=elapsed_ms,
            warnings=tuple(warnings),
        )

    def snippet(self, report_id: int, matched_stems: set[str], prefix: str | None = None):
        """Highlighted fragments for one report; markers are « and »."""
        with self._lock.read():
            doc = self._docs.get(report_id)
            if doc is None:
                raise errors.UnknownReport(f"report {report_id} is not indexed")
            return self._snippets(doc, matched_stems, prefix)

    def facet_counts(self, report_ids) -> dict[str, dict[str, int]]:
        """Per-value counts over an explicit hit set."""
        with self._lock.read():
            for report_id in report_ids:
                if report_id not in self._docs:
                    raise errors.UnknownReport(f"report {report_id} is not indexed")
            return self._facet_counts(set(report_ids))

    def posting_list(self, stem: str) -> PostingList:
        with self._lock.read():
            by_doc = self._postings.get(stem, {})
            postings = []
            for report_id in sorted(by_doc):
                by_field = by_doc[report_id]
                title_positions = by_field.get(TITLE_FIELD, ())
                offset = len(self._docs[report_id].fields[TITLE_FIELD].tokens) + 1
                text_positions = tuple(
                    p + offset for p in by_field.get(TEXT_FIELD, ())
                )
                postings.append(Posting(report_id, title_positions + text_positions))
            return PostingList(stem=stem, postings=tuple(postings))

    def indexed_ids(self) -> set[int]:
        with self._lock.read():
            return set(self._docs)

    @property
    def doc_count(self) -> int:
        return len(self._docs)

    # -- internals ------------------------------------------------------------

    def _analyze_field(self, raw_text: str) -> _FieldData:
        tokens = self.analyzer.tokenize(raw_text)
        stems: list[str | None] = []
        counts: Counter = Counter()
        stopwords = self.analyzer.stopwords
        for token in tokens:
            lowered = token.surface.lower()
            if lowered in stopwords:
                stems.append(None)
                continue
            stemmed = _stem_word(lowered)
            stems.append(stemmed)
            counts[stemmed] += 1
        return _FieldData(tokens=tokens, stems=stems, counts=counts)

    def _match(self, stems: list[str], prefix: str | None) -> set[int]:
        if not stems and prefix is None:
            return set(self._docs)
        candidate: set[int] | None = None
        posting_maps = []
        for stem in stems:
            by_doc = self._postings.get(stem)
            if not by_doc:
                return set()
            posting_maps.append(by_doc)
        if prefix is not None:
            prefix_ids: set[int] = set()
            for stem in self._stems_with_prefix(prefix):
                prefix_ids.update(self._postings[stem])
            if not prefix_ids:
                return set()
            candidate = prefix_ids
        for by_doc in sorted(posting_maps, key=len):
            if candidate is None:
                candidate = set(by_doc)
            else:
                candidate &= by_doc.keys()
            if not candidate:
                return set()
        return candidate if candidate is not None else set()

    def _stems_with_prefix(self, prefix: str) -> list[str]:
        start = bisect_left(self._sorted_stems, prefix)
        matches = []
        for stem in self._sorted_stems[start:]:
            if not stem.startswith(prefix):
                break
            matches.append(stem)
        return matches

    def _apply_filters(
        self,
        candidate_ids: set[int],
        filters: dict[str, frozenset[str]],
        warnings: list[str],
    ) -> set[int]:
        result = candidate_ids
        for key in sorted(filters):
            values = filters[key]
            if key not in self._facet_ids:
                warnings.append(f"unknown facet key ignored: {key}")
                continue
            by_value = self._facet_ids[key]
            allowed: set[int] = set()
            for value in values:
                allowed |= by_value.get(value, set())
            result = result & allowed
        return result

    def _score(
        self, hit_ids: set[int], stems: list[str], prefix: str | None
    ) -> dict[int, float]:
        if not hit_ids or (not stems and prefix is None):
            return {rid: 0.0 for rid in hit_ids}
        n = len(self._docs)
        avgdl = (self._total_weighted_len / n) if n else 1.0
        scores = {rid: 0.0 for rid in hit_ids}
        for stem in stems:
            by_doc = self._postings.get(stem, {})
            idf = self._idf(len(by_doc), n)
            for rid in hit_ids:
                by_field = by_doc.get(rid)
                if by_field:
                    scores[rid] += self._bm25(by_field, self._docs[rid], idf, avgdl)
        if prefix is not None:
            # Best single completion wins for the trailing prefix.
            best: dict[int, float] = {rid: 0.0 for rid in hit_ids}
            for stem in self._stems_with_prefix(prefix):
                by_doc = self._postings[stem]
                idf = self._idf(len(by_doc), n)
                for rid in hit_ids:
                    by_field = by_doc.get(rid)
                    if by_field:
                        contribution = self._bm25(by_field, self._docs[rid], idf, avgdl)
                        if contribution > best[rid]:
                            best[rid] = contribution
            for rid in hit_ids:
                scores[rid] += best[rid]
        return scores

    @staticmethod
    def _idf(df: int, n: int) -> float:
        return math.log(1.0 + (n - df + 0.5) / (df + 0.5))

    @staticmethod
    def _bm25(by_field: dict[str, tuple[int, ...]], doc: _Doc, idf: float, avgdl: float) -> float:
        wtf = TITLE_WEIGHT * len(by_field.get(TITLE_FIELD, ())) + len(
            by_field.get(TEXT_FIELD, ())
        )
        denom = wtf + BM25_K1 * (1.0 - BM25_B + BM25_B * doc.weighted_len / avgdl)
        return idf * wtf * (BM25_K1 + 1.0) / denom

    def _facet_counts(self, hit_ids: set[int]) -> dict[str, dict[str, int]]:
        counts: dict[str, dict[str, int]] = {}
        for rid in hit_ids:
            for key, values in self._docs[rid].facets.items():
                by_value = counts.setdefault(key, {})
                for value in values:
                    by_value[value] = by_value.get(value, 0) + 1
        return counts

    def _set_facets(self, doc: _Doc, facets: dict[str, tuple[str, ...]]) -> None:
        for key, values in doc.facets.items():
            by_value = self._facet_ids.get(key, {})
            for value in values:
                ids = by_value.get(value)
                if ids is not None:
                    ids.discard(doc.report_id)
                    if not ids:
                        del by_value[value]
        doc.facets = {k: tuple(v) for k, v in facets.items() if v}
        for key, values in doc.facets.items():
            by_value = self._facet_ids.setdefault(key, {})
            for value in values:
                by_value.setdefault(value, set()).add(doc.report_id)

    def _snippets(
        self, doc: _Doc, matched_stems: set[str], prefix: str | None
    ) -> list[Snippet]:
        fragments: list[Snippet] = []
        for field_name, source in ((TITLE_FIELD, doc.title), (TEXT_FIELD, doc.text)):
            if len(fragments) >= SNIPPET_MAX_FRAGMENTS:
                break
            data = doc.fields[field_name]
            matches = [
                i
                for i, stem in enumerate(data.stems)
                if stem is not None
                and (stem in matched_stems or (prefix is not None and stem.startswith(prefix)))
            ]
            if not matches:
                continue
            for cluster in _cluster(matches):
                if len(fragments) >= SNIPPET_MAX_FRAGMENTS:
                    break
                fragments.append(
                    Snippet(
                        field=field_name,
                        fragment=_render_fragment(source, data.tokens, cluster, set(matches)),
                    )
                )
        return fragments


def _cluster(matches: list[int]) -> list[list[int]]:
    clusters: list[list[int]] = []
    for index in matches:
        if clusters and index - clusters[-1][-1] <= 2 * SNIPPET_WINDOW:
            clusters[-1].append(index)
        else:
            clusters.append([index])
    return clusters


def _render_fragment(
    source: str, tokens: list[Token], cluster: list[int], matched: set[int]
) -> str:
    start_token = max(0, cluster[0] - SNIPPET_WINDOW)
    end_token = min(len(tokens) - 1, cluster[-1] + SNIPPET_WINDOW)
    data = source.encode("utf-8")
    parts: list[bytes] = []
    cursor = tokens[start_token].start
    open_mark = HIGHLIGHT_OPEN.encode("utf-8")
    close_mark = HIGHLIGHT_CLOSE.encode("utf-8")
    for position in range(start_token, end_token + 1):
        if position in matched:
            token = tokens[position]
            parts.append(data[cursor : token.start])
            parts.append(open_mark)
            parts.append(data[token.start : token.end])
            parts.append(close_mark)
            cursor = token.end
    parts.append(data[cursor : tokens[end_token].end])
    return b"".join(parts).decode("utf-8")
