"""Similarity-based resolution of report drafts to existing incidents.

Ranks incidents by the maximum tf-idf cosine similarity between the draft's
analyzed title+text and each member report's. An exact URL match
short-circuits to that report's incident with score 1.0.
"""

from __future__ import annotations

import math
from collections import Counter

from .analysis import Analyzer
from .models import Candidate, Report, ReportDraft
from .registry import IncidentRegistry

DEFAULT_THRESHOLD = 0.35
DEFAULT_K = 5


class CandidateResolver:
    def __init__(self, analyzer: Analyzer, threshold: float = DEFAULT_THRESHOLD):
        self.analyzer = analyzer
        self.threshold = threshold
        # Report text is immutable and ids are never reused, so cache by id.
        self._counts: dict[int, Counter[str]] = {}

    def resolve(
        self, registry: IncidentRegistry, draft: ReportDraft, k: int = DEFAULT_K
    ) -> list[Candidate]:
        exact = registry.report_by_url(draft.url)
        if exact is not None:
            return [Candidate(incident_number=exact.incident_number, score=1.0)]

        reports = registry.reports()
        if not reports:
            return []

        idf = self._idf(reports)
        # Draft-only terms take the df=0 idf so they still count against the norm.
        unseen_idf = math.log(1 + len(reports)) + 1.0
        draft_counts = self._analyze_counts(draft.title, draft.text)
        draft_weights = _weigh(draft_counts, idf, unseen_idf)
        if not draft_weights:
            return []

        best: dict[int, float] = {}
        for report in reports:
            weights = _weigh(self._report_counts(report), idf, unseen_idf)
            score = _cosine(draft_weights, weights)
            number = report.incident_number
            if score > best.get(number, 0.0):
                best[number] = score

        ranked = sorted(best.items(), key=lambda item: (-item[1], item[0]))
        return [
            Candidate(incident_number=number, score=score)
            for number, score in ranked[:k]
            if score >= self.threshold
        ]

    def _idf(self, reports: list[Report]) -> dict[str, float]:
        df: Counter[str] = Counter()
        for report in reports:
            df.update(set(self._report_counts(report)))
        n = len(reports)
        return {term: math.log((1 + n) / (1 + count)) + 1.0 for term, count in df.items()}

    def _report_counts(self, report: Report) -> Counter[str]:
        cached = self._counts.get(report.id)
        if cached is None:
            cached = self._analyze_counts(report.title, report.text)
            self._counts[report.id] = cached
        return cached

    def _analyze_counts(self, title: str, text: str) -> Counter[str]:
        counts: Counter[str] = Counter()
        counts.update(t.stem for t in self.analyzer.analyze(title))
        counts.update(t.stem for t in self.analyzer.analyze(text))
        return counts


def _weigh(
    counts: Counter[str], idf: dict[str, float], unseen_idf: float
) -> dict[str, float]:
    return {term: count * idf.get(term, unseen_idf) for term, count in counts.items()}


def _cosine(a: dict[str, float], b: dict[str, float]) -> float:
    if not a or not b:
        return 0.0
    if len(b) < len(a):
        a, b = b, a
    dot = sum(weight * b.get(term, 0.0) for term, weight in a.items())
    if dot == 0.0:
        return 0.0
    norm_a = math.sqrt(sum(w * w for w in a.values()))
    norm_b = math.sqrt(sum(w * w for w in b.values()))
    return dot / (norm_a * norm_b)
