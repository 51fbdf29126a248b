"""Pre-rendered static views: word counts, leaderboards, namespace summaries.

A build makes exactly one pass over the stored reports, writes one JSON
artifact per view under versioned filenames, and atomically replaces the
manifest last, so an interrupted build leaves the previous artifacts fully
served. Artifacts are a pure function of the log sequence they were built
from: rebuilding an unchanged corpus is byte-identical, and serving a view
reads files only, never the database.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from . import errors
from .service import IncidentDatabase

MANIFEST_NAME = "manifest.json"
DEFAULT_TOP_N = 100


@dataclass(frozen=True)
class StaticView:
    name: str
    corpus_sequence: int
    payload: dict[str, Any]
    built_at: datetime

    def to_bytes(self) -> bytes:
        # built_at and corpus_sequence stay out of the artifact bytes: the
        # manifest carries the sequence, so a view whose content is unchanged
        # rebuilds byte-identically even when unrelated data moved the log.
        document = {"name": self.name, "payload": self.payload}
        return (
            json.dumps(document, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
            + "\n"
        ).encode("utf-8")


def build_wordcounts(db: IncidentDatabase, top_n: int = DEFAULT_TOP_N) -> StaticView:
    """Top stems over all report titles and bodies, count desc then stem asc."""
    counts = _stem_counts(db.reports_snapshot(), db)
    return _view("wordcounts", db.last_sequence, {
        "topN": top_n,
        "counts": [[stem, count] for stem, count in _ranked(counts)[:top_n]],
    })


def build_leaderboards(db: IncidentDatabase) -> StaticView:
    submitters, authors = _leaderboard_counts(db.reports_snapshot())
    return _view("leaderboards", db.last_sequence, {
        "submitters": [[name, count] for name, count in _ranked(submitters)],
        "authors": [[name, count] for name, count in _ranked(authors)],
    })


def build_namespace_summary(db: IncidentDatabase, namespace: str) -> StaticView:
    definition = db.taxonomy.namespace(namespace)
    tags = []
    for tag in definition.tags:
        incidents = db.taxonomy.incidents_with(namespace, tag.name)
        tags.append(
            {"tag": tag.name, "incidentCount": len(incidents), "incidents": incidents}
        )
    return _view(f"summary-{namespace}", db.last_sequence, {
        "namespace": namespace,
        "owner": definition.owner,
        "description": definition.description,
        "tags": tags,
    })


def build_all(
    db: IncidentDatabase, views_dir: Path | str | None = None, top_n: int = DEFAULT_TOP_N
) -> dict[str, Any]:
    """Build every view in one report pass and swap the manifest atomically."""
    views_dir = Path(views_dir) if views_dir is not None else db.views_dir
    views_dir.mkdir(parents=True, exist_ok=True)
    sequence = db.last_sequence

    reports = db.reports_snapshot()
    stem_counts = _stem_counts(reports, db)
    submitter_counts, author_counts = _leaderboard_counts(reports)

    views = [
        _view("wordcounts", sequence, {
            "topN": top_n,
            "counts": [[s, c] for s, c in _ranked(stem_counts)[:top_n]],
        }),
        _view("leaderboards", sequence, {
            "submitters": [[n, c] for n, c in _ranked(submitter_counts)],
            "authors": [[n, c] for n, c in _ranked(author_counts)],
        }),
    ]
    for definition in db.taxonomy.namespaces():
        views.append(build_namespace_summary(db, definition.name))

    file_map: dict[str, str] = {}
    for view in views:
        filename = f"{view.name}-{sequence:010d}.json"
        _write_atomic(views_dir / filename, view.to_bytes())
        file_map[view.name] = filename

    manifest = {"corpusSequence": sequence, "views": file_map}
    manifest_bytes = (
        json.dumps(manifest, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        + "\n"
    ).encode("utf-8")
    _write_atomic(views_dir / MANIFEST_NAME, manifest_bytes)

    _prune(views_dir, keep={MANIFEST_NAME, *file_map.values()})
    return manifest


def read_manifest(views_dir: Path | str) -> dict[str, Any]:
    path = Path(views_dir) / MANIFEST_NAME
    if not path.exists():
        raise errors.UnknownView("views have not been built")
    return json.loads(path.read_text(encoding="utf-8"))


def serve_view(views_dir: Path | str, name: str) -> tuple[bytes, int]:
    """Artifact bytes plus the corpus sequence validator; file reads only."""
    manifest = read_manifest(views_dir)
    if name == "manifest":
        path = Path(views_dir) / MANIFEST_NAME
        return path.read_bytes(), manifest["corpusSequence"]
    filename = manifest["views"].get(name)
    if filename is None:
        raise errors.UnknownView(f"no such view: {name}")
    return (Path(views_dir) / filename).read_bytes(), manifest["corpusSequence"]


def is_stale(views_dir: Path | str, db: IncidentDatabase) -> bool:
    try:
        manifest = read_manifest(views_dir)
    except errors.UnknownView:
        return True
    return manifest["corpusSequence"] != db.last_sequence


# -- internals -----------------------------------------------------------------


def _view(name: str, sequence: int, payload: dict[str, Any]) -> StaticView:
    return StaticView(
        name=name,
        corpus_sequence=sequence,
        payload=payload,
        built_at=datetime.now(timezone.utc),
    )


def _stem_counts(reports, db: IncidentDatabase) -> Counter:
    counts: Counter = Counter()
    for report in reports:
        counts.update(t.stem for t in db.analyzer.analyze(report.title))
        counts.update(t.stem for t in db.analyzer.analyze(report.text))
    return counts


def _leaderboard_counts(reports) -> tuple[Counter, Counter]:
    submitters: Counter = Counter()
    authors: Counter = Counter()
    for report in reports:
        for submitter in report.submitters:
            submitters[submitter] += 1
        for author in report.authors:
            authors[author] += 1
    return submitters, authors


def _ranked(counts: Counter) -> list[tuple[str, int]]:
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


def _write_atomic(path: Path, data: bytes) -> None:
    tmp_path = path.with_suffix(path.suffix + ".tmp")
    try:
        with open(tmp_path, "wb") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp_path, path)
    except OSError as exc:
        raise errors.StorageError(f"writing view {path.name} failed: {exc}") from exc


def _prune(views_dir: Path, keep: set[str]) -> None:
    for entry in views_dir.iterdir():
        if entry.is_file() and entry.name not in keep and not entry.name.endswith(".tmp"):
            entry.unlink()
