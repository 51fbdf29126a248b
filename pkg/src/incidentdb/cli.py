"""Administrative command line: ingest, serve, views, review, taxonomy."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import errors, views
from .ingest import ingest_corpus, load_taxonomies
from .service import IncidentDatabase

DATA_DIR_OPTION = click.option(
    "--data-dir",
    default="./data",
    show_default=True,
    type=click.Path(path_type=Path),
    help="Database directory holding the record log.",
)


def open_db(data_dir: Path) -> IncidentDatabase:
    db = IncidentDatabase.open(data_dir)
    if db.recovery_warning:
        click.echo(f"warning: {db.recovery_warning}", err=True)
    return db


def fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


@click.group()
def main() -> None:
    """Incident database administration."""


@main.command()
@click.argument("corpus", type=click.Path(exists=True, path_type=Path))
@DATA_DIR_OPTION
def ingest(corpus: Path, data_dir: Path) -> None:
    """Bulk-load a report corpus (one JSON document per line)."""
    try:
        with open_db(data_dir) as db:
            count = ingest_corpus(db, corpus)
            click.echo(f"ingested {count} reports into {data_dir}")
    except errors.IncidentDbError as exc:
        fail(str(exc))


@main.command()
@click.option("--port", default=8080, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@DATA_DIR_OPTION
@click.option(
    "--ui-dir",
    default="./frontend/dist",
    show_default=True,
    type=click.Path(path_type=Path),
    help="Static UI assets to host at /; skipped when missing.",
)
def serve(port: int, host: str, data_dir: Path, ui_dir: Path) -> None:
    """Start the HTTP API (and UI hosting when built)."""
    import uvicorn

    from .api import create_app

    try:
        db = open_db(data_dir)
    except errors.IncidentDbError as exc:
        fail(str(exc))
        return
    if not ui_dir.is_dir():
        click.echo(f"note: ui dir {ui_dir} not found, serving API only", err=True)
        ui_dir = None
    app = create_app(db, ui_dir=ui_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    finally:
        db.close()


@main.command("build-views")
@DATA_DIR_OPTION
@click.option("--top-n", default=views.DEFAULT_TOP_N, show_default=True, type=int)
def build_views(data_dir: Path, top_n: int) -> None:
    """Render the static views (word counts, leaderboards, summaries)."""
    try:
        with open_db(data_dir) as db:
            manifest = views.build_all(db, top_n=top_n)
            click.echo(
                f"built {len(manifest['views'])} views at sequence "
                f"{manifest['corpusSequence']}"
            )
    except errors.IncidentDbError as exc:
        fail(str(exc))


@main.group()
def review() -> None:
    """Work the pending submission queue."""


@review.command("list")
@click.option("--page", default=1, show_default=True, type=int)
@DATA_DIR_OPTION
def review_list(page: int, data_dir: Path) -> None:
    try:
        with open_db(data_dir) as db:
            pending = db.pending_submissions(page=page)
            if not pending:
                click.echo("no pending submissions")
                return
            for submission in pending:
                draft = submission.draft
                candidates = ", ".join(
                    f"{c.incident_number} ({c.score:.2f})" for c in submission.candidates
                ) or "none"
                click.echo(
                    f"#{submission.id} [{submission.date_submitted}] {draft.title!r} "
                    f"from {draft.source} by {submission.submitter}; "
                    f"candidates: {candidates}"
                )
    except errors.IncidentDbError as exc:
        fail(str(exc))


@review.command("accept")
@click.argument("submission_id", type=int)
@click.option("--resolution", required=True, help='"new" or an incident number.')
@click.option("--reviewer", required=True)
@DATA_DIR_OPTION
def review_accept(submission_id: int, resolution: str, reviewer: str, data_dir: Path) -> None:
    try:
        with open_db(data_dir) as db:
            parsed = "new" if resolution == "new" else int(resolution)
            report = db.accept(submission_id, parsed, reviewer)
            click.echo(
                f"submission {submission_id} accepted into incident "
                f"{report.incident_number} as report {report.id}"
            )
    except ValueError:
        fail(f"invalid resolution {resolution!r}: expected 'new' or an incident number")
    except errors.IncidentDbError as exc:
        fail(str(exc))


@review.command("reject")
@click.argument("submission_id", type=int)
@click.option("--reason", required=True)
@click.option("--reviewer", required=True)
@DATA_DIR_OPTION
def review_reject(submission_id: int, reason: str, reviewer: str, data_dir: Path) -> None:
    try:
        with open_db(data_dir) as db:
            db.reject(submission_id, reason, reviewer)
            click.echo(f"submission {submission_id} rejected")
    except errors.IncidentDbError as exc:
        fail(str(exc))


@main.group()
def taxonomy() -> None:
    """Manage taxonomy namespaces."""


@taxonomy.command("load")
@click.argument("definition_file", type=click.Path(exists=True, path_type=Path))
@DATA_DIR_OPTION
def taxonomy_load(definition_file: Path, data_dir: Path) -> None:
    """Load namespace definitions (one JSON document per line)."""
    try:
        with open_db(data_dir) as db:
            names = load_taxonomies(db, definition_file)
            click.echo(f"loaded namespaces: {', '.join(names)}")
    except errors.IncidentDbError as exc:
        fail(str(exc))


@main.command()
@DATA_DIR_OPTION
def compact(data_dir: Path) -> None:
    """Rewrite the log as a minimal snapshot."""
    try:
        with open_db(data_dir) as db:
            db.compact()
            click.echo(f"compacted log to sequence {db.last_sequence}")
    except errors.IncidentDbError as exc:
        fail(str(exc))


if __name__ == "__main__":
    main()
