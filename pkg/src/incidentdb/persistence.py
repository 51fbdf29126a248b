"""Append-only record log backing the whole database.

One JSON document per line:

    {"crc": "<8 hex>", "kind": "<kind>", "payload": {...}, "seq": <int>}

The crc is CRC-32 over the canonical serialization (sorted keys, compact
separators, UTF-8) of the record without its crc field. Sequences increase
by exactly one within a file; a compacted log starts at a fresh base above
the sequences it replaced, so sequence numbers never move backwards.

Recovery rules: a torn or corrupt final line is truncated with a warning;
corruption anywhere earlier is fatal (CorruptLog).
"""

from __future__ import annotations

import json
import os
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

from .errors import CorruptLog, StorageError

KINDS = frozenset(
    {
        "report-added",
        "report-removed",
        "report-reassigned",
        "incident-created",
        "incident-retired",
        "namespace-registered",
        "classification-added",
        "classification-removed",
        "submission-created",
        "submission-decided",
    }
)


@dataclass(frozen=True)
class LogRecord:
    sequence: int
    kind: str
    payload: dict[str, Any]


def canonical_json(document: Any) -> str:
    return json.dumps(document, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _checksum(sequence: int, kind: str, payload: dict[str, Any]) -> str:
    body = canonical_json({"kind": kind, "payload": payload, "seq": sequence})
    return format(zlib.crc32(body.encode("utf-8")), "08x")


def encode_record(record: LogRecord) -> bytes:
    line = canonical_json(
        {
            "crc": _checksum(record.sequence, record.kind, record.payload),
            "kind": record.kind,
            "payload": record.payload,
            "seq": record.sequence,
        }
    )
    return line.encode("utf-8") + b"\n"


@dataclass
class ScanResult:
    records: list[LogRecord]
    valid_bytes: int
    warning: str | None


def scan_log(path: Path | str) -> ScanResult:
    """Validate the log file, applying the tail-truncation recovery rule."""
    path = Path(path)
    if not path.exists():
        return ScanResult(records=[], valid_bytes=0, warning=None)
    data = path.read_bytes()
    records: list[LogRecord] = []
    offset = 0
    warning = None
    while offset < len(data):
        newline = data.find(b"\n", offset)
        if newline == -1:
            warning = f"torn trailing record at byte {offset} truncated"
            break
        line = data[offset:newline]
        try:
            record = _decode_line(line)
        except CorruptLog:
            if newline == len(data) - 1:
                warning = f"corrupt trailing record at byte {offset} truncated"
                break
            raise
        if records and record.sequence != records[-1].sequence + 1:
            raise CorruptLog(
                f"sequence jump {records[-1].sequence} -> {record.sequence} mid-log"
            )
        records.append(record)
        offset = newline + 1
    return ScanResult(records=records, valid_bytes=offset, warning=warning)


def _decode_line(line: bytes) -> LogRecord:
    try:
        document = json.loads(line.decode("utf-8"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise CorruptLog(f"unparseable record: {exc}") from None
    if not isinstance(document, dict) or not {"seq", "kind", "payload", "crc"} <= set(document):
        raise CorruptLog("record missing required fields")
    sequence, kind, payload = document["seq"], document["kind"], document["payload"]
    if kind not in KINDS:
        raise CorruptLog(f"unknown record kind {kind!r}")
    if document["crc"] != _checksum(sequence, kind, payload):
        raise CorruptLog(f"checksum mismatch on record {sequence}")
    return LogRecord(sequence=sequence, kind=kind, payload=payload)


class LogFile:
    """Single-writer append handle over the record log."""

    def __init__(self, path: Path | str, fsync: bool = True):
        self.path = Path(path)
        self.fsync = fsync
        self._fh = None
        self.last_sequence = 0
        self.recovery_warning: str | None = None

    def open(self) -> list[LogRecord]:
        """Validate, recover, and return the existing records."""
        scan = scan_log(self.path)
        self.recovery_warning = scan.warning
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(self.path, "ab")
        if scan.warning is not None:
            self._fh.truncate(scan.valid_bytes)
        if scan.records:
            self.last_sequence = scan.records[-1].sequence
        return scan.records

    def append(self, kind: str, payload: dict[str, Any]) -> int:
        if self._fh is None:
            raise StorageError("log not open")
        if kind not in KINDS:
            raise StorageError(f"unknown record kind {kind!r}")
        sequence = self.last_sequence + 1
        record = LogRecord(sequence=sequence, kind=kind, payload=payload)
        try:
            self._fh.write(encode_record(record))
            self._fh.flush()
            if self.fsync:
                os.fsync(self._fh.fileno())
        except OSError as exc:
            raise StorageError(f"append failed: {exc}") from exc
        self.last_sequence = sequence
        return sequence

    def compact(self, snapshot: Iterable[tuple[str, dict[str, Any]]]) -> None:
        """Atomically rewrite the log as a snapshot at a fresh sequence base.

        The base continues above the current last sequence so sequence
        numbers observed by consumers (for example view manifests) never
        move backwards.
        """
        if self._fh is None:
            raise StorageError("log not open")
        base = self.last_sequence
        tmp_path = self.path.with_suffix(self.path.suffix + ".compact")
        sequence = base
        try:
            with open(tmp_path, "wb") as tmp:
                for kind, payload in snapshot:
                    sequence += 1
                    tmp.write(encode_record(LogRecord(sequence, kind, payload)))
                tmp.flush()
                os.fsync(tmp.fileno())
            self._fh.close()
            os.replace(tmp_path, self.path)
        except OSError as exc:
            raise StorageError(f"compaction failed: {exc}") from exc
        self._fh = open(self.path, "ab")
        self.last_sequence = sequence

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None
