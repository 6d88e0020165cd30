"""Append-only event log: the annotation service's source of truth.

Events are JSON lines appended to a single file (or kept in memory for
tests).  Sequence numbers are strictly increasing per log; replaying the
log reconstructs every workflow state exactly, which is what makes the
service crash-consistent.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

from geceval.errors import InputError

EVENT_KINDS = (
    "session_opened",
    "item_assigned",
    "postedit_submitted",
    "meaning_confirmed",
    "meaning_rejected",
    "scores_submitted",
)


@dataclass(frozen=True)
class EventRecord:
    seq: int
    timestamp: float
    session_id: str
    annotator_id: str
    kind: str
    payload: dict

    def to_json(self) -> str:
        obj = {
            "seq": self.seq,
            "timestamp": self.timestamp,
            "session_id": self.session_id,
            "annotator_id": self.annotator_id,
            "kind": self.kind,
            "payload": self.payload,
        }
        return json.dumps(obj, ensure_ascii=False)


class EventLog:
    """Writes go through `append` only; a file-backed log flushes every
    event before returning so a crash never loses acknowledged writes."""

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path is not None else None
        self.events: list[EventRecord] = []
        self._file = None
        if self.path is not None:
            if self.path.exists():
                self.events = list(self._read(self.path))
            self._file = open(self.path, "a", encoding="utf-8")

    @staticmethod
    def _read(path: Path):
        last_seq = 0
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                    rec = EventRecord(
                        seq=int(obj["seq"]),
                        timestamp=float(obj["timestamp"]),
                        session_id=str(obj["session_id"]),
                        annotator_id=str(obj["annotator_id"]),
                        kind=str(obj["kind"]),
                        payload=dict(obj["payload"]),
                    )
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
                    raise InputError(f"{path}:{lineno}: bad event record: {e}") from e
                if rec.kind not in EVENT_KINDS:
                    raise InputError(f"{path}:{lineno}: unknown event kind {rec.kind!r}")
                if rec.seq <= last_seq:
                    raise InputError(
                        f"{path}:{lineno}: sequence number {rec.seq} not increasing"
                    )
                last_seq = rec.seq
                yield rec

    def append(self, kind: str, session_id: str, annotator_id: str,
               payload: dict) -> EventRecord:
        if kind not in EVENT_KINDS:
            raise InputError(f"unknown event kind {kind!r}")
        rec = EventRecord(
            seq=self.events[-1].seq + 1 if self.events else 1,
            timestamp=time.time(),
            session_id=session_id,
            annotator_id=annotator_id,
            kind=kind,
            payload=payload,
        )
        self.events.append(rec)
        if self._file is not None:
            self._file.write(rec.to_json() + "\n")
            self._file.flush()
        return rec

    def close(self) -> None:
        if self._file is not None:
            self._file.close()
            self._file = None
