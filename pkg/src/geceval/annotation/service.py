"""Annotation workflow service: randomized item pool, the three-step
post-edit / meaning-check / scoring state machine, and the derived exports.

Workflow per item and annotator:

    PostEditing -> MeaningCheck -> Scoring -> Done
                      |   ^
                      v   |  (meaning rejected: reference hidden again,
                 PostEditing          revision count incremented)

Information hiding follows the step semantics: the post-editing view shows
only the system output; the reference appears first in the meaning-check
view; the learner source appears only in the scoring view.  All state is
derived from the append-only event log, so replaying the log after a crash
restores the service exactly.
"""

from __future__ import annotations

import hashlib
import json
import random
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from geceval.agreement import RatingMatrix, qwk
from geceval.annotation.events import EventLog, EventRecord
from geceval.corpus import SentenceRecord, SystemOutput
from geceval.errors import (
    InputError,
    StateViolationError,
    UndefinedStatisticError,
    ValidationError,
)
from geceval.textnorm import normalize

POST_EDITING = "PostEditing"
MEANING_CHECK = "MeaningCheck"
SCORING = "Scoring"
DONE = "Done"

DIMENSIONS = ("grammaticality", "fluency", "meaning")
VALID_SCORES = (1, 2, 3, 4, "other")

EXPORT_HEADER = "# geceval annotation export v1"


@dataclass(frozen=True)
class AnnotationItem:
    """One servable unit: a system output with its hidden reference."""

    item_id: str
    sentence_id: str
    system: str
    output: str
    reference: str
    source: str
    cefr: str = "unknown"
    round: str = "all"


def build_pool(
    sentences: list[SentenceRecord],
    outputs: list[SystemOutput],
    round_label: str = "all",
) -> list[AnnotationItem]:
    """Cross system outputs with their sentences; every item must have a
    source and a reference before it is servable."""
    by_id = {s.id: s for s in sentences}
    pool = []
    for out in outputs:
        sent = by_id.get(out.sentence_id)
        if sent is None:
            raise InputError(f"output references unknown sentence {out.sentence_id!r}")
        if not sent.references:
            raise InputError(
                f"sentence {sent.id!r} has no reference; item not servable"
            )
        pool.append(
            AnnotationItem(
                item_id=f"{out.sentence_id}:{out.system}",
                sentence_id=out.sentence_id,
                system=out.system,
                output=out.output,
                reference=sent.references[0],
                source=sent.source,
                cefr=sent.cefr,
                round=round_label,
            )
        )
    return pool


@dataclass
class _ItemState:
    status: str = POST_EDITING
    postedit: str | None = None
    revisions: int = 0
    scores: dict | None = None
    done_seq: int | None = None


@dataclass
class _Session:
    session_id: str
    annotator_id: str
    order: list[str] = field(default_factory=list)
    position: int = 0


class AnnotationService:
    """Event-sourced service over one item pool and one event log.

    Command methods validate, append exactly one event and then apply it;
    replay applies the same transition function to the recorded events, so
    live state and recovered state cannot diverge.
    """

    def __init__(self, pool: list[AnnotationItem], log: EventLog | None = None):
        ids = [item.item_id for item in pool]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise InputError(f"duplicate item ids in pool: {dupes}")
        self.pool = {item.item_id: item for item in pool}
        self.log = log if log is not None else EventLog(None)
        self._lock = threading.RLock()
        self._sessions: dict[str, _Session] = {}
        self._assigned: dict[str, set[str]] = {}  # annotator -> item ids
        self._states: dict[tuple[str, str], _ItemState] = {}
        for event in self.log.events:
            self._apply(event)

    # -- commands ---------------------------------------------------------

    def open_session(self, annotator_id: str, seed: int | None = None) -> str:
        if not annotator_id or not annotator_id.strip():
            raise ValidationError("annotator_id must be non-empty")
        with self._lock:
            session_id = uuid.uuid4().hex
            if seed is None:
                seed = int.from_bytes(
                    hashlib.blake2b(session_id.encode(), digest_size=8).digest(), "big"
                )
            event = self.log.append(
                "session_opened", session_id, annotator_id, {"seed": seed}
            )
            self._apply(event)
            return session_id

    def next_item(self, session_id: str) -> dict:
        """Resume the annotator's in-flight item if one exists, otherwise
        assign a new unserved item; a completion payload signals exhaustion."""
        with self._lock:
            session = self._get_session(session_id)
            annotator = session.annotator_id
            in_flight = self._in_flight(annotator)
            if in_flight is not None:
                return self._view(annotator, in_flight)
            assigned = self._assigned.setdefault(annotator, set())
            while session.position < len(session.order):
                item_id = session.order[session.position]
                if item_id not in assigned:
                    event = self.log.append(
                        "item_assigned", session_id, annotator, {"item_id": item_id}
                    )
                    self._apply(event)
                    return self._view(annotator, item_id)
                session.position += 1
            return {"step": "complete", "progress": self._progress(annotator)}

    def submit_postedit(self, session_id: str, item_id: str, text: str) -> dict:
        with self._lock:
            session, state = self._get_state(session_id, item_id)
            if state.status != POST_EDITING:
                raise StateViolationError(
                    f"item {item_id!r} is in {state.status}, not {POST_EDITING}"
                )
            if not normalize(text):
                raise ValidationError("post-edit text must be non-empty")
            event = self.log.append(
                "postedit_submitted", session_id, session.annotator_id,
                {"item_id": item_id, "text": text},
            )
            self._apply(event)
            return self._view(session.annotator_id, item_id)

    def confirm_meaning(self, session_id: str, item_id: str, matches: bool) -> dict:
        with self._lock:
            session, state = self._get_state(session_id, item_id)
            if state.status != MEANING_CHECK:
                raise StateViolationError(
                    f"item {item_id!r} is in {state.status}, not {MEANING_CHECK}"
                )
            kind = "meaning_confirmed" if matches else "meaning_rejected"
            event = self.log.append(
                kind, session_id, session.annotator_id, {"item_id": item_id}
            )
            self._apply(event)
            return self._view(session.annotator_id, item_id)

    def submit_scores(self, session_id: str, item_id: str,
                      grammaticality, fluency, meaning) -> dict:
        with self._lock:
            session, state = self._get_state(session_id, item_id)
            if state.status != SCORING:
                raise StateViolationError(
                    f"item {item_id!r} is in {state.status}, not {SCORING}"
                )
            scores = {"grammaticality": grammaticality, "fluency": fluency,
                      "meaning": meaning}
            for dim, value in scores.items():
                if value is None:
                    raise ValidationError(f"missing score for {dim}")
                if value not in VALID_SCORES:
                    raise ValidationError(
                        f"{dim} score must be 1..4 or 'other', got {value!r}"
                    )
            event = self.log.append(
                "scores_submitted", session_id, session.annotator_id,
                {"item_id": item_id, "scores": scores},
            )
            self._apply(event)
            return self._view(session.annotator_id, item_id)

    # -- event application (shared by live calls and replay) ---------------

    def _apply(self, event: EventRecord) -> None:
        kind = event.kind
        if kind == "session_opened":
            order = sorted(self.pool)
            random.Random(event.payload["seed"]).shuffle(order)
            self._sessions[event.session_id] = _Session(
                session_id=event.session_id,
                annotator_id=event.annotator_id,
                order=order,
            )
            return
        annotator = event.annotator_id
        item_id = event.payload["item_id"]
        key = (annotator, item_id)
        if kind == "item_assigned":
            self._assigned.setdefault(annotator, set()).add(item_id)
            self._states[key] = _ItemState()
        elif kind == "postedit_submitted":
            state = self._states[key]
            state.postedit = event.payload["text"]
            state.status = MEANING_CHECK
        elif kind == "meaning_confirmed":
            self._states[key].status = SCORING
        elif kind == "meaning_rejected":
            state = self._states[key]
            state.status = POST_EDITING
            state.revisions += 1
        elif kind == "scores_submitted":
            state = self._states[key]
            state.scores = dict(event.payload["scores"])
            state.status = DONE
            state.done_seq = event.seq

    # -- views -------------------------------------------------------------

    def _view(self, annotator: str, item_id: str) -> dict:
        item = self.pool[item_id]
        state = self._states[(annotator, item_id)]
        progress = self._progress(annotator)
        if state.status == POST_EDITING:
            # step 1: only the system output is visible
            return {
                "step": "post_edit",
                "item_id": item_id,
                "output": item.output,
                "postedit": state.postedit if state.postedit is not None else item.output,
                "revisions": state.revisions,
                "progress": progress,
            }
        if state.status == MEANING_CHECK:
            # step 2: the reference is revealed next to the edited text
            return {
                "step": "meaning_check",
                "item_id": item_id,
                "postedit": state.postedit,
                "reference": item.reference,
                "progress": progress,
            }
        if state.status == SCORING:
            # step 3: learner source, untouched output and reference together
            return {
                "step": "scoring",
                "item_id": item_id,
                "source": item.source,
                "output": item.output,
                "postedit": state.postedit,
                "reference": item.reference,
                "progress": progress,
            }
        return {"step": "done", "item_id": item_id, "progress": progress}

    def _progress(self, annotator: str) -> dict:
        done = sum(
            1 for (a, _), s in self._states.items()
            if a == annotator and s.status == DONE
        )
        return {"done": done, "total": len(self.pool)}

    def _in_flight(self, annotator: str) -> str | None:
        for (a, item_id), state in self._states.items():
            if a == annotator and state.status != DONE:
                return item_id
        return None

    def _get_session(self, session_id: str) -> _Session:
        session = self._sessions.get(session_id)
        if session is None:
            raise InputError(f"unknown session {session_id!r}")
        return session

    def _get_state(self, session_id: str, item_id: str) -> tuple[_Session, _ItemState]:
        session = self._get_session(session_id)
        if item_id not in self.pool:
            raise InputError(f"unknown item {item_id!r}")
        state = self._states.get((session.annotator_id, item_id))
        if state is None:
            raise StateViolationError(
                f"item {item_id!r} was never assigned to {session.annotator_id!r}"
            )
        return session, state

    # -- exports -----------------------------------------------------------

    def export_records(self, annotator: str | None = None) -> list[dict]:
        """Done items as export dicts, ordered by completion sequence."""
        rows = []
        for (a, item_id), state in self._states.items():
            if state.status != DONE:
                continue
            if annotator is not None and a != annotator:
                continue
            item = self.pool[item_id]
            rows.append(
                (
                    state.done_seq,
                    {
                        "item_id": item_id,
                        "sentence_id": item.sentence_id,
                        "system": item.system,
                        "cefr": item.cefr,
                        "source": item.source,
                        "output": item.output,
                        "postedit": state.postedit,
                        "scores": dict(state.scores),
                        "revisions": state.revisions,
                        "annotator": a,
                    },
                )
            )
        rows.sort(key=lambda r: r[0])
        return [r[1] for r in rows]

    def export(self, annotator: str | None = None) -> str:
        return render_export(self.export_records(annotator))

    def agreement(self, annotator_a: str, annotator_b: str,
                  dimension: str | None = None) -> dict[str, dict[str, float | None]]:
        """QWK between two annotators, per round and dimension, over shared
        Done items; pairs where either score is "other" are excluded."""
        if dimension is not None and dimension not in DIMENSIONS:
            raise InputError(f"dimension must be one of {DIMENSIONS}, got {dimension!r}")
        done_a = {i: s for (a, i), s in self._states.items()
                  if a == annotator_a and s.status == DONE}
        done_b = {i: s for (a, i), s in self._states.items()
                  if a == annotator_b and s.status == DONE}
        shared = sorted(set(done_a) & set(done_b))
        if not shared:
            raise InputError(
                f"no shared completed items between {annotator_a!r} and {annotator_b!r}"
            )
        dims = (dimension,) if dimension else DIMENSIONS
        report: dict[str, dict[str, float | None]] = {}
        for item_id in shared:
            rnd = self.pool[item_id].round
            report.setdefault(rnd, {})
        for rnd in report:
            for dim in dims:
                pairs = []
                for item_id in shared:
                    if self.pool[item_id].round != rnd:
                        continue
                    sa = done_a[item_id].scores[dim]
                    sb = done_b[item_id].scores[dim]
                    if sa == "other" or sb == "other":
                        continue
                    pairs.append((sa, sb))
                try:
                    report[rnd][dim] = qwk(RatingMatrix(categories=4, pairs=tuple(pairs)))
                except (InputError, UndefinedStatisticError):
                    report[rnd][dim] = None
        return report


def render_export(records: list[dict]) -> str:
    """Canonical export serialization: header comment line plus one JSON
    object per Done item with a stable field order."""
    lines = [EXPORT_HEADER]
    for rec in records:
        ordered = {
            "item_id": rec["item_id"],
            "sentence_id": rec["sentence_id"],
            "system": rec["system"],
            "cefr": rec["cefr"],
            "source": rec["source"],
            "output": rec["output"],
            "postedit": rec["postedit"],
            "scores": {
                "grammaticality": rec["scores"]["grammaticality"],
                "fluency": rec["scores"]["fluency"],
                "meaning": rec["scores"]["meaning"],
            },
            "revisions": rec["revisions"],
            "annotator": rec["annotator"],
        }
        lines.append(json.dumps(ordered, ensure_ascii=False))
    return "\n".join(lines) + "\n"


def parse_export(text: str) -> list[dict]:
    """Inverse of `render_export`; comment lines are skipped."""
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as e:
            raise InputError(f"export line {lineno}: invalid JSON: {e}") from e
    return records


def load_export(path: str | Path) -> list[dict]:
    try:
        with open(path, encoding="utf-8") as f:
            return parse_export(f.read())
    except OSError as e:
        raise InputError(f"cannot read export {path}: {e}") from e
