"""Corpus records and file ingestion.

Two input shapes are accepted everywhere:

* JSON-lines corpus, one object per sentence:
  {"id": str, "source": str, "cefr": "A"|"B"|"C"|null, "references": [str, ...]}
* plain parallel text files, one sentence per line, aligned by line number.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from geceval.errors import InputError
from geceval.textnorm import normalize

CEFR_LEVELS = ("A", "B", "C", "unknown")


@dataclass(frozen=True)
class SentenceRecord:
    """One learner sentence with its CEFR level and reference corrections.

    The first reference, when present, is the minimal human normalization.
    """

    id: str
    source: str
    cefr: str = "unknown"
    references: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.id:
            raise InputError("sentence id must be non-empty")
        if not normalize(self.source):
            raise InputError(f"sentence {self.id!r}: source empty after normalization")
        if self.cefr not in CEFR_LEVELS:
            raise InputError(
                f"sentence {self.id!r}: cefr {self.cefr!r} not in {CEFR_LEVELS}"
            )
        if not isinstance(self.references, tuple):
            object.__setattr__(self, "references", tuple(self.references))
        for ref in self.references:
            if not isinstance(ref, str):
                raise InputError(
                    f"sentence {self.id!r}: reference must be a string, got {ref!r}"
                )


@dataclass(frozen=True)
class SystemOutput:
    """One system's output for one sentence."""

    sentence_id: str
    system: str
    output: str


def _parse_cefr(value) -> str:
    if value is None:
        return "unknown"
    if isinstance(value, str) and value in CEFR_LEVELS:
        return value
    raise InputError(f"cefr must be one of A/B/C/null, got {value!r}")


def load_corpus(path: str | Path) -> list[SentenceRecord]:
    """Load a JSON-lines corpus; errors name the offending file and line."""
    path = Path(path)
    records: list[SentenceRecord] = []
    seen: set[str] = set()
    for lineno, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise InputError(f"{path}:{lineno}: invalid JSON: {e}") from e
        try:
            rec = SentenceRecord(
                id=str(obj["id"]),
                source=obj["source"],
                cefr=_parse_cefr(obj.get("cefr")),
                references=tuple(obj.get("references", ())),
            )
        except KeyError as e:
            raise InputError(f"{path}:{lineno}: missing field {e}") from e
        except InputError as e:
            raise InputError(f"{path}:{lineno}: {e}") from e
        if rec.id in seen:
            raise InputError(f"{path}:{lineno}: duplicate sentence id {rec.id!r}")
        seen.add(rec.id)
        records.append(rec)
    return records


def save_corpus(records: list[SentenceRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            obj = {
                "id": r.id,
                "source": r.source,
                "cefr": None if r.cefr == "unknown" else r.cefr,
                "references": list(r.references),
            }
            f.write(json.dumps(obj, ensure_ascii=False) + "\n")


def load_text_lines(path: str | Path) -> list[str]:
    """Plain text file, one sentence per line (trailing newline optional)."""
    return [line.rstrip("\n") for line in _read_lines(Path(path))]


def corpus_from_parallel(
    source_path: str | Path,
    reference_paths: list[str | Path] | None = None,
) -> list[SentenceRecord]:
    """Build sentence records from line-aligned plain text files.

    Ids are synthesized as "line-<n>" (1-based), stable across runs.
    """
    sources = load_text_lines(source_path)
    ref_columns = [load_text_lines(p) for p in (reference_paths or [])]
    for p, col in zip(reference_paths or [], ref_columns):
        if len(col) != len(sources):
            raise InputError(
                f"{p}: {len(col)} lines, expected {len(sources)} (aligned with {source_path})"
            )
    records = []
    for i, src in enumerate(sources):
        refs = tuple(col[i] for col in ref_columns)
        records.append(
            SentenceRecord(id=f"line-{i + 1}", source=src, references=refs)
        )
    return records


def load_system_outputs(path: str | Path) -> list[SystemOutput]:
    """JSON-lines file of {"sentence_id": str, "system": str, "output": str}."""
    path = Path(path)
    outputs = []
    seen: set[tuple[str, str]] = set()
    for lineno, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            out = SystemOutput(
                sentence_id=str(obj["sentence_id"]),
                system=str(obj["system"]),
                output=obj["output"],
            )
        except json.JSONDecodeError as e:
            raise InputError(f"{path}:{lineno}: invalid JSON: {e}") from e
        except KeyError as e:
            raise InputError(f"{path}:{lineno}: missing field {e}") from e
        key = (out.sentence_id, out.system)
        if key in seen:
            raise InputError(
                f"{path}:{lineno}: duplicate output for sentence {out.sentence_id!r}, "
                f"system {out.system!r}"
            )
        seen.add(key)
        outputs.append(out)
    return outputs


def _read_lines(path: Path):
    try:
        with open(path, encoding="utf-8") as f:
            yield from f
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
