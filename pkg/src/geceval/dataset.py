"""Ingestion of annotation datasets for derived-statistics reports.

The canonical input is the annotation export format produced by this
package (JSON lines, optional comment header): one object per completed
item with at least {system, cefr, output, postedit, scores{...}}.  The
adapter tolerates common field-name variants so externally produced
annotation dumps can be ingested without rewriting; unknown layouts fail
loudly with the offending line.
"""

from __future__ import annotations

import json
from pathlib import Path

from geceval.errors import InputError

_FIELD_SYNONYMS = {
    "system": ("system", "model", "system_name"),
    "cefr": ("cefr", "level", "cefr_level"),
    "output": ("output", "hypothesis", "system_output"),
    "postedit": ("postedit", "post_edit", "postedited", "edited"),
    "scores": ("scores",),
}

_SCORE_SYNONYMS = {
    "grammaticality": ("grammaticality", "grammatical", "gramm"),
    "fluency": ("fluency",),
    "meaning": ("meaning", "meaning_preservation", "semantics"),
}


def _pick(obj: dict, canonical: str, synonyms: dict, where: str):
    for name in synonyms[canonical]:
        if name in obj:
            return obj[name]
    raise InputError(f"{where}: no field for {canonical!r} (looked for {synonyms[canonical]})")


def _normalize_score(value, where: str):
    if value in (1, 2, 3, 4, "other"):
        return value
    if isinstance(value, str) and value.isdigit() and int(value) in (1, 2, 3, 4):
        return int(value)
    raise InputError(f"{where}: score must be 1..4 or 'other', got {value!r}")


def load_annotation_dataset(path: str | Path) -> list[dict]:
    """Load annotation records into the canonical field names."""
    path = Path(path)
    records = []
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith("#"):
            continue
        where = f"{path}:{lineno}"
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise InputError(f"{where}: invalid JSON: {e}") from e
        raw_scores = _pick(obj, "scores", _FIELD_SYNONYMS, where)
        scores = {
            dim: _normalize_score(_pick(raw_scores, dim, _SCORE_SYNONYMS, where), where)
            for dim in _SCORE_SYNONYMS
        }
        cefr = _pick(obj, "cefr", _FIELD_SYNONYMS, where)
        records.append(
            {
                "system": str(_pick(obj, "system", _FIELD_SYNONYMS, where)),
                "cefr": cefr if cefr in ("A", "B", "C") else "unknown",
                "output": _pick(obj, "output", _FIELD_SYNONYMS, where),
                "postedit": _pick(obj, "postedit", _FIELD_SYNONYMS, where),
                "scores": scores,
            }
        )
    if not records:
        raise InputError(f"{path}: no annotation records")
    return records


def postedit_rows(records: list[dict]) -> list[tuple[str, str, str, str]]:
    """Rows for `postedit_report`: (system, cefr, output, postedit)."""
    return [(r["system"], r["cefr"], r["output"], r["postedit"]) for r in records]


def rating_rows(records: list[dict], dimension: str = "meaning") -> list[tuple[str, int | str]]:
    """Rows for `score_distribution`: (system, score) on one dimension."""
    if dimension not in _SCORE_SYNONYMS:
        raise InputError(f"unknown dimension {dimension!r}")
    return [(r["system"], r["scores"][dimension]) for r in records]
