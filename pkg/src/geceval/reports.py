"""Per-system evaluation reports and system-level rank correlations.

A MetricReport mirrors the familiar per-system table layout: one row per
system, one column per CEFR level, plus an "All" column pooled over every
item (not averaged over level means).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
from scipy import stats as _scipy_stats

from geceval.corpus import CEFR_LEVELS
from geceval.distance import nld
from geceval.errors import InputError, UndefinedStatisticError
from geceval.textnorm import normalize

ALL_LEVEL = "All"

LIKERT_COLUMNS = ("Identical", "Minor", "Moderate", "Substantial", "Other")
_SCORE_TO_COLUMN = {4: "Identical", 3: "Minor", 2: "Moderate", 1: "Substantial",
                    "other": "Other"}


@dataclass
class MetricReport:
    metric: str
    systems: list[str]
    levels: list[str]  # column order; ALL_LEVEL first
    values: dict[tuple[str, str], float] = field(default_factory=dict)
    counts: dict[tuple[str, str], int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def value(self, system: str, level: str = ALL_LEVEL):
        return self.values.get((system, level))


def postedit_report(
    outputs: list[tuple[str, str, str, str]],
    metric: str = "NLD",
) -> MetricReport:
    """Mean normalized Levenshtein distance between each system output and
    its human post-edit, grouped by system and CEFR level.

    `outputs` holds (system label, cefr, output text, postedited text)
    tuples.  Unknown CEFR values are grouped under "unknown" and flagged in
    the report notes.
    """
    if not outputs:
        raise InputError("no outputs to report on")
    sums: dict[tuple[str, str], float] = defaultdict(float)
    counts: dict[tuple[str, str], int] = defaultdict(int)
    systems: list[str] = []
    seen_levels: set[str] = set()
    unknown_seen = False

    for system, cefr, output, postedit in outputs:
        if system not in systems:
            systems.append(system)
        level = cefr if cefr in CEFR_LEVELS else "unknown"
        if level == "unknown":
            unknown_seen = True
        seen_levels.add(level)
        d = nld(normalize(output), normalize(postedit))
        for key in ((system, ALL_LEVEL), (system, level)):
            sums[key] += d
            counts[key] += 1

    levels = [ALL_LEVEL] + [lv for lv in CEFR_LEVELS if lv in seen_levels]
    report = MetricReport(metric=metric, systems=systems, levels=levels)
    if unknown_seen:
        report.notes.append("items with unknown CEFR level grouped under 'unknown'")
    for key, total in sums.items():
        report.values[key] = total / counts[key]
        report.counts[key] = counts[key]
    return report


@dataclass
class ScoreDistribution:
    """Per-system histogram over the four Likert values plus "Other"."""

    systems: list[str]
    counts: dict[tuple[str, str], int] = field(default_factory=dict)
    means: dict[str, float | None] = field(default_factory=dict)

    def row(self, system: str) -> dict[str, int]:
        return {col: self.counts.get((system, col), 0) for col in LIKERT_COLUMNS}


def score_distribution(ratings: list[tuple[str, int | str]]) -> ScoreDistribution:
    """Count Likert scores per system; the numeric mean excludes "other"."""
    systems: list[str] = []
    counts: dict[tuple[str, str], int] = defaultdict(int)
    numeric: dict[str, list[int]] = defaultdict(list)
    for system, score in ratings:
        if score not in _SCORE_TO_COLUMN:
            raise InputError(f"score must be 1..4 or 'other', got {score!r}")
        if system not in systems:
            systems.append(system)
        counts[(system, _SCORE_TO_COLUMN[score])] += 1
        if isinstance(score, int):
            numeric[system].append(score)

    dist = ScoreDistribution(systems=systems)
    dist.counts = dict(counts)
    for system in systems:
        vals = numeric.get(system)
        dist.means[system] = (sum(vals) / len(vals)) if vals else None
    return dist


def rank_correlation(
    metric_scores: list[float], human_scores: list[float]
) -> tuple[float, float]:
    """System-level (Pearson r, Spearman rho)."""
    if len(metric_scores) != len(human_scores):
        raise InputError(
            f"length mismatch: {len(metric_scores)} vs {len(human_scores)} scores"
        )
    if len(metric_scores) < 3:
        raise InputError(f"need >= 3 systems, got {len(metric_scores)}")
    x = np.asarray(metric_scores, dtype=float)
    y = np.asarray(human_scores, dtype=float)
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise UndefinedStatisticError("correlation undefined for constant input")
    pearson = float(_scipy_stats.pearsonr(x, y).statistic)
    spearman = float(_scipy_stats.spearmanr(x, y).statistic)
    return pearson, spearman


def render_report_text(report: MetricReport, precision: int = 4) -> str:
    """Aligned plain-text table: rows are systems, columns are levels."""
    header = ["System"] + report.levels
    rows = [header]
    for system in report.systems:
        row = [system]
        for level in report.levels:
            v = report.values.get((system, level))
            row.append("-" if v is None else f"{v:.{precision}f}")
        rows.append(row)
    lines = _align(rows)
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def render_report_json(report: MetricReport) -> list[dict]:
    """Machine-readable rows: {metric, system, level, value}."""
    out = []
    for system in report.systems:
        for level in report.levels:
            v = report.values.get((system, level))
            if v is not None:
                out.append(
                    {"metric": report.metric, "system": system, "level": level,
                     "value": v}
                )
    return out


def render_distribution_text(dist: ScoreDistribution) -> str:
    header = ["System"] + list(LIKERT_COLUMNS) + ["Mean"]
    rows = [header]
    for system in dist.systems:
        row = [system]
        for col in LIKERT_COLUMNS:
            row.append(str(dist.counts.get((system, col), 0)))
        mean = dist.means.get(system)
        row.append("-" if mean is None else f"{mean:.2f}")
        rows.append(row)
    return "\n".join(_align(rows)) + "\n"


def render_distribution_json(dist: ScoreDistribution) -> list[dict]:
    out = []
    for system in dist.systems:
        entry: dict = {"system": system}
        entry.update(dist.row(system))
        entry["mean"] = dist.means.get(system)
        out.append(entry)
    return out


def _align(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [r[0].ljust(widths[0])]
        cells += [r[i].rjust(widths[i]) for i in range(1, len(r))]
        lines.append("  ".join(cells).rstrip())
    return lines
