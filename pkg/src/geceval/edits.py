"""Span-level edit extraction and application over token sequences.

An edit replaces a half-open token span of the source with a replacement
token list.  `extract_edits` produces the minimal-cost alignment between a
source and target sequence and merges maximal runs of adjacent non-match
operations into single span edits; `apply_edits` is its exact inverse:

    apply_edits(s, extract_edits(s, t)) == t   for all s, t
"""

from __future__ import annotations

from dataclasses import dataclass, field

from geceval.errors import ValidationError

# Backtrace preferences for equal-cost alignment paths, in order: take a
# match when possible, otherwise substitution, then deletion, then
# insertion.  Preferring the diagonal during the right-to-left backtrace
# pushes non-match operations leftward, which makes extraction
# deterministic and yields leftmost edits.
_MATCH, _SUB, _DEL, _INS = 0, 1, 2, 3


@dataclass(frozen=True)
class Edit:
    """Replace source tokens [start, end) with `replacement`."""

    start: int
    end: int
    replacement: tuple[str, ...]

    def __post_init__(self):
        if self.start < 0 or self.end < self.start:
            raise ValidationError(f"invalid edit span: {self}")


@dataclass(frozen=True)
class EditSet:
    """Edits sorted by span start, non-overlapping; empty means identity.

    `source_len` records the length of the sequence the edits were
    extracted against, used to detect cross-sentence comparisons.
    """

    edits: tuple[Edit, ...] = ()
    source_len: int | None = field(default=None, compare=False)

    def __post_init__(self):
        prev_end = None
        for e in self.edits:
            if prev_end is not None and e.start < prev_end:
                raise ValidationError(f"overlapping or unsorted edit: {e}")
            prev_end = e.end

    def __len__(self) -> int:
        return len(self.edits)

    def __iter__(self):
        return iter(self.edits)

    def validate_against(self, source_len: int) -> None:
        """Raise ValidationError naming the first edit that does not fit a
        source of `source_len` tokens."""
        for e in self.edits:
            if e.end > source_len:
                raise ValidationError(
                    f"edit {e} out of bounds for source of length {source_len}"
                )


def _align_ops(source: list[str], target: list[str]) -> list[int]:
    """Minimal-cost alignment operations from source to target, left to right.

    Unit costs for substitution, insertion and deletion; matches are free.
    """
    n, m = len(source), len(target)
    # dp[i][j]: cost of aligning source[:i] with target[:j]
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dp[i][0] = i
    for j in range(1, m + 1):
        dp[0][j] = j
    for i in range(1, n + 1):
        row = dp[i]
        prow = dp[i - 1]
        si = source[i - 1]
        for j in range(1, m + 1):
            cost = 0 if si == target[j - 1] else 1
            d = prow[j - 1] + cost
            u = prow[j] + 1
            if u < d:
                d = u
            left = row[j - 1] + 1
            if left < d:
                d = left
            row[j] = d

    ops: list[int] = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and source[i - 1] == target[j - 1] and dp[i][j] == dp[i - 1][j - 1]:
            ops.append(_MATCH)
            i -= 1
            j -= 1
        elif i > 0 and j > 0 and dp[i][j] == dp[i - 1][j - 1] + 1:
            ops.append(_SUB)
            i -= 1
            j -= 1
        elif i > 0 and dp[i][j] == dp[i - 1][j] + 1:
            ops.append(_DEL)
            i -= 1
        else:
            ops.append(_INS)
            j -= 1
    ops.reverse()
    return ops


def extract_edits(source: list[str], target: list[str]) -> EditSet:
    """Token-level minimal-cost alignment with maximal runs of adjacent
    non-match operations merged into single span edits."""
    source = list(source)
    target = list(target)
    ops = _align_ops(source, target)

    edits: list[Edit] = []
    i = j = 0
    run_start_i = run_start_j = None
    for op in ops:
        if op == _MATCH:
            if run_start_i is not None:
                edits.append(
                    Edit(run_start_i, i, tuple(target[run_start_j:j]))
                )
                run_start_i = run_start_j = None
            i += 1
            j += 1
            continue
        if run_start_i is None:
            run_start_i, run_start_j = i, j
        if op == _SUB:
            i += 1
            j += 1
        elif op == _DEL:
            i += 1
        else:
            j += 1
    if run_start_i is not None:
        edits.append(Edit(run_start_i, i, tuple(target[run_start_j:j])))
    return EditSet(tuple(edits), source_len=len(source))


def apply_edits(source: list[str], edits: EditSet) -> list[str]:
    """Apply span edits right to left; inverse of `extract_edits`.

    Raises ValidationError naming the offending edit when a span is out of
    bounds (overlap and ordering are enforced by EditSet itself).
    """
    edits.validate_against(len(source))
    out = list(source)
    for e in reversed(edits.edits):
        out[e.start:e.end] = e.replacement
    return out
