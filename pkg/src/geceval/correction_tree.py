"""Correction-tree analysis: pairwise distance matrices over all versions
of each sentence, a 2-D embedding of the mean distances, and a provenance
tree rendered at the embedded coordinates.

A version set holds every text version of one sentence (the original, the
machine corrections, the human rewrites, their post-edits, or any declared
subset) together with the provenance edges that connect them.  The tree is
rooted at the "original" version; edge kinds distinguish machine
transformations from individual human annotators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from geceval.distance import nld
from geceval.errors import InputError, ValidationError
from geceval.mds import smacof
from geceval.textnorm import normalize

ROOT_LABEL = "original"
MACHINE_KIND = "machine"

_SVG_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


@dataclass(frozen=True)
class VersionSet:
    """All text versions of one sentence plus their provenance.

    `parents` maps each non-root label to its parent label; `kinds` maps a
    label to the kind of the transformation that produced it ("machine" or
    an annotator tag); missing entries default to "machine".
    """

    sentence_id: str
    versions: dict[str, str]
    parents: dict[str, str] = field(default_factory=dict)
    kinds: dict[str, str] = field(default_factory=dict)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.versions)


@dataclass(frozen=True)
class DistanceMatrix:
    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if v.shape != (len(self.labels), len(self.labels)):
            raise InputError(f"matrix shape {v.shape} does not match labels")
        if np.abs(v - v.T).max(initial=0.0) > 1e-12:
            raise InputError("distance matrix is not symmetric")
        if np.abs(np.diag(v)).max(initial=0.0) != 0.0:
            raise InputError("distance matrix diagonal is not zero")


@dataclass(frozen=True)
class Embedding2D:
    labels: tuple[str, ...]
    coords: np.ndarray  # (n, 2)
    stress: float
    stress_trace: tuple[float, ...]

    def position(self, label: str) -> tuple[float, float]:
        i = self.labels.index(label)
        return float(self.coords[i, 0]), float(self.coords[i, 1])


def pairwise_nld_matrix(sets: list[VersionSet]) -> DistanceMatrix:
    """Mean normalized Levenshtein distance between each pair of versions,
    averaged over sentences.  All sets must share one label inventory."""
    if not sets:
        raise InputError("no version sets given")
    labels = sets[0].labels
    inventory = set(labels)
    mismatched = [vs.sentence_id for vs in sets if set(vs.labels) != inventory]
    if mismatched:
        raise InputError(
            f"version sets with mismatching label inventories: {mismatched}"
        )
    n = len(labels)
    values = np.zeros((n, n))
    for vs in sets:
        texts = [normalize(vs.versions[lb]) for lb in labels]
        for i in range(n):
            for j in range(i + 1, n):
                values[i, j] += nld(texts[i], texts[j])
    values /= len(sets)
    values = values + values.T  # exact transpose symmetry by construction
    return DistanceMatrix(labels=labels, values=values)


def mds_embed(d: DistanceMatrix, iterations: int = 300, seed: int = 0) -> Embedding2D:
    """Stress-majorization embedding of a distance matrix into the plane."""
    coords, trace = smacof(d.values, n_components=2, iterations=iterations, seed=seed)
    return Embedding2D(
        labels=d.labels,
        coords=coords,
        stress=trace[-1],
        stress_trace=tuple(trace),
    )


@dataclass(frozen=True)
class CorrectionTree:
    """Provenance tree positioned at embedding coordinates."""

    nodes: tuple[dict, ...]  # {label, x, y}
    edges: tuple[dict, ...]  # {from, to, kind}

    def to_json(self) -> str:
        obj = {"nodes": list(self.nodes), "edges": list(self.edges)}
        return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"

    def to_dot(self) -> str:
        lines = ["graph correction_tree {", "  node [shape=circle];"]
        for node in self.nodes:
            lines.append(
                f'  "{node["label"]}" [pos="{node["x"]:.4f},{node["y"]:.4f}!"];'
            )
        for edge in self.edges:
            style = "solid" if edge["kind"] == MACHINE_KIND else "dashed"
            lines.append(
                f'  "{edge["from"]}" -- "{edge["to"]}" '
                f'[style={style}, label="{edge["kind"]}"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_svg(self, width: int = 640, height: int = 480) -> str:
        xs = [n["x"] for n in self.nodes]
        ys = [n["y"] for n in self.nodes]
        span_x = max(xs) - min(xs) or 1.0
        span_y = max(ys) - min(ys) or 1.0
        pad = 60

        def sx(x: float) -> float:
            return pad + (x - min(xs)) / span_x * (width - 2 * pad)

        def sy(y: float) -> float:
            return pad + (y - min(ys)) / span_y * (height - 2 * pad)

        kinds = sorted({e["kind"] for e in self.edges} - {MACHINE_KIND})
        color = {k: _SVG_COLORS[i % len(_SVG_COLORS)] for i, k in enumerate(kinds)}
        pos = {n["label"]: (sx(n["x"]), sy(n["y"])) for n in self.nodes}

        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">'
        ]
        for e in self.edges:
            (x1, y1), (x2, y2) = pos[e["from"]], pos[e["to"]]
            if e["kind"] == MACHINE_KIND:
                stroke, dash = "#000000", ""
            else:
                stroke = color[e["kind"]]
                dash = ' stroke-dasharray="6,4"'
            parts.append(
                f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                f'stroke="{stroke}" stroke-width="1.5"{dash}/>'
            )
        for n in self.nodes:
            x, y = pos[n["label"]]
            parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="5" fill="#333"/>')
            parts.append(
                f'<text x="{x + 8:.1f}" y="{y - 8:.1f}" font-size="11" '
                f'font-family="sans-serif">{n["label"]}</text>'
            )
        parts.append("</svg>")
        return "\n".join(parts) + "\n"


def validate_provenance(labels: tuple[str, ...], parents: dict[str, str]) -> None:
    """Check that `parents` forms a tree over `labels` rooted at "original"."""
    label_set = set(labels)
    roots = [lb for lb in labels if lb not in parents]
    if len(roots) != 1:
        raise ValidationError(f"expected exactly one root, found {roots}")
    if roots[0] != ROOT_LABEL:
        raise ValidationError(f"tree must be rooted at {ROOT_LABEL!r}, found {roots[0]!r}")
    for child, parent in parents.items():
        if child not in label_set:
            raise ValidationError(f"provenance names unknown version {child!r}")
        if parent not in label_set:
            raise ValidationError(f"{child!r} has missing parent {parent!r}")
    # cycle check: walk each label up to the root
    for lb in labels:
        seen = {lb}
        cur = lb
        while cur in parents:
            cur = parents[cur]
            if cur in seen:
                raise ValidationError(f"provenance cycle through {cur!r}")
            seen.add(cur)


def build_tree(
    provenance: VersionSet | dict[str, str],
    embedding: Embedding2D,
    kinds: dict[str, str] | None = None,
) -> CorrectionTree:
    """Place provenance edges at embedded coordinates.

    `provenance` is either a VersionSet (whose parents/kinds are used) or a
    plain parent mapping.  Edge kind is the kind of the child version.
    """
    if isinstance(provenance, VersionSet):
        parents = provenance.parents
        kinds = dict(provenance.kinds) if kinds is None else kinds
    else:
        parents = provenance
    kinds = kinds or {}
    validate_provenance(embedding.labels, parents)

    nodes = tuple(
        {"label": lb, "x": float(embedding.coords[i, 0]),
         "y": float(embedding.coords[i, 1])}
        for i, lb in enumerate(embedding.labels)
    )
    edges = tuple(
        {"from": parents[child], "to": child, "kind": kinds.get(child, MACHINE_KIND)}
        for child in sorted(parents)
    )
    return CorrectionTree(nodes=nodes, edges=edges)
