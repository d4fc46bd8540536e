"""Two-dimensional principal-component export of aligned word pairs.

Mapped source vectors and their paired target vectors are stacked,
mean-centered, and projected onto the top two principal components. A
well-aligned pair lands on (nearly) coinciding 2-D points.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .embeddings import EmbeddingSet, SeedDictionary
from .linalg import svd

ProjectionRow = tuple[str, str, float, float]  # word, lang, pc1, pc2


def project_aligned_pairs(
    w: np.ndarray,
    src: EmbeddingSet,
    tgt: EmbeddingSet,
    pairs: SeedDictionary,
) -> list[ProjectionRow]:
    """Project the mapped source and target vectors of each pair to 2-D.

    Output rows are the source side of every pair followed by the target
    side (2 rows per pair); columns have exactly zero mean.
    """
    resolved = [
        (s, t) for s, t in pairs.pairs if s in src.index and t in tgt.index
    ]
    if len(resolved) < 3:
        raise ValueError("need at least 3 resolvable pairs to project")
    si = [src.index[s] for s, _ in resolved]
    ti = [tgt.index[t] for _, t in resolved]
    stack = np.vstack([src.vectors[si] @ w.T, tgt.vectors[ti]])
    centered = stack - stack.mean(axis=0)
    _, _, vt = svd(centered)
    coords = centered @ vt[:2].T
    rows: list[ProjectionRow] = []
    for k, (s, _) in enumerate(resolved):
        rows.append((s, src.lang, float(coords[k, 0]), float(coords[k, 1])))
    offset = len(resolved)
    for k, (_, t) in enumerate(resolved):
        rows.append(
            (t, tgt.lang, float(coords[offset + k, 0]), float(coords[offset + k, 1]))
        )
    return rows


def write_projection_csv(rows: list[ProjectionRow], path: str | Path) -> None:
    """CSV with header ``word,lang,pc1,pc2``; coordinates keep full precision."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["word", "lang", "pc1", "pc2"])
        for word, lang, pc1, pc2 in rows:
            writer.writerow([word, lang, repr(pc1), repr(pc2)])


def pca_export(
    w: np.ndarray,
    src: EmbeddingSet,
    tgt: EmbeddingSet,
    pairs: SeedDictionary,
    out: str | Path,
) -> list[ProjectionRow]:
    """Project the pairs and write the CSV in one call; returns the rows."""
    rows = project_aligned_pairs(w, src, tgt, pairs)
    write_projection_csv(rows, out)
    return rows


def read_projection_csv(path: str | Path) -> list[ProjectionRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["word", "lang", "pc1", "pc2"]:
            raise ValueError(f"{path}: unexpected header {header!r}")
        return [(w, lang, float(a), float(b)) for w, lang, a, b in reader]
