"""Cross-domain similarity local scaling (CSLS) retrieval.

Plain cosine retrieval in high dimensions suffers from hubs: a few vectors
are the nearest neighbor of a disproportionate share of queries. CSLS
penalizes each point by the mean cosine to its k nearest cross-lingual
neighbors,

    csls(x, y) = 2 cos(x, y) - r_src(x) - r_tgt(y),

where r_src(x) is the mean cosine between x and its k nearest target rows
and r_tgt(y) the symmetric quantity over the mapped source rows. Neighbor
search is exact (full scan), chunked to bound memory.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embeddings import InducedDictionary

DEFAULT_K = 10
_UNIT_ATOL = 1e-6


@dataclass
class CslsIndex:
    """Precomputed neighborhood penalties over two unit-row matrices.

    Immutable once built; safe for concurrent reads.
    """

    mapped_src: np.ndarray  # rows w @ x, unit norm
    tgt: np.ndarray  # rows y, unit norm
    k: int
    r_src: np.ndarray  # (n,) mean cosine of each source row to its k nearest targets
    r_tgt: np.ndarray  # (m,) mean cosine of each target row to its k nearest sources

    @property
    def n_src(self) -> int:
        return self.mapped_src.shape[0]

    @property
    def n_tgt(self) -> int:
        return self.tgt.shape[0]


def _check_unit_rows(matrix: np.ndarray, label: str) -> np.ndarray:
    matrix = np.ascontiguousarray(matrix, dtype=np.float64)
    norms = np.linalg.norm(matrix, axis=1)
    if not np.allclose(norms, 1.0, atol=_UNIT_ATOL):
        raise ValueError(f"{label} rows must be unit-normalized")
    return matrix


def normalize_rows(matrix: np.ndarray) -> np.ndarray:
    """Unit-normalize rows, e.g. mapping outputs of a near-orthogonal w."""
    matrix = np.asarray(matrix, dtype=np.float64)
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    if np.any(norms == 0.0):
        raise ValueError("cannot normalize a zero row")
    return matrix / norms


def _topk_row_means(a: np.ndarray, b: np.ndarray, k: int, chunk_size: int) -> np.ndarray:
    """For each row of a: mean of the k largest cosines against rows of b."""
    out = np.empty(a.shape[0])
    for start in range(0, a.shape[0], chunk_size):
        stop = min(start + chunk_size, a.shape[0])
        sims = a[start:stop] @ b.T
        if k >= b.shape[0]:
            out[start:stop] = sims.mean(axis=1)
        else:
            out[start:stop] = np.partition(sims, -k, axis=1)[:, -k:].mean(axis=1)
    return out


def build_index(
    mapped_src: np.ndarray,
    tgt: np.ndarray,
    k: int = DEFAULT_K,
    chunk_size: int = 1024,
) -> CslsIndex:
    """Compute both neighborhood penalty vectors with an exact full scan."""
    mapped_src = _check_unit_rows(mapped_src, "mapped source")
    tgt = _check_unit_rows(tgt, "target")
    if mapped_src.shape[1] != tgt.shape[1]:
        raise ValueError("source and target dimensions differ")
    if k < 1:
        raise ValueError("k must be positive")
    if k > tgt.shape[0] or k > mapped_src.shape[0]:
        raise ValueError(
            f"k={k} exceeds an opposing vocabulary "
            f"({mapped_src.shape[0]} source, {tgt.shape[0]} target rows)"
        )
    r_src = _topk_row_means(mapped_src, tgt, k, chunk_size)
    r_tgt = _topk_row_means(tgt, mapped_src, k, chunk_size)
    return CslsIndex(mapped_src, tgt, k, r_src, r_tgt)


def csls_score(index: CslsIndex, i: int, j: int) -> float:
    """Score one (source row, target row) pair."""
    if not (0 <= i < index.n_src and 0 <= j < index.n_tgt):
        raise IndexError(f"pair ({i}, {j}) out of range")
    cos = float(index.mapped_src[i] @ index.tgt[j])
    return 2.0 * cos - float(index.r_src[i]) - float(index.r_tgt[j])


def csls_matrix(index: CslsIndex, rows: np.ndarray | None = None) -> np.ndarray:
    """Dense score matrix for the given source rows (all rows by default).

    Intended for small instances and tests; induction and ranking use the
    chunked paths below.
    """
    src = index.mapped_src if rows is None else index.mapped_src[rows]
    r_src = index.r_src if rows is None else index.r_src[rows]
    return 2.0 * (src @ index.tgt.T) - r_src[:, None] - index.r_tgt[None, :]


def best_targets(
    index: CslsIndex, rows: np.ndarray | None = None, chunk_size: int = 1024
) -> tuple[np.ndarray, np.ndarray]:
    """Argmax-scoring target for each source row; ties go to the lower index.

    Returns (target indices, scores).
    """
    src = index.mapped_src if rows is None else index.mapped_src[rows]
    r_src = index.r_src if rows is None else index.r_src[rows]
    best_j = np.empty(src.shape[0], dtype=np.int64)
    best_s = np.empty(src.shape[0])
    for start in range(0, src.shape[0], chunk_size):
        stop = min(start + chunk_size, src.shape[0])
        scores = 2.0 * (src[start:stop] @ index.tgt.T) - index.r_tgt[None, :]
        j = scores.argmax(axis=1)
        best_j[start:stop] = j
        best_s[start:stop] = scores[np.arange(stop - start), j] - r_src[start:stop]
    return best_j, best_s


def best_sources(index: CslsIndex, chunk_size: int = 1024) -> np.ndarray:
    """Argmax-scoring source row for each target row (lower index on ties)."""
    best_i = np.empty(index.n_tgt, dtype=np.int64)
    for start in range(0, index.n_tgt, chunk_size):
        stop = min(start + chunk_size, index.n_tgt)
        scores = 2.0 * (index.tgt[start:stop] @ index.mapped_src.T) - index.r_src[None, :]
        best_i[start:stop] = scores.argmax(axis=1)
    return best_i


def top_targets_for_rows(
    index: CslsIndex, rows: np.ndarray, n: int, chunk_size: int = 256
) -> np.ndarray:
    """Top-n target indices per source row, ranked by descending score.

    Ties are broken toward the lower target index for determinism.
    """
    rows = np.asarray(rows, dtype=np.int64)
    n = min(n, index.n_tgt)
    out = np.empty((rows.shape[0], n), dtype=np.int64)
    for start in range(0, rows.shape[0], chunk_size):
        stop = min(start + chunk_size, rows.shape[0])
        scores = (
            2.0 * (index.mapped_src[rows[start:stop]] @ index.tgt.T)
            - index.r_tgt[None, :]
        )
        if n < index.n_tgt:
            cand = np.argpartition(-scores, n - 1, axis=1)[:, :n]
        else:
            cand = np.tile(np.arange(index.n_tgt), (stop - start, 1))
        for r in range(stop - start):
            cs = scores[r, cand[r]]
            order = np.lexsort((cand[r], -cs))
            out[start + r] = cand[r][order]
    return out


def induce_dictionary(
    index: CslsIndex,
    src_words: list[str],
    tgt_words: list[str],
    top_pairs: int,
    mutual_only: bool = True,
    direction: str = "",
) -> InducedDictionary:
    """Harvest translation pairs: each source row nominates its best target.

    With ``mutual_only``, a pair survives only when source and target are
    each other's argmax, which yields a partial one-to-one matching. Entries
    are sorted by descending score (source index breaks ties) and truncated
    to ``top_pairs``.
    """
    if top_pairs < 1:
        raise ValueError("top_pairs must be positive")
    if len(src_words) != index.n_src or len(tgt_words) != index.n_tgt:
        raise ValueError("word list lengths do not match the index")
    best_j, best_s = best_targets(index)
    keep = np.arange(index.n_src)
    if mutual_only:
        best_i = best_sources(index)
        keep = keep[best_i[best_j[keep]] == keep]
    order = np.lexsort((keep, -best_s[keep]))
    keep = keep[order][:top_pairs]
    entries = [
        (src_words[i], tgt_words[best_j[i]], float(best_s[i])) for i in keep
    ]
    return InducedDictionary(entries, direction=direction)
