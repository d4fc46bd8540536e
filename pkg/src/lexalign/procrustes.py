"""Seed-anchored orthogonal alignment with iterative dictionary regeneration.

Each round solves the orthogonal-map least-squares problem on the current
anchor pairs, then regenerates the anchor set from mutually best-scoring
translation pairs under the new mapping. Seed pairs are always retained so
the solution cannot drift away from the supervision.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import csls
from .embeddings import EmbeddingSet, InducedDictionary, SeedDictionary
from .linalg import procrustes_solve


@dataclass
class ProcrustesConfig:
    n_iterations: int = 5
    dict_top_pairs: int = 50_000
    csls_k: int = 10
    mutual_only: bool = True

    def __post_init__(self) -> None:
        if min(self.n_iterations, self.dict_top_pairs, self.csls_k) < 1:
            raise ValueError("all ProcrustesConfig fields must be positive")


@dataclass
class IterationRecord:
    """One training round: anchors used, induced-pair quality, solve residual."""

    iteration: int
    n_anchors: int
    mean_score: float
    residual: float

    def format(self) -> str:
        return (
            f"iteration {self.iteration}: anchors={self.n_anchors} "
            f"mean_csls={self.mean_score:.6f} residual={self.residual:.6e}"
        )


def resolve_pairs(
    pairs: list[tuple[str, str]], src: EmbeddingSet, tgt: EmbeddingSet
) -> tuple[np.ndarray, np.ndarray]:
    """Word pairs to aligned (source row indices, target row indices)."""
    idx = [
        (src.index[s], tgt.index[t])
        for s, t in pairs
        if s in src.index and t in tgt.index
    ]
    if not idx:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    si, ti = zip(*idx)
    return np.asarray(si, dtype=np.int64), np.asarray(ti, dtype=np.int64)


def train_procrustes(
    src: EmbeddingSet,
    tgt: EmbeddingSet,
    seed: SeedDictionary,
    config: ProcrustesConfig | None = None,
) -> tuple[np.ndarray, InducedDictionary, list[IterationRecord]]:
    """Alternate orthogonal solves with mutual-pair dictionary regeneration.

    Returns the final mapping (orthogonal by construction), the dictionary
    induced under it in the last round, and one log record per round. Both
    embedding sets must be unit-normalized.
    """
    config = config or ProcrustesConfig()
    direction = f"{src.lang}-{tgt.lang}"
    seed_pairs = [
        (s, t) for s, t in seed.pairs if s in src.index and t in tgt.index
    ]
    if not seed_pairs:
        raise ValueError("no seed pairs resolve against the vocabularies")
    anchor_pairs = seed_pairs[: config.dict_top_pairs]

    w: np.ndarray | None = None
    induced: InducedDictionary | None = None
    log: list[IterationRecord] = []
    for iteration in range(1, config.n_iterations + 1):
        si, ti = resolve_pairs(anchor_pairs, src, tgt)
        if si.size == 0:
            raise RuntimeError(
                f"anchor dictionary collapsed to 0 pairs at iteration {iteration}"
            )
        x_a = src.vectors[si]
        y_a = tgt.vectors[ti]
        w = procrustes_solve(x_a, y_a)
        residual = float(np.linalg.norm(x_a @ w.T - y_a))
        index = csls.build_index(
            csls.normalize_rows(src.vectors @ w.T), tgt.vectors, config.csls_k
        )
        induced = csls.induce_dictionary(
            index,
            src.words,
            tgt.words,
            top_pairs=config.dict_top_pairs,
            mutual_only=config.mutual_only,
            direction=direction,
        )
        if not induced.entries:
            raise RuntimeError(
                f"dictionary induction produced 0 pairs at iteration {iteration}"
            )
        mean_score = float(np.mean([e[2] for e in induced.entries]))
        log.append(IterationRecord(iteration, int(si.size), mean_score, residual))
        if iteration < config.n_iterations:
            merged = list(seed_pairs[: config.dict_top_pairs])
            seen = set(merged)
            for s, t, _ in induced.entries:
                if len(merged) >= config.dict_top_pairs:
                    break
                if (s, t) not in seen:
                    merged.append((s, t))
                    seen.add((s, t))
            anchor_pairs = merged
    assert w is not None and induced is not None
    return w, induced, log
