"""Refinement of an adversarially learned mapping with pseudo-seed anchors.

High-frequency translation pairs induced under the adversarial mapping tend
to be the reliable ones, so they stand in for a human seed dictionary: the
mutually best-scoring pairs are harvested, the most frequent ``s`` of them
become anchors, and the iterative orthogonal-solve loop takes over, spreading
the mapping to the lower-frequency vocabulary.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import csls
from .embeddings import EmbeddingSet, InducedDictionary, SeedDictionary
from .linalg import orthogonality_error
from .procrustes import IterationRecord, ProcrustesConfig, train_procrustes


@dataclass
class RefineConfig:
    s_anchor_pairs: int = 5000
    procrustes: ProcrustesConfig = field(default_factory=ProcrustesConfig)

    def __post_init__(self) -> None:
        if self.s_anchor_pairs < 1:
            raise ValueError("s_anchor_pairs must be positive")
        if self.s_anchor_pairs > self.procrustes.dict_top_pairs:
            raise ValueError("s_anchor_pairs cannot exceed dict_top_pairs")


def select_anchor_pairs(
    induced: InducedDictionary, src: EmbeddingSet, tgt: EmbeddingSet, s: int
) -> SeedDictionary:
    """The s pairs whose source words are most frequent (lowest rank).

    Rank ties are broken by descending score. Asking for more pairs than the
    dictionary holds keeps everything and warns.
    """
    if s < 1:
        raise ValueError("s must be positive")
    ranked = sorted(
        (e for e in induced.entries if e[0] in src.index and e[1] in tgt.index),
        key=lambda e: (src.index[e[0]], -e[2]),
    )
    if len(ranked) < s:
        warnings.warn(
            f"requested {s} anchor pairs but only {len(ranked)} are available",
            stacklevel=2,
        )
    return SeedDictionary([(e[0], e[1]) for e in ranked[:s]])


def train_refined(
    src: EmbeddingSet,
    tgt: EmbeddingSet,
    adversarial_w: np.ndarray,
    config: RefineConfig | None = None,
) -> tuple[np.ndarray, InducedDictionary, list[IterationRecord]]:
    """Harvest anchors under the adversarial mapping, then refine.

    The dictionary regeneration inside the loop is identical to the
    seed-dictionary method's; only the seed origin differs.
    """
    config = config or RefineConfig()
    if orthogonality_error(adversarial_w) > 0.05:
        raise ValueError("adversarial mapping is too far from orthogonal")
    pc = config.procrustes
    index = csls.build_index(
        csls.normalize_rows(src.vectors @ adversarial_w.T), tgt.vectors, pc.csls_k
    )
    induced = csls.induce_dictionary(
        index,
        src.words,
        tgt.words,
        top_pairs=pc.dict_top_pairs,
        mutual_only=True,
        direction=f"{src.lang}-{tgt.lang}",
    )
    if not induced.entries:
        raise RuntimeError(
            "adversarial mapping induced no mutual translation pairs; "
            "nothing to refine"
        )
    pseudo_seed = select_anchor_pairs(induced, src, tgt, config.s_anchor_pairs)
    return train_procrustes(src, tgt, pseudo_seed, pc)
