"""Synthetic bilingual embedding pairs with a known ground-truth mapping.

Generates a source set, a target set obtained by rotating the source rows
with a random orthogonal matrix (plus optional Gaussian noise), the true
mapping itself, and the gold dictionary pairing each word with its rotated
twin. Every alignment algorithm in the package is verifiable against these
instances at desk scale.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embeddings import EmbeddingSet, SeedDictionary
from .linalg import random_orthogonal


@dataclass(frozen=True)
class SynthSpec:
    """Parameters of one synthetic language pair.

    ``hubness_factor`` > 0 stretches the first axis before normalization,
    concentrating vectors near a pole so that some targets become hubs.
    ``n_clusters`` > 0 draws words around that many Gaussian cluster centers
    (relative spread ``cluster_spread``) instead of i.i.d.; ``anisotropy``
    > 0 applies a decaying per-axis envelope exp(-anisotropy * i / dim).
    Overlapping anisotropic clusters mimic the lumpy, low-rank-dominated
    shape of real embedding clouds, the structure distribution-matching
    methods need.
    """

    n_words: int
    dim: int
    noise_sigma: float = 0.0
    rotation_seed: int = 0
    data_seed: int = 0
    hubness_factor: float = 0.0
    n_clusters: int = 0
    cluster_spread: float = 0.25
    anisotropy: float = 0.0

    def __post_init__(self) -> None:
        if self.n_words < 2:
            raise ValueError("n_words must be at least 2")
        if self.dim < 2:
            raise ValueError("dim must be at least 2")
        if self.noise_sigma < 0 or self.hubness_factor < 0:
            raise ValueError("noise_sigma and hubness_factor must be non-negative")
        if self.n_clusters < 0 or self.cluster_spread <= 0:
            raise ValueError("invalid cluster parameters")
        if self.anisotropy < 0:
            raise ValueError("anisotropy must be non-negative")


def generate(
    spec: SynthSpec,
) -> tuple[EmbeddingSet, EmbeddingSet, np.ndarray, SeedDictionary]:
    """Build (source set, target set, true mapping, gold dictionary).

    Deterministic under the spec's seeds. Both sets come out unit-normalized;
    at ``noise_sigma`` 0 each target row equals the mapped source row exactly.
    """
    rng = np.random.default_rng(spec.data_seed)
    if spec.n_clusters > 0:
        centers = rng.standard_normal((spec.n_clusters, spec.dim))
        assign = np.arange(spec.n_words) % spec.n_clusters
        base = centers[assign] + spec.cluster_spread * rng.standard_normal(
            (spec.n_words, spec.dim)
        )
    else:
        base = rng.standard_normal((spec.n_words, spec.dim))
    if spec.anisotropy > 0:
        base = base * np.exp(-spec.anisotropy * np.arange(spec.dim) / spec.dim)
    if spec.hubness_factor > 0:
        base = base.copy()
        base[:, 0] *= spec.hubness_factor
    src_vectors = base / np.linalg.norm(base, axis=1, keepdims=True)

    rotation = random_orthogonal(spec.dim, np.random.default_rng(spec.rotation_seed))
    mapped = src_vectors @ rotation.T
    if spec.noise_sigma > 0:
        mapped = mapped + spec.noise_sigma * rng.standard_normal(mapped.shape)
    tgt_vectors = mapped / np.linalg.norm(mapped, axis=1, keepdims=True)

    src_words = [f"w{i}" for i in range(spec.n_words)]
    tgt_words = [f"w{i}'" for i in range(spec.n_words)]
    src = EmbeddingSet(src_words, src_vectors, lang="src")
    tgt = EmbeddingSet(tgt_words, tgt_vectors, lang="tgt")
    gold = SeedDictionary(list(zip(src_words, tgt_words)))
    return src, tgt, rotation, gold
