"""lexalign: align monolingual word-embedding spaces, induce bilingual dictionaries.

Three alignment routes over the same retrieval machinery:

* seed-dictionary orthogonal solve with iterative dictionary regeneration
  (:func:`lexalign.procrustes.train_procrustes`),
* adversarial self-supervised training of a linear mapping
  (:func:`lexalign.adversarial.train_adversarial`),
* adversarial training refined with frequency-anchored pseudo seeds
  (:func:`lexalign.refine.train_refined`).

Retrieval and evaluation use neighborhood-penalized cosine similarity
(:mod:`lexalign.csls`).
"""

from .adversarial import (
    AdversarialConfig,
    AdversarialResult,
    Discriminator,
    TrainingDiverged,
    train_adversarial,
)
from .csls import CslsIndex, build_index, csls_matrix, csls_score, induce_dictionary
from .embeddings import (
    EmbeddingSet,
    InducedDictionary,
    SeedDictionary,
    load_dictionary,
    load_embeddings,
    normalize,
    save_dictionary,
    save_embeddings,
)
from .evaluation import EvalReport, evaluate, render_report
from .linalg import (
    cosine,
    orthogonal_retraction,
    orthogonality_error,
    procrustes_solve,
    random_orthogonal,
    svd,
)
from .procrustes import ProcrustesConfig, train_procrustes
from .projection import pca_export, project_aligned_pairs
from .refine import RefineConfig, select_anchor_pairs, train_refined
from .synthetic import SynthSpec, generate

__version__ = "0.1.0"

__all__ = [
    "AdversarialConfig",
    "AdversarialResult",
    "CslsIndex",
    "Discriminator",
    "EmbeddingSet",
    "EvalReport",
    "InducedDictionary",
    "ProcrustesConfig",
    "RefineConfig",
    "SeedDictionary",
    "SynthSpec",
    "TrainingDiverged",
    "build_index",
    "cosine",
    "csls_matrix",
    "csls_score",
    "evaluate",
    "generate",
    "induce_dictionary",
    "load_dictionary",
    "load_embeddings",
    "normalize",
    "orthogonal_retraction",
    "orthogonality_error",
    "pca_export",
    "procrustes_solve",
    "project_aligned_pairs",
    "random_orthogonal",
    "render_report",
    "save_dictionary",
    "save_embeddings",
    "select_anchor_pairs",
    "svd",
    "train_adversarial",
    "train_procrustes",
    "train_refined",
]
