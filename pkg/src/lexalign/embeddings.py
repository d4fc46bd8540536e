"""Embedding sets and bilingual dictionaries: loading, validation, persistence.

Embedding files follow the plain-text convention: a header line
``<count> <dim>`` followed by one ``<token> <f_1> ... <f_dim>`` row per word.
Row order is taken as descending frequency order (rank 0 = most frequent).
Dictionary files hold one ``source target`` pair per line, TAB or space
separated; induced dictionaries carry a third TAB-separated score column.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class EmbeddingFormatError(ValueError):
    """An embedding file violates the header/row text format."""


class DictionaryFormatError(ValueError):
    """A dictionary file line cannot be parsed."""


@dataclass
class EmbeddingSet:
    """A vocabulary in frequency order plus one dense row vector per word.

    Immutable after construction: the vector matrix is marked read-only and
    instances are safe to share across concurrent consumers.
    """

    words: list[str]
    vectors: np.ndarray
    lang: str = ""
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.vectors = np.ascontiguousarray(self.vectors, dtype=np.float64)
        if self.vectors.ndim != 2:
            raise ValueError("vectors must be a 2-D matrix")
        if len(self.words) != self.vectors.shape[0]:
            raise ValueError(
                f"{len(self.words)} words but {self.vectors.shape[0]} vector rows"
            )
        self.index = {w: i for i, w in enumerate(self.words)}
        if len(self.index) != len(self.words):
            raise ValueError("vocabulary contains duplicate words")
        self.vectors.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.index


@dataclass
class SeedDictionary:
    """Anchor pairs (source_word, target_word).

    Source words may repeat with different targets. ``n_dropped`` records how
    many file pairs were discarded as out-of-vocabulary at load time.
    """

    pairs: list[tuple[str, str]]
    n_dropped: int = 0

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass
class InducedDictionary:
    """Translation candidates (source, target, score), best first."""

    entries: list[tuple[str, str, float]]
    direction: str = ""

    def __len__(self) -> int:
        return len(self.entries)

    def word_pairs(self) -> list[tuple[str, str]]:
        return [(s, t) for s, t, _ in self.entries]


def load_embeddings(
    path: str | Path, max_vocab: int, lang: str = ""
) -> EmbeddingSet:
    """Read the leading ``min(count, max_vocab)`` rows of an embedding file.

    The first whitespace-delimited field of each row is the token (so tokens
    may contain any non-whitespace bytes); duplicate tokens keep their first
    occurrence. Raises :class:`EmbeddingFormatError` naming the offending line
    on malformed headers, wrong component counts, or non-finite values.
    """
    if max_vocab <= 0:
        raise ValueError("max_vocab must be positive")
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header.strip():
            raise EmbeddingFormatError(f"{path}: empty file")
        fields = header.split()
        try:
            count, dim = int(fields[0]), int(fields[1])
            if len(fields) != 2 or count <= 0 or dim <= 0:
                raise ValueError
        except (ValueError, IndexError):
            raise EmbeddingFormatError(
                f"{path}:1: malformed header {header.strip()!r}, expected '<count> <dim>'"
            ) from None
        want = min(count, max_vocab)
        words: list[str] = []
        rows: list[np.ndarray] = []
        seen: set[str] = set()
        consumed = 0
        for lineno, line in enumerate(fh, start=2):
            if consumed >= want:
                break
            if not line.strip():
                continue
            consumed += 1
            fields = line.split()
            token, values = fields[0], fields[1:]
            if len(values) != dim:
                raise EmbeddingFormatError(
                    f"{path}:{lineno}: expected {dim} components, got {len(values)}"
                )
            try:
                vec = np.array(values, dtype=np.float64)
            except ValueError:
                raise EmbeddingFormatError(
                    f"{path}:{lineno}: unparseable vector component"
                ) from None
            if not np.all(np.isfinite(vec)):
                raise EmbeddingFormatError(f"{path}:{lineno}: non-finite value")
            if token in seen:
                continue
            seen.add(token)
            words.append(token)
            rows.append(vec)
    if not words:
        raise EmbeddingFormatError(f"{path}: no vector rows")
    return EmbeddingSet(words, np.vstack(rows), lang or path.stem)


def normalize(emb: EmbeddingSet) -> EmbeddingSet:
    """Rescale every row to unit Euclidean norm; word order is unchanged.

    Idempotent. Raises ``ValueError`` naming the word of any zero-norm row.
    """
    norms = np.linalg.norm(emb.vectors, axis=1)
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise ValueError(f"zero-norm vector for word {emb.words[zero[0]]!r}")
    return EmbeddingSet(list(emb.words), emb.vectors / norms[:, None], emb.lang)


def save_embeddings(emb: EmbeddingSet, path: str | Path) -> None:
    """Write an embedding set in the ``<count> <dim>`` header text format.

    Components are written with full round-trip precision so a save/load
    cycle reproduces the matrix exactly.
    """
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(emb)} {emb.dim}\n")
        for word, row in zip(emb.words, emb.vectors):
            fh.write(word + " " + " ".join(repr(float(v)) for v in row) + "\n")


def load_dictionary(
    path: str | Path, src: EmbeddingSet, tgt: EmbeddingSet
) -> SeedDictionary:
    """Read word pairs, keeping those resolvable in both vocabularies.

    A trailing third score column is tolerated so previously induced
    dictionaries re-load as seeds. Dropped out-of-vocabulary pairs are
    counted on the returned dictionary, never discarded silently.
    """
    path = Path(path)
    pairs: list[tuple[str, str]] = []
    dropped = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.split()
            if len(fields) == 3:
                try:
                    float(fields[2])
                except ValueError:
                    raise DictionaryFormatError(
                        f"{path}:{lineno}: third column is not a score"
                    ) from None
            elif len(fields) != 2:
                raise DictionaryFormatError(
                    f"{path}:{lineno}: expected 'source target', got {len(fields)} fields"
                )
            s, t = fields[0], fields[1]
            if s in src.index and t in tgt.index:
                pairs.append((s, t))
            else:
                dropped += 1
    return SeedDictionary(pairs, n_dropped=dropped)


def save_dictionary(dictionary: InducedDictionary, path: str | Path) -> None:
    """Write ``source<TAB>target<TAB>score`` lines in stored order."""
    with open(path, "w", encoding="utf-8") as fh:
        for s, t, score in dictionary.entries:
            fh.write(f"{s}\t{t}\t{repr(float(score))}\n")


def load_induced_dictionary(
    path: str | Path, direction: str = ""
) -> InducedDictionary:
    """Read a three-column induced dictionary written by :func:`save_dictionary`."""
    path = Path(path)
    entries: list[tuple[str, str, float]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise DictionaryFormatError(
                    f"{path}:{lineno}: expected 'source<TAB>target<TAB>score'"
                )
            try:
                score = float(fields[2])
            except ValueError:
                raise DictionaryFormatError(
                    f"{path}:{lineno}: unparseable score"
                ) from None
            entries.append((fields[0], fields[1], score))
    return InducedDictionary(entries, direction=direction)


def save_seed_dictionary(dictionary: SeedDictionary, path: str | Path) -> None:
    """Write two-column ``source<TAB>target`` lines in stored order."""
    with open(path, "w", encoding="utf-8") as fh:
        for s, t in dictionary.pairs:
            fh.write(f"{s}\t{t}\n")
