"""Word-vector storage, phrase vectors, cosine similarity, neighborhoods.

Stores are immutable after loading and safe to share across threads. All
vectors are kept as read-only float32 arrays exactly as parsed; similarity
arithmetic upcasts to float64.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional

import numpy as np


class EmbeddingLoadError(ValueError):
    """A vector file is malformed, truncated, or contains non-finite data."""


class UndefinedSimilarityError(ValueError):
    """Cosine similarity was requested for a zero-norm vector."""


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class EmbeddingStore:
    """Immutable word → vector map with a fixed dimension."""

    __slots__ = ("_entries", "dimension")

    def __init__(self, entries: Mapping[str, np.ndarray], dimension: int):
        self._entries = dict(entries)
        self.dimension = dimension

    @classmethod
    def from_entries(cls, entries: Mapping[str, np.ndarray], dimension: int):
        frozen = {
            word: _freeze(np.asarray(vec, dtype=np.float32).copy())
            for word, vec in entries.items()
        }
        return cls(frozen, dimension)

    def get(self, word: str) -> Optional[np.ndarray]:
        return self._entries.get(word)

    def __contains__(self, word: str) -> bool:
        return word in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def words(self):
        return self._entries.keys()


@dataclass(frozen=True)
class PhraseVector:
    components: np.ndarray
    known_word_count: int


@dataclass(frozen=True)
class NeighborhoodSet:
    owner: str
    members: tuple[tuple[str, float], ...]


def load_word2vec_binary(path) -> EmbeddingStore:
    """Load the standard binary layout: ASCII header line, then per entry a
    space-terminated word followed by dimension little-endian float32 values
    and an optional newline.
    """
    data = Path(path).read_bytes()
    header_end = data.find(b"\n")
    if header_end < 0:
        raise EmbeddingLoadError("missing header line (byte offset 0)")
    try:
        vocab_text, dim_text = data[:header_end].decode("ascii").split()
        vocab_size, dimension = int(vocab_text), int(dim_text)
    except (UnicodeDecodeError, ValueError) as exc:
        raise EmbeddingLoadError(
            f"malformed header (byte offset 0): {exc}"
        ) from None
    if vocab_size < 0 or dimension < 0:
        raise EmbeddingLoadError("negative header field (byte offset 0)")

    entries: dict[str, np.ndarray] = {}
    pos = header_end + 1
    for _ in range(vocab_size):
        space = data.find(b" ", pos)
        if space < 0:
            raise EmbeddingLoadError(
                f"truncated entry: no word terminator (byte offset {pos})"
            )
        try:
            word = data[pos:space].decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EmbeddingLoadError(
                f"undecodable word (byte offset {pos}): {exc}"
            ) from None
        vec_start = space + 1
        vec_end = vec_start + 4 * dimension
        if vec_end > len(data):
            raise EmbeddingLoadError(
                f"truncated vector for {word!r} (byte offset {vec_start})"
            )
        vector = np.frombuffer(data[vec_start:vec_end], dtype="<f4")
        if not np.all(np.isfinite(vector)):
            raise EmbeddingLoadError(
                f"non-finite component in {word!r} (byte offset {vec_start})"
            )
        if word not in entries:
            entries[word] = _freeze(vector.copy())
        pos = vec_end
        if data[pos : pos + 1] == b"\n":
            pos += 1
    if data[pos:].strip(b"\n "):
        raise EmbeddingLoadError(
            f"unexpected trailing bytes after {vocab_size} entries "
            f"(byte offset {pos})"
        )
    return EmbeddingStore(entries, dimension)


def load_word2vec_text(path) -> EmbeddingStore:
    """Load UTF-8 ``word v1 ... vd`` lines with an optional count/dim header."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    declared: Optional[int] = None
    dimension: Optional[int] = None
    start = 0
    if lines:
        first = lines[0].split()
        if len(first) == 2:
            try:
                declared, dimension = int(first[0]), int(first[1])
                start = 1
            except ValueError:
                pass

    entries: dict[str, np.ndarray] = {}
    parsed = 0
    for line_no, line in enumerate(lines[start:], start=start + 1):
        if not line.strip():
            continue
        fields = line.split()
        word, components = fields[0], fields[1:]
        if not components:
            raise EmbeddingLoadError(f"line {line_no}: no vector components")
        if dimension is None:
            dimension = len(components)
        if len(components) != dimension:
            raise EmbeddingLoadError(
                f"line {line_no}: expected {dimension} components, "
                f"found {len(components)}"
            )
        try:
            vector = np.array([float(c) for c in components], dtype=np.float32)
        except ValueError:
            raise EmbeddingLoadError(
                f"line {line_no}: unparseable vector component"
            ) from None
        if not np.all(np.isfinite(vector)):
            raise EmbeddingLoadError(f"line {line_no}: non-finite component")
        parsed += 1
        if word not in entries:
            entries[word] = _freeze(vector)
    if declared is not None and parsed != declared:
        raise EmbeddingLoadError(
            f"header declares {declared} entries but file has {parsed}"
        )
    return EmbeddingStore(entries, dimension if dimension is not None else 0)


def phrase_vector(store: EmbeddingStore, phrase) -> Optional[PhraseVector]:
    """Sum the vectors of in-vocabulary words; None when every word is OOV.

    Lookup tries the normalized form first, then the original surface form,
    so case-sensitive vocabularies still resolve proper nouns. ``phrase``
    may be a CandidatePhrase or a plain iterable of words.
    """
    words = getattr(phrase, "words", None)
    if words is None:
        words = tuple(phrase)
    surfaces = getattr(phrase, "surfaces", words)

    total: Optional[np.ndarray] = None
    known = 0
    for normalized, surface in zip(words, surfaces):
        vec = store.get(normalized)
        if vec is None and surface != normalized:
            vec = store.get(surface)
        if vec is None:
            continue
        known += 1
        total = vec.astype(np.float64) if total is None else total + vec
    if known == 0:
        return None
    return PhraseVector(components=_freeze(total), known_word_count=known)


def _as_array(value) -> np.ndarray:
    components = getattr(value, "components", value)
    return np.asarray(components, dtype=np.float64)


def cosine_similarity(a, b) -> float:
    va, vb = _as_array(a), _as_array(b)
    norm_a = float(np.linalg.norm(va))
    norm_b = float(np.linalg.norm(vb))
    if norm_a == 0.0 or norm_b == 0.0:
        raise UndefinedSimilarityError("cosine of a zero-norm vector")
    return float(va @ vb) / (norm_a * norm_b)


def build_neighborhoods(candidates, store: EmbeddingStore, threshold):
    """Map each phrase_key to its neighborhood at the given threshold.

    Membership is inclusive (similarity ≥ threshold) and document-internal.
    Every set contains its owner at exactly 1.0. Candidates without a usable
    vector (fully OOV or zero norm) get singleton sets, as does everything
    when threshold is None.
    """
    keys = [cand.phrase_key for cand in candidates]
    vectors: dict[str, np.ndarray] = {}
    if threshold is not None:
        for cand in candidates:
            pv = phrase_vector(store, cand)
            if pv is None:
                continue
            arr = np.asarray(pv.components, dtype=np.float64)
            if float(np.linalg.norm(arr)) == 0.0:
                continue
            vectors[cand.phrase_key] = arr

    neighbors: dict[str, list[tuple[str, float]]] = {key: [] for key in keys}
    vector_keys = [k for k in keys if k in vectors]
    for i, key_a in enumerate(vector_keys):
        for key_b in vector_keys[i + 1 :]:
            sim = cosine_similarity(vectors[key_a], vectors[key_b])
            if sim >= threshold:
                neighbors[key_a].append((key_b, sim))
                neighbors[key_b].append((key_a, sim))

    result: dict[str, NeighborhoodSet] = {}
    for key in keys:
        members = [(key, 1.0)] + neighbors[key]
        members.sort(key=lambda m: (-m[1], m[0]))
        result[key] = NeighborhoodSet(owner=key, members=tuple(members))
    return result
