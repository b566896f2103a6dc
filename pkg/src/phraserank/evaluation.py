"""Dataset loading and stem-matched precision/recall scoring.

A dataset directory pairs `<id>.txt` (raw UTF-8 text) or `<id>.pos`
(pretagged `surface_TAG` lines) with `<id>.key` holding one gold phrase
per line. Predictions and gold phrases compare equal when their wordwise
Porter stems, joined by single spaces, coincide.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .porter import porter_stem
from .textproc import Document, parse_pretagged, pos_tag, tokenize


def stem_phrase(phrase: str) -> str:
    return " ".join(porter_stem(word) for word in phrase.lower().split())


@dataclass(frozen=True)
class GoldSet:
    """Gold keyphrases for one document, with their stemmed forms."""

    document_id: str
    phrases: frozenset[str]
    stemmed: frozenset[str]

    @classmethod
    def from_phrases(cls, document_id: str, phrases: Iterable[str]) -> "GoldSet":
        cleaned = frozenset(
            p.strip().lower() for p in phrases if p.strip()
        )
        return cls(
            document_id=document_id,
            phrases=cleaned,
            stemmed=frozenset(stem_phrase(p) for p in cleaned),
        )


@dataclass(frozen=True)
class EvalResult:
    per_document: tuple[tuple[str, int, int, int], ...]
    precision: float
    recall: float
    f_score: float


def load_dataset(directory: str | Path) -> list[tuple[Document, GoldSet]]:
    """Read document/gold pairs from a directory.

    `<id>.pos` wins over `<id>.txt` when both exist. Ids lacking either a
    text source or a `.key` file are skipped with a warning.
    """
    root = Path(directory)
    by_id: dict[str, dict[str, Path]] = {}
    for path in root.iterdir():
        if path.suffix in (".txt", ".pos", ".key") and path.is_file():
            by_id.setdefault(path.stem, {})[path.suffix] = path
    pairs: list[tuple[Document, GoldSet]] = []
    for doc_id in sorted(by_id):
        files = by_id[doc_id]
        source = files.get(".pos") or files.get(".txt")
        gold_path = files.get(".key")
        if source is None or gold_path is None:
            missing = "text source" if source is None else "key file"
            warnings.warn(
                f"skipping dataset id {doc_id!r}: missing {missing}",
                stacklevel=2,
            )
            continue
        content = source.read_text(encoding="utf-8")
        if source.suffix == ".pos":
            document = parse_pretagged(content, source_id=doc_id)
        else:
            document = pos_tag(tokenize(content, source_id=doc_id))
        gold = GoldSet.from_phrases(
            doc_id, gold_path.read_text(encoding="utf-8").splitlines()
        )
        pairs.append((document, gold))
    return pairs


def filter_present_gold(gold: GoldSet, document: Document) -> GoldSet:
    """Keep gold phrases whose stem sequence occurs contiguously in the
    document's stemmed token sequence."""
    doc_stems = [porter_stem(token.normalized) for token in document.tokens]

    def present(stemmed_phrase: str) -> bool:
        target = stemmed_phrase.split()
        span = len(target)
        if span == 0 or span > len(doc_stems):
            return False
        return any(
            doc_stems[i : i + span] == target
            for i in range(len(doc_stems) - span + 1)
        )

    kept = frozenset(p for p in gold.phrases if present(stem_phrase(p)))
    return GoldSet(
        document_id=gold.document_id,
        phrases=kept,
        stemmed=frozenset(stem_phrase(p) for p in kept),
    )


def score_document(
    predicted: Sequence[str], gold: GoldSet
) -> tuple[int, int, int]:
    """Return (stem-matched correct, predicted count, gold count)."""
    predicted_stems = {stem_phrase(p) for p in predicted}
    correct = len(predicted_stems & gold.stemmed)
    return correct, len(predicted), len(gold.stemmed)


def aggregate_scores(
    per_document: Sequence[tuple[str, int, int, int]],
    macro: bool = False,
) -> EvalResult:
    """Pool per-document counts into precision/recall/F.

    Micro mode divides summed counts; macro mode averages per-document
    precision and recall, then takes the harmonic mean of those averages.
    """
    if not per_document:
        raise ValueError("cannot aggregate zero documents")
    if macro:
        precisions = [c / p if p else 0.0 for _, c, p, _ in per_document]
        recalls = [c / g if g else 0.0 for _, c, _, g in per_document]
        precision = sum(precisions) / len(precisions)
        recall = sum(recalls) / len(recalls)
    else:
        correct = sum(c for _, c, _, _ in per_document)
        predicted = sum(p for _, _, p, _ in per_document)
        gold = sum(g for _, _, _, g in per_document)
        precision = correct / predicted if predicted else 0.0
        recall = correct / gold if gold else 0.0
    if precision + recall > 0:
        f_score = 2 * precision * recall / (precision + recall)
    else:
        f_score = 0.0
    return EvalResult(
        per_document=tuple(per_document),
        precision=precision,
        recall=recall,
        f_score=f_score,
    )
