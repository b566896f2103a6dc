"""Reference scoring methods used for comparison runs.

All four baselines share the candidate extraction and ranking conventions
of the main model: TF-IDF sums word-level tf-idf over phrase words, and
the three graph baselines run the same power-iteration engine on a word
co-occurrence graph, differing only in edge weighting and jump vector.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .graphrank import (
    JumpVector,
    PhraseGraph,
    RankedList,
    biased_pagerank,
    rank_phrases,
    uniform_jump,
)
from .porter import porter_stem
from .textproc import CandidatePhrase, CoarseTag, Document


@dataclass(frozen=True)
class CorpusStats:
    """Document frequencies of stemmed words over a fixed corpus."""

    document_count: int
    document_frequency: Mapping[str, int]


def build_corpus_stats(documents: Sequence[Document]) -> CorpusStats:
    """Count, per stemmed word, how many documents contain it."""
    if not documents:
        raise ValueError("corpus statistics need at least one document")
    df: dict[str, int] = {}
    for doc in documents:
        seen: set[str] = set()
        for token in doc.tokens:
            stem = porter_stem(token.normalized)
            if stem not in seen:
                seen.add(stem)
                df[stem] = df.get(stem, 0) + 1
    return CorpusStats(document_count=len(documents), document_frequency=df)


def tfidf_rank(
    document: Document,
    candidates: Sequence[CandidatePhrase],
    stats: CorpusStats,
) -> RankedList:
    """Score phrases by summed word tf * ln(N/df) over stemmed words.

    Words absent from the corpus statistics are treated as occurring in a
    single document.
    """
    tf = Counter(porter_stem(token.normalized) for token in document.tokens)
    n_docs = stats.document_count
    scores: dict[str, float] = {}
    for cand in candidates:
        total = 0.0
        for word in cand.words:
            stem = porter_stem(word)
            df = stats.document_frequency.get(stem, 1)
            total += tf[stem] * math.log(n_docs / df)
        scores[cand.phrase_key] = total
    return rank_phrases(scores, candidates, method_name="tfidf")


def _word_occurrences(document: Document) -> list[tuple[int, str]]:
    return [
        (token.token_index, token.normalized)
        for token in document.tokens
        if token.tag is not CoarseTag.OTHER
    ]


def _word_graph(document: Document, w: int, weighted: bool) -> PhraseGraph:
    """Co-occurrence graph over adjective/noun words.

    Vertices keep first-appearance order; an edge connects two distinct
    words whenever their token positions differ by at most w, weighted by
    the number of such occurrence pairs (or 1 for the unweighted variant).
    """
    if w < 1:
        raise ValueError(f"window size must be at least 1, got {w}")
    occurrences = _word_occurrences(document)
    vertices: list[str] = []
    seen: set[str] = set()
    for _, word in occurrences:
        if word not in seen:
            seen.add(word)
            vertices.append(word)
    counts: dict[tuple[str, str], int] = {}
    for i, (pos_a, word_a) in enumerate(occurrences):
        j = i + 1
        while j < len(occurrences) and occurrences[j][0] - pos_a <= w:
            word_b = occurrences[j][1]
            if word_b != word_a:
                key = (word_a, word_b) if word_a <= word_b else (word_b, word_a)
                counts[key] = counts.get(key, 0) + 1
            j += 1
    weights = {
        key: float(count) if weighted else 1.0 for key, count in counts.items()
    }
    return PhraseGraph(vertices=tuple(vertices), weights=weights)


def _word_scores(
    document: Document,
    w: int,
    weighted: bool,
    jump: JumpVector | None,
    d: float,
    tolerance: float,
    max_iterations: int,
) -> Mapping[str, float]:
    graph = _word_graph(document, w, weighted)
    if not graph.vertices:
        return {}
    if jump is None:
        jump = uniform_jump(graph.vertices)
    result = biased_pagerank(
        graph, jump, d=d, tolerance=tolerance, max_iterations=max_iterations
    )
    return result.scores


def _phrase_sum_ranklist(
    word_scores: Mapping[str, float],
    candidates: Sequence[CandidatePhrase],
    method_name: str,
) -> RankedList:
    scores = {
        cand.phrase_key: sum(word_scores.get(word, 0.0) for word in cand.words)
        for cand in candidates
    }
    return rank_phrases(scores, candidates, method_name=method_name)


def textrank(
    document: Document,
    w: int = 10,
    top_fraction: float = 1 / 3,
    *,
    d: float = 0.85,
    tolerance: float = 1e-4,
    max_iterations: int = 100,
) -> RankedList:
    """Unweighted word-graph ranking with top-fraction selection.

    The top max(1, floor(n * top_fraction)) words by score are kept, and
    runs of selected words at consecutive token positions within one
    sentence collapse into multi-word phrases scored by word-score sum.
    """
    word_scores = _word_scores(
        document, w, weighted=False, jump=None,
        d=d, tolerance=tolerance, max_iterations=max_iterations,
    )
    if not word_scores:
        return RankedList(entries=(), method_name="textrank")
    first_pos: dict[str, int] = {}
    for token in document.tokens:
        if token.tag is not CoarseTag.OTHER:
            first_pos.setdefault(token.normalized, token.token_index)
    order = sorted(
        word_scores,
        key=lambda word: (-word_scores[word], first_pos[word], word),
    )
    keep = max(1, int(len(order) * top_fraction))
    selected = set(order[:keep])

    phrases: dict[str, tuple[float, int]] = {}
    run: list = []

    def flush() -> None:
        if not run:
            return
        key = " ".join(token.normalized for token in run)
        if key not in phrases:
            score = sum(word_scores[token.normalized] for token in run)
            phrases[key] = (score, run[0].token_index)
        run.clear()

    for token in document.tokens:
        eligible = (
            token.tag is not CoarseTag.OTHER and token.normalized in selected
        )
        if not eligible:
            flush()
            continue
        if run and (
            token.token_index != run[-1].token_index + 1
            or token.sentence_index != run[-1].sentence_index
        ):
            flush()
        run.append(token)
    flush()

    entries = sorted(
        ((key, score) for key, (score, _) in phrases.items()),
        key=lambda item: (-item[1], phrases[item[0]][1], item[0]),
    )
    return RankedList(entries=tuple(entries), method_name="textrank")


def singlerank(
    document: Document,
    candidates: Sequence[CandidatePhrase],
    w: int = 10,
    *,
    d: float = 0.85,
    tolerance: float = 1e-4,
    max_iterations: int = 100,
) -> RankedList:
    """Count-weighted word graph, uniform jump, phrase = word-score sum."""
    word_scores = _word_scores(
        document, w, weighted=True, jump=None,
        d=d, tolerance=tolerance, max_iterations=max_iterations,
    )
    return _phrase_sum_ranklist(word_scores, candidates, "singlerank")


def positionrank(
    document: Document,
    candidates: Sequence[CandidatePhrase],
    w: int = 10,
    *,
    d: float = 0.85,
    tolerance: float = 1e-4,
    max_iterations: int = 100,
) -> RankedList:
    """Count-weighted word graph with an inverse-position jump vector.

    Each word's jump mass sums 1/p over its 1-based token positions p,
    normalized over the graph vertices.
    """
    raw: dict[str, float] = {}
    for position, word in _word_occurrences(document):
        raw[word] = raw.get(word, 0.0) + 1.0 / (position + 1)
    total = sum(raw.values())
    jump = None
    if total > 0.0:
        jump = JumpVector(values={k: v / total for k, v in raw.items()})
    word_scores = _word_scores(
        document, w, weighted=True, jump=jump,
        d=d, tolerance=tolerance, max_iterations=max_iterations,
    )
    return _phrase_sum_ranklist(word_scores, candidates, "positionrank")
