"""Document-level keyphrase extraction across all scoring methods.

Dispatches on the configured method name, handles the shared single-word
filtering switch, and assembles the two composite methods (interleaving
with TF-IDF, and three-way Kemeny consensus) from their components.
"""

from __future__ import annotations

from typing import Optional

from .aggregation import CandidateList, interleave_merge, kemeny_aggregate
from .baselines import (
    CorpusStats,
    positionrank,
    singlerank,
    textrank,
    tfidf_rank,
)
from .config import RunConfig
from .embeddings import EmbeddingStore, build_neighborhoods
from .graphrank import (
    RankedList,
    biased_pagerank,
    build_weighted_graph,
    count_cooccurrences,
    neighborhood_prior,
    position_prior,
    rank_phrases,
    uniform_jump,
)
from .textproc import Document, extract_candidates

# Composite methods consume the top slice of each component ranking.
COMPONENT_POOL = 25

COMPOSITE_COMPONENTS = {
    "ensemble-tfidf": ("neighborhood", "tfidf"),
    "kemeny": ("neighborhood", "tfidf", "positionrank"),
}


def filter_single_word_phrases(
    entries: tuple[tuple[str, float], ...],
) -> tuple[tuple[str, float], ...]:
    """Drop single words that occur inside any multi-word entry."""
    covered = {
        word
        for key, _ in entries
        if " " in key
        for word in key.split()
    }
    return tuple(
        (key, score)
        for key, score in entries
        if " " in key or key not in covered
    )


def _neighborhood_ranking(
    document: Document,
    candidates: list,
    config: RunConfig,
    store: Optional[EmbeddingStore],
) -> RankedList:
    if store is None and not (config.t1 is None and config.t2 is None):
        raise ValueError(
            "the neighborhood method needs an embedding store unless both "
            "t1 and t2 are omitted"
        )
    if not candidates:
        return RankedList(entries=(), method_name="neighborhood")
    counts = count_cooccurrences(document, candidates, config.w)
    edge_hoods = build_neighborhoods(candidates, store, config.t1)
    graph = build_weighted_graph(counts, edge_hoods)
    if config.t2 is None:
        jump = uniform_jump(graph.vertices)
    else:
        if config.t2 == config.t1:
            jump_hoods = edge_hoods
        else:
            jump_hoods = build_neighborhoods(candidates, store, config.t2)
        jump = neighborhood_prior(position_prior(candidates), jump_hoods)
    scores = biased_pagerank(
        graph,
        jump,
        d=config.d,
        tolerance=config.tolerance,
        max_iterations=config.max_iterations,
    )
    return rank_phrases(scores, candidates, method_name="neighborhood")


def _rank_positions(keys: list[str], method_name: str) -> RankedList:
    entries = tuple((key, 1.0 / (i + 1)) for i, key in enumerate(keys))
    return RankedList(entries=entries, method_name=method_name)


def method_ranking(
    document: Document,
    config: RunConfig,
    method: str | None = None,
    store: Optional[EmbeddingStore] = None,
    stats: Optional[CorpusStats] = None,
) -> RankedList:
    """Full (unfiltered, untruncated) ranking under one method.

    Composite methods score their merged output by inverse rank since the
    component scores are not commensurable.
    """
    name = method or config.method
    candidates = extract_candidates(document)
    if name == "neighborhood":
        return _neighborhood_ranking(document, candidates, config, store)
    if name == "tfidf":
        if stats is None:
            raise ValueError("the tfidf method needs corpus statistics")
        return tfidf_rank(document, candidates, stats)
    if name == "textrank":
        return textrank(
            document,
            w=config.w,
            d=config.d,
            tolerance=config.tolerance,
            max_iterations=config.max_iterations,
        )
    if name == "singlerank":
        return singlerank(
            document,
            candidates,
            w=config.w,
            d=config.d,
            tolerance=config.tolerance,
            max_iterations=config.max_iterations,
        )
    if name == "positionrank":
        return positionrank(
            document,
            candidates,
            w=config.w,
            d=config.d,
            tolerance=config.tolerance,
            max_iterations=config.max_iterations,
        )
    if name == "ensemble-tfidf":
        components = [
            method_ranking(document, config, method=part, store=store, stats=stats)
            for part in COMPOSITE_COMPONENTS[name]
        ]
        merged = interleave_merge(
            CandidateList(
                entries=components[0].top(COMPONENT_POOL),
                source=components[0].method_name,
            ),
            CandidateList(
                entries=components[1].top(COMPONENT_POOL),
                source=components[1].method_name,
            ),
            m=config.m,
        )
        return _rank_positions(merged, name)
    if name == "kemeny":
        lists = [
            CandidateList(
                entries=method_ranking(
                    document, config, method=part, store=store, stats=stats
                ).top(COMPONENT_POOL),
                source=part,
            )
            for part in COMPOSITE_COMPONENTS[name]
        ]
        if all(not lst.entries for lst in lists):
            return RankedList(entries=(), method_name=name)
        consensus = kemeny_aggregate(lists)
        return _rank_positions(list(consensus.order), name)
    raise ValueError(f"unknown method {name!r}")


def extract_keyphrases(
    document: Document,
    config: RunConfig,
    store: Optional[EmbeddingStore] = None,
    stats: Optional[CorpusStats] = None,
) -> RankedList:
    """Ranked top-m keyphrases under the configured method.

    The single-word filter runs over the full ranking before truncation;
    the interleaving ensemble skips it because its merge step already
    removed covered single words against both component lists.
    """
    ranked = method_ranking(document, config, store=store, stats=stats)
    entries = ranked.entries
    if config.filter_single_words and ranked.method_name != "ensemble-tfidf":
        entries = filter_single_word_phrases(entries)
    return RankedList(
        entries=entries[: config.m], method_name=ranked.method_name
    )
