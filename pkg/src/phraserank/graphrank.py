"""Phrase graph construction and biased random-walk scoring.

Builds an undirected co-occurrence graph over candidate phrases, enhances
edge weights with embedding-neighborhood similarity, derives a position
prior smoothed over the same neighborhoods, and scores vertices with a
power-iteration random walk that teleports according to the prior.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .embeddings import NeighborhoodSet
from .textproc import CandidatePhrase, Document


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class CooccurrenceCounts:
    """Symmetric occurrence-pair counts keyed by unordered phrase pairs."""

    window_size: int
    counts: Mapping[tuple[str, str], int]

    def get(self, a: str, b: str) -> int:
        if a == b:
            return 0
        return self.counts.get(_pair(a, b), 0)

    def pairs(self) -> Iterable[tuple[str, str, int]]:
        for (a, b), c in self.counts.items():
            yield a, b, c


@dataclass(frozen=True)
class PhraseGraph:
    """Undirected weighted graph over phrase keys.

    `weights` is keyed by unordered pairs stored in sorted order; zero
    weights and self loops are never stored.
    """

    vertices: tuple[str, ...]
    weights: Mapping[tuple[str, str], float]

    def weight(self, a: str, b: str) -> float:
        if a == b:
            return 0.0
        return self.weights.get(_pair(a, b), 0.0)


@dataclass(frozen=True)
class JumpVector:
    """Teleport distribution over graph vertices."""

    values: Mapping[str, float]


@dataclass(frozen=True)
class ScoreVector:
    scores: Mapping[str, float]
    iterations_used: int
    converged: bool


@dataclass(frozen=True)
class RankedList:
    """Phrases ordered by descending score under one scoring method."""

    entries: tuple[tuple[str, float], ...]
    method_name: str

    def top(self, m: int) -> tuple[str, ...]:
        return tuple(key for key, _ in self.entries[:m])


def count_cooccurrences(
    document: Document,
    candidates: Sequence[CandidatePhrase],
    w: int,
) -> CooccurrenceCounts:
    """Count candidate occurrence pairs whose start tokens lie within w.

    The gap is measured between document-wide first-token indices: a pair
    of occurrences co-occurs when the later start minus the earlier start
    is at most w. Every occurrence pair is counted once, and a phrase
    never co-occurs with itself.
    """
    if w < 1:
        raise ValueError(f"window size must be at least 1, got {w}")
    starts: list[tuple[int, str]] = []
    for cand in candidates:
        for _, token_index in cand.occurrences:
            starts.append((token_index, cand.phrase_key))
    starts.sort()
    counts: dict[tuple[str, str], int] = {}
    for i, (pos_a, key_a) in enumerate(starts):
        j = i + 1
        while j < len(starts) and starts[j][0] - pos_a <= w:
            key_b = starts[j][1]
            if key_b != key_a:
                pair = _pair(key_a, key_b)
                counts[pair] = counts.get(pair, 0) + 1
            j += 1
    return CooccurrenceCounts(window_size=w, counts=counts)


def build_weighted_graph(
    counts: CooccurrenceCounts,
    neighborhoods: Mapping[str, NeighborhoodSet],
) -> PhraseGraph:
    """Combine co-occurrence counts with neighborhood similarities.

    The weight between v_i and v_j sums sim(v_j, v_k) * count(v_i, v_k)
    over members v_k of the neighborhood of v_j, plus the mirrored sum
    over members of the neighborhood of v_i. With all-singleton
    neighborhoods this reduces to twice the raw co-occurrence count.
    """
    vertices = tuple(neighborhoods)
    member_of: dict[str, list[tuple[str, float]]] = {}
    for owner, hood in neighborhoods.items():
        for member, sim in hood.members:
            member_of.setdefault(member, []).append((owner, sim))
    # half[(i, j)] accumulates sum_k sim_j(k) * count(i, k); the symmetric
    # edge weight is half[(i, j)] + half[(j, i)].
    half: dict[tuple[str, str], float] = {}
    for a, b, c in counts.pairs():
        for owner, sim in member_of.get(b, ()):
            if owner != a:
                key = (a, owner)
                half[key] = half.get(key, 0.0) + sim * c
        for owner, sim in member_of.get(a, ()):
            if owner != b:
                key = (b, owner)
                half[key] = half.get(key, 0.0) + sim * c
    weights: dict[tuple[str, str], float] = {}
    for (i, j), value in half.items():
        key = _pair(i, j)
        if key in weights:
            continue
        total = value + half.get((j, i), 0.0)
        if total != 0.0:
            weights[key] = total
    return PhraseGraph(vertices=vertices, weights=weights)


def position_prior(candidates: Sequence[CandidatePhrase]) -> dict[str, float]:
    """Sum inverse 1-based sentence indices over each phrase's occurrences."""
    prior: dict[str, float] = {}
    for cand in candidates:
        prior[cand.phrase_key] = sum(
            1.0 / sentence_index for sentence_index, _ in cand.occurrences
        )
    return prior


def neighborhood_prior(
    prior: Mapping[str, float],
    neighborhoods: Mapping[str, NeighborhoodSet],
) -> JumpVector:
    """Smooth a raw positional prior over neighborhoods and L1-normalize.

    Each vertex receives sim(v_i, v_k) * prior(v_k) summed over its
    neighborhood members. A degenerate result (zero mass, or negative
    entries when similarities below zero are admitted) falls back to the
    uniform distribution with a warning.
    """
    raw: dict[str, float] = {}
    for owner, hood in neighborhoods.items():
        raw[owner] = sum(sim * prior[member] for member, sim in hood.members)
    if not raw:
        return JumpVector(values={})
    total = sum(raw.values())
    if total <= 0.0 or min(raw.values()) < 0.0:
        warnings.warn(
            "degenerate smoothed prior; falling back to a uniform jump vector",
            stacklevel=2,
        )
        return uniform_jump(tuple(raw))
    return JumpVector(values={k: v / total for k, v in raw.items()})


def uniform_jump(vertices: Sequence[str]) -> JumpVector:
    share = 1.0 / len(vertices)
    return JumpVector(values={v: share for v in vertices})


def biased_pagerank(
    graph: PhraseGraph,
    jump: JumpVector,
    d: float = 0.85,
    tolerance: float = 1e-4,
    max_iterations: int = 100,
) -> ScoreVector:
    """Power iteration for the teleporting random walk.

    Scores satisfy S(v_i) = (1-d) r_i + d * sum over in-neighbors v_j of
    w(v_j, v_i) / outweight(v_j) * S(v_j), with dangling vertices
    redistributing their mass according to the jump vector so the scores
    keep summing to one. Iteration starts from the jump vector and stops
    when the L1 change drops below `tolerance`.
    """
    vertices = graph.vertices
    n = len(vertices)
    if n == 0:
        return ScoreVector(scores={}, iterations_used=0, converged=True)
    if not 0.0 < d < 1.0:
        raise ValueError(f"damping factor must lie strictly in (0, 1), got {d}")
    try:
        r = np.array([jump.values[v] for v in vertices], dtype=np.float64)
    except KeyError as exc:
        raise ValueError(f"jump vector missing vertex {exc.args[0]!r}") from exc
    if (r < 0.0).any():
        raise ValueError("jump vector has negative entries")
    if abs(float(r.sum()) - 1.0) > 1e-6:
        raise ValueError(
            f"jump vector must sum to 1 over graph vertices, got {float(r.sum())!r}"
        )
    index = {v: i for i, v in enumerate(vertices)}
    W = np.zeros((n, n), dtype=np.float64)
    for (a, b), weight in graph.weights.items():
        W[index[a], index[b]] = weight
        W[index[b], index[a]] = weight
    out = W.sum(axis=1)
    dangling = out == 0.0
    M = np.divide(W, out[:, None], out=np.zeros_like(W), where=out[:, None] > 0.0)
    MT = M.T.copy()

    scores = r.copy()
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        dangling_mass = float(scores[dangling].sum())
        updated = (1.0 - d) * r + d * (MT @ scores + dangling_mass * r)
        delta = float(np.abs(updated - scores).sum())
        scores = updated
        if delta < tolerance:
            converged = True
            break
    return ScoreVector(
        scores={v: float(scores[index[v]]) for v in vertices},
        iterations_used=iterations,
        converged=converged,
    )


def rank_phrases(
    scores: ScoreVector | Mapping[str, float],
    candidates: Sequence[CandidatePhrase],
    method_name: str = "neighborhood",
) -> RankedList:
    """Order phrases by score, breaking ties by earlier first occurrence
    and then lexicographically by phrase key."""
    score_map = scores.scores if isinstance(scores, ScoreVector) else scores
    first_occurrence = {
        cand.phrase_key: cand.occurrences[0][1] for cand in candidates
    }
    ordered = sorted(
        score_map.items(),
        key=lambda item: (
            -item[1],
            first_occurrence.get(item[0], len(first_occurrence)),
            item[0],
        ),
    )
    return RankedList(entries=tuple(ordered), method_name=method_name)


def dump_graph(graph: PhraseGraph, jump: JumpVector) -> str:
    """Serialize a graph and its jump vector as tab-separated text.

    Edge lines hold `phrase_i<TAB>phrase_j<TAB>weight` with the pair in
    sorted order; prior lines hold `#prior<TAB>phrase<TAB>value`.
    """
    lines = [
        f"{a}\t{b}\t{graph.weights[(a, b)]!r}"
        for a, b in sorted(graph.weights)
    ]
    for phrase in sorted(jump.values):
        lines.append(f"#prior\t{phrase}\t{jump.values[phrase]!r}")
    return "\n".join(lines) + "\n" if lines else ""
