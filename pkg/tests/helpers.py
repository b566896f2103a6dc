"""Shared fixtures and oracles for the test suite."""

import numpy as np

from phraserank.graphrank import JumpVector, PhraseGraph
from phraserank.textproc import CandidatePhrase, CoarseTag, Document, Token


def make_candidate(key, occurrences):
    words = tuple(key.split())
    return CandidatePhrase(
        words=words,
        occurrences=tuple(occurrences),
        phrase_key=key,
        surfaces=words,
    )


def tagged_document(items, source_id="synthetic"):
    """Build a Document from (surface, tag, sentence_index) triples.

    Token indices are assigned sequentially, so the triples must appear in
    document order.
    """
    tokens = tuple(
        Token(
            surface=surface,
            normalized=surface.lower(),
            tag=tag,
            sentence_index=sentence_index,
            token_index=i,
        )
        for i, (surface, tag, sentence_index) in enumerate(items)
    )
    sentence_count = tokens[-1].sentence_index if tokens else 0
    return Document(tokens=tokens, sentence_count=sentence_count, source_id=source_id)


def noun(surface, sentence_index=1):
    return (surface, CoarseTag.NOUN, sentence_index)


def adjective(surface, sentence_index=1):
    return (surface, CoarseTag.ADJECTIVE, sentence_index)


def filler(surface="of", sentence_index=1):
    return (surface, CoarseTag.OTHER, sentence_index)


def solve_stationary(graph, jump_values, d):
    """Dense linear-system oracle for the biased walk.

    Solves (I - d(Mᵀ + r·1_danglingᵀ)) s = (1-d) r where M holds the
    row-normalized edge weights and dangling rows are zero.
    """
    vertices = list(graph.vertices)
    n = len(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    W = np.zeros((n, n))
    for (a, b), w in graph.weights.items():
        W[index[a], index[b]] = w
        W[index[b], index[a]] = w
    out = W.sum(axis=1)
    dangling = (out == 0).astype(float)
    M = np.divide(W, out[:, None], out=np.zeros_like(W), where=out[:, None] > 0)
    r = np.array([jump_values[v] for v in vertices])
    A = np.eye(n) - d * (M.T + np.outer(r, dangling))
    s = np.linalg.solve(A, (1 - d) * r)
    return {v: s[index[v]] for v in vertices}


def random_graph(rng):
    n = int(rng.integers(2, 11))
    vertices = tuple(f"v{i}" for i in range(n))
    weights = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.45:
                weights[(vertices[i], vertices[j])] = float(rng.uniform(0.1, 3.0))
    raw = rng.random(n) + 0.05
    jump = JumpVector(values={v: float(x / raw.sum()) for v, x in zip(vertices, raw)})
    return PhraseGraph(vertices=vertices, weights=weights), jump
