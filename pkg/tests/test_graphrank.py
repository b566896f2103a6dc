"""Tests for co-occurrence counting, graph weights, priors, and PageRank."""

import numpy as np
import pytest

from phraserank.embeddings import NeighborhoodSet
from phraserank.graphrank import (
    CooccurrenceCounts,
    JumpVector,
    PhraseGraph,
    biased_pagerank,
    build_weighted_graph,
    count_cooccurrences,
    dump_graph,
    neighborhood_prior,
    position_prior,
    rank_phrases,
    uniform_jump,
)
from phraserank.textproc import Document

from helpers import make_candidate, random_graph, solve_stationary


def empty_document():
    return Document(tokens=(), sentence_count=0, source_id="synthetic")


def singleton_hoods(keys):
    return {k: NeighborhoodSet(owner=k, members=((k, 1.0),)) for k in keys}


class TestCooccurrenceCounts:
    def test_pair_inside_window(self):
        cands = [
            make_candidate("a", [(1, 0)]),
            make_candidate("b", [(1, 3)]),
        ]
        counts = count_cooccurrences(empty_document(), cands, w=10)
        assert counts.get("a", "b") == 1
        assert counts.get("b", "a") == 1

    def test_pair_outside_window(self):
        cands = [
            make_candidate("a", [(1, 0)]),
            make_candidate("b", [(1, 30)]),
        ]
        counts = count_cooccurrences(empty_document(), cands, w=10)
        assert counts.get("a", "b") == 0

    def test_every_occurrence_pair_counts_once(self):
        cands = [
            make_candidate("a", [(1, 0), (1, 5)]),
            make_candidate("b", [(1, 3)]),
        ]
        counts = count_cooccurrences(empty_document(), cands, w=10)
        assert counts.get("a", "b") == 2

    def test_boundary_gap_is_inclusive(self):
        cands = [
            make_candidate("a", [(1, 0)]),
            make_candidate("b", [(1, 10)]),
        ]
        counts = count_cooccurrences(empty_document(), cands, w=10)
        assert counts.get("a", "b") == 1

    def test_self_cooccurrence_is_not_stored(self):
        cands = [make_candidate("a", [(1, 0), (1, 2)])]
        counts = count_cooccurrences(empty_document(), cands, w=10)
        assert counts.get("a", "a") == 0
        assert not list(counts.pairs())

    def test_window_must_be_positive(self):
        with pytest.raises(ValueError):
            count_cooccurrences(empty_document(), [], w=0)


class TestBuildWeightedGraph:
    def test_singleton_neighborhoods_double_the_count(self):
        counts = CooccurrenceCounts(window_size=10, counts={("a", "b"): 3})
        graph = build_weighted_graph(counts, singleton_hoods(["a", "b"]))
        assert graph.weight("a", "b") == pytest.approx(6.0, abs=1e-12)

    def test_zero_counts_give_empty_edge_set(self):
        counts = CooccurrenceCounts(window_size=10, counts={})
        graph = build_weighted_graph(counts, singleton_hoods(["a", "b"]))
        assert graph.weights == {}

    def test_neighborhood_enhanced_weight(self):
        counts = CooccurrenceCounts(
            window_size=10, counts={("a", "b"): 1, ("a", "c"): 2}
        )
        hoods = singleton_hoods(["a", "c"])
        hoods["b"] = NeighborhoodSet(owner="b", members=(("b", 1.0), ("c", 0.8)))
        graph = build_weighted_graph(counts, hoods)
        assert graph.weight("a", "b") == pytest.approx(3.6, abs=1e-12)
        assert graph.weight("b", "a") == pytest.approx(3.6, abs=1e-12)

    def test_self_loops_are_omitted(self):
        counts = CooccurrenceCounts(window_size=10, counts={("a", "b"): 1})
        graph = build_weighted_graph(counts, singleton_hoods(["a", "b"]))
        assert ("a", "a") not in graph.weights
        assert graph.weight("a", "a") == 0.0

    def test_adding_a_positive_neighbor_never_decreases_weight(self):
        counts = CooccurrenceCounts(
            window_size=10, counts={("a", "b"): 1, ("a", "c"): 4}
        )
        base_hoods = singleton_hoods(["a", "b", "c"])
        base = build_weighted_graph(counts, base_hoods)
        enhanced_hoods = dict(base_hoods)
        enhanced_hoods["b"] = NeighborhoodSet(
            owner="b", members=(("b", 1.0), ("c", 0.5))
        )
        enhanced = build_weighted_graph(counts, enhanced_hoods)
        assert enhanced.weight("a", "b") >= base.weight("a", "b")


class TestPositionPrior:
    def test_sum_of_inverse_sentence_indices(self):
        cand = make_candidate("a", [(3, 10), (10, 40)])
        prior = position_prior([cand])
        assert prior["a"] == pytest.approx(1 / 3 + 1 / 10, abs=1e-12)
        assert prior["a"] == pytest.approx(0.4333, abs=1e-4)

    def test_first_sentence_gives_one(self):
        assert position_prior([make_candidate("a", [(1, 0)])])["a"] == 1.0

    def test_repeated_sentences_each_count(self):
        cand = make_candidate("a", [(2, 0), (2, 5), (4, 9)])
        assert position_prior([cand])["a"] == 1.25


class TestNeighborhoodPrior:
    def test_singletons_normalize_evenly(self):
        jump = neighborhood_prior(
            {"a": 1.0, "b": 1.0}, singleton_hoods(["a", "b"])
        )
        assert jump.values == {"a": 0.5, "b": 0.5}

    def test_worked_example(self):
        hoods = {
            "a": NeighborhoodSet(owner="a", members=(("a", 1.0), ("b", 0.9))),
            "b": NeighborhoodSet(owner="b", members=(("b", 1.0), ("a", 0.9))),
        }
        jump = neighborhood_prior({"a": 0.5, "b": 1.0}, hoods)
        assert jump.values["a"] == pytest.approx(1.4 / 2.85, abs=1e-12)
        assert jump.values["b"] == pytest.approx(1.45 / 2.85, abs=1e-12)

    def test_single_vertex(self):
        jump = neighborhood_prior({"a": 0.7}, singleton_hoods(["a"]))
        assert jump.values == {"a": 1.0}

    def test_degenerate_prior_falls_back_to_uniform(self):
        with pytest.warns(UserWarning):
            jump = neighborhood_prior(
                {"a": 0.0, "b": 0.0}, singleton_hoods(["a", "b"])
            )
        assert jump.values == {"a": 0.5, "b": 0.5}


class TestBiasedPagerank:
    def test_symmetric_two_vertex_graph(self):
        graph = PhraseGraph(vertices=("a", "b"), weights={("a", "b"): 1.0})
        result = biased_pagerank(graph, uniform_jump(("a", "b")), d=0.85)
        assert result.scores["a"] == pytest.approx(0.5, abs=1e-9)
        assert result.scores["b"] == pytest.approx(0.5, abs=1e-9)
        assert result.converged

    def test_single_dangling_vertex(self):
        graph = PhraseGraph(vertices=("a",), weights={})
        result = biased_pagerank(graph, JumpVector(values={"a": 1.0}), d=0.85)
        assert result.scores["a"] == pytest.approx(1.0, abs=1e-12)
        assert result.converged

    def test_non_normalized_jump_is_rejected(self):
        graph = PhraseGraph(vertices=("a", "b"), weights={("a", "b"): 1.0})
        with pytest.raises(ValueError):
            biased_pagerank(graph, JumpVector(values={"a": 0.9, "b": 0.9}), d=0.85)

    def test_negative_jump_is_rejected(self):
        graph = PhraseGraph(vertices=("a", "b"), weights={("a", "b"): 1.0})
        with pytest.raises(ValueError):
            biased_pagerank(graph, JumpVector(values={"a": 1.5, "b": -0.5}), d=0.85)

    def test_missing_jump_entry_is_rejected(self):
        graph = PhraseGraph(vertices=("a", "b"), weights={("a", "b"): 1.0})
        with pytest.raises(ValueError):
            biased_pagerank(graph, JumpVector(values={"a": 1.0}), d=0.85)

    def test_matches_linear_solve_oracle(self):
        rng = np.random.default_rng(20260815)
        for _ in range(25):
            graph, jump = random_graph(rng)
            result = biased_pagerank(
                graph, jump, d=0.85, tolerance=1e-12, max_iterations=20000
            )
            oracle = solve_stationary(graph, jump.values, d=0.85)
            for v in graph.vertices:
                assert result.scores[v] == pytest.approx(oracle[v], abs=1e-6)

    def test_scores_sum_to_one_with_dangling_vertices(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            graph, jump = random_graph(rng)
            result = biased_pagerank(graph, jump, d=0.85)
            total = sum(result.scores.values())
            assert total == pytest.approx(1.0, abs=1e-6)
            assert all(s >= 0 for s in result.scores.values())

    def test_edge_scaling_leaves_ranking_unchanged(self):
        rng = np.random.default_rng(99)
        for alpha in (4.0, 3.7):
            graph, jump = random_graph(rng)
            scaled = PhraseGraph(
                vertices=graph.vertices,
                weights={k: w * alpha for k, w in graph.weights.items()},
            )
            base = biased_pagerank(graph, jump, d=0.85, tolerance=1e-12,
                                   max_iterations=20000)
            other = biased_pagerank(scaled, jump, d=0.85, tolerance=1e-12,
                                    max_iterations=20000)
            order_a = sorted(
                graph.vertices, key=lambda v: (-base.scores[v], v)
            )
            order_b = sorted(
                graph.vertices, key=lambda v: (-other.scores[v], v)
            )
            assert order_a == order_b

    def test_unconverged_run_reports_flag(self):
        graph = PhraseGraph(
            vertices=("a", "b", "c"),
            weights={("a", "b"): 1.0, ("b", "c"): 2.0},
        )
        result = biased_pagerank(
            graph, uniform_jump(("a", "b", "c")), d=0.85,
            tolerance=1e-15, max_iterations=3,
        )
        assert not result.converged
        assert result.iterations_used == 3


class TestRankPhrases:
    def test_descending_scores(self):
        cands = [make_candidate("a", [(1, 0)]), make_candidate("b", [(1, 1)])]
        result = biased_pagerank(
            PhraseGraph(vertices=("a", "b"), weights={("a", "b"): 1.0}),
            JumpVector(values={"a": 0.8, "b": 0.2}),
            d=0.85,
        )
        ranked = rank_phrases(result, cands)
        assert ranked.entries[0][0] == "a"
        assert ranked.entries[0][1] >= ranked.entries[1][1]

    def test_tie_broken_by_earlier_first_occurrence(self):
        cands = [make_candidate("a", [(1, 2)]), make_candidate("b", [(1, 0)])]
        scores = biased_pagerank(
            PhraseGraph(vertices=("a", "b"), weights={("a", "b"): 1.0}),
            uniform_jump(("a", "b")),
            d=0.85,
        )
        ranked = rank_phrases(scores, cands)
        assert [k for k, _ in ranked.entries] == ["b", "a"]

    def test_final_tie_break_is_lexicographic(self):
        cands = [make_candidate("b", [(1, 0)]), make_candidate("a", [(1, 0)])]
        scores = biased_pagerank(
            PhraseGraph(vertices=("b", "a"), weights={("a", "b"): 1.0}),
            uniform_jump(("b", "a")),
            d=0.85,
        )
        ranked = rank_phrases(scores, cands)
        assert [k for k, _ in ranked.entries] == ["a", "b"]


def test_dump_graph_format():
    graph = PhraseGraph(
        vertices=("b", "a"),
        weights={("a", "b"): 1.5},
    )
    jump = JumpVector(values={"b": 0.25, "a": 0.75})
    text = dump_graph(graph, jump)
    lines = text.strip().split("\n")
    assert lines[0] == "a\tb\t1.5"
    assert "#prior\ta\t0.75" in lines
    assert "#prior\tb\t0.25" in lines
