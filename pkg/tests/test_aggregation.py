"""Tests for list interleaving, Kendall-tau distance, and consensus ranking."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phraserank.aggregation import (
    CandidateList,
    interleave_merge,
    kemeny_aggregate,
    kendall_tau_distance,
    select_top,
)


def clist(entries, source="test"):
    return CandidateList(entries=tuple(entries), source=source)


def brute_force_kendall(order, reference_entries):
    """Pair-enumeration oracle: count reference pairs ordered oppositely."""
    pos = {item: i for i, item in enumerate(order)}
    total = 0
    for i in range(len(reference_entries)):
        for j in range(i + 1, len(reference_entries)):
            x, y = reference_entries[i], reference_entries[j]
            if pos[x] > pos[y]:
                total += 1
    return total


def brute_force_kemeny(lists):
    """Try every permutation of the union; return (best total, minimizers)."""
    union = sorted({item for lst in lists for item in lst.entries})
    best = None
    minimizers = []
    for perm in itertools.permutations(union):
        total = sum(kendall_tau_distance(list(perm), lst) for lst in lists)
        if best is None or total < best:
            best = total
            minimizers = [perm]
        elif total == best:
            minimizers.append(perm)
    return best, minimizers


class TestCandidateList:
    def test_duplicate_entries_are_rejected(self):
        with pytest.raises(ValueError):
            clist(["a", "b", "a"])


class TestInterleaveMerge:
    def test_simple_two_item_merge(self):
        out = interleave_merge(clist(["x", "y"]), clist(["y", "x"]), m=2)
        assert out == ["x", "y"]

    def test_single_word_contained_in_multiword_is_filtered(self):
        out = interleave_merge(
            clist(["network", "neural network"]),
            clist(["neural network", "network"]),
            m=2,
        )
        assert out == ["neural network"]

    def test_disjoint_lists_give_empty_output(self):
        out = interleave_merge(clist(["a", "b"]), clist(["c", "d"]), m=4)
        assert out == []

    def test_stops_at_m(self):
        a = clist(["p", "q", "r"])
        b = clist(["p", "q", "r"])
        assert interleave_merge(a, b, m=2) == ["p", "q"]

    def test_m_must_be_positive(self):
        with pytest.raises(ValueError):
            interleave_merge(clist(["a"]), clist(["a"]), m=0)

    @given(
        st.lists(st.sampled_from(["a", "b", "c", "d e", "f g", "h"]),
                 unique=True, max_size=6),
        st.lists(st.sampled_from(["a", "b", "c", "d e", "f g", "h"]),
                 unique=True, max_size=6),
        st.integers(min_value=1, max_value=6),
    )
    def test_merge_invariants(self, entries_a, entries_b, m):
        a, b = clist(entries_a), clist(entries_b)
        out = interleave_merge(a, b, m)
        shared = set(entries_a) & set(entries_b)
        assert set(out) <= shared
        assert len(out) == len(set(out))
        assert len(out) <= m
        multiword_words = {
            word
            for lst in (entries_a, entries_b)
            for phrase in lst
            if " " in phrase
            for word in phrase.split()
        }
        for phrase in out:
            if " " not in phrase:
                assert phrase not in multiword_words
        # Each surviving item enters at turn min(rank_a, rank_b), with the
        # first list's branch winning ties, so the whole output order is
        # characterized by that sort key.
        expected = []
        for item in shared:
            if " " not in item and item in multiword_words:
                continue
            rank_a = entries_a.index(item)
            rank_b = entries_b.index(item)
            branch = 0 if rank_a <= rank_b else 1
            expected.append(((min(rank_a, rank_b), branch), item))
        expected_order = [item for _, item in sorted(expected)]
        assert out == expected_order[:m]


class TestKendallTau:
    def test_identical_orders(self):
        assert kendall_tau_distance(["a", "b", "c"], clist(["a", "b", "c"])) == 0

    def test_exact_reversal(self):
        assert kendall_tau_distance(["c", "b", "a"], clist(["a", "b", "c"])) == 3

    def test_items_outside_reference_contribute_nothing(self):
        assert kendall_tau_distance(["x", "a", "b"], clist(["a", "b"])) == 0
        assert kendall_tau_distance(["x", "b", "a"], clist(["a", "b"])) == 1

    def test_order_missing_reference_item_is_rejected(self):
        with pytest.raises(ValueError):
            kendall_tau_distance(["a"], clist(["a", "b"]))

    @settings(max_examples=60)
    @given(st.permutations(["a", "b", "c", "d", "e", "f"]),
           st.permutations(["a", "b", "c", "d", "e", "f"]))
    def test_matches_pair_enumeration_oracle(self, order, reference):
        got = kendall_tau_distance(list(order), clist(reference))
        assert got == brute_force_kendall(list(order), list(reference))

    @settings(max_examples=40)
    @given(st.permutations(["a", "b", "c", "d", "e"]),
           st.permutations(["a", "b", "c", "d", "e"]))
    def test_symmetry_on_full_permutations(self, p, q):
        assert kendall_tau_distance(list(p), clist(q)) == kendall_tau_distance(
            list(q), clist(p)
        )

    @settings(max_examples=40)
    @given(st.permutations(["a", "b", "c", "d", "e"]),
           st.permutations(["a", "b", "c", "d", "e"]),
           st.permutations(["a", "b", "c", "d", "e"]))
    def test_triangle_inequality_on_full_permutations(self, p, q, r):
        d_pq = kendall_tau_distance(list(p), clist(q))
        d_qr = kendall_tau_distance(list(q), clist(r))
        d_pr = kendall_tau_distance(list(p), clist(r))
        assert d_pr <= d_pq + d_qr


class TestKemenyAggregate:
    def test_identical_lists(self):
        lists = [clist(["a", "b", "c"]), clist(["a", "b", "c"])]
        consensus = kemeny_aggregate(lists)
        assert consensus.order == ("a", "b", "c")
        assert consensus.total_distance == 0
        assert consensus.exact

    def test_opposed_lists_break_ties_lexicographically(self):
        consensus = kemeny_aggregate([clist(["a", "b", "c"]),
                                      clist(["c", "b", "a"])])
        assert consensus.order == ("a", "b", "c")
        assert consensus.total_distance == 3

    def test_requires_two_lists(self):
        with pytest.raises(ValueError):
            kemeny_aggregate([clist(["a"])])

    def test_exact_dp_matches_factorial_brute_force(self):
        lists = [
            clist(["f", "a", "c", "e"]),
            clist(["b", "c", "a", "d", "f"]),
            clist(["d", "e", "b", "a"]),
        ]
        consensus = kemeny_aggregate(lists)
        best, minimizers = brute_force_kemeny(lists)
        assert consensus.exact
        assert consensus.total_distance == best
        assert consensus.order == min(minimizers)

    def test_partial_lists_with_disjoint_tails(self):
        lists = [clist(["a", "b"]), clist(["b", "c"]), clist(["c", "a"])]
        consensus = kemeny_aggregate(lists)
        best, minimizers = brute_force_kemeny(lists)
        assert consensus.total_distance == best
        assert consensus.order == min(minimizers)

    def test_total_distance_consistent_with_kendall_sum(self):
        lists = [clist(["a", "c", "b", "e"]), clist(["e", "a", "d"])]
        consensus = kemeny_aggregate(lists)
        recomputed = sum(
            kendall_tau_distance(list(consensus.order), lst) for lst in lists
        )
        assert consensus.total_distance == recomputed

    def test_exact_mode_beats_or_ties_every_input_list(self):
        lists = [
            clist(["a", "b", "c", "d"]),
            clist(["d", "c", "b", "a"]),
            clist(["b", "a", "d", "c"]),
        ]
        consensus = kemeny_aggregate(lists)
        for lst in lists:
            competitor = sum(
                kendall_tau_distance(list(lst.entries), other)
                for other in lists
            )
            assert consensus.total_distance <= competitor

    def test_large_union_uses_local_search(self):
        items = [f"item{i:02d}" for i in range(20)]
        reversed_items = list(reversed(items))
        rotated = items[5:] + items[:5]
        lists = [clist(items), clist(reversed_items), clist(rotated)]
        consensus = kemeny_aggregate(lists)
        assert not consensus.exact
        assert sorted(consensus.order) == sorted(items)
        recomputed = sum(
            kendall_tau_distance(list(consensus.order), lst) for lst in lists
        )
        assert consensus.total_distance == recomputed
        again = kemeny_aggregate(lists)
        assert again.order == consensus.order


class TestSelectTop:
    def test_truncates_long_rankings(self):
        ranking = [f"p{i}" for i in range(10)]
        assert select_top(ranking, 8) == ranking[:8]

    def test_short_rankings_pass_through(self):
        assert select_top(["a", "b"], 8) == ["a", "b"]

    def test_top_three(self):
        assert select_top(["a", "b", "c", "d"], 3) == ["a", "b", "c"]

    def test_m_must_be_positive(self):
        with pytest.raises(ValueError):
            select_top(["a"], 0)
