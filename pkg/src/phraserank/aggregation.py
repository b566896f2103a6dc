"""Combining ranked candidate lists.

Two regimes: an alternating interleave of two lists that keeps only
phrases present in both (dropping single words swallowed by a multi-word
phrase), and Kemeny consensus over several lists, exact for small unions
and a local-search approximation beyond that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class CandidateList:
    """Ordered phrase keys proposed by one scoring method."""

    entries: tuple[str, ...]
    source: str

    def __post_init__(self) -> None:
        if len(set(self.entries)) != len(self.entries):
            raise ValueError(f"candidate list {self.source!r} has duplicates")


@dataclass(frozen=True)
class ConsensusRanking:
    order: tuple[str, ...]
    total_distance: int
    exact: bool


def interleave_merge(l_a: CandidateList, l_b: CandidateList, m: int) -> list[str]:
    """Alternate through both lists by rank, keeping shared phrases.

    At each rank the entry from `l_a` is considered first, appended if the
    other list also contains it and it is not already present; a freshly
    appended single word is removed again when any multi-word phrase in
    either list contains it. Stops once m entries survive.
    """
    if m < 1:
        raise ValueError(f"requested output size must be at least 1, got {m}")
    entries_a, entries_b = l_a.entries, l_b.entries
    set_a, set_b = set(entries_a), set(entries_b)
    container_words = {
        word
        for entries in (entries_a, entries_b)
        for phrase in entries
        if " " in phrase
        for word in phrase.split()
    }
    out: list[str] = []
    members: set[str] = set()
    for i in range(max(len(entries_a), len(entries_b))):
        for entries, other in ((entries_a, set_b), (entries_b, set_a)):
            if i >= len(entries):
                continue
            phrase = entries[i]
            if phrase not in other or phrase in members:
                continue
            out.append(phrase)
            members.add(phrase)
            if " " not in phrase and phrase in container_words:
                out.pop()
                members.discard(phrase)
            if len(out) == m:
                return out
    return out


def _count_inversions(seq: list[int]) -> int:
    if len(seq) < 2:
        return 0
    mid = len(seq) // 2
    left, right = seq[:mid], seq[mid:]
    inversions = _count_inversions(left) + _count_inversions(right)
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
            inversions += len(left) - i
    seq[:] = merged + left[i:] + right[j:]
    return inversions


def kendall_tau_distance(order: Sequence[str], reference: CandidateList) -> int:
    """Count reference pairs that `order` places in the opposite order.

    Items of `order` that the reference does not mention contribute
    nothing; every reference item must appear in `order`.
    """
    pos = {item: i for i, item in enumerate(order)}
    try:
        positions = [pos[item] for item in reference.entries]
    except KeyError as exc:
        raise ValueError(
            f"order is missing reference item {exc.args[0]!r}"
        ) from exc
    return _count_inversions(positions)


def _pairwise_costs(
    lists: Sequence[CandidateList], index: dict[str, int]
) -> list[list[int]]:
    """cost[x][y] = number of lists ranking y strictly before x."""
    n = len(index)
    cost = [[0] * n for _ in range(n)]
    for lst in lists:
        ids = [index[item] for item in lst.entries]
        for r1 in range(len(ids)):
            for r2 in range(r1 + 1, len(ids)):
                cost[ids[r2]][ids[r1]] += 1
    return cost


def _exact_kemeny(cost: list[list[int]], n: int) -> list[int]:
    """Subset DP over 2^n states; returns the optimal order of indices.

    g[S] is the best internal pair cost of arranging the items of S as a
    contiguous block; the first element v of the block pays cost[v][u]
    toward every other u in S. Per-vertex half-mask tables make that sum
    two lookups. Reconstruction walks front to back, preferring the
    smallest index so ties resolve lexicographically.
    """
    half = (n + 1) // 2
    low_mask = (1 << half) - 1
    low_table = [[0] * (1 << half) for _ in range(n)]
    high_table = [[0] * (1 << (n - half)) for _ in range(n)]
    for v in range(n):
        row = cost[v]
        table = low_table[v]
        for s in range(1, 1 << half):
            lowest = s & -s
            table[s] = table[s ^ lowest] + row[lowest.bit_length() - 1]
        table = high_table[v]
        for s in range(1, 1 << (n - half)):
            lowest = s & -s
            table[s] = table[s ^ lowest] + row[half + lowest.bit_length() - 1]

    def block_cost(v: int, rest: int) -> int:
        return low_table[v][rest & low_mask] + high_table[v][rest >> half]

    size = 1 << n
    g = [0] * size
    for s in range(1, size):
        best = None
        remaining = s
        while remaining:
            lowest = remaining & -remaining
            v = lowest.bit_length() - 1
            rest = s ^ lowest
            value = g[rest] + block_cost(v, rest)
            if best is None or value < best:
                best = value
            remaining ^= lowest
        g[s] = best

    order: list[int] = []
    s = size - 1
    while s:
        for v in range(n):
            bit = 1 << v
            if s & bit and g[s] == g[s ^ bit] + block_cost(v, s ^ bit):
                order.append(v)
                s ^= bit
                break
    return order


def _local_search_kemeny(
    cost: list[list[int]],
    lists: Sequence[CandidateList],
    union: list[str],
    index: dict[str, int],
) -> list[int]:
    """Mean-rank start plus adjacent-swap descent.

    An item absent from a list is treated as ranked just past its end.
    """
    mean_rank = {}
    for item in union:
        ranks = []
        for lst in lists:
            try:
                ranks.append(lst.entries.index(item) + 1)
            except ValueError:
                ranks.append(len(lst.entries) + 1)
        mean_rank[item] = sum(ranks) / len(ranks)
    ordered_items = sorted(union, key=lambda item: (mean_rank[item], item))
    order = [index[item] for item in ordered_items]
    improved = True
    while improved:
        improved = False
        for k in range(len(order) - 1):
            x, y = order[k], order[k + 1]
            if cost[y][x] < cost[x][y]:
                order[k], order[k + 1] = y, x
                improved = True
    return order


def kemeny_aggregate(
    lists: Sequence[CandidateList], exact_limit: int = 18
) -> ConsensusRanking:
    """Consensus order minimizing summed Kendall-tau distance.

    Exact subset DP when the item union has at most `exact_limit`
    members, otherwise adjacent-swap local search from the mean-rank
    order. Ties in the exact optimum resolve to the lexicographically
    smallest sequence.
    """
    if len(lists) < 2:
        raise ValueError(f"consensus needs at least 2 lists, got {len(lists)}")
    union = sorted({item for lst in lists for item in lst.entries})
    if not union:
        raise ValueError("candidate lists are all empty")
    index = {item: i for i, item in enumerate(union)}
    cost = _pairwise_costs(lists, index)
    if len(union) <= exact_limit:
        order_idx = _exact_kemeny(cost, len(union))
        exact = True
    else:
        order_idx = _local_search_kemeny(cost, lists, union, index)
        exact = False
    order = tuple(union[i] for i in order_idx)
    total = sum(kendall_tau_distance(order, lst) for lst in lists)
    return ConsensusRanking(order=order, total_distance=total, exact=exact)


def select_top(ranking: Sequence[str], m: int) -> list[str]:
    if m < 1:
        raise ValueError(f"requested output size must be at least 1, got {m}")
    return list(ranking[:m])
