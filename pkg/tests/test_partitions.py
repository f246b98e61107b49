import itertools

import pytest
from hypothesis import given, settings, strategies as st

from kcoalition import (
    CoalitionStructure,
    SizeConstraint,
    coalition_of,
    count_partitions,
    enumerate_partitions,
)


def brute_partitions(n, k):
    """Independent oracle: all exactly-k partitions via agent-to-block labellings."""
    seen = set()
    for labels in itertools.product(range(k), repeat=n):
        if len(set(labels)) != k:
            continue
        blocks = frozenset(
            frozenset(a for a in range(n) if labels[a] == b) for b in range(k)
        )
        seen.add(blocks)
    return seen


def stirling(n, k):
    if k == 0:
        return 1 if n == 0 else 0
    if k > n:
        return 0
    return k * stirling(n - 1, k) + stirling(n - 1, k - 1)


# ---------------------------------------------------------------------------
# CoalitionStructure.


def test_blocks_sorted_by_minimum():
    p = CoalitionStructure.of([{2, 3}, {0, 1}])
    assert [min(b) for b in p.blocks] == [0, 2]
    assert str(p) == "{0,1} | {2,3}"


def test_rejects_non_partition():
    with pytest.raises(ValueError):
        CoalitionStructure.of([{0, 1}, {1, 2}])
    with pytest.raises(ValueError):
        CoalitionStructure.of([{0, 2}])
    with pytest.raises(ValueError):
        CoalitionStructure.of([{0, 1}, {2}, set()])


def test_coalition_of():
    p = CoalitionStructure.of([{0, 1}, {2}])
    assert coalition_of(p, 2) == frozenset({2})
    assert coalition_of(p, 0) == frozenset({0, 1})
    singles = CoalitionStructure.of([{0}, {1}, {2}])
    assert coalition_of(singles, 1) == frozenset({1})


# ---------------------------------------------------------------------------
# enumerate_partitions.


def test_forced_singletons():
    parts = list(enumerate_partitions(3, 3))
    assert len(parts) == 1
    assert str(parts[0]) == "{0} | {1} | {2}"


def test_n4_k2_unconstrained():
    parts = list(enumerate_partitions(4, 2))
    assert len(parts) == 7
    assert {frozenset(p.blocks) for p in parts} == brute_partitions(4, 2)


def test_n4_k2_equal_size():
    parts = list(enumerate_partitions(4, 2, SizeConstraint.EQUAL_SIZE))
    assert len(parts) == 3
    assert all(sorted(len(b) for b in p.blocks) == [2, 2] for p in parts)


def test_invalid_k_rejected():
    with pytest.raises(ValueError):
        list(enumerate_partitions(3, 0))
    with pytest.raises(ValueError):
        list(enumerate_partitions(3, 4))


def test_restricted_growth_order():
    # The first block always contains agent 0; successive structures follow
    # the lexicographic order of their restricted-growth strings.
    def rgs(p):
        label = {}
        for i, block in enumerate(p.blocks):
            for a in block:
                label[a] = i
        return tuple(label[a] for a in sorted(label))

    strings = [rgs(p) for p in enumerate_partitions(5, 3)]
    assert strings == sorted(strings)
    assert len(strings) == len(set(strings))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))))
def test_enumeration_matches_brute_force(nk):
    n, k = nk
    parts = list(enumerate_partitions(n, k))
    assert {frozenset(p.blocks) for p in parts} == brute_partitions(n, k)
    assert len(parts) == len(set(parts))


def test_enumeration_matches_brute_force_larger():
    for n, k in [(7, 2), (7, 4), (8, 3), (9, 2)]:
        parts = list(enumerate_partitions(n, k))
        assert {frozenset(p.blocks) for p in parts} == brute_partitions(n, k)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, min(n, 4)))))
def test_equal_size_is_filtered_subset(nk):
    n, k = nk
    everything = set(enumerate_partitions(n, k))
    sizes = sorted([n // k] * (k - n % k) + [n // k + 1] * (n % k))
    constrained = list(enumerate_partitions(n, k, SizeConstraint.EQUAL_SIZE))
    assert set(constrained) == {
        p for p in everything if sorted(len(b) for b in p.blocks) == sizes
    }


# ---------------------------------------------------------------------------
# count_partitions.


def test_count_matches_stirling_examples():
    assert count_partitions(5, 2) == 15
    assert count_partitions(5, 3) == 25
    assert count_partitions(6, 3, SizeConstraint.EQUAL_SIZE) == 15


def test_count_matches_stirling_recurrence():
    for n in range(1, 11):
        for k in range(1, n + 1):
            assert count_partitions(n, k) == stirling(n, k)


def test_count_k2_closed_form():
    for n in range(2, 13):
        assert count_partitions(n, 2) == 2 ** (n - 1) - 1


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))))
def test_count_agrees_with_enumeration(nk):
    n, k = nk
    for constraint in SizeConstraint:
        assert count_partitions(n, k, constraint) == sum(
            1 for _ in enumerate_partitions(n, k, constraint)
        )
