"""Organizer objectives and exact solution sets over all k-partitions.

Solution sets are always materialized by full enumeration; there is no
sampling anywhere.  A Gray-code scan over the 2^(n-1) bipartitions handles
k=2 (the case the susceptibility proofs use, and the only one we push to
n=18); general k goes through the restricted-growth enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Optional, Tuple

from .network import SocialNetwork, utility
from .partitions import (
    CoalitionStructure,
    SizeConstraint,
    _check_nk,
    _sizes_for,
    coalition_of,
    iter_partition_masks,
)


class Objective(Enum):
    MAX_UTIL = "max-util"
    MAX_EGAL = "max-egal"
    AT_LEAST_1 = "at-least-1"


@dataclass(frozen=True)
class SolutionSet:
    objective: Objective
    k: int
    constraint: SizeConstraint
    structures: FrozenSet[CoalitionStructure]
    score: Optional[int]

    @property
    def infeasible(self) -> bool:
        return self.objective is Objective.AT_LEAST_1 and not self.structures


def utilitarian_sw(net: SocialNetwork, partition: CoalitionStructure) -> int:
    """Sum over agents of their within-coalition (out-)neighbour count."""
    return sum(utility(net, a, coalition_of(partition, a)) for a in range(net.n))


def egalitarian_sw(net: SocialNetwork, partition: CoalitionStructure) -> int:
    """Within-coalition neighbour count of the worst-off agent."""
    return min(utility(net, a, coalition_of(partition, a)) for a in range(net.n))


def at_least_1_satisfied(net: SocialNetwork, partition: CoalitionStructure) -> bool:
    return egalitarian_sw(net, partition) >= 1


def cut_size(net: SocialNetwork, partition: CoalitionStructure) -> int:
    """Edges (arcs, when directed) whose endpoints land in different blocks."""
    masks = partition.masks()
    block_of = {}
    for mask in masks:
        for a in range(net.n):
            if mask >> a & 1:
                block_of[a] = mask
    return sum(1 for u, v in net.edges if not block_of[u] >> v & 1)


# ---------------------------------------------------------------------------
# Enumeration engine.  Partitions are tuples of block bitmasks ordered by
# their minimum element.  Results are cached per (graph, k, constraint).

_CACHE: Dict[tuple, tuple] = {}


def clear_cache() -> None:
    _CACHE.clear()


def _graph_key(net: SocialNetwork) -> tuple:
    return (net.n, net.directed, net.edges)


def _within_k2_scan(net: SocialNetwork, sizes: Optional[Tuple[int, ...]]):
    """Max within-block edge count over bipartitions, with all argmax partitions.

    Gray-code walk: each step moves one agent across the cut, so the
    within-block count updates from that agent's adjacency only.
    """
    n = net.n
    adj = net.adj
    inadj = net.in_adj
    full = (1 << n) - 1
    total = len(net.edges)
    ok_sizes = None
    if sizes is not None:
        ok_sizes = set(sizes)

    within = total  # state: second block empty (invalid, never scored)
    bmask = 0
    best = -1
    best_parts = []
    popcount = int.bit_count
    for s in range(1, 1 << (n - 1)):
        j = 1 + (s & -s).bit_length() - 1
        bit = 1 << j
        amask = full & ~bmask
        if bmask & bit:  # j moves B -> A
            src, dst = bmask, amask
        else:  # j moves A -> B
            src, dst = amask, bmask
        gain = popcount(adj[j] & dst) - popcount(adj[j] & (src & ~bit))
        if net.directed:
            gain += popcount(inadj[j] & dst) - popcount(inadj[j] & (src & ~bit))
        within += gain
        bmask ^= bit
        if ok_sizes is not None and popcount(bmask) not in ok_sizes:
            continue
        if within > best:
            best = within
            best_parts = [bmask]
        elif within == best:
            best_parts.append(bmask)
    parts = tuple((full & ~b, b) for b in sorted(best_parts))
    return best, parts


def _egal_of_masks(adj, nodes_by_mask) -> int:
    popcount = int.bit_count
    worst = None
    for mask, nodes in nodes_by_mask:
        for a in nodes:
            c = popcount(adj[a] & mask)
            if worst is None or c < worst:
                worst = c
                if worst == 0:
                    return 0
    return worst


def _scan(net: SocialNetwork, k: int, objective: Objective, constraint: SizeConstraint):
    """(score, partitions): the exact solution data for one graph.

    For MAX_UTIL the score is the utilitarian SW; for MAX_EGAL the
    egalitarian SW; AT_LEAST_1 has no score and keeps every satisfying
    partition (possibly none).
    """
    key = (_graph_key(net), k, objective, constraint)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    _check_nk(net.n, k)
    sizes = _sizes_for(net.n, k, constraint)
    if objective is Objective.MAX_UTIL and k == 2:
        within, parts = _within_k2_scan(net, sizes)
        score = within if net.directed else 2 * within
        result = (score, parts)
    else:
        adj = net.adj
        n = net.n
        popcount = int.bit_count
        best = None
        sat = []
        best_parts = []
        for masks in iter_partition_masks(n, k, sizes):
            nodes_by_mask = [
                (mask, [a for a in range(n) if mask >> a & 1]) for mask in masks
            ]
            if objective is Objective.MAX_UTIL:
                value = sum(
                    popcount(adj[a] & mask) for mask, nodes in nodes_by_mask for a in nodes
                )
            else:
                value = _egal_of_masks(adj, nodes_by_mask)
            if objective is Objective.AT_LEAST_1:
                if value >= 1:
                    sat.append(masks)
                continue
            if best is None or value > best:
                best = value
                best_parts = [masks]
            elif value == best:
                best_parts.append(masks)
        if objective is Objective.AT_LEAST_1:
            result = (None, tuple(sat))
        else:
            result = (best, tuple(best_parts))
    _CACHE[key] = result
    return result


def solution_set(
    net: SocialNetwork,
    k: int,
    objective: Objective,
    constraint: SizeConstraint = SizeConstraint.NONE,
) -> SolutionSet:
    """All coalition structures optimal for (or satisfying) the objective."""
    score, parts = _scan(net, k, objective, constraint)
    structures = frozenset(CoalitionStructure.from_masks(masks) for masks in parts)
    return SolutionSet(objective, k, constraint, structures, score)


def min_kcut_value(
    net: SocialNetwork, k: int, constraint: SizeConstraint = SizeConstraint.NONE
) -> int:
    """Minimum number of crossing edges/arcs over all k-partitions."""
    score, _parts = _scan(net, k, Objective.MAX_UTIL, constraint)
    within = score if net.directed else score // 2
    return len(net.edges) - within


def manipulator_bounds(
    sols: SolutionSet, net_true: SocialNetwork, m: int
) -> Tuple[int, int]:
    """(min, max) of the manipulator's true-graph utility over the solution set.

    An empty (infeasible) solution set yields (0, 0): everyone's utility is
    taken to be zero when no structure satisfies At-least-1.
    """
    if not sols.structures:
        return (0, 0)
    values = [utility(net_true, m, coalition_of(p, m)) for p in sols.structures]
    return (min(values), max(values))


def solution_bounds(
    net_eval: SocialNetwork,
    k: int,
    objective: Objective,
    constraint: SizeConstraint,
    true_adj_m: int,
    m: int,
) -> Tuple[int, int]:
    """Fast manipulator_bounds: solutions of net_eval, utilities from true_adj_m."""
    _score, parts = _scan(net_eval, k, objective, constraint)
    if not parts:
        return (0, 0)
    popcount = int.bit_count
    lo = hi = None
    mbit = 1 << m
    for masks in parts:
        for mask in masks:
            if mask & mbit:
                u = popcount(true_adj_m & mask)
                if lo is None or u < lo:
                    lo = u
                if hi is None or u > hi:
                    hi = u
                break
    return (lo, hi)
