"""Classification of manipulations into the improvement lattice, and best-
manipulation search under full information."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Optional, Tuple

from .network import Edge, ManipulationSpec, Mode, SocialNetwork, apply_manipulation
from .objectives import Objective, solution_bounds
from .partitions import SizeConstraint


@dataclass(frozen=True)
class ImprovementReport:
    """Manipulator's utility bounds before (u0,u1) and after (v0,v1) a manipulation.

    All four are true-graph utilities; the improvement flags follow from them.
    """

    u0: int
    u1: int
    v0: int
    v1: int

    @property
    def lb(self) -> bool:
        return self.v0 > self.u0

    @property
    def ub(self) -> bool:
        return self.v1 > self.u1

    @property
    def weak(self) -> bool:
        return self.lb and self.ub

    @property
    def strict(self) -> bool:
        return self.v0 > self.u1

    @property
    def flags(self) -> dict:
        return {"lb": self.lb, "ub": self.ub, "weak": self.weak, "strict": self.strict}

    def flag(self, name: str) -> bool:
        return self.flags[name]


def classify(
    net_true: SocialNetwork,
    spec: ManipulationSpec,
    k: int,
    objective: Objective,
    constraint: SizeConstraint = SizeConstraint.NONE,
) -> ImprovementReport:
    """Exact improvement report: full solution sets before and after the delta."""
    net_m = apply_manipulation(net_true, spec)
    m = spec.manipulator
    true_adj_m = net_true.adj[m]
    u0, u1 = solution_bounds(net_true, k, objective, constraint, true_adj_m, m)
    v0, v1 = solution_bounds(net_m, k, objective, constraint, true_adj_m, m)
    return ImprovementReport(u0=u0, u1=u1, v0=v0, v1=v1)


def candidate_edges(net: SocialNetwork, m: int, mode: Mode) -> List[Edge]:
    """Edges the manipulator may legally put in a delta, in canonical order."""
    cands: List[Edge] = []
    for x in range(net.n):
        if x == m:
            continue
        present = net.has_edge(m, x)
        if (mode is Mode.ADD_ONLY) != present:
            cands.append((m, x) if net.directed or m < x else (x, m))
    return sorted(cands)


def iter_deltas(
    net: SocialNetwork, m: int, mode: Mode, max_delta: Optional[int] = None
) -> Iterator[ManipulationSpec]:
    """Non-empty deltas in canonical order: by size, then lexicographically."""
    cands = candidate_edges(net, m, mode)
    top = len(cands) if max_delta is None else min(max_delta, len(cands))
    for size in range(1, top + 1):
        for combo in combinations(cands, size):
            yield ManipulationSpec.of(m, mode, combo)


def search(
    net_true: SocialNetwork,
    m: int,
    mode: Mode,
    k: int,
    objective: Objective,
    constraint: SizeConstraint = SizeConstraint.NONE,
    max_delta: Optional[int] = None,
) -> Optional[Tuple[ManipulationSpec, ImprovementReport]]:
    """Best manipulation by (strict, weak, ub, lb) then (v0, v1); canonical
    delta order breaks remaining ties.  None when no flag is achievable."""
    best = None
    best_rank = None
    for spec in iter_deltas(net_true, m, mode, max_delta):
        rep = classify(net_true, spec, k, objective, constraint)
        if not (rep.lb or rep.ub):
            continue
        rank = (rep.strict, rep.weak, rep.ub, rep.lb, rep.v0, rep.v1)
        if best_rank is None or rank > best_rank:
            best_rank = rank
            best = (spec, rep)
    return best
