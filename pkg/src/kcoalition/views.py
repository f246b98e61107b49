"""Distance-d partial views, exhaustive network completions, and d-safe
manipulation verdicts.

A verdict is sound only because every completion is checked: when the free
pair count would exceed the configured cap the operation refuses instead of
sampling.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from .network import (
    Edge,
    ManipulationSpec,
    Mode,
    SocialNetwork,
    apply_manipulation,
    normalize_edge,
)
from .objectives import Objective, solution_bounds
from .partitions import SizeConstraint

DEFAULT_SLOT_CAP = 22

SAFE_TYPES = ("lb", "ub", "weak", "strict")


class SlotCapExceeded(RuntimeError):
    """Raised instead of sampling when a view has too many unknown edge slots."""


@dataclass(frozen=True)
class PartialView:
    """What a manipulator at distance d knows: all edges incident to the
    frontier A_{d-1}; every pair outside the frontier is unknown."""

    n: int
    directed: bool
    m: int
    d: int
    known_edges: FrozenSet[Edge]
    known_frontier: FrozenSet[int]

    def __post_init__(self) -> None:
        if self.d not in (1, 2):
            raise ValueError("d must be 1 or 2")
        if not 0 <= self.m < self.n:
            raise ValueError(f"manipulator {self.m} out of range")
        norm = frozenset(normalize_edge(u, v, self.directed) for u, v in self.known_edges)
        object.__setattr__(self, "known_edges", norm)
        for u, v in norm:
            if not (u in self.known_frontier or v in self.known_frontier):
                raise ValueError(f"known edge ({u},{v}) not incident to the frontier")

    @classmethod
    def of(cls, n, directed, m, d, known_edges) -> "PartialView":
        edges = frozenset(normalize_edge(u, v, directed) for u, v in known_edges)
        if d == 1:
            frontier = frozenset([m])
        else:
            e1 = {(u, v) for u, v in edges if m in (u, v)}
            frontier = frozenset([m]) | frozenset(x for e in e1 for x in e)
        return cls(n=n, directed=directed, m=m, d=d, known_edges=edges, known_frontier=frontier)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "directed": self.directed,
            "m": self.m,
            "d": self.d,
            "known_edges": sorted([u, v] for u, v in self.known_edges),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PartialView":
        try:
            return cls.of(
                int(obj["n"]),
                bool(obj["directed"]),
                int(obj["m"]),
                int(obj["d"]),
                [(int(u), int(v)) for u, v in obj["known_edges"]],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed view object: {exc}") from exc

    def free_slots(self) -> List[Edge]:
        """Unknown pairs, in canonical order: neither endpoint in the frontier."""
        outside = [a for a in range(self.n) if a not in self.known_frontier]
        if self.directed:
            return sorted(permutations(outside, 2))
        return [tuple(p) for p in combinations(sorted(outside), 2)]


def load_view(path: str) -> PartialView:
    with open(path) as fh:
        return PartialView.from_json(json.load(fh))


def extract_view(net: SocialNetwork, m: int, d: int) -> PartialView:
    """The distance-d knowledge set the network grants manipulator m."""
    if not 0 <= m < net.n:
        raise ValueError(f"manipulator {m} out of range")
    if d not in (1, 2):
        raise ValueError("d must be 1 or 2")
    frontier = {m}
    if d == 2:
        frontier |= {x for u, v in net.edges if m in (u, v) for x in (u, v)}
    known = frozenset(e for e in net.edges if e[0] in frontier or e[1] in frontier)
    return PartialView.of(net.n, net.directed, m, d, known)


def completion_count(view: PartialView) -> int:
    return 1 << len(view.free_slots())


def enumerate_completions(view: PartialView) -> Iterator[SocialNetwork]:
    """Every possible network extending the view, in canonical order."""
    slots = view.free_slots()
    base = view.known_edges
    for bits in range(1 << len(slots)):
        extra = frozenset(slots[i] for i in range(len(slots)) if bits >> i & 1)
        yield SocialNetwork(n=view.n, directed=view.directed, edges=base | extra)


@dataclass(frozen=True)
class SafeReport:
    """Per-type d-safety verdicts over all completions of a view.

    safe_T holds when T's defining inequality is weakly satisfied on every
    completion and strictly on at least one.  For each type, `witnesses`
    carries the first strictly-improving completion and `violations` the
    first completion breaking the weak inequality, both in canonical order.
    """

    safe_lb: bool
    safe_ub: bool
    safe_weak: bool
    safe_strict: bool
    completions: int
    witnesses: Dict[str, SocialNetwork] = field(default_factory=dict)
    violations: Dict[str, SocialNetwork] = field(default_factory=dict)
    first_violation: Optional[SocialNetwork] = None

    def safe(self, name: str) -> bool:
        return {
            "lb": self.safe_lb,
            "ub": self.safe_ub,
            "weak": self.safe_weak,
            "strict": self.safe_strict,
        }[name]

    @property
    def witness_completion(self) -> Optional[SocialNetwork]:
        for name in ("strict", "weak", "ub", "lb"):
            if self.safe(name):
                return self.witnesses.get(name)
        return None

    @property
    def violating_completion(self) -> Optional[SocialNetwork]:
        return self.first_violation


def _validate_view_spec(view: PartialView, spec: ManipulationSpec) -> None:
    m = view.m
    if spec.manipulator != m:
        raise ValueError("spec manipulator does not match the view")
    for u, v in spec.delta:
        if view.directed:
            if u != m:
                raise ValueError(f"delta edge ({u},{v}) is not outgoing from {m}")
        elif m not in (u, v):
            raise ValueError(f"delta edge ({u},{v}) is not incident to {m}")
        e = normalize_edge(u, v, view.directed)
        known = e in view.known_edges
        if spec.mode is Mode.REMOVE_ONLY and not known:
            raise ValueError(f"cannot remove unknown edge ({u},{v})")
        if spec.mode is Mode.ADD_ONLY and known:
            raise ValueError(f"cannot add edge ({u},{v}): known to be present")


def classify_d_safe(
    view: PartialView,
    spec: ManipulationSpec,
    k: int,
    objective: Objective,
    constraint: SizeConstraint = SizeConstraint.NONE,
    slot_cap: int = DEFAULT_SLOT_CAP,
) -> SafeReport:
    """Decide, for each improvement type, whether the delta is d-safe.

    Exhausts every completion: the weak inequality must hold on all of them
    and the strict one on at least one.
    """
    _validate_view_spec(view, spec)
    slots = view.free_slots()
    if len(slots) > slot_cap:
        raise SlotCapExceeded(
            f"view has {len(slots)} free slots, above the cap of {slot_cap}"
        )
    m = view.m
    ok_all = {t: True for t in SAFE_TYPES}
    some = {t: False for t in SAFE_TYPES}
    witnesses: Dict[str, SocialNetwork] = {}
    violations: Dict[str, SocialNetwork] = {}
    first_violation = None
    count = 0
    for comp in enumerate_completions(view):
        count += 1
        true_adj_m = comp.adj[m]
        u0, u1 = solution_bounds(comp, k, objective, constraint, true_adj_m, m)
        comp_m = apply_manipulation(comp, spec)
        v0, v1 = solution_bounds(comp_m, k, objective, constraint, true_adj_m, m)
        weak_ok = {
            "lb": v0 >= u0,
            "ub": v1 >= u1,
            "weak": v0 >= u0 and v1 >= u1,
            "strict": v0 >= u1,
        }
        strict_ok = {
            "lb": v0 > u0,
            "ub": v1 > u1,
            "weak": v0 > u0 and v1 > u1,
            "strict": v0 > u1,
        }
        for t in SAFE_TYPES:
            if not weak_ok[t]:
                if first_violation is None:
                    first_violation = comp
                if ok_all[t]:
                    ok_all[t] = False
                    violations[t] = comp
            if strict_ok[t] and not some[t]:
                some[t] = True
                witnesses[t] = comp
    safe = {t: ok_all[t] and some[t] for t in SAFE_TYPES}
    return SafeReport(
        safe_lb=safe["lb"],
        safe_ub=safe["ub"],
        safe_weak=safe["weak"],
        safe_strict=safe["strict"],
        completions=count,
        witnesses={t: w for t, w in witnesses.items() if safe[t]},
        violations=violations,
        first_violation=first_violation,
    )


def view_candidate_edges(view: PartialView, mode: Mode) -> List[Edge]:
    """Delta candidates decidable from the view, in canonical order."""
    m = view.m
    cands: List[Edge] = []
    for x in range(view.n):
        if x == m:
            continue
        e = normalize_edge(m, x, view.directed)
        known = e in view.known_edges
        if (mode is Mode.ADD_ONLY) != known:
            cands.append(e)
    return sorted(cands)


def search_safe(
    view: PartialView,
    mode: Mode,
    k: int,
    objective: Objective,
    constraint: SizeConstraint = SizeConstraint.NONE,
    slot_cap: int = DEFAULT_SLOT_CAP,
    max_delta: Optional[int] = None,
) -> Optional[Tuple[ManipulationSpec, SafeReport]]:
    """Best d-safe manipulation by (strict, weak, ub, lb); canonical delta
    order breaks ties.  None when no type is achievable safely."""
    cands = view_candidate_edges(view, mode)
    top = len(cands) if max_delta is None else min(max_delta, len(cands))
    best = None
    best_rank = None
    for size in range(1, top + 1):
        for combo in combinations(cands, size):
            spec = ManipulationSpec.of(view.m, mode, combo)
            rep = classify_d_safe(view, spec, k, objective, constraint, slot_cap)
            if not (rep.safe_lb or rep.safe_ub):
                continue
            rank = (rep.safe_strict, rep.safe_weak, rep.safe_ub, rep.safe_lb)
            if best_rank is None or rank > best_rank:
                best_rank = rank
                best = (spec, rep)
    return best
