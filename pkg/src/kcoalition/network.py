"""Social networks, agent reports, and single-agent edge manipulations.

Networks are immutable.  Undirected edges are stored once, as (min, max)
pairs; directed edges as ordered pairs.  Adjacency bitmasks are cached on
first use and drive all the enumeration-heavy code elsewhere.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import FrozenSet, Iterable, Tuple

Edge = Tuple[int, int]


class Aggregation(Enum):
    """How the organizer merges two agents' reports into one undirected edge."""

    OR = "or"
    AND = "and"


class Mode(Enum):
    """Manipulator capability: report fake edges, or hide true ones."""

    ADD_ONLY = "add"
    REMOVE_ONLY = "remove"


def normalize_edge(u: int, v: int, directed: bool) -> Edge:
    if u == v:
        raise ValueError(f"self loop ({u},{v}) is not allowed")
    if directed or u < v:
        return (u, v)
    return (v, u)


@dataclass(frozen=True)
class SocialNetwork:
    n: int
    directed: bool
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("agent count must be non-negative")
        norm = frozenset(normalize_edge(u, v, self.directed) for u, v in self.edges)
        for u, v in norm:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
        object.__setattr__(self, "edges", norm)

    @classmethod
    def of(cls, n: int, edges: Iterable[Edge] = (), directed: bool = False) -> "SocialNetwork":
        return cls(n=n, directed=directed, edges=frozenset(tuple(e) for e in edges))

    @cached_property
    def adj(self) -> Tuple[int, ...]:
        """Out-adjacency bitmasks (symmetric for undirected networks)."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            if not self.directed:
                masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def in_adj(self) -> Tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[v] |= 1 << u
            if not self.directed:
                masks[u] |= 1 << v
        return tuple(masks)

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v, self.directed) in self.edges

    def incident_mask(self, a: int) -> int:
        """Agents connected to `a` by an edge in either direction."""
        return self.adj[a] | self.in_adj[a]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "directed": self.directed,
            "edges": sorted([u, v] for u, v in self.edges),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SocialNetwork":
        try:
            n = int(obj["n"])
            directed = bool(obj["directed"])
            edges = [(int(u), int(v)) for u, v in obj["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed graph object: {exc}") from exc
        return cls.of(n, edges, directed)


def load_network(path: str) -> SocialNetwork:
    with open(path) as fh:
        return SocialNetwork.from_json(json.load(fh))


@dataclass(frozen=True)
class ReportProfile:
    """Per-agent friendship reports r_i, source material for the organizer's graph."""

    reports: Tuple[FrozenSet[int], ...]

    def __post_init__(self) -> None:
        n = len(self.reports)
        for i, r in enumerate(self.reports):
            if i in r:
                raise ValueError(f"agent {i} reports itself")
            for j in r:
                if not 0 <= j < n:
                    raise ValueError(f"agent {i} reports out-of-range id {j}")

    @classmethod
    def of(cls, reports: Iterable[Iterable[int]]) -> "ReportProfile":
        return cls(tuple(frozenset(r) for r in reports))

    @property
    def n(self) -> int:
        return len(self.reports)


def build_from_reports(
    reports: ReportProfile, directed: bool, aggregation: Aggregation = Aggregation.OR
) -> SocialNetwork:
    """Aggregate the reports into the network the organizer works with.

    Undirected networks keep {i,j} under OR if either side reported it and
    under AND only if both did; directed networks copy each report verbatim
    as outgoing edges.
    """
    n = reports.n
    if directed:
        edges = [(i, j) for i, r in enumerate(reports.reports) for j in r]
        return SocialNetwork.of(n, edges, directed=True)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            mutual = j in reports.reports[i], i in reports.reports[j]
            keep = any(mutual) if aggregation is Aggregation.OR else all(mutual)
            if keep:
                edges.append((i, j))
    return SocialNetwork.of(n, edges, directed=False)


@dataclass(frozen=True)
class ManipulationSpec:
    """An edge delta (adds xor removes) incident to one designated agent."""

    manipulator: int
    mode: Mode
    delta: FrozenSet[Edge]

    @classmethod
    def of(cls, manipulator: int, mode: Mode, delta: Iterable[Edge] = ()) -> "ManipulationSpec":
        return cls(manipulator, mode, frozenset(tuple(e) for e in delta))

    def normalized_delta(self, directed: bool) -> FrozenSet[Edge]:
        return frozenset(normalize_edge(u, v, directed) for u, v in self.delta)

    def validate(self, net: SocialNetwork) -> None:
        m = self.manipulator
        if not 0 <= m < net.n:
            raise ValueError(f"manipulator {m} out of range")
        for u, v in self.delta:
            if net.directed:
                if u != m:
                    raise ValueError(f"directed delta edge ({u},{v}) is not outgoing from {m}")
            elif m not in (u, v):
                raise ValueError(f"delta edge ({u},{v}) is not incident to manipulator {m}")
            present = net.has_edge(u, v)
            if self.mode is Mode.ADD_ONLY and present:
                raise ValueError(f"cannot add edge ({u},{v}): already present")
            if self.mode is Mode.REMOVE_ONLY and not present:
                raise ValueError(f"cannot remove edge ({u},{v}): not present")


def apply_manipulation(net: SocialNetwork, spec: ManipulationSpec) -> SocialNetwork:
    """The network the organizer sees after the manipulator misreports."""
    spec.validate(net)
    delta = spec.normalized_delta(net.directed)
    if spec.mode is Mode.ADD_ONLY:
        edges = net.edges | delta
    else:
        edges = net.edges - delta
    return SocialNetwork(n=net.n, directed=net.directed, edges=edges)


def neighbours(net: SocialNetwork, a: int) -> FrozenSet[int]:
    """Out-neighbours of `a` (adjacent agents, when undirected)."""
    if not 0 <= a < net.n:
        raise ValueError(f"agent {a} out of range")
    mask = net.adj[a]
    return frozenset(i for i in range(net.n) if mask >> i & 1)


def utility(net: SocialNetwork, a: int, coalition: Iterable[int]) -> int:
    """Number of a's (out-)neighbours inside the coalition; a must belong to it."""
    members = set(coalition)
    if a not in members:
        raise ValueError(f"agent {a} is not in the coalition")
    return len(members & set(neighbours(net, a)))
