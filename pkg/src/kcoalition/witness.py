"""Witness graphs and claim verification.

WitnessSpec is a compact notation for the susceptibility examples: named single agents, cliques of a given size, and links that fan out to
whole cliques or to a fixed number of their members.  Claims pair a
game configuration with a verdict (a susceptibility type or a resistance
guarantee) and are verified either by checking a bundled witness or by
exhausting a bounded instance space.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import combinations, permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .manipulation import classify, iter_deltas
from .network import Edge, ManipulationSpec, Mode, SocialNetwork
from .objectives import Objective
from .partitions import SizeConstraint
from .views import (
    DEFAULT_SLOT_CAP,
    PartialView,
    classify_d_safe,
    extract_view,
    view_candidate_edges,
)

SUSCEPTIBILITY_VERDICTS = ("lb", "ub", "weak", "strict")
RESISTANCE_VERDICTS = {
    "lb-proof": ("lb",),
    "ub-proof": ("ub",),
    "weak-proof": ("weak",),
    "strategyproof": ("lb", "ub"),
}


@dataclass(frozen=True)
class Clique:
    name: str
    size: int


@dataclass(frozen=True)
class Link:
    source: str
    target: str
    count: Optional[int] = None
    directed: bool = False


@dataclass(frozen=True)
class WitnessSpec:
    """A compactly specified graph: singleton nodes, cliques, and links."""

    directed: bool
    nodes: Tuple[str, ...]
    cliques: Tuple[Clique, ...] = ()
    links: Tuple[Link, ...] = ()

    @classmethod
    def from_json(cls, obj: dict) -> "WitnessSpec":
        return cls(
            directed=bool(obj.get("directed", False)),
            nodes=tuple(obj.get("nodes", ())),
            cliques=tuple(Clique(c["name"], int(c["size"])) for c in obj.get("cliques", ())),
            links=tuple(
                Link(
                    l["from"],
                    l["to"],
                    None if l.get("count") is None else int(l["count"]),
                    bool(l.get("directed", False)),
                )
                for l in obj.get("links", ())
            ),
        )

    def to_json(self) -> dict:
        out: dict = {"directed": self.directed, "nodes": list(self.nodes)}
        if self.cliques:
            out["cliques"] = [{"name": c.name, "size": c.size} for c in self.cliques]
        if self.links:
            out["links"] = [
                {
                    "from": l.source,
                    "to": l.target,
                    **({"count": l.count} if l.count is not None else {}),
                    **({"directed": True} if l.directed else {}),
                }
                for l in self.links
            ]
        return out

    def members(self) -> Dict[str, List[int]]:
        names: Dict[str, List[int]] = {}
        idx = 0
        for name in self.nodes:
            if name in names:
                raise ValueError(f"duplicate name {name!r}")
            names[name] = [idx]
            idx += 1
        for c in self.cliques:
            if c.name in names:
                raise ValueError(f"duplicate name {c.name!r}")
            if c.size < 1:
                raise ValueError(f"clique {c.name!r} must have positive size")
            names[c.name] = list(range(idx, idx + c.size))
            idx += c.size
        return names


def expand_witness(spec: WitnessSpec) -> SocialNetwork:
    """Expand a compact spec into a concrete network.

    Cliques become complete subgraphs.  A counted link picks the lowest-
    indexed members on the clique side; a counted clique-to-clique link
    pairs the two cliques' lowest members one to one.
    """
    members = spec.members()
    n = sum(len(v) for v in members.values())
    edges: List[Edge] = []
    for c in spec.cliques:
        for u, v in combinations(members[c.name], 2):
            edges.append((u, v))
            if spec.directed:
                edges.append((v, u))
    for link in spec.links:
        try:
            src, dst = members[link.source], members[link.target]
        except KeyError as exc:
            raise ValueError(f"link references unknown name {exc}") from exc
        if link.directed and not spec.directed:
            raise ValueError("directed link in an undirected witness")
        if link.count is None:
            pairs = [(u, v) for u in src for v in dst]
        elif len(src) > 1 and len(dst) > 1:
            if link.count > min(len(src), len(dst)):
                raise ValueError(f"link count {link.count} exceeds clique size")
            pairs = list(zip(src[: link.count], dst[: link.count]))
        elif len(dst) > 1:
            if link.count > len(dst):
                raise ValueError(f"link count {link.count} exceeds clique size")
            pairs = [(u, v) for u in src for v in dst[: link.count]]
        else:
            if link.count > len(src):
                raise ValueError(f"link count {link.count} exceeds clique size")
            pairs = [(u, v) for u in src[: link.count] for v in dst]
        for u, v in pairs:
            edges.append((u, v))
            if spec.directed and not link.directed:
                edges.append((v, u))
    return SocialNetwork.of(n, edges, spec.directed)


# ---------------------------------------------------------------------------
# Instance enumeration (manipulator fixed at agent 0).


def _pair_space(n: int, directed: bool) -> List[Edge]:
    if directed:
        return [(u, v) for u in range(n) for v in range(n) if u != v]
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def all_networks(n: int, directed: bool) -> Iterator[SocialNetwork]:
    """Every network on n agents, in edge-bitmap order."""
    pairs = _pair_space(n, directed)
    for bits in range(1 << len(pairs)):
        edges = frozenset(pairs[i] for i in range(len(pairs)) if bits >> i & 1)
        yield SocialNetwork(n=n, directed=directed, edges=edges)


def canonical_networks(n: int, directed: bool) -> Iterator[SocialNetwork]:
    """One representative per relabeling class of agents 1..n-1 (agent 0 fixed)."""
    pairs = _pair_space(n, directed)
    index = {p: i for i, p in enumerate(pairs)}
    maps = []
    for perm in permutations(range(1, n)):
        relabel = {0: 0, **{old: new for old, new in zip(range(1, n), perm)}}
        bitmap = []
        for u, v in pairs:
            uu, vv = relabel[u], relabel[v]
            if not directed and uu > vv:
                uu, vv = vv, uu
            bitmap.append(index[(uu, vv)])
        maps.append(tuple(bitmap))
    npairs = len(pairs)
    for bits in range(1 << npairs):
        canonical = True
        for bmap in maps:
            mapped = 0
            rest = bits
            while rest:
                low = rest & -rest
                mapped |= 1 << bmap[low.bit_length() - 1]
                rest ^= low
            if mapped < bits:
                canonical = False
                break
        if canonical:
            edges = frozenset(pairs[i] for i in range(npairs) if bits >> i & 1)
            yield SocialNetwork(n=n, directed=directed, edges=edges)


def all_views_d1(n: int, directed: bool, m: int = 0) -> Iterator[PartialView]:
    """Every distance-1 view for manipulator m."""
    others = [a for a in range(n) if a != m]
    if not directed:
        for bits in range(1 << len(others)):
            known = [(m, others[i]) for i in range(len(others)) if bits >> i & 1]
            yield PartialView.of(n, False, m, 1, known)
        return
    for statuses in product(range(4), repeat=len(others)):
        known = []
        for a, st in zip(others, statuses):
            if st & 1:
                known.append((m, a))
            if st & 2:
                known.append((a, m))
        yield PartialView.of(n, True, m, 1, known)


def all_views(n: int, directed: bool, d: int, m: int = 0) -> Iterator[PartialView]:
    """Distinct distance-d views, via canonical underlying networks for d=2."""
    if d == 1:
        yield from all_views_d1(n, directed, m)
        return
    seen = set()
    for net in canonical_networks(n, directed):
        view = extract_view(net, m, d)
        key = (view.known_edges, view.known_frontier)
        if key not in seen:
            seen.add(key)
            yield view


# ---------------------------------------------------------------------------
# Claims.


@dataclass(frozen=True)
class WitnessRef:
    spec: WitnessSpec
    m: int
    delta: Tuple[Edge, ...]


@dataclass(frozen=True)
class Claim:
    id: str
    objective: Objective
    mode: Mode
    directed: bool
    information: str  # "full" | "d1" | "d2"
    constraint: SizeConstraint
    verdict: str
    witness: Optional[WitnessRef] = None
    max_n: Optional[int] = None

    @property
    def is_resistance(self) -> bool:
        return self.verdict in RESISTANCE_VERDICTS


@dataclass
class ClaimResult:
    claim: Claim
    passed: bool
    detail: str
    witness_net: Optional[SocialNetwork] = None
    witness_delta: Optional[Tuple[Edge, ...]] = None
    violation: Optional[str] = None

    def to_json(self) -> dict:
        out = {
            "id": self.claim.id,
            "verdict": self.claim.verdict,
            "passed": self.passed,
            "detail": self.detail,
        }
        if self.witness_net is not None:
            out["witness"] = self.witness_net.to_json()
            out["delta"] = [list(e) for e in (self.witness_delta or ())]
        if self.violation:
            out["violation"] = self.violation
        return out


def _load_witness_ref(obj: dict, base_dir=None) -> WitnessRef:
    spec_obj = obj["spec"]
    if isinstance(spec_obj, str):
        if base_dir is None:
            raise ValueError("witness spec path given without a base directory")
        with open(f"{base_dir}/{spec_obj}") as fh:
            spec_obj = json.load(fh)
    return WitnessRef(
        spec=WitnessSpec.from_json(spec_obj),
        m=int(obj.get("m", 0)),
        delta=tuple((int(u), int(v)) for u, v in obj["delta"]),
    )


def load_claims(manifest: Union[str, dict], base_dir=None) -> List[Claim]:
    """Read a claims manifest; rows with network "both" expand into two claims."""
    if isinstance(manifest, str):
        if base_dir is None:
            base_dir = "/".join(manifest.split("/")[:-1]) or "."
        with open(manifest) as fh:
            manifest = json.load(fh)
    claims: List[Claim] = []
    for row in manifest["claims"]:
        nets = [row["network"]] if row["network"] != "both" else ["undirected", "directed"]
        for netkind in nets:
            directed = netkind == "directed"
            suffix = f"-{netkind}" if row["network"] == "both" else ""
            wkey = "witness_directed" if directed and "witness_directed" in row else "witness"
            witness = None
            if row.get(wkey) is not None:
                witness = _load_witness_ref(row[wkey], base_dir)
            claims.append(
                Claim(
                    id=row["id"] + suffix,
                    objective=Objective(row["objective"]),
                    mode=Mode(row["mode"]),
                    directed=directed,
                    information=row.get("information", "full"),
                    constraint=SizeConstraint.EQUAL_SIZE
                    if row.get("equal_size")
                    else SizeConstraint.NONE,
                    verdict=row["verdict"],
                    witness=witness,
                    max_n=row.get("max_n"),
                )
            )
    return claims


def bundled_manifest_path(name: str) -> str:
    return str(resources.files("kcoalition").joinpath("data", name))


def load_bundled_claims(name: str) -> List[Claim]:
    data_dir = str(resources.files("kcoalition").joinpath("data"))
    return load_claims(f"{data_dir}/{name}", base_dir=data_dir)


# ---------------------------------------------------------------------------
# Verification.


def _default_max_n(claim: Claim) -> int:
    return claim.max_n if claim.max_n is not None else (4 if claim.directed else 5)


def _check_susceptible_witness(claim: Claim, k: int, slot_cap: int) -> ClaimResult:
    ref = claim.witness
    net = expand_witness(ref.spec)
    if net.directed != claim.directed:
        return ClaimResult(claim, False, "witness directedness does not match the claim")
    spec = ManipulationSpec.of(ref.m, claim.mode, ref.delta)
    if claim.information == "full":
        rep = classify(net, spec, k, claim.objective, claim.constraint)
        ok = rep.flag(claim.verdict)
        detail = f"u0={rep.u0} u1={rep.u1} v0={rep.v0} v1={rep.v1}"
    else:
        d = 1 if claim.information == "d1" else 2
        view = extract_view(net, ref.m, d)
        rep = classify_d_safe(view, spec, k, claim.objective, claim.constraint, slot_cap)
        ok = rep.safe(claim.verdict)
        detail = f"{rep.completions} completions, safe flags " + ",".join(
            t for t in SUSCEPTIBILITY_VERDICTS if rep.safe(t)
        )
    return ClaimResult(claim, ok, detail, witness_net=net, witness_delta=ref.delta)


def _check_susceptible_synthesized(claim: Claim, k: int, slot_cap: int) -> ClaimResult:
    found = synthesize_witness(
        claim.objective,
        claim.mode,
        claim.directed,
        claim.information,
        claim.constraint,
        claim.verdict,
        max_n=_default_max_n(claim) + 1,
        k=k,
        slot_cap=slot_cap,
    )
    if found is None:
        return ClaimResult(claim, False, "no witness found within the search bounds")
    instance, spec = found
    net = instance if isinstance(instance, SocialNetwork) else None
    return ClaimResult(
        claim,
        True,
        f"synthesized witness with n={instance.n}",
        witness_net=net,
        witness_delta=tuple(sorted(spec.delta)),
    )


def _check_resistance(claim: Claim, k: int, slot_cap: int) -> ClaimResult:
    forbidden = RESISTANCE_VERDICTS[claim.verdict]
    max_n = _default_max_n(claim)
    checked = 0
    if claim.information == "full":
        for n in range(1, max_n + 1):
            for net in all_networks(n, claim.directed):
                for spec in iter_deltas(net, 0, claim.mode):
                    checked += 1
                    rep = classify(net, spec, k, claim.objective, claim.constraint)
                    for t in forbidden:
                        if rep.flag(t):
                            return ClaimResult(
                                claim,
                                False,
                                f"{t}-improvement found after {checked} deltas",
                                witness_net=net,
                                witness_delta=tuple(sorted(spec.delta)),
                                violation=t,
                            )
        return ClaimResult(claim, True, f"exhausted n<={max_n}: {checked} deltas, no violation")
    d = 1 if claim.information == "d1" else 2
    for n in range(2, max_n + 1):
        for view in all_views(n, claim.directed, d):
            for mode_spec in _view_deltas(view, claim.mode):
                checked += 1
                rep = classify_d_safe(
                    view, mode_spec, k, claim.objective, claim.constraint, slot_cap
                )
                for t in forbidden:
                    if rep.safe(t):
                        return ClaimResult(
                            claim,
                            False,
                            f"{d}-safe {t}-improvement found after {checked} deltas",
                            witness_delta=tuple(sorted(mode_spec.delta)),
                            violation=t,
                        )
    return ClaimResult(claim, True, f"exhausted views n<={max_n}: {checked} deltas, no violation")


def _view_deltas(view: PartialView, mode: Mode) -> Iterator[ManipulationSpec]:
    cands = view_candidate_edges(view, mode)
    for size in range(1, len(cands) + 1):
        for combo in combinations(cands, size):
            yield ManipulationSpec.of(view.m, mode, combo)


def verify_claims(
    claims: Sequence[Claim], k: int = 2, slot_cap: int = DEFAULT_SLOT_CAP
) -> List[ClaimResult]:
    """PASS/FAIL report over a claims manifest; failures carry the violation."""
    results = []
    for claim in claims:
        if claim.is_resistance:
            results.append(_check_resistance(claim, k, slot_cap))
        elif claim.witness is not None:
            results.append(_check_susceptible_witness(claim, k, slot_cap))
        else:
            results.append(_check_susceptible_synthesized(claim, k, slot_cap))
    return results


# ---------------------------------------------------------------------------
# Witness synthesis and the bounded conjecture search.


def synthesize_witness(
    objective: Objective,
    mode: Mode,
    directed: bool,
    information: str,
    constraint: SizeConstraint,
    target: str,
    max_n: int,
    k: int = 2,
    slot_cap: int = 12,
    max_delta: Optional[int] = None,
):
    """Smallest-first exhaustive search for an instance with the target flag.

    Full information searches networks (manipulator fixed at agent 0, other
    agents deduped up to relabeling); limited information searches views.
    Views whose free-slot count exceeds `slot_cap` are skipped, keeping the
    search bounded.  Returns (network-or-view, manipulation) or None.
    """
    if target not in SUSCEPTIBILITY_VERDICTS:
        raise ValueError(f"unknown target {target!r}")
    for n in range(2, max_n + 1):
        if information == "full":
            for net in canonical_networks(n, directed):
                for spec in iter_deltas(net, 0, mode, max_delta):
                    rep = classify(net, spec, k, objective, constraint)
                    if rep.flag(target):
                        return net, spec
        else:
            d = 1 if information == "d1" else 2
            for view in all_views(n, directed, d):
                if len(view.free_slots()) > slot_cap:
                    continue
                for spec in _view_deltas(view, mode):
                    rep = classify_d_safe(view, spec, k, objective, constraint, slot_cap)
                    if rep.safe(target):
                        return view, spec
    return None


def conjecture_search(
    max_n: int, slot_cap: int = DEFAULT_SLOT_CAP, k: int = 2
) -> Optional[Tuple[PartialView, ManipulationSpec]]:
    """Bounded hunt for a 2-safe weak-improvement against Max-Util by edge
    removal over undirected networks; the conjectured answer is None.

    A hit is re-classified before being reported, so a buggy fast path can
    never fabricate a counterexample.  Raises SlotCapExceeded rather than
    skipping views it cannot exhaust.
    """
    for n in range(2, max_n + 1):
        for view in all_views(n, False, 2):
            for spec in _view_deltas(view, Mode.REMOVE_ONLY):
                rep = classify_d_safe(
                    view, spec, k, Objective.MAX_UTIL, SizeConstraint.NONE, slot_cap
                )
                if rep.safe_weak:
                    recheck = classify_d_safe(
                        view, spec, k, Objective.MAX_UTIL, SizeConstraint.NONE, slot_cap
                    )
                    if recheck.safe_weak:
                        return view, spec
    return None
