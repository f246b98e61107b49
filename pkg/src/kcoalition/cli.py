"""Batch command-line front end.

Exit codes: 0 success / all claims pass, 1 claim failure or nothing found,
2 input error, 3 bound refusal (too many unknown slots to exhaust).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .manipulation import classify, search
from .network import ManipulationSpec, Mode, load_network, neighbours, utility
from .objectives import Objective, manipulator_bounds, min_kcut_value, solution_set
from .partitions import SizeConstraint, coalition_of
from .views import (
    DEFAULT_SLOT_CAP,
    SlotCapExceeded,
    classify_d_safe,
    completion_count,
    load_view,
    search_safe,
)
from .witness import (
    conjecture_search,
    load_bundled_claims,
    load_claims,
    synthesize_witness,
    verify_claims,
)

EXIT_OK = 0
EXIT_CLAIM_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_BOUND_REFUSAL = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT_ERROR):
        super().__init__(message)
        self.code = code


def _objective(name: str) -> Objective:
    try:
        return Objective(name)
    except ValueError:
        raise CliError(f"unknown objective {name!r}")


def _constraint(args) -> SizeConstraint:
    return SizeConstraint.EQUAL_SIZE if args.equal_size else SizeConstraint.NONE


def _mode(name: str) -> Mode:
    try:
        return Mode(name)
    except ValueError:
        raise CliError(f"unknown mode {name!r}")


def _parse_delta(items: List[str]) -> List[tuple]:
    edges = []
    for item in items:
        try:
            u, v = item.split(",")
            edges.append((int(u), int(v)))
        except ValueError:
            raise CliError(f"bad edge {item!r}; expected 'u,v'")
    return edges


def _emit(payload: dict, as_json: bool, lines: List[str]) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def cmd_solve(args) -> int:
    net = load_network(args.graph)
    sols = solution_set(net, args.k, _objective(args.objective), _constraint(args))
    structures = sorted(sols.structures, key=str)
    shown = structures if args.limit is None else structures[: args.limit]
    lines = []
    if sols.infeasible:
        lines.append("INFEASIBLE")
    elif sols.score is not None:
        lines.append(f"score {sols.score}")
    lines.append(f"{len(structures)} structure(s)")
    for p in shown:
        utils = " ".join(f"{a}:{utility(net, a, coalition_of(p, a))}" for a in range(net.n))
        lines.append(f"  {p}   [{utils}]")
    payload = {
        "objective": args.objective,
        "k": args.k,
        "score": sols.score,
        "infeasible": sols.infeasible,
        "count": len(structures),
        "structures": [[sorted(b) for b in p.blocks] for p in shown],
    }
    if args.objective == "max-util":
        cut = min_kcut_value(net, args.k, _constraint(args))
        payload["min_kcut"] = cut
        lines.append(f"min {args.k}-cut {cut}")
    _emit(payload, args.json, lines)
    return EXIT_OK


def cmd_classify(args) -> int:
    net = load_network(args.graph)
    spec = ManipulationSpec.of(args.manipulator, _mode(args.mode), _parse_delta(args.delta))
    rep = classify(net, spec, args.k, _objective(args.objective), _constraint(args))
    payload = {
        "u0": rep.u0,
        "u1": rep.u1,
        "v0": rep.v0,
        "v1": rep.v1,
        **rep.flags,
    }
    lines = [
        f"before: min {rep.u0}  max {rep.u1}",
        f"after:  min {rep.v0}  max {rep.v1}",
        "flags:  " + " ".join(f"{k}={'yes' if v else 'no'}" for k, v in rep.flags.items()),
    ]
    _emit(payload, args.json, lines)
    return EXIT_OK


def cmd_safe(args) -> int:
    view = load_view(args.view)
    objective = _objective(args.objective)
    constraint = _constraint(args)
    mode = _mode(args.mode)
    if args.search:
        found = search_safe(view, mode, args.k, objective, constraint, args.slot_cap)
        if found is None:
            _emit({"found": False}, args.json, ["no safe manipulation"])
            return EXIT_CLAIM_FAILURE
        spec, rep = found
    else:
        if not args.delta:
            raise CliError("provide --delta edges or --search")
        spec = ManipulationSpec.of(view.m, mode, _parse_delta(args.delta))
        rep = classify_d_safe(view, spec, args.k, objective, constraint, args.slot_cap)
    safe = {t: rep.safe(t) for t in ("lb", "ub", "weak", "strict")}
    payload = {
        "found": True,
        "delta": sorted(list(e) for e in spec.delta),
        "completions": rep.completions,
        "safe": safe,
    }
    lines = [
        f"delta {sorted(spec.delta)}  ({rep.completions} completions)",
        "safe:   " + " ".join(f"{k}={'yes' if v else 'no'}" for k, v in safe.items()),
    ]
    if rep.violating_completion is not None:
        payload["violating_completion"] = rep.violating_completion.to_json()
        lines.append(f"violating completion: {sorted(rep.violating_completion.edges)}")
    if rep.witness_completion is not None:
        payload["witness_completion"] = rep.witness_completion.to_json()
    _emit(payload, args.json, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.manifest in ("distance2", "distance2-equal-size", "resistance", "distance1"):
        claims = load_bundled_claims(f"claims_{args.manifest.replace('-', '_')}.json")
    else:
        claims = load_claims(args.manifest)
    if args.max_n is not None:
        claims = [
            type(c)(**{**c.__dict__, "max_n": args.max_n}) for c in claims
        ]
    results = verify_claims(claims, k=args.k, slot_cap=args.slot_cap)
    all_ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        all_ok = all_ok and res.passed
        print(f"{status}  {res.claim.id:55s} {res.claim.verdict:14s} {res.detail}")
    if args.json:
        print(json.dumps([r.to_json() for r in results], indent=2))
    return EXIT_OK if all_ok else EXIT_CLAIM_FAILURE


def cmd_witness(args) -> int:
    found = synthesize_witness(
        _objective(args.objective),
        _mode(args.mode),
        args.directed,
        args.information,
        _constraint(args),
        args.target,
        max_n=args.max_n,
        k=args.k,
        slot_cap=args.slot_cap,
    )
    if found is None:
        _emit({"found": False}, args.json, ["no witness within bounds"])
        return EXIT_CLAIM_FAILURE
    instance, spec = found
    payload = {
        "found": True,
        "instance": instance.to_json(),
        "delta": sorted(list(e) for e in spec.delta),
        "mode": args.mode,
    }
    _emit(payload, args.json, [json.dumps(payload)])
    return EXIT_OK


def cmd_conjecture(args) -> int:
    found = conjecture_search(args.max_n, slot_cap=args.slot_cap, k=args.k)
    if found is None:
        _emit(
            {"counterexample": None, "max_n": args.max_n},
            args.json,
            [f"no 2-safe weak-improvement found up to n={args.max_n}"],
        )
        return EXIT_OK
    view, spec = found
    payload = {
        "counterexample": {"view": view.to_json(), "delta": sorted(list(e) for e in spec.delta)}
    }
    _emit(payload, args.json, [json.dumps(payload)])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kcoalition")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument(
        "--workers",
        type=int,
        default=int(os.environ.get("KCOALITION_WORKERS", "1")),
        help="worker processes (results are order-normalized and identical for any value)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, objective=True):
        p.add_argument("-k", type=int, default=2)
        if objective:
            p.add_argument("--objective", default="max-util")
        p.add_argument("--equal-size", action="store_true")

    p = sub.add_parser("solve", help="solution set of a graph")
    p.add_argument("graph")
    common(p)
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="improvement report for a delta")
    p.add_argument("graph")
    p.add_argument("--manipulator", "-m", type=int, default=0)
    p.add_argument("--mode", required=True, choices=["add", "remove"])
    p.add_argument("--delta", nargs="*", default=[], help="edges as u,v")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("safe", help="d-safety of a delta over a partial view")
    p.add_argument("view")
    p.add_argument("--mode", required=True, choices=["add", "remove"])
    p.add_argument("--delta", nargs="*", default=[])
    p.add_argument("--search", action="store_true")
    p.add_argument("--slot-cap", type=int, default=DEFAULT_SLOT_CAP)
    common(p)
    p.set_defaults(func=cmd_safe)

    p = sub.add_parser("verify", help="check a claims manifest")
    p.add_argument("manifest", help="path or bundled name (distance2, resistance, ...)")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--slot-cap", type=int, default=DEFAULT_SLOT_CAP)
    p.add_argument("-k", type=int, default=2)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="synthesize a witness instance")
    p.add_argument("--mode", required=True, choices=["add", "remove"])
    p.add_argument("--directed", action="store_true")
    p.add_argument("--information", default="full", choices=["full", "d1", "d2"])
    p.add_argument("--target", required=True, choices=["lb", "ub", "weak", "strict"])
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--slot-cap", type=int, default=12)
    common(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("conjecture", help="bounded search for the open conjecture")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--slot-cap", type=int, default=DEFAULT_SLOT_CAP)
    p.add_argument("-k", type=int, default=2)
    p.set_defaults(func=cmd_conjecture)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SlotCapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BOUND_REFUSAL
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
