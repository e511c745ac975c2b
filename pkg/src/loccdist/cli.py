"""Command-line front end.

Parses state files (or built-in names), runs synthesis / verification /
simulation, and prints a report to stdout; text by default, or a canonical
JSON document with ``--format json``.  Identical inputs and seed produce
byte-identical JSON.  Exit codes: 0 success, 1 input error (one-line
diagnosis on stderr), 2 verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import LoccError, ParseError
from .interchange import load_state
from .locc import simulate_protocol, synthesize_protocol, verify_protocol
from .multiparty import (
    bell_two_copy_demo,
    cascade_multipartite,
    exclusion_protocol,
    verify_cascade,
    verify_exclusion,
)
from .statespace import Partition, StateVector
from .states import named_state

__all__ = ["RunConfig", "build_parser", "run", "main"]

COMMANDS = ("distinguish", "verify", "simulate", "cascade", "exclude", "bell-demo")


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: command, inputs, and knobs."""

    command: str
    psi: str | None = None
    phi: str | None = None
    states: tuple[str, ...] = ()
    alice: tuple[int, ...] = (0,)
    order: tuple[int, ...] | None = None
    trials: int = 10000
    seed: int | None = None
    output_format: str = "text"
    ortho_tol: float | None = None
    residual_tol: float | None = None


def _parse_indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loccdist",
        description="Distinguish orthogonal multipartite states with local measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, pair: bool = True) -> None:
        if pair:
            p.add_argument("--psi", required=True, help="state file or built-in name")
            p.add_argument("--phi", required=True, help="state file or built-in name")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--ortho-tol", type=float, default=None,
                       help="override the orthogonality tolerance")
        p.add_argument("--residual-tol", type=float, default=None,
                       help="override the branch-overlap residual tolerance")

    for name in ("distinguish", "verify"):
        p = sub.add_parser(name, help=f"{name} a pair of orthogonal states")
        add_common(p)
        p.add_argument("--alice", default="0", help="comma-separated Alice party indices")

    p = sub.add_parser("simulate", help="seeded Born-rule trials on a verified protocol")
    add_common(p)
    p.add_argument("--alice", default="0", help="comma-separated Alice party indices")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, required=True,
                   help="master seed (required; no wall-clock default)")

    p = sub.add_parser("cascade", help="sequential protocol for 3 or more parties")
    add_common(p)
    p.add_argument("--order", default=None, help="comma-separated measurement order")

    p = sub.add_parser("exclude", help="n-1 copy exclusion plan for n orthogonal states")
    add_common(p, pair=False)
    p.add_argument("--states", nargs="+", required=True, help="state files or built-in names")
    p.add_argument("--alice", default="0", help="comma-separated Alice party indices")

    p = sub.add_parser("bell-demo", help="two-copy identification of the four Bell states")
    add_common(p, pair=False)
    return parser


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    return RunConfig(
        command=args.command,
        psi=getattr(args, "psi", None),
        phi=getattr(args, "phi", None),
        states=tuple(getattr(args, "states", ()) or ()),
        alice=_parse_indices(getattr(args, "alice", "0")),
        order=_parse_indices(args.order) if getattr(args, "order", None) else None,
        trials=getattr(args, "trials", 10000),
        seed=getattr(args, "seed", None),
        output_format=args.format,
        ortho_tol=args.ortho_tol,
        residual_tol=args.residual_tol,
    )


def _tolerances(config: RunConfig) -> Tolerances:
    overrides = {}
    if config.ortho_tol is not None:
        overrides["orthogonality"] = config.ortho_tol
    if config.residual_tol is not None:
        overrides["discriminator"] = config.residual_tol
    return dataclasses.replace(DEFAULT_TOLERANCES, **overrides) if overrides else DEFAULT_TOLERANCES


def _resolve_state(spec: str, tolerances: Tolerances) -> StateVector:
    if os.path.exists(spec):
        return load_state(spec, tolerances)
    try:
        return named_state(spec)
    except KeyError:
        raise ParseError(
            f"{spec!r} is neither an existing file nor a built-in state name"
        ) from None


def _branch_rows(report) -> list[dict]:
    return [
        {
            "outcome": b.outcome,
            "prob_psi": b.prob_psi,
            "prob_phi": b.prob_phi,
            "overlap": b.overlap,
            "residual": b.residual,
            "degenerate": b.degenerate,
        }
        for b in report.branches
    ]


def _pair_report(command: str, config: RunConfig, tol: Tolerances) -> tuple[int, dict]:
    psi = _resolve_state(config.psi, tol)
    phi = _resolve_state(config.phi, tol)
    partition = Partition.bipartite(config.alice, psi.num_parties)
    protocol = synthesize_protocol(psi, phi, partition, tol)
    report = verify_protocol(protocol, psi, phi, tol)
    doc = {
        "command": command,
        "dims": list(psi.dims),
        "partition": {
            "alice": list(partition.alice_parties),
            "bob": list(partition.bob_parties),
        },
        "original_dim": protocol.original_dim,
        "padded_dim": protocol.padded_dim,
        "rotation_count": len(protocol.provenance.steps),
        "rotation_bound": protocol.provenance.step_bound,
        "max_diag_residual": max(b.overlap for b in report.branches),
        "max_branch_residual": report.max_residual,
        "min_verdict_margin": report.min_verdict_margin,
        "prob_sum_psi": report.prob_sum_psi,
        "prob_sum_phi": report.prob_sum_phi,
        "branches": _branch_rows(report),
        "verified": report.passes,
    }
    status = 0 if report.passes else 2
    if command == "simulate":
        if status == 0:
            sim = simulate_protocol(protocol, psi, phi, config.trials, config.seed, tol)
            doc.update(
                trials=sim.trials,
                seed=sim.seed,
                prng=sim.prng,
                confusion=sim.confusion,
                branch_counts=sim.branch_counts,
                branch_probabilities=sim.branch_probabilities,
                wrong_verdicts=sim.wrong_verdicts,
            )
    return status, doc


def _cascade_report(config: RunConfig, tol: Tolerances) -> tuple[int, dict]:
    psi = _resolve_state(config.psi, tol)
    phi = _resolve_state(config.phi, tol)
    order = config.order if config.order is not None else tuple(range(psi.num_parties))
    protocol = cascade_multipartite(psi, phi, order, tol)
    report = verify_cascade(protocol, psi, phi, tol)
    doc = {
        "command": "cascade",
        "dims": list(psi.dims),
        "party_order": list(protocol.party_order),
        "stage_count": protocol.stage_count,
        "max_depth": report.max_depth,
        "reachable_leaves": report.reachable_leaves,
        "max_branch_residual": report.max_residual,
        "prob_sum_psi": report.prob_sum_psi,
        "prob_sum_phi": report.prob_sum_phi,
        "verified": report.passes,
    }
    return (0 if report.passes else 2), doc


def _exclude_report(config: RunConfig, tol: Tolerances) -> tuple[int, dict]:
    states = [_resolve_state(spec, tol) for spec in config.states]
    partition = Partition.bipartite(config.alice, states[0].num_parties)
    plan = exclusion_protocol(states, partition, tol)
    report = verify_exclusion(plan, tol)
    doc = {
        "command": "exclude",
        "candidates": len(states),
        "copies_used": plan.copies_used,
        "rounds": [
            {
                "challenger": r.challenger,
                "pairs": [[incumbent, r.challenger] for incumbent, _ in r.protocols],
            }
            for r in plan.rounds
        ],
        "paths_checked": report.paths_checked,
        "misidentifications": report.misidentifications,
        "max_excluded_leak": report.max_excluded_leak,
        "verified": report.passes,
    }
    return (0 if report.passes else 2), doc


def _bell_demo_report() -> tuple[int, dict]:
    demo = bell_two_copy_demo()
    doc = {
        "command": "bell-demo",
        "copies_used": demo.copies_used,
        "misidentifications": demo.misidentifications,
        "branch_tables": {
            name: [{"branch": b, "probability": p, "verdict": v} for b, p, v in rows]
            for name, rows in demo.branch_tables.items()
        },
        "verified": demo.passes,
    }
    return (0 if demo.passes else 2), doc


def _render_text(doc: dict) -> str:
    lines = [f"command: {doc['command']}"]
    scalar_keys = [
        "dims", "partition", "party_order", "original_dim", "padded_dim",
        "rotation_count", "rotation_bound", "max_diag_residual",
        "max_branch_residual", "min_verdict_margin", "stage_count", "max_depth",
        "reachable_leaves", "candidates", "copies_used", "paths_checked",
        "misidentifications", "max_excluded_leak", "trials", "seed", "prng",
        "wrong_verdicts", "verified",
    ]
    for key in scalar_keys:
        if key in doc:
            lines.append(f"{key}: {doc[key]}")
    if "branches" in doc:
        lines.append("branch table (outcome, p_psi, p_phi, residual, degenerate):")
        for b in doc["branches"]:
            lines.append(
                f"  {b['outcome']:3d}  {b['prob_psi']:.6f}  {b['prob_phi']:.6f}"
                f"  {b['residual']:.3e}  {b['degenerate']}"
            )
    if "confusion" in doc:
        lines.append(f"confusion matrix: {doc['confusion']}")
    if "rounds" in doc:
        for r in doc["rounds"]:
            lines.append(f"round vs candidate {r['challenger']}: possible pairs {r['pairs']}")
    if "branch_tables" in doc:
        for name, rows in doc["branch_tables"].items():
            lines.append(f"true state {name}:")
            for row in rows:
                lines.append(
                    f"  {row['branch']}  p={row['probability']:.4f}  -> {row['verdict']}"
                )
    return "\n".join(lines) + "\n"


def _render(doc: dict, output_format: str) -> str:
    if output_format == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return _render_text(doc)


def run(config: RunConfig) -> tuple[int, str, str]:
    """Execute one command; returns (exit status, stdout text, stderr text)."""
    tol = _tolerances(config)
    try:
        if config.command in ("distinguish", "verify", "simulate"):
            status, doc = _pair_report(config.command, config, tol)
        elif config.command == "cascade":
            status, doc = _cascade_report(config, tol)
        elif config.command == "exclude":
            status, doc = _exclude_report(config, tol)
        elif config.command == "bell-demo":
            status, doc = _bell_demo_report()
        else:
            raise ParseError(f"unknown command {config.command!r}")
    except (LoccError, ValueError, OSError) as exc:
        return 1, "", f"error: {exc}\n"
    return status, _render(doc, config.output_format), ""


def main(argv: list[str] | None = None) -> int:
    try:
        config = config_from_args(argv)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    status, out, err = run(config)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
