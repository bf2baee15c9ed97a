"""Batch entry points: score layouts, run schedules, emit clues, simulate
sequences with scripted agents, serve the HTTP API, export CSVs.

Every subcommand is a pure function of (input files, flags, seed); outputs are
reproducible byte-for-byte given the same inputs. Exit codes: 0 success,
1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .annealing import AnnealSchedule, SegmentKind, run_repeated, run_schedule
from .clues import clue_for
from .errors import ContractViolation, DocumentError, PathCountCapExceeded
from .model import random_layout
from .scoring import CRITERIA, Criterion, Priorities, ScoringParams
from .sessions import AgentPolicy, Approach, GameConfig, run_sequence
from .storage import (
    SessionLogWriter,
    clue_to_dict,
    export_contributions_csv,
    export_scores_csv,
    export_trajectory_csv,
    load_layout,
    load_network,
    save_layout,
)

USAGE_EXIT = 1
DATA_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _add_priority_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--w-dp", type=float, default=400.0)
    p.add_argument("--w-ec", type=float, default=3.0)
    p.add_argument("--w-el", type=float, default=1.0)
    p.add_argument("--w-nd", type=float, default=1.0)
    p.add_argument("--w-ned", type=float, default=1.0)


def _add_scoring_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--theta-min", type=float, default=15.0)
    p.add_argument("--min-edge-length", type=float, default=300.0)
    p.add_argument("--short-edge-penalty", type=float, default=10_000.0)
    p.add_argument("--path-cap", type=int, default=10_000_000)
    p.add_argument("--source-target-only", action="store_true")


def _priorities(args) -> Priorities:
    return Priorities(args.w_dp, args.w_ec, args.w_el, args.w_nd, args.w_ned)


def _scoring(args) -> ScoringParams:
    return ScoringParams(
        theta_min_deg=args.theta_min,
        min_edge_length=args.min_edge_length,
        short_edge_penalty=args.short_edge_penalty,
        path_count_cap=args.path_cap,
        source_target_only=args.source_target_only,
    )


def _load_net(path: str):
    return load_network(Path(path).read_text())


def _load_or_random_layout(network, layout_path: str | None, seed: int):
    if layout_path is None:
        return random_layout(network, seed=seed)
    return load_layout(Path(layout_path).read_text(), network)


def cmd_score(args) -> int:
    from .scoring import overall_score

    network = _load_net(args.network)
    layout = load_layout(Path(args.layout).read_text(), network)
    breakdown = overall_score(network, layout, _priorities(args), _scoring(args))
    for criterion in CRITERIA:
        print(f"{criterion.value} {breakdown.display(criterion)}")
    print(f"overall {breakdown.overall!r}")
    return 0


def cmd_anneal(args) -> int:
    network = _load_net(args.network)
    layout = _load_or_random_layout(network, args.layout, args.seed)
    if args.segment is not None:
        schedule = SegmentKind(args.segment).schedule(seed=args.seed)
    else:
        schedule = AnnealSchedule(
            t_start=args.t_start, iterations=args.iterations, seed=args.seed,
            cooling=args.cooling, accept_worse=not args.no_accept_worse,
            delta_scale=args.delta_scale,
        )
    priorities, params = _priorities(args), _scoring(args)
    if args.repeat > 1:
        result = run_repeated(
            network, layout, schedule, schedules=args.repeat,
            priorities=priorities, params=params,
        )
    else:
        result = run_schedule(network, layout, schedule, priorities, params)
    out_layout = Path(args.out_layout)
    out_layout.write_text(
        save_layout(
            result.best_layout,
            network.id,
            provenance={
                "actor": "annealer",
                "seed": args.seed,
                "breakdown": {"overall": result.best_breakdown.overall},
            },
        )
    )
    Path(args.out_trajectory).write_text(export_trajectory_csv(result))
    print(
        f"best overall {result.best_breakdown.overall!r} "
        f"({result.accepted} accepted / {result.rejected} rejected; "
        f"final T {result.final_temperature:.4f})"
    )
    return 0


def cmd_clues(args) -> int:
    network = _load_net(args.network)
    layout = load_layout(Path(args.layout).read_text(), network)
    wanted = CRITERIA if args.criterion == "all" else (Criterion(args.criterion),)
    params = _scoring(args)
    out = {}
    for criterion in wanted:
        clue = clue_for(criterion, network, layout, params)
        out[criterion.value] = clue_to_dict(clue)
    print(json.dumps(out, indent=2))
    return 0


def cmd_sequence(args) -> int:
    network = _load_net(args.network)
    layout = _load_or_random_layout(network, args.layout, args.seed)
    config = GameConfig(
        network_id=network.id,
        approach=Approach(args.approach),
        priorities=_priorities(args),
        sessions_per_criterion=args.per_criterion,
        sequence_budget_minutes=args.budget_minutes,
        scoring=_scoring(args),
        seed=args.seed,
        sa_segments=args.sa_segments,
        sa_segment_kind=SegmentKind(args.sa_segment) if args.sa_segment else None,
        agent_move_budget=args.agent_moves,
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    log_path = out_dir / "sessions.session.jsonl"
    with log_path.open("w") as handle:
        report = run_sequence(
            network, layout, config,
            agent_policy=AgentPolicy(move_budget=args.agent_moves),
            log=SessionLogWriter(handle),
        )
    (out_dir / "contributions.csv").write_text(export_contributions_csv(report))
    (out_dir / "scores.csv").write_text(export_scores_csv(report))
    best = report.final_breakdown
    (out_dir / "best.layout.json").write_text(
        save_layout(
            report.improvements[-1].layout if report.improvements else layout,
            network.id,
            provenance={"actor": "sequence", "breakdown": {"overall": best.overall}},
        )
    )
    print(
        f"{config.approach.value}: overall {report.initial_breakdown.overall!r} "
        f"-> {best.overall!r} over {len(report.entries)} turns"
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="layoutlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score a layout and print the breakdown")
    p.add_argument("network")
    p.add_argument("layout")
    _add_priority_flags(p)
    _add_scoring_flags(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("anneal", help="run an annealing schedule")
    p.add_argument("network")
    p.add_argument("--layout", default=None, help="start layout (default: random per seed)")
    p.add_argument("--segment", choices=[k.value for k in SegmentKind], default=None)
    p.add_argument("--t-start", type=float, default=100.0)
    p.add_argument("--iterations", type=int, default=500)
    p.add_argument("--cooling", type=float, default=0.995)
    p.add_argument("--delta-scale", type=float, default=10_000.0,
                   help="scale of acceptance deltas per unit of overall score")
    p.add_argument("--no-accept-worse", action="store_true")
    p.add_argument("--repeat", type=int, default=1, help="chain this many schedules")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-layout", required=True)
    p.add_argument("--out-trajectory", required=True)
    _add_priority_flags(p)
    _add_scoring_flags(p)
    p.set_defaults(func=cmd_anneal)

    p = sub.add_parser("clues", help="emit criterion clues for a layout")
    p.add_argument("network")
    p.add_argument("layout")
    p.add_argument(
        "--criterion", choices=[c.value for c in CRITERIA] + ["all"], default="all"
    )
    _add_scoring_flags(p)
    p.set_defaults(func=cmd_clues)

    p = sub.add_parser("sequence", help="simulate a game sequence with scripted agents")
    p.add_argument("network")
    p.add_argument("--layout", default=None)
    p.add_argument("--approach", choices=[a.value for a in Approach], default="Crowd")
    p.add_argument("--per-criterion", type=int, default=1, metavar="N")
    p.add_argument("--budget-minutes", type=float, default=24 * 60.0)
    p.add_argument("--agent-moves", type=int, default=40)
    p.add_argument("--sa-segments", type=int, default=None)
    p.add_argument("--sa-segment", choices=[k.value for k in SegmentKind], default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    _add_priority_flags(p)
    _add_scoring_flags(p)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("serve", help="run the HTTP game service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, ContractViolation, PathCountCapExceeded) as exc:
        print(f"layoutlab: {exc}", file=sys.stderr)
        return DATA_EXIT
    except OSError as exc:
        print(f"layoutlab: {exc}", file=sys.stderr)
        return DATA_EXIT


if __name__ == "__main__":
    raise SystemExit(main())
