#!/usr/bin/env python3
"""Desk-scale approach comparison on one network.

Runs Crowd, CrowdRandom, the three hybrid variants, and SA-only sequences with
scripted agents over a set of seeds, then writes per-approach summary and
per-turn contribution CSVs suitable for score-over-time plots.

Example:
    python scripts/run_experiment.py fixtures/cyclerich_small.network.json \
        --seeds 0 1 2 --out results/
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from layoutlab.annealing import SegmentKind
from layoutlab.model import random_layout
from layoutlab.sessions import AgentPolicy, Approach, GameConfig, run_sequence
from layoutlab.storage import export_contributions_csv, load_network

APPROACHES = [
    Approach.CROWD,
    Approach.CROWD_RANDOM,
    Approach.HYBRID_SA100,
    Approach.HYBRID_SA50,
    Approach.HYBRID_SA20,
    Approach.SA_ONLY,
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("network", type=Path)
    parser.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    parser.add_argument("--per-criterion", type=int, default=2)
    parser.add_argument("--agent-moves", type=int, default=200)
    parser.add_argument("--sa-segments", type=int, default=10)
    parser.add_argument("--out", type=Path, default=Path("results"))
    args = parser.parse_args()

    network = load_network(args.network.read_text())
    args.out.mkdir(parents=True, exist_ok=True)
    policy = AgentPolicy(
        move_budget=args.agent_moves, grid_points_per_axis=6, dp_clue_max_path_edges=5
    )

    summary_path = args.out / f"{network.id}.summary.csv"
    with summary_path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["approach", "seed", "initial_overall", "final_overall", "seconds"])
        for approach in APPROACHES:
            for seed in args.seeds:
                layout = random_layout(network, seed=9000 + seed)
                config = GameConfig(
                    network_id=network.id,
                    approach=approach,
                    sessions_per_criterion=args.per_criterion,
                    agent_move_budget=args.agent_moves,
                    sa_segments=args.sa_segments if approach is Approach.SA_ONLY else None,
                    sa_segment_kind=(
                        SegmentKind.SA100 if approach is Approach.SA_ONLY else None
                    ),
                    seed=seed,
                )
                started = time.perf_counter()
                report = run_sequence(network, layout, config, agent_policy=policy)
                elapsed = time.perf_counter() - started
                writer.writerow([
                    approach.value, seed,
                    repr(report.initial_breakdown.overall),
                    repr(report.final_breakdown.overall),
                    f"{elapsed:.2f}",
                ])
                detail = args.out / f"{network.id}.{approach.value}.seed{seed}.csv"
                detail.write_text(export_contributions_csv(report))
                print(
                    f"{approach.value:12s} seed {seed}: "
                    f"{report.initial_breakdown.overall:.3f} -> "
                    f"{report.final_breakdown.overall:.3f}  ({elapsed:.1f}s)"
                )
    print(f"summary written to {summary_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
