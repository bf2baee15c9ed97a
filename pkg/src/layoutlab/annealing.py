"""Simulated annealing over layouts: full schedules, short segments, fine-tuning.

Moves are uniform draws from a temperature-shrunk rectangle centered on the
node; worsening moves are accepted with probability exp(-delta / T) where
delta is the drop in the display-scaled overall score. Runs are deterministic
per seed and always return the best layout seen anywhere in the run.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ContractViolation
from .model import BoundingBox, Layout, Network, Point
from .scoring import (
    DISPLAY_SCALE,
    Priorities,
    ScoreBreakdown,
    ScoringParams,
    engine_for,
)

T_MAX_DEFAULT = 100.0
COOLING_DEFAULT = 0.995
STEPS_PER_NODE_DEFAULT = 10


@dataclass(frozen=True)
class AnnealSchedule:
    t_start: float
    iterations: int
    t_max: float = T_MAX_DEFAULT
    cooling: float = COOLING_DEFAULT
    steps_per_iteration_factor: int = STEPS_PER_NODE_DEFAULT
    seed: int = 0
    accept_worse: bool = True
    # Acceptance deltas are measured in display-scaled overall units by
    # default; with raw overall scores and T near 100 every worsening move
    # would be accepted and the search degenerates to a random walk.
    delta_scale: float = float(DISPLAY_SCALE)

    def __post_init__(self):
        if not (0 < self.cooling < 1):
            raise ContractViolation(f"cooling must be in (0, 1), got {self.cooling}")
        if not (0 < self.t_start <= self.t_max):
            raise ContractViolation(
                f"need 0 < t_start <= t_max, got {self.t_start} > {self.t_max}"
            )
        if self.iterations < 1:
            raise ContractViolation("at least one iteration required")
        if self.steps_per_iteration_factor < 1:
            raise ContractViolation("steps-per-iteration factor must be >= 1")
        if self.delta_scale <= 0:
            raise ContractViolation("delta scale must be positive")


class SegmentKind(enum.Enum):
    """Named schedules: the full run, the three hybrid segments, fine-tuning."""

    FULL = "Full"
    SA100 = "SA100"
    SA50 = "SA50"
    SA20 = "SA20"
    FINE_TUNE = "FineTune"

    def schedule(self, seed: int = 0) -> AnnealSchedule:
        t_start, iterations, accept_worse = {
            SegmentKind.FULL: (100.0, 500, True),
            SegmentKind.SA100: (100.0, 125, True),
            SegmentKind.SA50: (50.0, 125, True),
            SegmentKind.SA20: (20.0, 125, True),
            SegmentKind.FINE_TUNE: (10.0, 125, False),
        }[self]
        return AnnealSchedule(
            t_start=t_start, iterations=iterations, seed=seed, accept_worse=accept_worse
        )


@dataclass(frozen=True)
class TrajectoryPoint:
    iteration: int
    temperature: float
    overall: float
    best_overall: float


@dataclass(frozen=True)
class AnnealResult:
    best_layout: Layout
    best_breakdown: ScoreBreakdown
    initial_breakdown: ScoreBreakdown
    trajectory: tuple[TrajectoryPoint, ...]
    accepted: int
    rejected: int
    final_temperature: float
    iterations: int
    steps_per_iteration: int
    seed: int
    step_best_trace: tuple[float, ...] = field(default=())

    @property
    def steps_total(self) -> int:
        return self.accepted + self.rejected


def propose_move(
    pos: Point,
    temperature: float,
    t_max: float,
    box: BoundingBox,
    rng: np.random.Generator,
) -> Point:
    """Uniform draw from a rectangle centered at pos, clamped into the box.

    Half-extents are (1/4)(T/t_max)^2 of the box dimensions, so moves shrink
    quadratically as the system cools.
    """
    if temperature <= 0:
        raise ContractViolation("temperature must be positive")
    scale = 0.25 * (temperature / t_max) ** 2
    half_w = scale * box.w
    half_h = scale * box.h
    nx = pos.x + rng.uniform(-1.0, 1.0) * half_w
    ny = pos.y + rng.uniform(-1.0, 1.0) * half_h
    return Point(min(box.w, max(0.0, nx)), min(box.h, max(0.0, ny)))


def acceptance_probability(delta_s: float, temperature: float) -> float:
    """Probability of accepting a move that drops the scaled score by delta_s."""
    if temperature <= 0:
        raise ContractViolation("temperature must be positive")
    if delta_s <= 0:
        return 1.0
    return math.exp(-delta_s / temperature)


def run_schedule(
    network: Network,
    layout: Layout,
    schedule: AnnealSchedule,
    priorities: Priorities | None = None,
    params: ScoringParams | None = None,
    record_steps: bool = False,
) -> AnnealResult:
    """One annealing run; deterministic given (network, layout, schedule)."""
    if network.n == 0:
        raise ContractViolation("cannot anneal an empty network")
    priorities = priorities or Priorities()
    params = params or ScoringParams()
    engine = engine_for(network, params, layout.box)
    coords = engine.coords_of(layout)
    if not engine.in_bounds(coords):
        raise ContractViolation("initial layout must be inside the bounding box")
    engine.simple_path_count()  # surface a path-cap error before the loop

    rng = np.random.default_rng(schedule.seed)
    n = network.n
    steps_per_iteration = schedule.steps_per_iteration_factor * n
    initial_breakdown = engine.breakdown(coords, priorities)
    delta_per_overall = schedule.delta_scale / DISPLAY_SCALE

    current = engine.scaled_overall(coords, priorities)
    best = current
    best_coords = coords.copy()
    accepted = rejected = 0
    temperature = schedule.t_start
    trajectory: list[TrajectoryPoint] = []
    step_trace: list[float] = []

    box = engine.box
    for iteration in range(1, schedule.iterations + 1):
        for _ in range(steps_per_iteration):
            node = int(rng.integers(n))
            old_x = coords[node, 0]
            old_y = coords[node, 1]
            proposal = propose_move(
                Point(old_x, old_y), temperature, schedule.t_max, box, rng
            )
            coords[node, 0] = proposal.x
            coords[node, 1] = proposal.y
            candidate = engine.scaled_overall(coords, priorities)
            if candidate > current:
                accept = True
            elif schedule.accept_worse:
                if candidate == current:
                    accept = True
                else:
                    delta = (current - candidate) * delta_per_overall
                    accept = rng.uniform() < math.exp(-delta / temperature)
            else:
                accept = False
            if accept:
                accepted += 1
                current = candidate
                if current > best:
                    best = current
                    best_coords[:] = coords
            else:
                rejected += 1
                coords[node, 0] = old_x
                coords[node, 1] = old_y
            if record_steps:
                step_trace.append(best)
        trajectory.append(
            TrajectoryPoint(
                iteration=iteration,
                temperature=temperature,
                overall=current / DISPLAY_SCALE,
                best_overall=best / DISPLAY_SCALE,
            )
        )
        temperature *= schedule.cooling

    best_breakdown = engine.breakdown(best_coords, priorities)
    return AnnealResult(
        best_layout=engine.layout_of(best_coords),
        best_breakdown=best_breakdown,
        initial_breakdown=initial_breakdown,
        trajectory=tuple(trajectory),
        accepted=accepted,
        rejected=rejected,
        final_temperature=temperature,
        iterations=schedule.iterations,
        steps_per_iteration=steps_per_iteration,
        seed=schedule.seed,
        step_best_trace=tuple(step_trace),
    )


def run_repeated(
    network: Network,
    layout: Layout,
    schedule: AnnealSchedule,
    schedules: int | None = None,
    max_seconds: float | None = None,
    priorities: Priorities | None = None,
    params: ScoringParams | None = None,
) -> AnnealResult:
    """Chain schedules, each starting from the best layout found so far.

    The budget is a schedule count (deterministic) or a wall-clock limit; at
    least one schedule always runs. Run k uses seed ``schedule.seed + k``.
    """
    if schedules is None and max_seconds is None:
        raise ContractViolation("a schedule-count or wall-clock budget is required")
    if schedules is not None and schedules < 1:
        raise ContractViolation("schedule budget must be >= 1")

    started = time.monotonic()
    best_result: AnnealResult | None = None
    first_breakdown: ScoreBreakdown | None = None
    current_layout = layout
    trajectory: list[TrajectoryPoint] = []
    accepted = rejected = 0
    iteration_offset = 0
    run = 0
    while True:
        result = run_schedule(
            network,
            current_layout,
            replace(schedule, seed=schedule.seed + run),
            priorities=priorities,
            params=params,
        )
        if first_breakdown is None:
            first_breakdown = result.initial_breakdown
        accepted += result.accepted
        rejected += result.rejected
        trajectory.extend(
            replace(tp, iteration=tp.iteration + iteration_offset)
            for tp in result.trajectory
        )
        iteration_offset += result.iterations
        if (
            best_result is None
            or result.best_breakdown.overall > best_result.best_breakdown.overall
        ):
            best_result = result
        current_layout = best_result.best_layout
        run += 1
        if schedules is not None and run >= schedules:
            break
        if max_seconds is not None and time.monotonic() - started >= max_seconds:
            break

    return replace(
        best_result,
        initial_breakdown=first_breakdown,
        trajectory=tuple(trajectory),
        accepted=accepted,
        rejected=rejected,
        iterations=iteration_offset,
    )
