"""Game sequences: mode assignment, sessions with undo/redo and a move log,
player/annealer alternation, the best-layout registry, and bonus accounting.

A scripted agent stands in for human players so whole sequences run
deterministically at desk scale.
"""

from __future__ import annotations

import enum
import threading
import time
from dataclasses import dataclass, replace
from typing import Callable, Protocol

import numpy as np

from .annealing import SegmentKind, run_schedule
from .clues import Clue, clue_for
from .errors import ContractViolation
from .model import Layout, Network, Point
from .scoring import (
    CRITERIA,
    Criterion,
    Priorities,
    ScoreBreakdown,
    ScoringParams,
    engine_for,
)


class Approach(enum.Enum):
    CROWD = "Crowd"
    CROWD_RANDOM = "CrowdRandom"
    HYBRID_SA100 = "HybridSA100"
    HYBRID_SA50 = "HybridSA50"
    HYBRID_SA20 = "HybridSA20"
    SA_ONLY = "SAOnly"

    @property
    def is_hybrid(self) -> bool:
        return self in (Approach.HYBRID_SA100, Approach.HYBRID_SA50, Approach.HYBRID_SA20)

    @property
    def hybrid_segment(self) -> SegmentKind | None:
        return {
            Approach.HYBRID_SA100: SegmentKind.SA100,
            Approach.HYBRID_SA50: SegmentKind.SA50,
            Approach.HYBRID_SA20: SegmentKind.SA20,
        }.get(self)


class ModeStrategy(enum.Enum):
    PRIORITY_ORDER = "priority_order"
    RANDOM = "random"


class TurnKind(enum.Enum):
    PLAYER = "player"
    ANNEALER = "annealer_segment"


class ActorKind(enum.Enum):
    PLAYER = "player"
    SCRIPTED_AGENT = "scripted_agent"
    ANNEALER_SEGMENT = "annealer_segment"
    FINE_TUNE = "fine_tune"


@dataclass(frozen=True)
class GameConfig:
    network_id: str
    approach: Approach = Approach.CROWD
    priorities: Priorities = Priorities()
    sessions_per_criterion: int = 4
    session_duration_minutes: float = 60.0
    sequence_budget_minutes: float = 24.0 * 60.0
    target_score: int = 2000
    bonus_budget_per_priority: float = 1.0
    bonus_budgets: tuple[float, float, float, float, float] | None = None
    scoring: ScoringParams = ScoringParams()
    seed: int = 0
    sa_segments: int | None = None
    sa_segment_kind: SegmentKind | None = None
    agent_move_budget: int = 40

    def __post_init__(self):
        if self.sessions_per_criterion < 1:
            raise ContractViolation("sessions_per_criterion must be >= 1")
        if self.sequence_budget_minutes < 0 or self.session_duration_minutes <= 0:
            raise ContractViolation("durations must be nonnegative")
        if self.target_score <= 0:
            raise ContractViolation("target score must be positive")
        if self.bonus_budgets is not None and any(b < 0 for b in self.bonus_budgets):
            raise ContractViolation("bonus budgets must be nonnegative")

    def bonus_budget(self, criterion: Criterion) -> float:
        if self.bonus_budgets is not None:
            return dict(zip(CRITERIA, self.bonus_budgets))[criterion]
        return self.priorities.of(criterion) * self.bonus_budget_per_priority

    @property
    def mode_strategy(self) -> ModeStrategy:
        if self.approach is Approach.CROWD_RANDOM:
            return ModeStrategy.RANDOM
        return ModeStrategy.PRIORITY_ORDER

    @property
    def segment_kind(self) -> SegmentKind:
        if self.sa_segment_kind is not None:
            return self.sa_segment_kind
        return self.approach.hybrid_segment or SegmentKind.FULL


_SEED_STREAMS = {"modes": 1, "agent": 2, "segment": 3, "finetune": 4, "layout": 5}


def derive_seed(base_seed: int, stream: str, index: int) -> int:
    """Decoupled per-turn seeds: a pure function of (base, stream, index).

    Streams are independent, so e.g. the k-th annealer segment draws the same
    seed whether or not player sessions ran in between; that makes hybrid and
    SA-only sequences with one base seed a paired comparison.
    """
    ss = np.random.SeedSequence((base_seed & 0x7FFFFFFF, _SEED_STREAMS[stream], index))
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> 1)


def assign_modes(
    strategy: ModeStrategy,
    priorities: Priorities,
    n_per_criterion: int,
    seed: int = 0,
) -> tuple[Criterion, ...]:
    """One mode per player session; each criterion appears exactly N times.

    priority_order gives N consecutive sessions per criterion, highest
    priority first (canonical listing breaks ties); random shuffles the same
    multiset with the given seed.
    """
    if n_per_criterion < 1:
        raise ContractViolation("n_per_criterion must be >= 1")
    if strategy is ModeStrategy.PRIORITY_ORDER:
        return tuple(
            c for c in priorities.ranked() for _ in range(n_per_criterion)
        )
    items = [c for c in CRITERIA for _ in range(n_per_criterion)]
    rng = np.random.default_rng(seed)
    return tuple(items[i] for i in rng.permutation(len(items)))


def next_actor(approach: Approach, completed_turns: int) -> TurnKind:
    """Whose turn it is: players always (Crowd), annealer always (SAOnly),
    or strict alternation starting with a player (Hybrid)."""
    if approach is Approach.SA_ONLY:
        return TurnKind.ANNEALER
    if approach.is_hybrid:
        return TurnKind.PLAYER if completed_turns % 2 == 0 else TurnKind.ANNEALER
    return TurnKind.PLAYER


def compute_bonus(s_i: float, s_j: float, budget: float, s_target: float) -> float:
    """Exponential payout for raising a display score from s_i to s_j.

    Increments sum exactly to the budget over any chain from 0 to the target;
    improvements past the target earn nothing.
    """
    if s_target <= 0:
        raise ContractViolation("target score must be positive")
    if budget < 0:
        raise ContractViolation("budget must be nonnegative")
    if not s_j > s_i >= 0:
        raise ContractViolation(f"bonus requires s_j > s_i >= 0, got {s_i} -> {s_j}")
    base = budget + 1.0
    return base ** (min(s_j, s_target) / s_target) - base ** (min(s_i, s_target) / s_target)


# -- best-layout registry ------------------------------------------------------


@dataclass(frozen=True)
class RegistryEntry:
    layout: Layout
    breakdown: ScoreBreakdown
    session_id: str | None
    actor: str
    elapsed: float


class BestLayoutRegistry:
    """Per-network record of the highest-scoring layout.

    Updates happen only on strict overall improvement, under a lock, so the
    best score is monotone and every improvement has exactly one author.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._best: dict[str, RegistryEntry] = {}
        self._history: dict[str, list[RegistryEntry]] = {}

    def initialize(
        self, network_id: str, layout: Layout, breakdown: ScoreBreakdown,
        actor: str = "initial",
    ) -> None:
        with self._lock:
            if network_id in self._best:
                raise ContractViolation(f"registry already initialized for {network_id!r}")
            self._best[network_id] = RegistryEntry(layout, breakdown, None, actor, 0.0)
            self._history[network_id] = []

    def has(self, network_id: str) -> bool:
        with self._lock:
            return network_id in self._best

    def best(self, network_id: str) -> RegistryEntry:
        with self._lock:
            return self._best[network_id]

    def improvements(self, network_id: str) -> tuple[RegistryEntry, ...]:
        with self._lock:
            return tuple(self._history[network_id])

    def offer(
        self,
        network_id: str,
        layout: Layout,
        breakdown: ScoreBreakdown,
        session_id: str | None,
        actor: str,
        elapsed: float = 0.0,
    ) -> bool:
        """Adopt the candidate iff it strictly beats the incumbent."""
        with self._lock:
            incumbent = self._best[network_id]
            if not breakdown.overall > incumbent.breakdown.overall:
                return False
            entry = RegistryEntry(layout, breakdown, session_id, actor, elapsed)
            self._best[network_id] = entry
            self._history[network_id].append(entry)
            return True


# -- sessions ------------------------------------------------------------------


@dataclass(frozen=True)
class MoveEvent:
    timestamp: float
    node_id: str
    old: Point
    new: Point
    breakdown: ScoreBreakdown
    clue: Clue | None
    moved_clue_element: bool


class SessionLogSink(Protocol):
    def on_open(self, session: "Session") -> None: ...
    def on_move(self, session: "Session", event: MoveEvent) -> None: ...
    def on_clue(self, session: "Session", clue: Clue | None) -> None: ...
    def on_stack(self, session: "Session", action: str, applied: bool) -> None: ...
    def on_finalize(self, session: "Session", updated: bool, bonus: float) -> None: ...


class Session:
    """One actor's editing session over a network layout.

    Tracks the current layout, the session-best state, undo/redo stacks, and
    an append-only move log whose replay reproduces every breakdown exactly.
    """

    def __init__(
        self,
        session_id: str,
        network: Network,
        start_layout: Layout,
        mode: Criterion,
        priorities: Priorities | None = None,
        params: ScoringParams | None = None,
        actor: ActorKind = ActorKind.PLAYER,
        clock: Callable[[], float] | None = None,
        log: SessionLogSink | None = None,
    ):
        self.id = session_id
        self.network = network
        self.mode = mode
        self.actor = actor
        self.priorities = priorities or Priorities()
        self.params = params or ScoringParams()
        self.engine = engine_for(network, self.params, start_layout.box)
        start_layout.require_cover(network)
        self.start_layout = start_layout
        self.current_layout = start_layout
        self.breakdown = self.engine.breakdown(
            self.engine.coords_of(start_layout), self.priorities
        )
        self.best_layout = start_layout
        self.best_breakdown = self.breakdown
        self.undo_stack: list[tuple[Layout, ScoreBreakdown]] = []
        self.redo_stack: list[tuple[Layout, ScoreBreakdown]] = []
        self.move_log: list[MoveEvent] = []
        self.active_clue: Clue | None = None
        self.bonus = 0.0
        self.open = True
        self._ticks = 0
        self._clock = clock or self._tick
        self._log = log
        if log is not None:
            log.on_open(self)

    def _tick(self) -> float:
        self._ticks += 1
        return float(self._ticks)

    def _require_open(self) -> None:
        if not self.open:
            raise ContractViolation(f"session {self.id!r} is closed")

    def _adopt(self, layout: Layout, breakdown: ScoreBreakdown) -> None:
        self.current_layout = layout
        self.breakdown = breakdown
        if breakdown.overall > self.best_breakdown.overall:
            self.best_layout = layout
            self.best_breakdown = breakdown

    def serve_clue(self, dp_max_path_edges: int | None = None) -> Clue | None:
        """Clue for the session's mode against the current layout."""
        self._require_open()
        kwargs = {}
        if dp_max_path_edges is not None:
            kwargs["dp_max_path_edges"] = dp_max_path_edges
        clue = clue_for(self.mode, self.network, self.current_layout, self.params, **kwargs)
        self.active_clue = clue
        if self._log is not None:
            self._log.on_clue(self, clue)
        return clue

    def record_move(self, node_id: str, new_pos: Point) -> ScoreBreakdown:
        """Apply a single-node move; returns the rescored breakdown with deltas."""
        self._require_open()
        if node_id not in self.current_layout.positions:
            raise KeyError(node_id)
        old_pos = self.current_layout.positions[node_id]
        new_layout = self.current_layout.moved(node_id, new_pos)
        new_breakdown = self.engine.breakdown(
            self.engine.coords_of(new_layout), self.priorities, previous=self.breakdown
        )
        self.undo_stack.append((self.current_layout, self.breakdown))
        self.redo_stack.clear()
        clue = self.active_clue
        event = MoveEvent(
            timestamp=self._clock(),
            node_id=node_id,
            old=old_pos,
            new=new_pos,
            breakdown=new_breakdown,
            clue=clue,
            moved_clue_element=bool(clue and node_id in clue.node_ids),
        )
        self.move_log.append(event)
        self._adopt(new_layout, new_breakdown)
        if self._log is not None:
            self._log.on_move(self, event)
        return new_breakdown

    def undo(self) -> ScoreBreakdown:
        self._require_open()
        if not self.undo_stack:
            self._note_stack("undo", applied=False)
            return self.breakdown
        layout, breakdown = self.undo_stack.pop()
        self.redo_stack.append((self.current_layout, self.breakdown))
        self._adopt(layout, breakdown)
        self._note_stack("undo", applied=True)
        return self.breakdown

    def redo(self) -> ScoreBreakdown:
        self._require_open()
        if not self.redo_stack:
            self._note_stack("redo", applied=False)
            return self.breakdown
        layout, breakdown = self.redo_stack.pop()
        self.undo_stack.append((self.current_layout, self.breakdown))
        self._adopt(layout, breakdown)
        self._note_stack("redo", applied=True)
        return self.breakdown

    def revert_to_best(self) -> ScoreBreakdown:
        """Jump back to the session-best layout; undoable like any action."""
        self._require_open()
        self.undo_stack.append((self.current_layout, self.breakdown))
        self.redo_stack.clear()
        self._adopt(self.best_layout, self.best_breakdown)
        self._note_stack("revert", applied=True)
        return self.breakdown

    def _note_stack(self, action: str, applied: bool) -> None:
        if self._log is not None:
            self._log.on_stack(self, action, applied)

    @property
    def can_undo(self) -> bool:
        return bool(self.undo_stack)

    @property
    def can_redo(self) -> bool:
        return bool(self.redo_stack)


@dataclass(frozen=True)
class FinalizeReport:
    registry_updated: bool
    bonus: float


def finalize_session(
    session: Session,
    registry: BestLayoutRegistry,
    config: GameConfig,
    elapsed: float = 0.0,
) -> FinalizeReport:
    """Close the session, offering its best layout to the registry.

    The bonus pays for registry-best progress on the session's assigned
    criterion, against that criterion's budget.
    """
    session._require_open()
    network_id = session.network.id
    before = registry.best(network_id).breakdown.display(session.mode)
    updated = registry.offer(
        network_id,
        session.best_layout,
        session.best_breakdown,
        session_id=session.id,
        actor=session.actor.value,
        elapsed=elapsed,
    )
    after = registry.best(network_id).breakdown.display(session.mode)
    budget = config.bonus_budget(session.mode)
    bonus = (
        compute_bonus(before, after, budget, config.target_score)
        if after > before and budget > 0
        else 0.0
    )
    session.bonus = bonus
    session.open = False
    if session._log is not None:
        session._log.on_finalize(session, updated, bonus)
    return FinalizeReport(registry_updated=updated, bonus=bonus)


# -- scripted agent -------------------------------------------------------------


@dataclass(frozen=True)
class AgentPolicy:
    move_budget: int = 60
    grid_points_per_axis: int = 5
    nudge_fraction: float = 0.15
    dp_clue_max_path_edges: int = 4
    seed: int = 0
    # Optional wall-clock stop; None keeps runs deterministic.
    time_budget_seconds: float | None = None


@dataclass(frozen=True)
class AgentRunStats:
    attempts: int
    moves_applied: int
    clue_moves: int


_NEIGHBOR_DISTANCES = (350.0, 700.0, 1400.0)
_NEIGHBOR_SLOPES = (0.0, 0.6, -0.6)  # dx/dy of the drop below a path neighbor


def _clue_candidates(
    clue: Clue, node_id: str, layout: Layout, grid_x: list[float], grid_y: list[float]
) -> list[Point]:
    """Candidate placements for one clue node: a global lattice, plus (for
    path clues) cells hanging below the node's path predecessor and above its
    successor, the placements a player reorienting the path would reach for.
    """
    box = layout.box
    candidates = [Point(gx, gy) for gx in grid_x for gy in grid_y]
    if clue.criterion is Criterion.DP and node_id in clue.node_ids:
        pos = clue.node_ids.index(node_id)
        anchors = []
        if pos > 0:
            anchors.append((layout.positions[clue.node_ids[pos - 1]], 1.0))
        if pos + 1 < len(clue.node_ids):
            anchors.append((layout.positions[clue.node_ids[pos + 1]], -1.0))
        for anchor, direction in anchors:
            for dist in _NEIGHBOR_DISTANCES:
                for slope in _NEIGHBOR_SLOPES:
                    candidates.append(
                        Point(
                            min(box.w, max(0.0, anchor.x + slope * dist)),
                            min(box.h, max(0.0, anchor.y + direction * dist)),
                        )
                    )
    return candidates


def run_scripted_agent(session: Session, policy: AgentPolicy) -> AgentRunStats:
    """Greedy stand-in for a human player.

    Each attempt asks for the mode's clue and searches a fixed grid of
    candidate positions for each clue node, applying the best strictly
    improving move; with no clue or no improvement it tries one random nudge
    instead. Only improving moves are ever applied. Clues are deterministic
    per layout, so a clue is recomputed only after the layout changes.
    """
    engine = session.engine
    box = session.current_layout.box
    rng = np.random.default_rng(policy.seed)
    g = policy.grid_points_per_axis
    grid_x = [box.w * (i + 1) / (g + 1) for i in range(g)]
    grid_y = [box.h * (i + 1) / (g + 1) for i in range(g)]
    node_ids = sorted(session.current_layout.positions)
    started = time.monotonic()
    moves = clue_moves = 0
    clue = None
    clue_grid_stale = True  # grid already failed for the current layout?

    for attempt in range(policy.move_budget):
        if (
            policy.time_budget_seconds is not None
            and time.monotonic() - started >= policy.time_budget_seconds
        ):
            break
        if clue_grid_stale:
            clue = session.serve_clue(dp_max_path_edges=policy.dp_clue_max_path_edges)
        coords = engine.coords_of(session.current_layout)
        current = engine.scaled_overall(coords, session.priorities)
        best_move: tuple[float, str, Point] | None = None
        if clue is not None and clue_grid_stale:
            for node_id in clue.node_ids:
                idx = engine.index[node_id]
                saved = coords[idx].copy()
                for cand_point in _clue_candidates(
                    clue, node_id, session.current_layout, grid_x, grid_y
                ):
                    coords[idx, 0] = cand_point.x
                    coords[idx, 1] = cand_point.y
                    cand = engine.scaled_overall(coords, session.priorities)
                    if cand > current and (best_move is None or cand > best_move[0]):
                        best_move = (cand, node_id, cand_point)
                coords[idx] = saved
        if best_move is not None:
            session.record_move(best_move[1], best_move[2])
            moves += 1
            clue_moves += 1
            clue_grid_stale = True
            continue
        clue_grid_stale = False
        # The grid found nothing (or no clue exists): try one random nudge.
        node_id = node_ids[int(rng.integers(len(node_ids)))]
        idx = engine.index[node_id]
        saved = coords[idx].copy()
        nx = saved[0] + rng.uniform(-1.0, 1.0) * policy.nudge_fraction * box.w
        ny = saved[1] + rng.uniform(-1.0, 1.0) * policy.nudge_fraction * box.h
        nx = min(box.w, max(0.0, nx))
        ny = min(box.h, max(0.0, ny))
        coords[idx, 0] = nx
        coords[idx, 1] = ny
        cand = engine.scaled_overall(coords, session.priorities)
        coords[idx] = saved
        if cand > current:
            session.record_move(node_id, Point(nx, ny))
            moves += 1
            clue_grid_stale = True

    return AgentRunStats(attempts=policy.move_budget, moves_applied=moves, clue_moves=clue_moves)


# -- full sequences --------------------------------------------------------------


@dataclass(frozen=True)
class SequenceEntry:
    index: int
    actor: ActorKind
    label: str
    session_id: str | None
    overall_before: float
    overall_after: float

    @property
    def contribution(self) -> float:
        return self.overall_after - self.overall_before


@dataclass(frozen=True)
class SequenceReport:
    network_id: str
    approach: Approach
    initial_breakdown: ScoreBreakdown
    final_breakdown: ScoreBreakdown
    entries: tuple[SequenceEntry, ...]
    improvements: tuple[RegistryEntry, ...]

    @property
    def total_contribution(self) -> float:
        return sum(e.contribution for e in self.entries)


def run_sequence(
    network: Network,
    initial_layout: Layout,
    config: GameConfig,
    registry: BestLayoutRegistry | None = None,
    agent_policy: AgentPolicy | None = None,
    log: SessionLogSink | None = None,
) -> SequenceReport:
    """Drive a whole game sequence with scripted agents as the players.

    Player turns consume the gameplay budget; annealer turns do not. When the
    turn plan is exhausted (or the budget spent) the registry best gets a
    fine-tuning pass, and the report attributes every registry improvement to
    the turn that produced it.
    """
    registry = registry or BestLayoutRegistry()
    engine = engine_for(network, config.scoring, initial_layout.box)
    initial_breakdown = engine.breakdown(engine.coords_of(initial_layout), config.priorities)
    if not registry.has(network.id):
        registry.initialize(network.id, initial_layout, initial_breakdown)
    base_policy = agent_policy or AgentPolicy(move_budget=config.agent_move_budget)

    modes = assign_modes(
        config.mode_strategy,
        config.priorities,
        config.sessions_per_criterion,
        seed=derive_seed(config.seed, "modes", 0),
    )
    entries: list[SequenceEntry] = []
    minutes_used = 0.0
    mode_pos = 0
    turn = 0
    session_counter = 0
    segment_counter = 0

    def registry_overall() -> float:
        return registry.best(network.id).breakdown.overall

    def run_segment(kind: SegmentKind, actor: ActorKind) -> None:
        nonlocal turn, segment_counter
        if actor is ActorKind.FINE_TUNE:
            seed = derive_seed(config.seed, "finetune", 0)
        else:
            seed = derive_seed(config.seed, "segment", segment_counter)
            segment_counter += 1
        before = registry_overall()
        start = registry.best(network.id).layout
        result = run_schedule(
            network, start, kind.schedule(seed),
            priorities=config.priorities, params=config.scoring,
        )
        registry.offer(
            network.id, result.best_layout, result.best_breakdown,
            session_id=None, actor=actor.value, elapsed=float(turn),
        )
        entries.append(
            SequenceEntry(
                index=turn,
                actor=actor,
                label=kind.value,
                session_id=None,
                overall_before=before,
                overall_after=registry_overall(),
            )
        )
        turn += 1

    if config.approach is Approach.SA_ONLY:
        total = config.sa_segments
        if total is None:
            total = 5 * config.sessions_per_criterion
        for _ in range(total):
            run_segment(config.segment_kind, ActorKind.ANNEALER_SEGMENT)
    else:
        while True:
            kind = next_actor(config.approach, turn)
            if kind is TurnKind.PLAYER:
                if mode_pos >= len(modes):
                    break
                if minutes_used + config.session_duration_minutes > config.sequence_budget_minutes:
                    break
                mode = modes[mode_pos]
                mode_pos += 1
                agent_seed = derive_seed(config.seed, "agent", session_counter)
                session_counter += 1
                before = registry_overall()
                session = Session(
                    session_id=f"{network.id}-s{session_counter:03d}",
                    network=network,
                    start_layout=registry.best(network.id).layout,
                    mode=mode,
                    priorities=config.priorities,
                    params=config.scoring,
                    actor=ActorKind.SCRIPTED_AGENT,
                    log=log,
                )
                run_scripted_agent(session, replace(base_policy, seed=agent_seed))
                finalize_session(session, registry, config, elapsed=float(turn))
                minutes_used += config.session_duration_minutes
                entries.append(
                    SequenceEntry(
                        index=turn,
                        actor=ActorKind.SCRIPTED_AGENT,
                        label=mode.value,
                        session_id=session.id,
                        overall_before=before,
                        overall_after=registry_overall(),
                    )
                )
                turn += 1
            else:
                run_segment(config.segment_kind, ActorKind.ANNEALER_SEGMENT)

    run_segment(SegmentKind.FINE_TUNE, ActorKind.FINE_TUNE)
    final = registry.best(network.id).breakdown
    return SequenceReport(
        network_id=network.id,
        approach=config.approach,
        initial_breakdown=initial_breakdown,
        final_breakdown=final,
        entries=tuple(entries),
        improvements=registry.improvements(network.id),
    )
