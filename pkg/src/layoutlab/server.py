"""JSON-over-HTTP game service: requester and player workflows.

A thin facade over the orchestrator: every behavioral rule (turn order,
registry updates, scoring) lives in the sessions module; handlers translate
between wire payloads and those calls. Long annealer segments run in a
background thread with a polling job endpoint.
"""

from __future__ import annotations

import secrets
import threading
import time
import uuid
from dataclasses import dataclass, field

import numpy as np
from fastapi import Body, FastAPI, Header, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response
from pydantic import BaseModel

from .annealing import SegmentKind, run_schedule
from .errors import ContractViolation, DocumentError
from .model import Layout, Network, Point, random_layout
from .scoring import CRITERIA, ScoreBreakdown, engine_for
from .sessions import (
    ActorKind,
    Approach,
    BestLayoutRegistry,
    GameConfig,
    Session,
    TurnKind,
    assign_modes,
    finalize_session,
    next_actor,
)
from .storage import (
    breakdown_to_dict,
    clue_to_dict,
    game_config_from_dict,
    layout_from_wire,
    load_network_dict,
    network_to_dict,
)


class MoveRequest(BaseModel):
    node: str
    x: float
    y: float


class AnnealRequest(BaseModel):
    segment: str = "SA100"
    seed: int | None = None


@dataclass
class AnnealJob:
    status: str = "running"
    summary: dict | None = None
    error: str | None = None


@dataclass
class GameRuntime:
    game_id: str
    network: Network
    config: GameConfig
    registry: BestLayoutRegistry
    modes: tuple
    rng: np.random.Generator
    turn: int = 0
    minutes_used: float = 0.0
    mode_pos: int = 0
    active_session_id: str | None = None
    sessions: dict[str, Session] = field(default_factory=dict)
    tokens: dict[str, str] = field(default_factory=dict)
    expires: dict[str, float] = field(default_factory=dict)
    jobs: dict[str, AnnealJob] = field(default_factory=dict)
    session_count: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    def best_payload(self) -> dict:
        entry = self.registry.best(self.network.id)
        return {
            "layout": layout_to_wire(entry.layout),
            "breakdown": breakdown_to_dict(entry.breakdown),
            "actor": entry.actor,
        }


def layout_to_wire(layout: Layout) -> dict:
    return {
        "box": {"w": layout.box.w, "h": layout.box.h},
        "positions": {
            nid: {"x": p.x, "y": p.y} for nid, p in sorted(layout.positions.items())
        },
    }


def create_app() -> FastAPI:
    app = FastAPI(title="layoutlab")
    # The browser client is served from a different origin during development.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    games: dict[str, GameRuntime] = {}
    games_lock = threading.Lock()

    def get_game(game_id: str) -> GameRuntime:
        with games_lock:
            game = games.get(game_id)
        if game is None:
            raise HTTPException(404, f"no game {game_id!r}")
        return game

    def find_session(game_or_none, session_id: str) -> tuple[GameRuntime, Session]:
        with games_lock:
            candidates = list(games.values())
        for game in candidates:
            if session_id in game.sessions:
                return game, game.sessions[session_id]
        raise HTTPException(401, "unknown session")

    def authorize(session_id: str, token: str | None) -> tuple[GameRuntime, Session]:
        game, session = find_session(None, session_id)
        if token is None or game.tokens.get(token) != session_id:
            raise HTTPException(401, "bad token")
        if time.time() > game.expires.get(token, 0.0):
            raise HTTPException(401, "token expired")
        if not session.open:
            raise HTTPException(401, "session closed")
        return game, session

    @app.post("/games", status_code=201)
    def create_game(payload: dict = Body(...)):
        try:
            network = load_network_dict(payload.get("network") or {})
            config = game_config_from_dict(payload.get("config") or {}, network_id=network.id)
            game_id = payload.get("game_id") or network.id
            if payload.get("layout") is not None:
                layout = layout_from_wire(payload["layout"], network)
            else:
                layout = random_layout(network, seed=config.seed)
            engine = engine_for(network, config.scoring, layout.box)
            breakdown = engine.breakdown(engine.coords_of(layout), config.priorities)
        except (DocumentError, ContractViolation) as exc:
            raise HTTPException(400, str(exc))
        with games_lock:
            if game_id in games:
                raise HTTPException(409, f"game {game_id!r} already exists")
            registry = BestLayoutRegistry()
            registry.initialize(network.id, layout, breakdown)
            rng = np.random.default_rng(config.seed)
            modes = assign_modes(
                config.mode_strategy,
                config.priorities,
                config.sessions_per_criterion,
                seed=int(rng.integers(2**63)),
            )
            games[game_id] = GameRuntime(
                game_id=game_id, network=network, config=config,
                registry=registry, modes=modes, rng=rng,
            )
        return {"game_id": game_id}

    @app.get("/games/{game_id}")
    def game_state(game_id: str):
        game = get_game(game_id)
        with game.lock:
            return {
                "game_id": game.game_id,
                "network_id": game.network.id,
                "approach": game.config.approach.value,
                "turn": game.turn,
                "next_actor": next_actor(game.config.approach, game.turn).value,
                "modes_remaining": len(game.modes) - game.mode_pos,
                "best_overall": game.registry.best(game.network.id).breakdown.overall,
            }

    @app.get("/games/{game_id}/network")
    def game_network(game_id: str):
        game = get_game(game_id)
        return network_to_dict(game.network)

    @app.get("/games/{game_id}/best")
    def game_best(game_id: str):
        game = get_game(game_id)
        with game.lock:
            return game.best_payload()

    @app.post("/games/{game_id}/sessions", status_code=201)
    def open_session(game_id: str):
        game = get_game(game_id)
        with game.lock:
            if game.config.approach is Approach.SA_ONLY:
                raise HTTPException(409, "this game runs annealer turns only")
            if next_actor(game.config.approach, game.turn) is not TurnKind.PLAYER:
                raise HTTPException(409, "it is the annealer's turn")
            if game.active_session_id is not None:
                raise HTTPException(409, "another session is live")
            if game.mode_pos >= len(game.modes):
                raise HTTPException(410, "sequence exhausted")
            budget_after = game.minutes_used + game.config.session_duration_minutes
            if budget_after > game.config.sequence_budget_minutes:
                raise HTTPException(410, "gameplay budget exhausted")
            mode = game.modes[game.mode_pos]
            game.mode_pos += 1
            game.session_count += 1
            session_id = f"{game.game_id}-s{game.session_count:03d}"
            session = Session(
                session_id=session_id,
                network=game.network,
                start_layout=game.registry.best(game.network.id).layout,
                mode=mode,
                priorities=game.config.priorities,
                params=game.config.scoring,
                actor=ActorKind.PLAYER,
            )
            token = secrets.token_hex(16)
            game.sessions[session_id] = session
            game.tokens[token] = session_id
            game.expires[token] = time.time() + game.config.session_duration_minutes * 60.0
            game.active_session_id = session_id
            return {
                "token": token,
                "session_id": session_id,
                "mode": mode.value,
                "layout": layout_to_wire(session.current_layout),
                "breakdown": breakdown_to_dict(session.breakdown),
                "priorities": {c.value: game.config.priorities.of(c) for c in CRITERIA},
            }

    def _breakdown_payload(game: GameRuntime, session: Session, b: ScoreBreakdown) -> dict:
        return {
            "breakdown": breakdown_to_dict(b),
            "session_best_overall": session.best_breakdown.overall,
            "registry_best_overall": game.registry.best(game.network.id).breakdown.overall,
            "can_undo": session.can_undo,
            "can_redo": session.can_redo,
        }

    @app.post("/sessions/{session_id}/moves")
    def post_move(
        session_id: str,
        move: MoveRequest,
        x_session_token: str | None = Header(default=None),
    ):
        game, session = authorize(session_id, x_session_token)
        with game.lock:
            if move.node not in session.current_layout.positions:
                raise HTTPException(422, f"unknown node {move.node!r}")
            b = session.record_move(move.node, Point(move.x, move.y))
            return _breakdown_payload(game, session, b)

    @app.get("/sessions/{session_id}/clue")
    def get_clue(
        session_id: str, x_session_token: str | None = Header(default=None)
    ):
        game, session = authorize(session_id, x_session_token)
        with game.lock:
            clue = session.serve_clue()
            if clue is None:
                return Response(status_code=204)
            return clue_to_dict(clue)

    def _stack_action(session_id: str, token: str | None, action: str) -> dict:
        game, session = authorize(session_id, token)
        with game.lock:
            if action == "undo":
                could = session.can_undo
                b = session.undo()
            elif action == "redo":
                could = session.can_redo
                b = session.redo()
            else:
                could = True
                b = session.revert_to_best()
            payload = _breakdown_payload(game, session, b)
            payload["applied"] = could
            payload["layout"] = layout_to_wire(session.current_layout)
            return payload

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str, x_session_token: str | None = Header(default=None)):
        return _stack_action(session_id, x_session_token, "undo")

    @app.post("/sessions/{session_id}/redo")
    def redo(session_id: str, x_session_token: str | None = Header(default=None)):
        return _stack_action(session_id, x_session_token, "redo")

    @app.post("/sessions/{session_id}/revert")
    def revert(session_id: str, x_session_token: str | None = Header(default=None)):
        return _stack_action(session_id, x_session_token, "revert")

    @app.post("/sessions/{session_id}/finalize")
    def finalize(
        session_id: str, x_session_token: str | None = Header(default=None)
    ):
        game, session = authorize(session_id, x_session_token)
        with game.lock:
            report = finalize_session(
                session, game.registry, game.config, elapsed=float(game.turn)
            )
            game.tokens = {t: s for t, s in game.tokens.items() if s != session_id}
            game.active_session_id = None
            game.minutes_used += game.config.session_duration_minutes
            game.turn += 1
            return {
                "registry_updated": report.registry_updated,
                "bonus": report.bonus,
                "registry_best_overall": game.registry.best(game.network.id).breakdown.overall,
            }

    @app.post("/games/{game_id}/anneal", status_code=202)
    def start_anneal(game_id: str, req: AnnealRequest):
        game = get_game(game_id)
        try:
            kind = SegmentKind(req.segment)
        except ValueError:
            raise HTTPException(400, f"unknown segment kind {req.segment!r}")
        with game.lock:
            if next_actor(game.config.approach, game.turn) is not TurnKind.ANNEALER:
                raise HTTPException(409, "it is a player's turn")
            if any(j.status == "running" for j in game.jobs.values()):
                raise HTTPException(409, "a segment is already running")
            seed = req.seed if req.seed is not None else int(game.rng.integers(2**63))
            job_id = uuid.uuid4().hex[:12]
            job = AnnealJob()
            game.jobs[job_id] = job
            start_layout = game.registry.best(game.network.id).layout
            turn_at_start = game.turn

        def work():
            try:
                result = run_schedule(
                    game.network, start_layout, kind.schedule(seed),
                    priorities=game.config.priorities, params=game.config.scoring,
                )
                with game.lock:
                    game.registry.offer(
                        game.network.id, result.best_layout, result.best_breakdown,
                        session_id=None, actor=ActorKind.ANNEALER_SEGMENT.value,
                        elapsed=float(turn_at_start),
                    )
                    game.turn += 1
                    job.summary = {
                        "segment": kind.value,
                        "seed": seed,
                        "iterations": result.iterations,
                        "accepted": result.accepted,
                        "rejected": result.rejected,
                        "best_overall": result.best_breakdown.overall,
                        "final_temperature": result.final_temperature,
                    }
                    job.status = "done"
            except Exception as exc:  # surfaced via the job endpoint
                with game.lock:
                    job.status = "failed"
                    job.error = str(exc)

        threading.Thread(target=work, daemon=True).start()
        return {"job_id": job_id}

    @app.get("/games/{game_id}/anneal/{job_id}")
    def anneal_status(game_id: str, job_id: str):
        game = get_game(game_id)
        with game.lock:
            job = game.jobs.get(job_id)
            if job is None:
                raise HTTPException(404, "unknown job")
            return {"status": job.status, "result": job.summary, "error": job.error}

    return app


app = create_app()
