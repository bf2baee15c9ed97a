"""File formats: networks, layouts, session logs, and CSV exports.

All documents are versioned JSON. Coordinates are written as decimal strings
(shortest round-trip repr) so saved layouts and logged moves replay
bit-exactly; parsers reject malformed input instead of repairing it.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, TextIO

from .annealing import AnnealResult, SegmentKind
from .clues import Clue
from .errors import DocumentError
from .model import BoundingBox, Edge, Layout, Network, Node, NodeRole, Point
from .scoring import CRITERIA, Criterion, Priorities, ScoreBreakdown, ScoringParams
from .sessions import ActorKind, Approach, GameConfig, MoveEvent, SequenceReport, Session

NETWORK_SCHEMA = "layoutlab/network/v1"
LAYOUT_SCHEMA = "layoutlab/layout/v1"
SESSION_LOG_SCHEMA = "layoutlab/session-log/v1"

NETWORK_SUFFIX = ".network.json"
LAYOUT_SUFFIX = ".layout.json"
SESSION_LOG_SUFFIX = ".session.jsonl"


def _parse_json(text: str, kind: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"invalid {kind} document: {exc.msg}", context=f"line {exc.lineno} col {exc.colno}"
        ) from exc


def _require(doc: dict, key: str, kind: str) -> Any:
    if key not in doc:
        raise DocumentError(f"{kind} document missing field", context=key)
    return doc[key]


def _coord_str(value: float) -> str:
    return repr(float(value))


def _coord_val(raw: Any, context: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError) as exc:
        raise DocumentError("coordinate is not a number", context=context) from exc
    if not math.isfinite(value):
        raise DocumentError("coordinate is not finite", context=context)
    return value


# -- networks -------------------------------------------------------------------


def network_to_dict(network: Network) -> dict:
    nodes = []
    for n in network.nodes:
        entry: dict[str, Any] = {"id": n.id, "role": n.role.value}
        if n.label is not None:
            entry["label"] = n.label
        nodes.append(entry)
    return {
        "schema": NETWORK_SCHEMA,
        "id": network.id,
        "nodes": nodes,
        "edges": [
            {"id": e.id, "tail": e.tail, "head": e.head, "directed": e.directed}
            for e in network.edges
        ],
    }


def save_network(network: Network) -> str:
    return json.dumps(network_to_dict(network), indent=2) + "\n"


def load_network(text: str) -> Network:
    return load_network_dict(_parse_json(text, "network"))


def load_network_dict(doc: dict) -> Network:
    if not isinstance(doc, dict) or doc.get("schema") != NETWORK_SCHEMA:
        raise DocumentError(
            "unrecognized network schema",
            context=str(doc.get("schema") if isinstance(doc, dict) else doc),
        )
    net_id = _require(doc, "id", "network")
    nodes = []
    for raw in _require(doc, "nodes", "network"):
        role_raw = raw.get("role", "internal")
        try:
            role = NodeRole(role_raw)
        except ValueError as exc:
            raise DocumentError("unknown node role", context=f"{raw.get('id')}: {role_raw}") from exc
        nodes.append(Node(id=str(_require(raw, "id", "node")), role=role, label=raw.get("label")))
    edges = []
    for raw in _require(doc, "edges", "network"):
        edges.append(
            Edge(
                id=str(_require(raw, "id", "edge")),
                tail=str(_require(raw, "tail", "edge")),
                head=str(_require(raw, "head", "edge")),
                directed=bool(_require(raw, "directed", "edge")),
            )
        )
    # Canonical ordering keeps iteration and serialization deterministic.
    nodes.sort(key=lambda n: n.id)
    edges.sort(key=lambda e: e.id)
    return Network(id=str(net_id), nodes=tuple(nodes), edges=tuple(edges))


# -- layouts --------------------------------------------------------------------


def layout_to_dict(
    layout: Layout, network_id: str, provenance: dict | None = None
) -> dict:
    doc = {
        "schema": LAYOUT_SCHEMA,
        "network_id": network_id,
        "box": {"w": layout.box.w, "h": layout.box.h},
        "positions": {
            nid: {"x": _coord_str(p.x), "y": _coord_str(p.y)}
            for nid, p in sorted(layout.positions.items())
        },
    }
    if provenance is not None:
        doc["provenance"] = provenance
    return doc


def save_layout(layout: Layout, network_id: str, provenance: dict | None = None) -> str:
    return json.dumps(layout_to_dict(layout, network_id, provenance), indent=2) + "\n"


def load_layout(text: str, network: Network) -> Layout:
    doc = _parse_json(text, "layout")
    if not isinstance(doc, dict) or doc.get("schema") != LAYOUT_SCHEMA:
        raise DocumentError("unrecognized layout schema", context=str(doc.get("schema")))
    if _require(doc, "network_id", "layout") != network.id:
        raise DocumentError(
            "layout belongs to a different network",
            context=f"{doc['network_id']} != {network.id}",
        )
    box_doc = _require(doc, "box", "layout")
    box = BoundingBox(
        w=_coord_val(_require(box_doc, "w", "box"), "box.w"),
        h=_coord_val(_require(box_doc, "h", "box"), "box.h"),
    )
    positions = {}
    for nid, raw in _require(doc, "positions", "layout").items():
        positions[nid] = Point(
            _coord_val(_require(raw, "x", "position"), f"{nid}.x"),
            _coord_val(_require(raw, "y", "position"), f"{nid}.y"),
        )
    layout = Layout(positions, box)
    layout.require_cover(network)
    return layout


def layout_from_wire(doc: dict, network: Network) -> Layout:
    """Layout from an API payload: a LayoutDocument or a bare box+positions."""
    if not isinstance(doc, dict):
        raise DocumentError("layout payload must be an object")
    if doc.get("network_id") not in (None, network.id):
        raise DocumentError(
            "layout belongs to a different network", context=str(doc.get("network_id"))
        )
    box_doc = _require(doc, "box", "layout")
    box = BoundingBox(
        w=_coord_val(_require(box_doc, "w", "box"), "box.w"),
        h=_coord_val(_require(box_doc, "h", "box"), "box.h"),
    )
    positions = {
        nid: Point(_coord_val(raw["x"], f"{nid}.x"), _coord_val(raw["y"], f"{nid}.y"))
        for nid, raw in _require(doc, "positions", "layout").items()
    }
    layout = Layout(positions, box)
    layout.require_cover(network)
    return layout


# -- score/clue/config codecs -----------------------------------------------------


def breakdown_to_dict(b: ScoreBreakdown) -> dict:
    return {
        "dp": b.dp,
        "ec": b.ec,
        "el": b.el,
        "nd": b.nd,
        "ned": b.ned,
        "overall": b.overall,
        "display": {c.value: b.display(c) for c in CRITERIA},
        "deltas": {c.value: b.deltas.get(c, 0) for c in CRITERIA},
        "delta_overall": b.delta_overall,
    }


def breakdown_from_dict(doc: dict) -> ScoreBreakdown:
    display = doc["display"]
    return ScoreBreakdown(
        dp=doc["dp"], ec=doc["ec"], el=doc["el"], nd=doc["nd"], ned=doc["ned"],
        overall=doc["overall"],
        display_dp=display["DP"], display_ec=display["EC"], display_el=display["EL"],
        display_nd=display["ND"], display_ned=display["NED"],
        deltas={Criterion(k): v for k, v in doc["deltas"].items()},
        delta_overall=doc["delta_overall"],
    )


def clue_to_dict(clue: Clue | None) -> dict | None:
    if clue is None:
        return None
    return {
        "criterion": clue.criterion.value,
        "node_ids": list(clue.node_ids),
        "edge_ids": list(clue.edge_ids),
        "expected_gain": clue.expected_gain,
        "rationale": clue.rationale,
    }


def clue_from_dict(doc: dict | None) -> Clue | None:
    if doc is None:
        return None
    return Clue(
        criterion=Criterion(doc["criterion"]),
        node_ids=tuple(doc["node_ids"]),
        edge_ids=tuple(doc["edge_ids"]),
        expected_gain=doc.get("expected_gain"),
        rationale=doc.get("rationale", ""),
    )


def priorities_to_dict(p: Priorities) -> dict:
    return {c.value: p.of(c) for c in CRITERIA}


def priorities_from_dict(doc: dict) -> Priorities:
    return Priorities(
        w_dp=doc.get("DP", 400.0), w_ec=doc.get("EC", 3.0), w_el=doc.get("EL", 1.0),
        w_nd=doc.get("ND", 1.0), w_ned=doc.get("NED", 1.0),
    )


def params_to_dict(params: ScoringParams) -> dict:
    return {
        "theta_min_deg": params.theta_min_deg,
        "min_edge_length": params.min_edge_length,
        "short_edge_penalty": params.short_edge_penalty,
        "path_count_cap": params.path_count_cap,
        "source_target_only": params.source_target_only,
    }


def params_from_dict(doc: dict) -> ScoringParams:
    defaults = ScoringParams()
    return ScoringParams(
        theta_min_deg=doc.get("theta_min_deg", defaults.theta_min_deg),
        min_edge_length=doc.get("min_edge_length", defaults.min_edge_length),
        short_edge_penalty=doc.get("short_edge_penalty", defaults.short_edge_penalty),
        path_count_cap=doc.get("path_count_cap", defaults.path_count_cap),
        source_target_only=doc.get("source_target_only", defaults.source_target_only),
    )


def game_config_to_dict(config: GameConfig) -> dict:
    return {
        "network_id": config.network_id,
        "approach": config.approach.value,
        "priorities": priorities_to_dict(config.priorities),
        "sessions_per_criterion": config.sessions_per_criterion,
        "session_duration_minutes": config.session_duration_minutes,
        "sequence_budget_minutes": config.sequence_budget_minutes,
        "target_score": config.target_score,
        "bonus_budget_per_priority": config.bonus_budget_per_priority,
        "bonus_budgets": list(config.bonus_budgets) if config.bonus_budgets else None,
        "scoring": params_to_dict(config.scoring),
        "seed": config.seed,
        "sa_segments": config.sa_segments,
        "sa_segment_kind": config.sa_segment_kind.value if config.sa_segment_kind else None,
        "agent_move_budget": config.agent_move_budget,
    }


def game_config_from_dict(doc: dict, network_id: str | None = None) -> GameConfig:
    defaults = GameConfig(network_id="_")
    try:
        approach = Approach(doc.get("approach", Approach.CROWD.value))
    except ValueError as exc:
        raise DocumentError("unknown approach", context=str(doc.get("approach"))) from exc
    kind_raw = doc.get("sa_segment_kind")
    try:
        kind = SegmentKind(kind_raw) if kind_raw is not None else None
    except ValueError as exc:
        raise DocumentError("unknown segment kind", context=str(kind_raw)) from exc
    budgets = doc.get("bonus_budgets")
    return GameConfig(
        network_id=network_id or doc.get("network_id", "_"),
        approach=approach,
        priorities=priorities_from_dict(doc.get("priorities", {})),
        sessions_per_criterion=doc.get("sessions_per_criterion", defaults.sessions_per_criterion),
        session_duration_minutes=doc.get(
            "session_duration_minutes", defaults.session_duration_minutes
        ),
        sequence_budget_minutes=doc.get(
            "sequence_budget_minutes", defaults.sequence_budget_minutes
        ),
        target_score=doc.get("target_score", defaults.target_score),
        bonus_budget_per_priority=doc.get(
            "bonus_budget_per_priority", defaults.bonus_budget_per_priority
        ),
        bonus_budgets=tuple(budgets) if budgets is not None else None,
        scoring=params_from_dict(doc.get("scoring", {})),
        seed=doc.get("seed", 0),
        sa_segments=doc.get("sa_segments"),
        sa_segment_kind=kind,
        agent_move_budget=doc.get("agent_move_budget", defaults.agent_move_budget),
    )


def point_to_dict(p: Point) -> dict:
    return {"x": _coord_str(p.x), "y": _coord_str(p.y)}


def point_from_dict(doc: dict, context: str = "point") -> Point:
    return Point(_coord_val(doc["x"], context), _coord_val(doc["y"], context))


# -- session logs ------------------------------------------------------------------


class SessionLogWriter:
    """Append-only JSONL sink implementing the Session log protocol."""

    def __init__(self, stream: TextIO):
        self._stream = stream

    def _emit(self, record: dict) -> None:
        self._stream.write(json.dumps(record, sort_keys=True) + "\n")
        self._stream.flush()

    def on_open(self, session: Session) -> None:
        self._emit({
            "event": "open",
            "schema": SESSION_LOG_SCHEMA,
            "session": session.id,
            "network": session.network.id,
            "mode": session.mode.value,
            "actor": session.actor.value,
            "box": {"w": session.start_layout.box.w, "h": session.start_layout.box.h},
            "priorities": priorities_to_dict(session.priorities),
            "params": params_to_dict(session.params),
            "start": {
                nid: point_to_dict(p)
                for nid, p in sorted(session.start_layout.positions.items())
            },
        })

    def on_clue(self, session: Session, clue: Clue | None) -> None:
        self._emit({"event": "clue", "session": session.id, "clue": clue_to_dict(clue)})

    def on_move(self, session: Session, event: MoveEvent) -> None:
        self._emit({
            "event": "move",
            "session": session.id,
            "t": event.timestamp,
            "node": event.node_id,
            "old": point_to_dict(event.old),
            "new": point_to_dict(event.new),
            "breakdown": breakdown_to_dict(event.breakdown),
            "clue": clue_to_dict(event.clue),
            "moved_clue_element": event.moved_clue_element,
        })

    def on_stack(self, session: Session, action: str, applied: bool) -> None:
        self._emit({"event": action, "session": session.id, "applied": applied})

    def on_finalize(self, session: Session, updated: bool, bonus: float) -> None:
        self._emit({
            "event": "finalize",
            "session": session.id,
            "registry_updated": updated,
            "bonus": bonus,
            "session_best_overall": session.best_breakdown.overall,
        })


def replay_session_log(lines: Iterable[str], network: Network) -> dict[str, Session]:
    """Re-execute a session log, verifying every recorded breakdown bit-exactly.

    A log may interleave several sessions (a whole sequence); events route by
    session id. Raises DocumentError on any divergence between log and replay.
    Returns the reconstructed sessions keyed by id.
    """
    sessions: dict[str, Session] = {}
    for line_no, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        record = _parse_json(line, "session-log")
        event = record.get("event")
        sid = record.get("session")
        if event == "open":
            if record.get("network") != network.id:
                raise DocumentError(
                    "log belongs to a different network", context=str(record.get("network"))
                )
            box_doc = record["box"]
            layout = Layout(
                {nid: point_from_dict(p, nid) for nid, p in record["start"].items()},
                BoundingBox(box_doc["w"], box_doc["h"]),
            )
            sessions[sid] = Session(
                session_id=sid,
                network=network,
                start_layout=layout,
                mode=Criterion(record["mode"]),
                priorities=priorities_from_dict(record["priorities"]),
                params=params_from_dict(record["params"]),
                actor=ActorKind(record.get("actor", "player")),
            )
            continue
        session = sessions.get(sid)
        if session is None:
            raise DocumentError("log event before open record", context=f"line {line_no}")
        if event == "clue":
            session.active_clue = clue_from_dict(record["clue"])
        elif event == "move":
            got = session.record_move(record["node"], point_from_dict(record["new"]))
            expected = breakdown_from_dict(record["breakdown"])
            if got != expected:
                raise DocumentError(
                    "replayed breakdown diverges from the log", context=f"line {line_no}"
                )
        elif event == "undo":
            session.undo()
        elif event == "redo":
            session.redo()
        elif event == "revert":
            session.revert_to_best()
        elif event == "finalize":
            session.open = False
        else:
            raise DocumentError("unknown log event", context=str(event))
    if not sessions:
        raise DocumentError("log contains no open record")
    return sessions


# -- CSV exports --------------------------------------------------------------------


def export_scores_csv(report: SequenceReport) -> str:
    """One row per registry improvement, in adoption order."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["elapsed", "actor", "overall", "dp", "ec", "el", "nd", "ned"])
    for entry in report.improvements:
        b = entry.breakdown
        writer.writerow([
            entry.elapsed, entry.actor, repr(b.overall),
            b.display_dp, b.display_ec, b.display_el, b.display_nd, b.display_ned,
        ])
    return out.getvalue()


def export_contributions_csv(report: SequenceReport) -> str:
    """Per-turn attribution of overall-score improvement."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(
        ["turn", "actor", "label", "session", "overall_before", "overall_after", "contribution"]
    )
    for e in report.entries:
        writer.writerow([
            e.index, e.actor.value, e.label, e.session_id or "",
            repr(e.overall_before), repr(e.overall_after), repr(e.contribution),
        ])
    return out.getvalue()


def export_trajectory_csv(result: AnnealResult) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["iteration", "temperature", "overall", "best_overall"])
    for tp in result.trajectory:
        writer.writerow([tp.iteration, repr(tp.temperature), repr(tp.overall), repr(tp.best_overall)])
    return out.getvalue()
