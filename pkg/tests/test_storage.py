import io
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from layoutlab.errors import DocumentError
from layoutlab.model import (
    BoundingBox,
    Layout,
    Point,
    network_from_edges,
    random_layout,
)
from layoutlab.scoring import Criterion
from layoutlab.sessions import (
    AgentPolicy,
    Approach,
    GameConfig,
    Session,
    run_scripted_agent,
    run_sequence,
)
from layoutlab.storage import (
    breakdown_from_dict,
    breakdown_to_dict,
    export_contributions_csv,
    export_scores_csv,
    load_layout,
    load_network,
    replay_session_log,
    save_layout,
    save_network,
    SessionLogWriter,
)


class TestNetworkDocuments:
    def test_minimal_roundtrip(self):
        net = network_from_edges("mini", [("a", "b")])
        assert load_network(save_network(net)) == net

    def test_fixture_roundtrips(self, fixture_dir):
        for path in sorted(fixture_dir.glob("*.network.json")):
            net = load_network(path.read_text())
            assert load_network(save_network(net)) == net

    def test_g1_fixture_shape(self, fixture_dir):
        net = load_network((fixture_dir / "g1_like.network.json").read_text())
        assert net.n == 71
        assert net.m == 112

    def test_shipped_fixture_statistics(self, fixture_dir):
        import networkx as nx

        expected = {
            "g1_like": (71, 112, 3),
            "g2_like": (69, 131, 1626),
            "g3_like": (58, 136, 36085),
            "cyclerich_small": (12, 40, 1626),
            "dag30": (30, 45, 0),
        }
        for name, (n, m, cycles) in expected.items():
            net = load_network((fixture_dir / f"{name}.network.json").read_text())
            assert (net.n, net.m) == (n, m), name
            g = nx.DiGraph()
            g.add_nodes_from(node.id for node in net.nodes)
            g.add_edges_from((e.tail, e.head) for e in net.edges if e.directed)
            assert sum(1 for _ in nx.simple_cycles(g)) == cycles, name

    def test_dangling_endpoint_rejected(self):
        doc = {
            "schema": "layoutlab/network/v1",
            "id": "bad",
            "nodes": [{"id": "a", "role": "internal"}],
            "edges": [{"id": "e0", "tail": "a", "head": "ghost", "directed": True}],
        }
        with pytest.raises(DocumentError, match="unknown node"):
            load_network(json.dumps(doc))

    def test_duplicate_node_rejected(self):
        doc = {
            "schema": "layoutlab/network/v1",
            "id": "bad",
            "nodes": [{"id": "a"}, {"id": "a"}],
            "edges": [],
        }
        with pytest.raises(DocumentError, match="duplicate node"):
            load_network(json.dumps(doc))

    def test_self_loop_rejected(self):
        doc = {
            "schema": "layoutlab/network/v1",
            "id": "bad",
            "nodes": [{"id": "a"}],
            "edges": [{"id": "e0", "tail": "a", "head": "a", "directed": True}],
        }
        with pytest.raises(DocumentError, match="self-loop"):
            load_network(json.dumps(doc))

    def test_malformed_json_reports_position(self):
        with pytest.raises(DocumentError, match="line 1"):
            load_network("{nope")

    def test_wrong_schema_rejected(self):
        with pytest.raises(DocumentError, match="schema"):
            load_network(json.dumps({"schema": "something/else"}))


class TestLayoutDocuments:
    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_roundtrip_is_bit_exact(self, seed):
        rng = np.random.default_rng(seed)
        net = oracles.random_network(rng, 6)
        layout = oracles.random_inbox_layout(rng, net)
        got = load_layout(save_layout(layout, net.id), net)
        assert got.positions == layout.positions
        assert got.box == layout.box

    def test_boundary_coordinate_accepted(self):
        net = network_from_edges("b", [("a", "b")])
        layout = Layout({"a": Point(5000.0, 6000.0), "b": Point(0.0, 0.0)}, BoundingBox())
        got = load_layout(save_layout(layout, net.id), net)
        assert got.positions["a"] == Point(5000.0, 6000.0)

    def test_missing_node_position_rejected(self):
        net = network_from_edges("c", [("a", "b")])
        layout_doc = json.loads(save_layout(random_layout(net, seed=1), net.id))
        del layout_doc["positions"]["a"]
        with pytest.raises(DocumentError, match="cover"):
            load_layout(json.dumps(layout_doc), net)

    def test_network_id_mismatch_rejected(self):
        net = network_from_edges("d", [("a", "b")])
        text = save_layout(random_layout(net, seed=2), "some-other-net")
        with pytest.raises(DocumentError, match="different network"):
            load_layout(text, net)

    def test_nonfinite_coordinate_rejected(self):
        net = network_from_edges("e", [("a", "b")])
        doc = json.loads(save_layout(random_layout(net, seed=3), net.id))
        doc["positions"]["a"]["x"] = "inf"
        with pytest.raises(DocumentError, match="finite"):
            load_layout(json.dumps(doc), net)


class TestBreakdownCodec:
    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_json_roundtrip_preserves_bits(self, seed):
        rng = np.random.default_rng(seed)
        net = oracles.random_network(rng, 6)
        layout = oracles.random_inbox_layout(rng, net)
        from layoutlab.scoring import overall_score

        b = overall_score(net, layout)
        again = breakdown_from_dict(json.loads(json.dumps(breakdown_to_dict(b))))
        assert again == b


class TestSessionLogReplay:
    def _agent_session_log(self, seed: int = 0):
        net = network_from_edges("log", [("a", "b"), ("c", "d"), ("b", "d")])
        layout = random_layout(net, seed=seed)
        stream = io.StringIO()
        session = Session(
            "log-s1", net, layout, Criterion.EC, log=SessionLogWriter(stream)
        )
        run_scripted_agent(session, AgentPolicy(move_budget=8, seed=seed))
        session.undo()
        session.redo()
        session.revert_to_best()
        return net, session, stream.getvalue()

    def test_replay_reproduces_breakdowns_exactly(self):
        net, live, text = self._agent_session_log()
        replayed = replay_session_log(text.splitlines(), net)["log-s1"]
        assert replayed.current_layout.positions == live.current_layout.positions
        assert replayed.breakdown == live.breakdown
        assert replayed.best_breakdown == live.best_breakdown
        assert len(replayed.move_log) == len(live.move_log)

    def test_tampered_log_fails_replay(self):
        net, _, text = self._agent_session_log(seed=1)
        lines = text.splitlines()
        for i, line in enumerate(lines):
            rec = json.loads(line)
            if rec["event"] == "move":
                rec["breakdown"]["overall"] += 1e-9
                lines[i] = json.dumps(rec)
                break
        else:
            pytest.skip("agent made no moves for this seed")
        with pytest.raises(DocumentError, match="diverges"):
            replay_session_log(lines, net)

    def test_sequence_log_with_many_sessions_replays(self):
        net = network_from_edges("seqlog", [("a", "b"), ("c", "d"), ("b", "d")])
        layout = random_layout(net, seed=9)
        stream = io.StringIO()
        config = GameConfig(
            network_id=net.id, approach=Approach.CROWD,
            sessions_per_criterion=1, agent_move_budget=4, seed=2,
        )
        run_sequence(net, layout, config, log=SessionLogWriter(stream))
        sessions = replay_session_log(stream.getvalue().splitlines(), net)
        assert len(sessions) == 5
        assert all(not s.open for s in sessions.values())


class TestCsvExports:
    def _report(self):
        net = network_from_edges("csv", [("a", "b"), ("c", "d")])
        layout = Layout(
            {"a": Point(0, 0), "b": Point(1000, 1000), "c": Point(0, 1000), "d": Point(1000, 0)},
            BoundingBox(),
        )
        config = GameConfig(
            network_id=net.id, approach=Approach.CROWD,
            sessions_per_criterion=1, agent_move_budget=5, seed=3,
        )
        return run_sequence(net, layout, config)

    def test_scores_csv_rows_match_improvements(self):
        report = self._report()
        lines = export_scores_csv(report).strip().splitlines()
        assert lines[0] == "elapsed,actor,overall,dp,ec,el,nd,ned"
        assert len(lines) == 1 + len(report.improvements)
        overalls = [float(line.split(",")[2]) for line in lines[1:]]
        assert overalls == sorted(overalls)

    def test_empty_report_gives_header_only(self):
        net = network_from_edges("csv2", [("a", "b")])
        layout = random_layout(net, seed=4)
        config = GameConfig(
            network_id=net.id, approach=Approach.CROWD,
            sessions_per_criterion=1, agent_move_budget=0, seed=5,
            sequence_budget_minutes=0.0,
        )
        report = run_sequence(net, layout, config)
        improvements_without_finetune = [
            e for e in report.improvements if e.actor != "fine_tune"
        ]
        csv_text = export_scores_csv(report)
        assert csv_text.splitlines()[0] == "elapsed,actor,overall,dp,ec,el,nd,ned"
        assert len(csv_text.strip().splitlines()) == 1 + len(report.improvements)
        assert improvements_without_finetune == []

    def test_contribution_csv_telescopes(self):
        report = self._report()
        lines = export_contributions_csv(report).strip().splitlines()
        total = sum(float(line.split(",")[6]) for line in lines[1:])
        expected = report.final_breakdown.overall - report.initial_breakdown.overall
        assert total == pytest.approx(expected, abs=1e-9)
