import time

import pytest
from fastapi.testclient import TestClient

from layoutlab.model import BoundingBox, Layout, Point, network_from_edges
from layoutlab.scoring import Criterion
from layoutlab.server import create_app
from layoutlab.sessions import Session
from layoutlab.storage import breakdown_to_dict, network_to_dict


@pytest.fixture
def client():
    return TestClient(create_app())


def crossing_network_doc():
    net = network_from_edges("webx", [("a", "b"), ("c", "d")])
    return net, network_to_dict(net)


def crossing_layout_wire():
    return {
        "box": {"w": 5000, "h": 6000},
        "positions": {
            "a": {"x": 0, "y": 0}, "b": {"x": 1000, "y": 1000},
            "c": {"x": 0, "y": 1000}, "d": {"x": 1000, "y": 0},
        },
    }


def make_game(client, approach="Crowd", game_id=None, layout=None, **config):
    _, doc = crossing_network_doc()
    payload = {
        "network": doc,
        "config": {"approach": approach, "sessions_per_criterion": 1, **config},
        "layout": layout or crossing_layout_wire(),
    }
    if game_id:
        payload["game_id"] = game_id
    return client.post("/games", json=payload)


def open_session(client, game_id):
    resp = client.post(f"/games/{game_id}/sessions")
    assert resp.status_code == 201, resp.text
    body = resp.json()
    return body, {"X-Session-Token": body["token"]}


class TestGameCreation:
    def test_create_returns_id(self, client):
        resp = make_game(client)
        assert resp.status_code == 201
        assert resp.json()["game_id"] == "webx"

    def test_zero_priorities_rejected(self, client):
        resp = make_game(
            client, priorities={"DP": 0, "EC": 0, "EL": 0, "ND": 0, "NED": 0}
        )
        assert resp.status_code == 400

    def test_duplicate_game_id_conflicts(self, client):
        assert make_game(client).status_code == 201
        assert make_game(client).status_code == 409

    def test_malformed_network_rejected(self, client):
        resp = client.post("/games", json={"network": {"schema": "nope"}, "config": {}})
        assert resp.status_code == 400

    def test_random_layout_when_none_given(self, client):
        _, doc = crossing_network_doc()
        resp = client.post(
            "/games", json={"network": doc, "config": {"seed": 11}, "game_id": "g2"}
        )
        assert resp.status_code == 201
        best = client.get("/games/g2/best").json()
        assert set(best["layout"]["positions"]) == {"a", "b", "c", "d"}


class TestSessions:
    def test_first_crowd_session_gets_dp_mode(self, client):
        make_game(client)
        body, _ = open_session(client, "webx")
        assert body["mode"] == "DP"
        assert body["breakdown"]["display"]["EC"] == 0

    def test_second_concurrent_session_rejected(self, client):
        make_game(client)
        open_session(client, "webx")
        assert client.post("/games/webx/sessions").status_code == 409

    def test_exhausted_sequence_gives_410(self, client):
        make_game(client, sequence_budget_minutes=1e9)
        for _ in range(5):  # one session per criterion
            body, headers = open_session(client, "webx")
            client.post(f"/sessions/{body['session_id']}/finalize", headers=headers)
        assert client.post("/games/webx/sessions").status_code == 410

    def test_unknown_game_404(self, client):
        assert client.post("/games/ghost/sessions").status_code == 404


class TestMoves:
    def test_in_box_move_returns_breakdown(self, client):
        make_game(client)
        body, headers = open_session(client, "webx")
        resp = client.post(
            f"/sessions/{body['session_id']}/moves",
            json={"node": "b", "x": 100, "y": 400},
            headers=headers,
        )
        assert resp.status_code == 200
        data = resp.json()
        assert data["breakdown"]["display"]["EC"] == 10000
        assert data["breakdown"]["deltas"]["EC"] == 10000
        assert data["can_undo"] is True

    def test_out_of_box_move_is_legal_but_zeroed(self, client):
        make_game(client)
        body, headers = open_session(client, "webx")
        resp = client.post(
            f"/sessions/{body['session_id']}/moves",
            json={"node": "b", "x": -10, "y": 0},
            headers=headers,
        )
        assert resp.status_code == 200
        assert all(v == 0 for v in resp.json()["breakdown"]["display"].values())

    def test_bad_token_401(self, client):
        make_game(client)
        body, _ = open_session(client, "webx")
        resp = client.post(
            f"/sessions/{body['session_id']}/moves",
            json={"node": "b", "x": 1, "y": 1},
            headers={"X-Session-Token": "forged"},
        )
        assert resp.status_code == 401

    def test_unknown_node_422(self, client):
        make_game(client)
        body, headers = open_session(client, "webx")
        resp = client.post(
            f"/sessions/{body['session_id']}/moves",
            json={"node": "nope", "x": 1, "y": 1},
            headers=headers,
        )
        assert resp.status_code == 422

    def test_move_after_finalize_401(self, client):
        make_game(client)
        body, headers = open_session(client, "webx")
        client.post(f"/sessions/{body['session_id']}/finalize", headers=headers)
        resp = client.post(
            f"/sessions/{body['session_id']}/moves",
            json={"node": "b", "x": 1, "y": 1},
            headers=headers,
        )
        assert resp.status_code == 401


class TestClueEndpoint:
    def test_no_clue_gives_204(self, client):
        net = network_from_edges("down", [("a", "b")])
        layout = {
            "box": {"w": 5000, "h": 6000},
            "positions": {"a": {"x": 0, "y": 0}, "b": {"x": 0, "y": 500}},
        }
        client.post(
            "/games",
            json={
                "network": network_to_dict(net),
                "config": {"sessions_per_criterion": 1},
                "layout": layout,
            },
        )
        body, headers = open_session(client, "down")
        assert body["mode"] == "DP"
        resp = client.get(f"/sessions/{body['session_id']}/clue", headers=headers)
        assert resp.status_code == 204

    def test_ec_clue_returns_crossing_pair(self, client):
        make_game(client)
        body, headers = open_session(client, "webx")  # DP mode first
        client.post(f"/sessions/{body['session_id']}/finalize", headers=headers)
        body, headers = open_session(client, "webx")  # EC mode second
        assert body["mode"] == "EC"
        resp = client.get(f"/sessions/{body['session_id']}/clue", headers=headers)
        assert resp.status_code == 200
        clue = resp.json()
        assert clue["criterion"] == "EC"
        assert set(clue["node_ids"]) == {"a", "b", "c", "d"}
        again = client.get(f"/sessions/{body['session_id']}/clue", headers=headers)
        assert again.json() == clue


class TestStackEndpoints:
    def test_undo_redo_revert_cycle(self, client):
        make_game(client)
        body, headers = open_session(client, "webx")
        sid = body["session_id"]
        before = body["breakdown"]
        moved = client.post(
            f"/sessions/{sid}/moves", json={"node": "b", "x": 100, "y": 400},
            headers=headers,
        ).json()["breakdown"]
        undone = client.post(f"/sessions/{sid}/undo", headers=headers).json()
        assert undone["applied"] is True
        assert undone["breakdown"]["overall"] == before["overall"]
        redone = client.post(f"/sessions/{sid}/redo", headers=headers).json()
        assert redone["breakdown"]["overall"] == moved["overall"]
        reverted = client.post(f"/sessions/{sid}/revert", headers=headers).json()
        assert reverted["breakdown"]["overall"] == moved["overall"]  # move was best

    def test_empty_undo_is_noop(self, client):
        make_game(client)
        body, headers = open_session(client, "webx")
        resp = client.post(f"/sessions/{body['session_id']}/undo", headers=headers).json()
        assert resp["applied"] is False


class TestFinalize:
    def test_improving_session_updates_registry_and_pays(self, client):
        make_game(client)
        body, headers = open_session(client, "webx")
        client.post(f"/sessions/{body['session_id']}/finalize", headers=headers)
        body, headers = open_session(client, "webx")  # EC mode
        client.post(
            f"/sessions/{body['session_id']}/moves",
            json={"node": "b", "x": 100, "y": 400},
            headers=headers,
        )
        resp = client.post(
            f"/sessions/{body['session_id']}/finalize", headers=headers
        ).json()
        assert resp["registry_updated"] is True
        assert resp["bonus"] > 0

    def test_non_improving_session_pays_nothing(self, client):
        make_game(client)
        body, headers = open_session(client, "webx")
        resp = client.post(
            f"/sessions/{body['session_id']}/finalize", headers=headers
        ).json()
        assert resp["registry_updated"] is False
        assert resp["bonus"] == 0.0

    def test_double_finalize_401(self, client):
        make_game(client)
        body, headers = open_session(client, "webx")
        client.post(f"/sessions/{body['session_id']}/finalize", headers=headers)
        resp = client.post(f"/sessions/{body['session_id']}/finalize", headers=headers)
        assert resp.status_code == 401


def _wait_for_job(client, game_id, job_id, timeout=60.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        status = client.get(f"/games/{game_id}/anneal/{job_id}").json()
        if status["status"] != "running":
            return status
        time.sleep(0.05)
    raise TimeoutError("anneal job did not finish")


class TestAnnealEndpoints:
    def test_hybrid_turn_order_enforced(self, client):
        make_game(client, approach="HybridSA20", game_id="hyb")
        # player turn first: anneal refused
        assert client.post("/games/hyb/anneal", json={"segment": "SA20"}).status_code == 409
        body, headers = open_session(client, "hyb")
        client.post(f"/sessions/{body['session_id']}/finalize", headers=headers)
        # annealer turn: session refused, anneal accepted
        assert client.post("/games/hyb/sessions").status_code == 409
        resp = client.post("/games/hyb/anneal", json={"segment": "SA20"})
        assert resp.status_code == 202
        status = _wait_for_job(client, "hyb", resp.json()["job_id"])
        assert status["status"] == "done"
        assert status["result"]["iterations"] == 125
        # back to a player turn
        assert client.post("/games/hyb/sessions").status_code == 201

    def test_unknown_segment_rejected(self, client):
        make_game(client, approach="SAOnly", game_id="sa")
        resp = client.post("/games/sa/anneal", json={"segment": "SA999"})
        assert resp.status_code == 400

    def test_best_is_monotone_across_polls(self, client):
        make_game(client, approach="SAOnly", game_id="sa2", seed=3)
        seen = [client.get("/games/sa2/best").json()["breakdown"]["overall"]]
        for _ in range(2):
            resp = client.post("/games/sa2/anneal", json={"segment": "SA20"})
            assert resp.status_code == 202
            _wait_for_job(client, "sa2", resp.json()["job_id"])
            seen.append(client.get("/games/sa2/best").json()["breakdown"]["overall"])
        assert seen == sorted(seen)


class TestTokenExpiry:
    def test_expired_token_rejected(self, client):
        make_game(client, session_duration_minutes=1e-9)
        body, headers = open_session(client, "webx")
        time.sleep(0.01)  # comfortably past the ~60ns expiry
        resp = client.post(
            f"/sessions/{body['session_id']}/moves",
            json={"node": "b", "x": 1, "y": 1},
            headers=headers,
        )
        assert resp.status_code == 401


class TestConcurrentMoves:
    def test_same_session_moves_serialize(self, client):
        import threading

        make_game(client)
        body, headers = open_session(client, "webx")
        sid = body["session_id"]
        statuses = []

        def fire(k):
            resp = client.post(
                f"/sessions/{sid}/moves",
                json={"node": "b", "x": 100 + k, "y": 400},
                headers=headers,
            )
            statuses.append(resp.status_code)

        threads = [threading.Thread(target=fire, args=(k,)) for k in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert statuses == [200] * 8
        # all eight moves were applied, in some serialized arrival order
        undone = 0
        while client.post(f"/sessions/{sid}/undo", headers=headers).json()["applied"]:
            undone += 1
        assert undone == 8


class TestApiMatchesDirectCalls:
    def test_move_breakdowns_identical_to_orchestrator(self, client):
        net, _ = crossing_network_doc()
        make_game(client)
        body, headers = open_session(client, "webx")
        sid = body["session_id"]
        moves = [("b", 100.0, 400.0), ("a", 50.0, 10.0), ("d", 900.0, 30.0)]
        api_breakdowns = [
            client.post(
                f"/sessions/{sid}/moves",
                json={"node": n, "x": x, "y": y},
                headers=headers,
            ).json()["breakdown"]
            for n, x, y in moves
        ]
        layout = Layout(
            {"a": Point(0, 0), "b": Point(1000, 1000),
             "c": Point(0, 1000), "d": Point(1000, 0)},
            BoundingBox(),
        )
        direct = Session("direct", net, layout, Criterion.DP)
        direct_breakdowns = [
            breakdown_to_dict(direct.record_move(n, Point(x, y))) for n, x, y in moves
        ]
        assert api_breakdowns == direct_breakdowns
