import json
from datetime import datetime, timedelta, timezone

import pytest
from fastapi.testclient import TestClient

from scrumsight.service import ServiceConfig, create_app


def iso(dt: datetime) -> str:
    dt = dt.astimezone(timezone.utc).replace(microsecond=0)
    return dt.strftime("%Y-%m-%dT%H:%M:%S.000Z")


NOW = datetime.now(timezone.utc)


@pytest.fixture()
def service(tmp_path):
    config = ServiceConfig(data_dir=str(tmp_path / "data"))
    app = create_app(config)
    with TestClient(app) as client:
        yield client, config


def register(client, pid):
    response = client.post("/api/v1/participants", json={"id": pid, "display_name": pid})
    assert response.status_code == 201
    return {"Authorization": f"Bearer {response.json()['token']}"}


def bootstrap(client):
    """Two-member team with one open sprint starting now."""
    alice = register(client, "alice")
    bob = register(client, "bob")
    client.post(
        "/api/v1/teams",
        json={"id": "t1", "name": "T1", "members": ["alice", "bob"], "product_owner": "alice"},
        headers=alice,
    )
    client.post(
        "/api/v1/teams/t1/sprints",
        json={"action": "start", "start": iso(NOW - timedelta(hours=1))},
        headers=alice,
    )
    return alice, bob


def full_task(client, alice, bob, task_id="k1", complete_after_days=1.0, quality=8):
    client.post("/api/v1/tasks", json={"id": task_id, "team": "t1", "description": "d"},
                headers=alice)
    for headers in (alice, bob):
        client.post(f"/api/v1/tasks/{task_id}/estimates",
                    json={"kind": "difficulty", "value": 6}, headers=headers)
        client.post(f"/api/v1/tasks/{task_id}/estimates",
                    json={"kind": "time", "days": 2.0}, headers=headers)
    assigned_at = NOW - timedelta(hours=1)
    response = client.post(
        f"/api/v1/tasks/{task_id}/assign",
        json={"assignee": "alice", "sprint": 1, "timestamp": iso(assigned_at)},
        headers=alice,
    )
    assert response.status_code == 201, response.text
    client.post(f"/api/v1/tasks/{task_id}/collaborators", json={"participant": "bob"},
                headers=alice)
    client.post(
        f"/api/v1/tasks/{task_id}/complete",
        json={"timestamp": iso(assigned_at + timedelta(days=complete_after_days))},
        headers=alice,
    )
    client.post(f"/api/v1/tasks/{task_id}/reviews", json={"value": quality}, headers=bob)


class TestAuth:
    def test_missing_token_is_401(self, service):
        client, _ = service
        assert client.get("/api/v1/teams").status_code == 401

    def test_unknown_token_is_401(self, service):
        client, _ = service
        response = client.get("/api/v1/teams", headers={"Authorization": "Bearer nope"})
        assert response.status_code == 401
        assert response.json()["code"] == "UNKNOWN_TOKEN"

    def test_registration_needs_no_token(self, service):
        client, _ = service
        assert client.post("/api/v1/participants", json={"id": "p1"}).status_code == 201


class TestWorkflow:
    def test_complete_on_proposed_is_illegal_transition(self, service):
        client, _ = service
        alice, bob = bootstrap(client)
        client.post("/api/v1/tasks", json={"id": "k1", "team": "t1", "description": "d"},
                    headers=alice)
        response = client.post("/api/v1/tasks/k1/complete", headers=alice)
        assert response.status_code == 400
        assert response.json()["code"] == "ILLEGAL_TRANSITION"

    def test_unknown_task_is_404(self, service):
        client, _ = service
        alice, _ = bootstrap(client)
        assert client.get("/api/v1/tasks/zzz", headers=alice).status_code == 404

    def test_non_member_is_403(self, service):
        client, _ = service
        alice, _ = bootstrap(client)
        eve = register(client, "eve")
        response = client.post("/api/v1/tasks", json={"team": "t1", "description": "d"},
                               headers=eve)
        assert response.status_code == 403
        assert response.json()["code"] == "NOT_A_MEMBER"

    def test_full_task_lifecycle(self, service):
        client, _ = service
        alice, bob = bootstrap(client)
        full_task(client, alice, bob)
        task = client.get("/api/v1/tasks/k1", headers=alice).json()
        assert task["status"] == "completed"
        assert task["collaborators"] == ["bob"]
        assert task["quality_reviews"] == {"bob": 8}

    def test_mood_report_current_sprint(self, service):
        client, _ = service
        alice, _ = bootstrap(client)
        response = client.post("/api/v1/sprints/t1:1/mood",
                               json={"phase": "begin", "value": 4}, headers=alice)
        assert response.status_code == 201
        assert response.json()["mood_begin"] == {"alice": 4}

    def test_mood_report_for_old_sprint_rejected(self, service):
        client, _ = service
        alice, _ = bootstrap(client)
        client.post("/api/v1/teams/t1/sprints",
                    json={"action": "start", "start": iso(NOW)}, headers=alice)
        response = client.post("/api/v1/sprints/t1:1/mood",
                               json={"phase": "end", "value": 2}, headers=alice)
        assert response.status_code == 400
        assert response.json()["code"] == "SPRINT_CLOSED"

    def test_auto_open_weekly_sprints(self, service):
        client, _ = service
        alice = register(client, "alice")
        client.post("/api/v1/teams", json={"id": "t1", "name": "T", "members": ["alice"],
                                           "product_owner": "alice"}, headers=alice)
        client.post("/api/v1/teams/t1/sprints",
                    json={"action": "start", "start": iso(NOW - timedelta(days=15))},
                    headers=alice)
        client.post("/api/v1/sprints/t1:3/mood", json={"phase": "begin", "value": 3},
                    headers=alice)
        sprints = client.get("/api/v1/teams/t1/sprints", headers=alice).json()
        assert [s["index"] for s in sprints] == [1, 2, 3]

    def test_error_body_shape(self, service):
        client, _ = service
        alice, _ = bootstrap(client)
        body = client.post("/api/v1/tasks/zzz/complete", headers=alice).json()
        assert set(body) == {"code", "message", "detail"}


class TestAnalytics:
    def test_empty_cohort(self, service):
        client, _ = service
        alice = register(client, "alice")
        response = client.get("/api/v1/analytics/skills", headers=alice)
        assert response.status_code == 400
        assert response.json()["code"] == "EMPTY_COHORT"

    def test_skills_after_workflow(self, service):
        client, _ = service
        alice, bob = bootstrap(client)
        full_task(client, alice, bob)
        doc = client.get("/api/v1/analytics/skills", headers=alice).json()
        assert set(doc["per_participant"]) == {"alice", "bob"}
        assert doc["raw"]["alice"]["alpha"] == 6.0

    def test_heatmap_endpoint(self, service):
        client, _ = service
        alice, bob = bootstrap(client)
        full_task(client, alice, bob)
        doc = client.get("/api/v1/analytics/heatmap/collaboration", headers=alice).json()
        assert doc["cells"][0][0] == 1.0

    def test_unknown_heatmap_kind(self, service):
        client, _ = service
        alice, bob = bootstrap(client)
        assert client.get("/api/v1/analytics/heatmap/nope", headers=alice).status_code == 404

    def test_external_scores_round_trip(self, service):
        client, _ = service
        alice, bob = bootstrap(client)
        full_task(client, alice, bob)
        response = client.post("/api/v1/analytics/external-scores",
                               content="alice,90\nbob,85\n", headers=alice)
        assert response.status_code == 201
        doc = client.get("/api/v1/analytics/skills-vs-external", headers=alice).json()
        assert {p["participant"] for p in doc["points"]} == {"alice", "bob"}

    def test_skills_vs_external_without_upload(self, service):
        client, _ = service
        alice, bob = bootstrap(client)
        full_task(client, alice, bob)
        response = client.get("/api/v1/analytics/skills-vs-external", headers=alice)
        assert response.status_code == 400
        assert response.json()["code"] == "NO_OVERLAP"

    def test_openapi_spec_served(self, service):
        client, _ = service
        doc = client.get("/api/v1/spec").json()
        assert doc["info"]["title"] == "scrumsight"
        assert "/api/v1/tasks/{task_id}/assign" in doc["paths"]


class TestDurability:
    def test_restart_preserves_state(self, service, tmp_path):
        client, config = service
        alice, bob = bootstrap(client)
        full_task(client, alice, bob)
        reopened = create_app(config)
        with TestClient(reopened) as client2:
            task = client2.get("/api/v1/tasks/k1", headers=alice).json()
            assert task["status"] == "completed"

    def test_idempotency_key_returns_original(self, service):
        client, _ = service
        alice, _ = bootstrap(client)
        headers = {**alice, "Idempotency-Key": "abc"}
        first = client.post("/api/v1/tasks", json={"team": "t1", "description": "d"},
                            headers=headers)
        second = client.post("/api/v1/tasks", json={"team": "t1", "description": "d"},
                             headers=headers)
        assert first.json()["id"] == second.json()["id"]
        tasks = client.get("/api/v1/tasks", headers=alice).json()
        assert len(tasks) == 1

    def test_state_equals_replay_of_log(self, service):
        from scrumsight import cohort_metrics, compute_skill_report, read_log, replay
        from scrumsight.reporting import skill_report_to_json
        from pathlib import Path

        client, config = service
        alice, bob = bootstrap(client)
        full_task(client, alice, bob)
        served = client.get("/api/v1/analytics/skills", headers=alice).json()
        world = replay(read_log(Path(config.data_dir) / "events.jsonl"))
        expected = json.loads(skill_report_to_json(compute_skill_report(cohort_metrics(world))))
        assert served == expected
