import json
from pathlib import Path

import pytest

from scrumsight import EventKind, GeneratorConfig, generate, read_log, replay, write_log
from scrumsight.events import ActivityEvent, parse_event_line, serialize_event
from scrumsight.errors import CorruptLog, InvalidEvent

from conftest import utc


def ev(event_id, kind, actor, team, payload, day=2):
    return ActivityEvent(
        event_id=event_id, timestamp=utc(day), actor=actor, team=team,
        kind=kind, payload=payload,
    )


REGISTER_TWO = [
    ev(1, EventKind.REGISTER, "p1", None, {"display_name": "One"}),
    ev(2, EventKind.REGISTER, "p2", None, {"display_name": "Two"}),
]


def team_and_task_log():
    return REGISTER_TWO + [
        ev(3, EventKind.CREATE_TEAM, "p1", "t1",
           {"name": "T1", "members": ["p1", "p2"], "product_owner": "p1",
            "stakeholders": []}),
        ev(4, EventKind.PROPOSE_TASK, "p1", "t1",
           {"task": "k1", "description": "d", "skills_required": []}),
    ]


def test_empty_log_replays_to_empty_state():
    world = replay([])
    assert not world.participants and not world.teams and not world.tasks


def test_create_team_and_propose_task():
    world = replay(team_and_task_log())
    assert set(world.teams) == {"t1"}
    assert world.tasks["k1"].status.value == "proposed"
    assert world.tasks["k1"].proposer == "p1"


def test_replay_is_deterministic():
    events = generate(GeneratorConfig(teams=1, members_per_team=5, sprints=3, seed=9))
    assert replay(events) == replay(events)


def test_event_id_gap_is_corrupt():
    events = team_and_task_log()
    events[3] = ev(9, EventKind.PROPOSE_TASK, "p1", "t1",
                   {"task": "k1", "description": "d"})
    with pytest.raises(CorruptLog, match="line 4"):
        replay(events)


def test_invalid_event_carries_offending_index():
    events = REGISTER_TWO + [
        ev(3, EventKind.PROPOSE_TASK, "p1", "t-missing",
           {"task": "k1", "description": "d"}),
    ]
    with pytest.raises(InvalidEvent) as err:
        replay(events)
    assert err.value.index == 3


def test_duplicate_registration_rejected():
    events = [REGISTER_TWO[0], ev(2, EventKind.REGISTER, "p1", None, {"display_name": "x"})]
    with pytest.raises(InvalidEvent):
        replay(events)


def test_estimates_frozen_after_assignment():
    events = team_and_task_log() + [
        ev(5, EventKind.START_SPRINT, "p1", "t1",
           {"index": 1, "start": "2026-01-05T09:00:00.000Z", "end": "2026-01-12T09:00:00.000Z"}),
        ev(6, EventKind.ESTIMATE_DIFFICULTY, "p1", "t1", {"task": "k1", "value": 5}),
        ev(7, EventKind.ESTIMATE_TIME, "p1", "t1", {"task": "k1", "days": 2}),
        ev(8, EventKind.ASSIGN_TASK, "p1", "t1", {"task": "k1", "assignee": "p2", "sprint": 1}, day=6),
        ev(9, EventKind.ESTIMATE_DIFFICULTY, "p2", "t1", {"task": "k1", "value": 9}, day=6),
    ]
    with pytest.raises(InvalidEvent) as err:
        replay(events)
    assert err.value.index == 9


def test_last_estimate_wins_before_assignment():
    events = team_and_task_log() + [
        ev(5, EventKind.ESTIMATE_DIFFICULTY, "p1", "t1", {"task": "k1", "value": 5}),
        ev(6, EventKind.ESTIMATE_DIFFICULTY, "p1", "t1", {"task": "k1", "value": 8}),
    ]
    world = replay(events)
    assert world.tasks["k1"].difficulty_estimates["p1"].value == 8


def test_sprint_indices_must_be_consecutive():
    events = team_and_task_log()[:3] + [
        ev(4, EventKind.START_SPRINT, "p1", "t1",
           {"index": 2, "start": "2026-01-05T09:00:00.000Z", "end": "2026-01-12T09:00:00.000Z"}),
    ]
    with pytest.raises(InvalidEvent):
        replay(events)


def test_mood_report_requires_membership():
    events = team_and_task_log()[:3] + [
        ev(4, EventKind.REGISTER, "p3", None, {"display_name": "Three"}),
    ]
    events += [
        ev(5, EventKind.START_SPRINT, "p1", "t1",
           {"index": 1, "start": "2026-01-05T09:00:00.000Z", "end": "2026-01-12T09:00:00.000Z"}),
        ev(6, EventKind.REPORT_MOOD_BEGIN, "p3", "t1", {"sprint": 1, "value": 3}),
    ]
    with pytest.raises(InvalidEvent):
        replay(events)


class TestWireFormat:
    def test_serialization_round_trip(self):
        event = team_and_task_log()[2]
        assert parse_event_line(serialize_event(event)) == event

    def test_field_names_are_exact(self):
        record = json.loads(serialize_event(REGISTER_TWO[0]))
        assert list(record) == ["event_id", "timestamp", "actor", "team", "kind", "payload"]
        assert record["kind"] == "REGISTER"
        assert record["timestamp"].endswith("Z")

    def test_partial_final_line_is_corrupt(self, tmp_path):
        path = tmp_path / "log.jsonl"
        write_log(path, REGISTER_TWO)
        data = path.read_bytes()
        path.write_bytes(data[:-1])  # drop the final newline
        with pytest.raises(CorruptLog, match="partial line"):
            read_log(path)

    def test_unknown_field_rejected(self):
        record = json.loads(serialize_event(REGISTER_TWO[0]))
        record["extra"] = 1
        with pytest.raises(CorruptLog):
            parse_event_line(json.dumps(record))

    def test_file_round_trip(self, tmp_path):
        events = generate(GeneratorConfig(teams=1, members_per_team=5, sprints=2, seed=3))
        path = tmp_path / "log.jsonl"
        write_log(path, events)
        assert read_log(path) == events
