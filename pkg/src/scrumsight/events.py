"""Append-only activity event log: wire format, validation, and deterministic replay."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional

from .domain import (
    AssignAction,
    CompleteAction,
    LikertValue,
    Participant,
    SprintRecord,
    Task,
    Team,
    ensure_utc_ms,
    likert5,
    likert11,
    transition_task,
)
from .errors import CorruptLog, InvalidEvent, ScrumsightError


class EventKind(Enum):
    REGISTER = "REGISTER"
    CREATE_TEAM = "CREATE_TEAM"
    JOIN_TEAM = "JOIN_TEAM"
    ASSIGN_ROLE = "ASSIGN_ROLE"
    START_SPRINT = "START_SPRINT"
    END_SPRINT = "END_SPRINT"
    PROPOSE_TASK = "PROPOSE_TASK"
    ESTIMATE_DIFFICULTY = "ESTIMATE_DIFFICULTY"
    ESTIMATE_PRIORITY = "ESTIMATE_PRIORITY"
    ESTIMATE_TIME = "ESTIMATE_TIME"
    ASSIGN_TASK = "ASSIGN_TASK"
    DECLARE_CONFIDENCE = "DECLARE_CONFIDENCE"
    ADD_COLLABORATOR = "ADD_COLLABORATOR"
    COMPLETE_TASK = "COMPLETE_TASK"
    REVIEW_QUALITY = "REVIEW_QUALITY"
    REPORT_MOOD_BEGIN = "REPORT_MOOD_BEGIN"
    REPORT_MOOD_END = "REPORT_MOOD_END"


@dataclass(frozen=True)
class ActivityEvent:
    event_id: int
    timestamp: datetime
    actor: str
    team: Optional[str]
    kind: EventKind
    payload: dict[str, Any]


def format_timestamp(ts: datetime) -> str:
    ts = ensure_utc_ms(ts)
    return ts.strftime("%Y-%m-%dT%H:%M:%S.") + f"{ts.microsecond // 1000:03d}Z"


def parse_timestamp(text: str) -> datetime:
    if not isinstance(text, str) or not text.endswith("Z"):
        raise ValueError(f"timestamp must be ISO-8601 UTC ending in Z: {text!r}")
    return datetime.strptime(text, "%Y-%m-%dT%H:%M:%S.%fZ").replace(tzinfo=timezone.utc)


def serialize_event(event: ActivityEvent) -> str:
    """Canonical one-line JSON; field order fixed, payload keys sorted."""
    record = {
        "event_id": event.event_id,
        "timestamp": format_timestamp(event.timestamp),
        "actor": event.actor,
        "team": event.team,
        "kind": event.kind.value,
        "payload": {k: event.payload[k] for k in sorted(event.payload)},
    }
    return json.dumps(record, separators=(",", ":"), ensure_ascii=False)


_EVENT_FIELDS = {"event_id", "timestamp", "actor", "team", "kind", "payload"}


def parse_event_line(line: str) -> ActivityEvent:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorruptLog(f"unparseable line: {exc}") from exc
    if not isinstance(record, dict) or set(record) != _EVENT_FIELDS:
        raise CorruptLog(f"event must have exactly fields {sorted(_EVENT_FIELDS)}")
    try:
        kind = EventKind(record["kind"])
        ts = parse_timestamp(record["timestamp"])
    except (ValueError, KeyError) as exc:
        raise CorruptLog(str(exc)) from exc
    event_id = record["event_id"]
    if not isinstance(event_id, int):
        raise CorruptLog(f"event_id must be an integer, got {event_id!r}")
    payload = record["payload"]
    if not isinstance(payload, dict):
        raise CorruptLog("payload must be an object")
    return ActivityEvent(
        event_id=event_id,
        timestamp=ts,
        actor=record["actor"],
        team=record["team"],
        kind=kind,
        payload=payload,
    )


def read_log(path: str | Path) -> list[ActivityEvent]:
    """Read a JSONL event log; files ending in a partial line are corrupt."""
    data = Path(path).read_bytes()
    if not data:
        return []
    if not data.endswith(b"\n"):
        raise CorruptLog("file ends in a partial line")
    return [parse_event_line(line) for line in data.decode("utf-8").splitlines()]


def write_log(path: str | Path, events: Iterable[ActivityEvent]) -> None:
    text = "".join(serialize_event(e) + "\n" for e in events)
    Path(path).write_bytes(text.encode("utf-8"))


@dataclass
class WorldState:
    """Entire replayed state of a deployment."""

    participants: dict[str, Participant] = field(default_factory=dict)
    teams: dict[str, Team] = field(default_factory=dict)
    tasks: dict[str, Task] = field(default_factory=dict)
    sprints: dict[str, dict[int, SprintRecord]] = field(default_factory=dict)
    # (team id, participant id) -> timestamp of joining
    joined_at: dict[tuple[str, str], datetime] = field(default_factory=dict)

    def team_of(self, team_id: Optional[str]) -> Team:
        if team_id is None or team_id not in self.teams:
            raise ScrumsightError(f"unknown team {team_id!r}")
        return self.teams[team_id]

    def task_of(self, task_id: str) -> Task:
        if task_id not in self.tasks:
            raise ScrumsightError(f"unknown task {task_id!r}")
        return self.tasks[task_id]

    def team_sprints(self, team_id: str) -> dict[int, SprintRecord]:
        return self.sprints.get(team_id, {})


def _payload_str(payload: dict, key: str) -> str:
    value = payload.get(key)
    if not isinstance(value, str) or not value:
        raise ValueError(f"payload field {key!r} must be a nonempty string")
    return value


def _payload_int(payload: dict, key: str) -> int:
    value = payload.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"payload field {key!r} must be an integer")
    return value


def _payload_days(payload: dict, key: str) -> Fraction:
    value = payload.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"payload field {key!r} must be a number of days")
    days = Fraction(str(value))
    if days < 0:
        raise ValueError("time estimate must be non-negative")
    return days


def _require_member(world: WorldState, team_id: str, participant: str, what: str) -> None:
    team = world.team_of(team_id)
    if participant not in team.members:
        raise ValueError(f"{what} {participant!r} is not a member of team {team_id!r}")


def apply_event(world: WorldState, event: ActivityEvent) -> None:
    """Apply one validated event in place; raises ValueError/ScrumsightError on bad events."""
    kind = event.kind
    payload = event.payload

    if kind is EventKind.REGISTER:
        if event.actor in world.participants:
            raise ValueError(f"participant {event.actor!r} already registered")
        profile_raw = payload.get("skill_profile", {})
        if not isinstance(profile_raw, dict):
            raise ValueError("skill_profile must be an object")
        profile = {area: likert11(_payload_int(profile_raw, area)) for area in profile_raw}
        world.participants[event.actor] = Participant(
            id=event.actor,
            display_name=_payload_str(payload, "display_name"),
            skill_profile=profile,
        )
        return

    if event.actor not in world.participants:
        raise ValueError(f"unknown actor {event.actor!r}")

    if kind is EventKind.CREATE_TEAM:
        team_id = event.team
        if not team_id:
            raise ValueError("CREATE_TEAM requires a team id")
        if team_id in world.teams:
            raise ValueError(f"team {team_id!r} already exists")
        members = payload.get("members")
        if not isinstance(members, list) or not members:
            raise ValueError("members must be a nonempty list")
        stakeholders = payload.get("stakeholders", [])
        for pid in list(members) + list(stakeholders):
            if pid not in world.participants:
                raise ValueError(f"unknown participant {pid!r}")
        team = Team(
            id=team_id,
            name=_payload_str(payload, "name"),
            members=frozenset(members),
            product_owner=_payload_str(payload, "product_owner"),
            stakeholders=frozenset(stakeholders),
        )
        world.teams[team_id] = team
        for pid in team.members:
            world.joined_at[(team_id, pid)] = event.timestamp
        return

    if kind is EventKind.JOIN_TEAM:
        team = world.team_of(event.team)
        pid = _payload_str(payload, "participant")
        if pid not in world.participants:
            raise ValueError(f"unknown participant {pid!r}")
        if pid in team.members:
            raise ValueError(f"{pid!r} is already a member of {team.id!r}")
        world.teams[team.id] = replace(team, members=team.members | {pid})
        world.joined_at[(team.id, pid)] = event.timestamp
        return

    if kind is EventKind.ASSIGN_ROLE:
        assert event.team is not None
        pid = _payload_str(payload, "participant")
        _require_member(world, event.team, pid, "participant")
        role = _payload_str(payload, "role")
        person = world.participants[pid]
        roles = dict(person.roles)
        roles[event.team] = roles.get(event.team, frozenset()) | {role}
        world.participants[pid] = replace(person, roles=roles)
        return

    if kind is EventKind.START_SPRINT:
        team = world.team_of(event.team)
        index = _payload_int(payload, "index")
        existing = world.sprints.setdefault(team.id, {})
        if index != len(existing) + 1:
            raise ValueError(f"sprint indices must be consecutive; expected {len(existing) + 1}")
        start = parse_timestamp(_payload_str(payload, "start"))
        end = parse_timestamp(_payload_str(payload, "end"))
        existing[index] = SprintRecord(team=team.id, index=index, start=start, end=end)
        return

    if kind is EventKind.END_SPRINT:
        team = world.team_of(event.team)
        index = _payload_int(payload, "index")
        sprint = world.team_sprints(team.id).get(index)
        if sprint is None:
            raise ValueError(f"sprint {index} of team {team.id!r} not started")
        end = parse_timestamp(_payload_str(payload, "end"))
        world.sprints[team.id][index] = replace(sprint, end=end)
        return

    if kind is EventKind.PROPOSE_TASK:
        team = world.team_of(event.team)
        _require_member(world, team.id, event.actor, "proposer")
        task_id = _payload_str(payload, "task")
        if task_id in world.tasks:
            raise ValueError(f"task {task_id!r} already exists")
        skills = payload.get("skills_required", [])
        world.tasks[task_id] = Task(
            id=task_id,
            team=team.id,
            proposer=event.actor,
            description=_payload_str(payload, "description"),
            skills_required=frozenset(skills),
        )
        return

    if kind in (EventKind.ESTIMATE_DIFFICULTY, EventKind.ESTIMATE_PRIORITY, EventKind.ESTIMATE_TIME):
        task = world.task_of(_payload_str(payload, "task"))
        _require_member(world, task.team, event.actor, "estimator")
        if task.status.value != "proposed":
            # estimates are frozen once the task is assigned
            raise ValueError(f"task {task.id!r} is {task.status.value}; estimates are frozen")
        if kind is EventKind.ESTIMATE_DIFFICULTY:
            estimates = dict(task.difficulty_estimates)
            estimates[event.actor] = likert11(_payload_int(payload, "value"))
            world.tasks[task.id] = replace(task, difficulty_estimates=estimates)
        elif kind is EventKind.ESTIMATE_PRIORITY:
            estimates = dict(task.priority_estimates)
            estimates[event.actor] = likert11(_payload_int(payload, "value"))
            world.tasks[task.id] = replace(task, priority_estimates=estimates)
        else:
            times = dict(task.time_estimates_days)
            times[event.actor] = _payload_days(payload, "days")
            world.tasks[task.id] = replace(task, time_estimates_days=times)
        return

    if kind is EventKind.ASSIGN_TASK:
        task = world.task_of(_payload_str(payload, "task"))
        assignee = _payload_str(payload, "assignee")
        _require_member(world, task.team, assignee, "assignee")
        sprint = _payload_int(payload, "sprint")
        if sprint not in world.team_sprints(task.team):
            raise ValueError(f"sprint {sprint} of team {task.team!r} not started")
        if assignee in task.collaborators:
            raise ValueError("assignee is already a collaborator on the task")
        world.tasks[task.id] = transition_task(
            task, AssignAction(assignee=assignee, sprint=sprint, timestamp=event.timestamp)
        )
        return

    if kind is EventKind.DECLARE_CONFIDENCE:
        task = world.task_of(_payload_str(payload, "task"))
        if task.assignee != event.actor:
            raise ValueError("only the assignee declares confidence")
        world.tasks[task.id] = replace(task, confidence=likert11(_payload_int(payload, "value")))
        return

    if kind is EventKind.ADD_COLLABORATOR:
        task = world.task_of(_payload_str(payload, "task"))
        pid = _payload_str(payload, "participant")
        _require_member(world, task.team, pid, "collaborator")
        if task.status.value == "completed":
            raise ValueError("cannot add collaborators to a completed task")
        if pid == task.assignee:
            raise ValueError("assignee cannot be added as a collaborator")
        world.tasks[task.id] = replace(task, collaborators=task.collaborators | {pid})
        return

    if kind is EventKind.COMPLETE_TASK:
        task = world.task_of(_payload_str(payload, "task"))
        if task.assignee is not None and task.assignee != event.actor:
            raise ValueError("only the assignee completes a task")
        world.tasks[task.id] = transition_task(task, CompleteAction(timestamp=event.timestamp))
        return

    if kind is EventKind.REVIEW_QUALITY:
        task = world.task_of(_payload_str(payload, "task"))
        _require_member(world, task.team, event.actor, "reviewer")
        if task.status.value != "completed":
            raise ValueError("only completed tasks can be reviewed")
        reviews = dict(task.quality_reviews)
        reviews[event.actor] = likert11(_payload_int(payload, "value"))
        world.tasks[task.id] = replace(task, quality_reviews=reviews)
        return

    if kind in (EventKind.REPORT_MOOD_BEGIN, EventKind.REPORT_MOOD_END):
        team = world.team_of(event.team)
        _require_member(world, team.id, event.actor, "reporter")
        index = _payload_int(payload, "sprint")
        sprint = world.team_sprints(team.id).get(index)
        if sprint is None:
            raise ValueError(f"sprint {index} of team {team.id!r} not started")
        value = likert5(_payload_int(payload, "value"))
        if kind is EventKind.REPORT_MOOD_BEGIN:
            moods = dict(sprint.mood_begin)
            moods[event.actor] = value
            world.sprints[team.id][index] = replace(sprint, mood_begin=moods)
        else:
            moods = dict(sprint.mood_end)
            moods[event.actor] = value
            world.sprints[team.id][index] = replace(sprint, mood_end=moods)
        return

    raise ValueError(f"unhandled event kind {kind}")


def replay(events: list[ActivityEvent]) -> WorldState:
    """Fold a log into a WorldState; event ids must run 1,2,3,... without gaps."""
    world = WorldState()
    for position, event in enumerate(events, start=1):
        if event.event_id != position:
            raise CorruptLog(
                f"event_id {event.event_id} at line {position}; expected {position}"
            )
        try:
            apply_event(world, event)
        except (ValueError, ScrumsightError) as exc:
            raise InvalidEvent(position, str(exc)) from exc
    return world
