"""Domain entities: participants, teams, tasks, sprints, and the task lifecycle."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import IllegalTransition, TimestampOrderViolation


class LikertScale(Enum):
    ELEVEN = "eleven"  # 0..10
    FIVE = "five"  # 1..5


_SCALE_RANGE = {
    LikertScale.ELEVEN: (0, 10),
    LikertScale.FIVE: (1, 5),
}


@dataclass(frozen=True)
class LikertValue:
    value: int
    scale: LikertScale

    def __post_init__(self):
        lo, hi = _SCALE_RANGE[self.scale]
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise ValueError(f"Likert value must be an integer, got {self.value!r}")
        if not lo <= self.value <= hi:
            raise ValueError(
                f"Likert value {self.value} outside [{lo},{hi}] for {self.scale.value} scale"
            )


def likert11(value: int) -> LikertValue:
    return LikertValue(value, LikertScale.ELEVEN)


def likert5(value: int) -> LikertValue:
    return LikertValue(value, LikertScale.FIVE)


def ensure_utc_ms(ts: datetime) -> datetime:
    """Normalize a datetime to UTC with millisecond precision."""
    if ts.tzinfo is None:
        raise ValueError("timestamps must be timezone-aware")
    ts = ts.astimezone(timezone.utc)
    return ts.replace(microsecond=(ts.microsecond // 1000) * 1000)


@dataclass(frozen=True)
class Participant:
    id: str
    display_name: str
    skill_profile: dict[str, LikertValue] = field(default_factory=dict)
    # role names per team id
    roles: dict[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        for area, level in self.skill_profile.items():
            if not area:
                raise ValueError("skill profile keys must be nonempty")
            if level.scale is not LikertScale.ELEVEN:
                raise ValueError("skill profile levels use the 11-point scale")


@dataclass(frozen=True)
class Team:
    id: str
    name: str
    members: frozenset[str]
    product_owner: str
    stakeholders: frozenset[str] = frozenset()

    def __post_init__(self):
        if not self.members:
            raise ValueError("team must have at least one member")
        if self.product_owner not in self.members | self.stakeholders:
            raise ValueError("product owner must be a member or stakeholder")


class TaskStatus(Enum):
    PROPOSED = "proposed"
    ASSIGNED = "assigned"
    COMPLETED = "completed"


@dataclass(frozen=True)
class Task:
    id: str
    team: str
    proposer: str
    description: str
    skills_required: frozenset[str] = frozenset()
    status: TaskStatus = TaskStatus.PROPOSED
    difficulty_estimates: dict[str, LikertValue] = field(default_factory=dict)
    priority_estimates: dict[str, LikertValue] = field(default_factory=dict)
    time_estimates_days: dict[str, Fraction] = field(default_factory=dict)
    assignee: Optional[str] = None
    collaborators: frozenset[str] = frozenset()
    confidence: Optional[LikertValue] = None
    assigned_at: Optional[datetime] = None
    completed_at: Optional[datetime] = None
    quality_reviews: dict[str, LikertValue] = field(default_factory=dict)
    sprint_assigned: Optional[int] = None

    def __post_init__(self):
        if self.status is TaskStatus.PROPOSED:
            if self.assignee or self.assigned_at or self.completed_at:
                raise ValueError("proposed task cannot carry assignment fields")
        elif self.status is TaskStatus.ASSIGNED:
            if self.assignee is None or self.assigned_at is None:
                raise ValueError("assigned task requires assignee and assigned_at")
            if self.completed_at is not None:
                raise ValueError("assigned task cannot have completed_at")
        else:
            if self.assignee is None or self.assigned_at is None or self.completed_at is None:
                raise ValueError("completed task requires all lifecycle timestamps")
            if self.completed_at < self.assigned_at:
                raise ValueError("completed_at must not precede assigned_at")
        if self.assignee is not None and self.assignee in self.collaborators:
            raise ValueError("assignee cannot be their own collaborator")
        if self.confidence is not None and self.status is TaskStatus.PROPOSED:
            raise ValueError("confidence requires an assigned task")
        for days in self.time_estimates_days.values():
            if days < 0:
                raise ValueError("time estimates must be non-negative")


@dataclass(frozen=True)
class AssignAction:
    assignee: str
    sprint: int
    timestamp: datetime


@dataclass(frozen=True)
class CompleteAction:
    timestamp: datetime


def transition_task(task: Task, action: AssignAction | CompleteAction) -> Task:
    """Apply a lifecycle action, enforcing the Proposed -> Assigned -> Completed machine."""
    if isinstance(action, AssignAction):
        if task.status is not TaskStatus.PROPOSED:
            raise IllegalTransition(f"cannot assign a {task.status.value} task")
        if not task.time_estimates_days:
            raise IllegalTransition("cannot assign a task with no time estimates")
        if not task.difficulty_estimates:
            raise IllegalTransition("cannot assign a task with no difficulty estimates")
        return replace(
            task,
            status=TaskStatus.ASSIGNED,
            assignee=action.assignee,
            sprint_assigned=action.sprint,
            assigned_at=ensure_utc_ms(action.timestamp),
        )
    if isinstance(action, CompleteAction):
        if task.status is not TaskStatus.ASSIGNED:
            raise IllegalTransition(f"cannot complete a {task.status.value} task")
        ts = ensure_utc_ms(action.timestamp)
        assert task.assigned_at is not None
        if ts < task.assigned_at:
            raise TimestampOrderViolation("completion precedes assignment")
        return replace(task, status=TaskStatus.COMPLETED, completed_at=ts)
    raise TypeError(f"unknown action {action!r}")


@dataclass(frozen=True)
class SprintRecord:
    team: str
    index: int  # week number, 1-based
    start: datetime
    end: datetime
    mood_begin: dict[str, LikertValue] = field(default_factory=dict)
    mood_end: dict[str, LikertValue] = field(default_factory=dict)

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("sprint index is 1-based")
        if self.end <= self.start:
            raise ValueError("sprint end must follow start")


def elapsed_days(start: datetime, end: datetime) -> Fraction:
    """Exact fractional days between two UTC instants."""
    delta = end - start
    ms = round(delta.total_seconds() * 1000)
    return Fraction(ms, 86_400_000)
