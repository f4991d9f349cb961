"""Seeded generator of synthetic cohorts emitting valid activity-event logs."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from fractions import Fraction
from typing import Any, Optional

from .domain import ensure_utc_ms
from .errors import InvalidConfig
from .events import ActivityEvent, EventKind, format_timestamp

# Single pseudo-random source for reproducibility across platforms: CPython's
# Mersenne Twister as exposed by random.Random(seed).
RNG_ALGORITHM = "python-random-mersenne-twister-19937"

_SKILL_AREAS = ["backend", "frontend", "testing", "ui-design", "architecture", "databases"]


@dataclass(frozen=True)
class ArchetypeSpec:
    name: str
    completion_rate: float
    on_time_rate: float
    quality_mean: float  # in [0, 10]
    collaborator_affinity: float
    mood_volatility: float
    productivity_scale: float

    def validate(self) -> None:
        for prob in (self.completion_rate, self.on_time_rate):
            if not 0 <= prob <= 1:
                raise InvalidConfig(f"archetype {self.name!r}: probabilities must be in [0,1]")
        if not 0 <= self.quality_mean <= 10:
            raise InvalidConfig(f"archetype {self.name!r}: quality_mean must be in [0,10]")
        if min(self.collaborator_affinity, self.mood_volatility, self.productivity_scale) < 0:
            raise InvalidConfig(f"archetype {self.name!r}: rates must be non-negative")


DEFAULT_ARCHETYPES: list[tuple[ArchetypeSpec, float]] = [
    (ArchetypeSpec("expert", 0.95, 0.90, 8.0, 1.5, 0.4, 1.6), 0.25),
    (ArchetypeSpec("steady", 0.80, 0.65, 6.5, 1.0, 0.8, 1.0), 0.35),
    (ArchetypeSpec("volatile", 0.60, 0.45, 5.5, 0.8, 1.8, 0.9), 0.20),
    (ArchetypeSpec("struggling", 0.45, 0.30, 3.5, 0.5, 1.2, 0.5), 0.20),
]


@dataclass(frozen=True)
class GeneratorConfig:
    """Cohort shape; defaults mirror a 21-team, 5-7 member, 12-sprint study."""

    teams: int = 21
    members_per_team: Optional[int] = None  # None: 5..7 chosen per team
    sprints: int = 12
    archetype_mix: list[tuple[ArchetypeSpec, float]] = field(
        default_factory=lambda: list(DEFAULT_ARCHETYPES)
    )
    seed: int = 0
    start: datetime = datetime(2026, 1, 5, 9, 0, tzinfo=timezone.utc)
    sprint_length_days: int = 7

    def validate(self) -> None:
        if self.teams < 1 or self.sprints < 1 or self.sprint_length_days < 1:
            raise InvalidConfig("teams, sprints, and sprint length must be >= 1")
        if self.members_per_team is not None and self.members_per_team < 1:
            raise InvalidConfig("members_per_team must be >= 1")
        if not self.archetype_mix:
            raise InvalidConfig("archetype mix must be nonempty")
        for spec, _ in self.archetype_mix:
            spec.validate()
        total = sum(weight for _, weight in self.archetype_mix)
        if abs(total - 1.0) > 1e-9:
            raise InvalidConfig(f"archetype weights must sum to 1, got {total}")

    def describe(self) -> dict[str, Any]:
        return {
            "teams": self.teams,
            "members_per_team": self.members_per_team,
            "sprints": self.sprints,
            "seed": self.seed,
            "rng_algorithm": RNG_ALGORITHM,
            "archetypes": {spec.name: weight for spec, weight in self.archetype_mix},
        }

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "GeneratorConfig":
        mix = cls().archetype_mix
        if "archetype_mix" in doc:
            mix = [
                (ArchetypeSpec(**entry["archetype"]), entry["weight"])
                for entry in doc["archetype_mix"]
            ]
        kwargs: dict[str, Any] = {k: doc[k] for k in ("teams", "members_per_team", "sprints", "seed", "sprint_length_days") if k in doc}
        if "start" in doc:
            kwargs["start"] = datetime.fromisoformat(doc["start"].replace("Z", "+00:00"))
        return cls(archetype_mix=mix, **kwargs)


class _Emitter:
    def __init__(self):
        self.events: list[ActivityEvent] = []

    def emit(self, timestamp: datetime, actor: str, team: Optional[str], kind: EventKind,
             payload: dict[str, Any]) -> None:
        self.events.append(
            ActivityEvent(
                event_id=len(self.events) + 1,
                timestamp=ensure_utc_ms(timestamp),
                actor=actor,
                team=team,
                kind=kind,
                payload=payload,
            )
        )


def _clamp(value: int, lo: int, hi: int) -> int:
    return max(lo, min(hi, value))


def generate(config: GeneratorConfig) -> list[ActivityEvent]:
    """Produce a replayable activity log; same config and seed yield identical events."""
    return generate_cohort(config)[0]


def generate_cohort(
    config: GeneratorConfig,
) -> tuple[list[ActivityEvent], dict[str, str]]:
    """Like generate(), but also returns each participant's archetype name."""
    config.validate()
    rng = random.Random(config.seed)
    out = _Emitter()
    sprint_len = timedelta(days=config.sprint_length_days)

    specs = [spec for spec, _ in config.archetype_mix]
    weights = [weight for _, weight in config.archetype_mix]

    pid_counter = 0
    task_counter = 0
    register_time = config.start - timedelta(days=2)

    rosters: list[tuple[str, list[str], dict[str, ArchetypeSpec]]] = []
    for t in range(1, config.teams + 1):
        team_id = f"team-{t:02d}"
        size = config.members_per_team or rng.randint(5, 7)
        members = []
        archetypes: dict[str, ArchetypeSpec] = {}
        for _ in range(size):
            pid_counter += 1
            pid = f"p-{pid_counter:03d}"
            members.append(pid)
            archetypes[pid] = rng.choices(specs, weights=weights, k=1)[0]
            profile = {
                area: rng.randint(2, 9)
                for area in sorted(rng.sample(_SKILL_AREAS, k=3))
            }
            out.emit(
                register_time + timedelta(minutes=pid_counter),
                pid,
                None,
                EventKind.REGISTER,
                {"display_name": f"Member {pid_counter}", "skill_profile": profile},
            )
        out.emit(
            config.start - timedelta(hours=12) + timedelta(minutes=t),
            members[0],
            team_id,
            EventKind.CREATE_TEAM,
            {
                "name": f"Team {t}",
                "members": members,
                "product_owner": members[0],
                "stakeholders": [],
            },
        )
        rosters.append((team_id, members, archetypes))

    for team_id, members, archetypes in rosters:
        mood: dict[str, int] = {pid: rng.randint(3, 4) for pid in members}
        for s in range(1, config.sprints + 1):
            sprint_start = config.start + (s - 1) * sprint_len
            sprint_end = sprint_start + sprint_len
            planner = members[0]
            out.emit(
                sprint_start,
                planner,
                team_id,
                EventKind.START_SPRINT,
                {
                    "index": s,
                    "start": format_timestamp(sprint_start),
                    "end": format_timestamp(sprint_end),
                },
            )

            # sprint-planning mood reports
            for pid in members:
                out.emit(
                    sprint_start + timedelta(minutes=5),
                    pid,
                    team_id,
                    EventKind.REPORT_MOOD_BEGIN,
                    {"sprint": s, "value": mood[pid]},
                )

            for pid in members:
                arch = archetypes[pid]
                n_tasks = 1
                if rng.random() < max(0.0, 1.0 - arch.productivity_scale):
                    n_tasks = 0
                elif rng.random() < max(0.0, arch.productivity_scale - 1.0):
                    n_tasks = 2
                for _ in range(n_tasks):
                    task_counter += 1
                    task_id = f"task-{task_counter:05d}"
                    plan_time = sprint_start + timedelta(minutes=30 + task_counter % 60)
                    out.emit(
                        plan_time,
                        pid,
                        team_id,
                        EventKind.PROPOSE_TASK,
                        {
                            "task": task_id,
                            "description": f"Work item {task_counter}",
                            "skills_required": sorted(rng.sample(_SKILL_AREAS, k=2)),
                        },
                    )
                    diff_center = min(9.0, 3.0 + 3.0 * arch.productivity_scale)
                    estimate_time = plan_time + timedelta(minutes=5)
                    time_values: list[Fraction] = []
                    for member in members:
                        out.emit(
                            estimate_time,
                            member,
                            team_id,
                            EventKind.ESTIMATE_DIFFICULTY,
                            {
                                "task": task_id,
                                "value": _clamp(round(rng.gauss(diff_center, 1.5)), 0, 10),
                            },
                        )
                        out.emit(
                            estimate_time,
                            member,
                            team_id,
                            EventKind.ESTIMATE_PRIORITY,
                            {"task": task_id, "value": _clamp(round(rng.gauss(5, 2)), 0, 10)},
                        )
                        days = round(max(0.5, rng.gauss(3.0, 1.0)), 1)
                        time_values.append(Fraction(str(days)))
                        out.emit(
                            estimate_time,
                            member,
                            team_id,
                            EventKind.ESTIMATE_TIME,
                            {"task": task_id, "days": days},
                        )
                    assign_time = estimate_time + timedelta(minutes=10)
                    out.emit(
                        assign_time,
                        planner,
                        team_id,
                        EventKind.ASSIGN_TASK,
                        {"task": task_id, "assignee": pid, "sprint": s},
                    )
                    out.emit(
                        assign_time + timedelta(minutes=1),
                        pid,
                        team_id,
                        EventKind.DECLARE_CONFIDENCE,
                        {"task": task_id, "value": rng.randint(3, 9)},
                    )
                    n_collab = min(
                        len(members) - 1,
                        sum(1 for _ in range(3) if rng.random() < arch.collaborator_affinity / 3),
                    )
                    others = [m for m in members if m != pid]
                    for collaborator in sorted(rng.sample(others, k=n_collab)):
                        out.emit(
                            assign_time + timedelta(minutes=2),
                            planner,
                            team_id,
                            EventKind.ADD_COLLABORATOR,
                            {"task": task_id, "participant": collaborator},
                        )
                    if rng.random() < arch.completion_rate:
                        estimated = sum(time_values) / len(time_values)
                        if rng.random() < arch.on_time_rate:
                            factor = rng.uniform(0.5, 0.98)
                        else:
                            factor = rng.uniform(1.05, 1.8)
                        actual_ms = round(float(estimated) * factor * 86_400_000)
                        complete_time = assign_time + timedelta(milliseconds=actual_ms)
                        out.emit(
                            complete_time,
                            pid,
                            team_id,
                            EventKind.COMPLETE_TASK,
                            {"task": task_id},
                        )
                        reviewers = [m for m in members if m != pid]
                        for reviewer in rng.sample(reviewers, k=min(3, len(reviewers))):
                            out.emit(
                                complete_time + timedelta(minutes=30),
                                reviewer,
                                team_id,
                                EventKind.REVIEW_QUALITY,
                                {
                                    "task": task_id,
                                    "value": _clamp(round(rng.gauss(arch.quality_mean, 1.2)), 0, 10),
                                },
                            )

            # sprint-review mood reports
            for pid in members:
                arch = archetypes[pid]
                end_mood = _clamp(mood[pid] + round(rng.gauss(0, arch.mood_volatility)), 1, 5)
                out.emit(
                    sprint_end - timedelta(minutes=5),
                    pid,
                    team_id,
                    EventKind.REPORT_MOOD_END,
                    {"sprint": s, "value": end_mood},
                )
                mood[pid] = _clamp(end_mood + round(rng.gauss(0, 0.5)), 1, 5)

    assignments = {
        pid: archetypes[pid].name for _, members, archetypes in rosters for pid in members
    }
    return out.events, assignments
