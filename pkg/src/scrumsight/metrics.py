"""Deterministic skill metrics computed from a replayed world state.

All arithmetic is exact (fractions.Fraction); rounding happens only at
serialization time in the reporting layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from ._tcrit import T_CRITICAL, T_CRITICAL_ASYMPTOTIC
from .domain import Task, TaskStatus, elapsed_days
from .errors import DegenerateInput, EmptyCohort, IncompleteTask, NoEstimates
from .events import WorldState

ONE_THIRD_OF_100 = Fraction(100, 3)


@dataclass(frozen=True)
class TaskAggregates:
    """Cohort-level aggregates for one task: mean difficulty, deadline, actual time, quality."""

    task: str
    difficulty: Fraction  # mean difficulty estimate, in [0, 10]
    priority_mean: Optional[Fraction]
    estimated_days: Fraction
    actual_days: Optional[Fraction]
    quality: Optional[Fraction]  # mean quality review, in [0, 10]


def _mean(values: Sequence[Fraction | int]) -> Fraction:
    return Fraction(sum(Fraction(v) for v in values), len(values))


def aggregate_task(task: Task) -> TaskAggregates:
    """Average the per-member estimates and reviews of a task."""
    if not task.difficulty_estimates:
        raise NoEstimates(f"task {task.id!r} has no difficulty estimates")
    if task.status is not TaskStatus.PROPOSED and not task.time_estimates_days:
        raise NoEstimates(f"task {task.id!r} has no time estimates")
    difficulty = _mean([v.value for v in task.difficulty_estimates.values()])
    priority = (
        _mean([v.value for v in task.priority_estimates.values()])
        if task.priority_estimates
        else None
    )
    estimated = (
        _mean(list(task.time_estimates_days.values()))
        if task.time_estimates_days
        else Fraction(0)
    )
    actual = None
    if task.status is TaskStatus.COMPLETED:
        assert task.assigned_at is not None and task.completed_at is not None
        actual = elapsed_days(task.assigned_at, task.completed_at)
    quality = (
        _mean([v.value for v in task.quality_reviews.values()])
        if task.quality_reviews
        else None
    )
    return TaskAggregates(
        task=task.id,
        difficulty=difficulty,
        priority_mean=priority,
        estimated_days=estimated,
        actual_days=actual,
        quality=quality,
    )


def compute_competence(history: Sequence[TaskAggregates]) -> tuple[Fraction, Fraction, Fraction]:
    """Beta-reputation (alpha, beta, competence) over a completed, reviewed task history.

    A task counts toward alpha when it finished no later than its deadline and
    its mean quality exceeds 5; otherwise it counts toward beta. An empty
    history yields competence 1/2 (maximum uncertainty).
    """
    alpha = Fraction(0)
    beta = Fraction(0)
    for agg in history:
        if agg.actual_days is None or agg.quality is None:
            raise IncompleteTask(f"task {agg.task!r} lacks actual time or quality")
        if agg.actual_days - agg.estimated_days <= 0 and agg.quality > 5:
            alpha += agg.difficulty
        else:
            beta += agg.difficulty
    comp = (alpha + 1) / ((alpha + 1) + (beta + 1))
    return alpha, beta, comp


def competence_history(participant: str, world: WorldState) -> list[TaskAggregates]:
    """Aggregates for the participant's completed, peer-reviewed assignments."""
    history = []
    for task_id in sorted(world.tasks):
        task = world.tasks[task_id]
        if (
            task.assignee == participant
            and task.status is TaskStatus.COMPLETED
            and task.quality_reviews
        ):
            history.append(aggregate_task(task))
    return history


def active_sprint_count(participant: str, world: WorldState, all_sprints: bool = False) -> int:
    """Number of team sprints overlapping the participant's membership."""
    count = 0
    for team_id, team in world.teams.items():
        if participant not in team.members:
            continue
        joined = world.joined_at.get((team_id, participant))
        for sprint in world.team_sprints(team_id).values():
            if all_sprints or joined is None or joined < sprint.end:
                count += 1
    return count


def compute_productivity(
    participant: str, world: WorldState, all_sprints: bool = False
) -> Fraction:
    """Mean completed workload (summed mean difficulty) per active sprint."""
    sprints = active_sprint_count(participant, world, all_sprints=all_sprints)
    if sprints == 0:
        return Fraction(0)
    total = Fraction(0)
    for task in world.tasks.values():
        if task.assignee == participant and task.status is TaskStatus.COMPLETED:
            total += aggregate_task(task).difficulty
    return total / sprints


def compute_collaboration(
    participant: str, world: WorldState
) -> tuple[dict[int, Fraction], Fraction]:
    """Per-sprint mean co-worker count on the participant's tasks, and its overall mean.

    A task belongs to the sprint in which it was assigned; the per-task count
    is the number of people on the task other than the participant.
    """
    per_week_tasks: dict[int, list[int]] = {}
    for task in world.tasks.values():
        if task.sprint_assigned is None:
            continue
        workers = task.collaborators | ({task.assignee} if task.assignee else frozenset())
        if participant not in workers:
            continue
        per_week_tasks.setdefault(task.sprint_assigned, []).append(len(workers) - 1)
    per_week = {week: _mean(counts) for week, counts in sorted(per_week_tasks.items())}
    col = _mean(list(per_week.values())) if per_week else Fraction(0)
    return per_week, col


def compute_mood_deltas(participant: str, world: WorldState) -> dict[int, int]:
    """Intra-sprint mood change (end minus begin) for sprints with both reports."""
    deltas: dict[int, int] = {}
    for team_id in sorted(world.teams):
        if participant not in world.teams[team_id].members:
            continue
        for index, sprint in sorted(world.team_sprints(team_id).items()):
            begin = sprint.mood_begin.get(participant)
            end = sprint.mood_end.get(participant)
            if begin is not None and end is not None and index not in deltas:
                deltas[index] = end.value - begin.value
    return deltas


@dataclass(frozen=True)
class ParticipantMetrics:
    participant: str
    mu: Fraction
    alpha: Fraction
    beta: Fraction
    comp: Fraction
    col: Fraction
    per_week_collaboration: dict[int, Fraction]
    mood_deltas: dict[int, int]
    stab: Optional[Fraction]  # mean |delta|; None when no mood data exists
    history: frozenset[str]


def compute_participant_metrics(
    participant: str, world: WorldState, all_sprints: bool = False
) -> ParticipantMetrics:
    history = competence_history(participant, world)
    alpha, beta, comp = compute_competence(history)
    per_week, col = compute_collaboration(participant, world)
    deltas = compute_mood_deltas(participant, world)
    stab = _mean([abs(d) for d in deltas.values()]) if deltas else None
    return ParticipantMetrics(
        participant=participant,
        mu=compute_productivity(participant, world, all_sprints=all_sprints),
        alpha=alpha,
        beta=beta,
        comp=comp,
        col=col,
        per_week_collaboration=per_week,
        mood_deltas=deltas,
        stab=stab,
        history=frozenset(agg.task for agg in history),
    )


class MoodMissingPolicy(Enum):
    COHORT_WORST = "cohort_worst"
    EXCLUDE = "exclude"


def cohort_metrics(
    world: WorldState, all_sprints: bool = False
) -> list[ParticipantMetrics]:
    """Metrics for every participant holding at least one team membership."""
    members = sorted(
        pid
        for pid in world.participants
        if any(pid in team.members for team in world.teams.values())
    )
    return [compute_participant_metrics(pid, world, all_sprints=all_sprints) for pid in members]


@dataclass(frozen=True)
class ParticipantScores:
    s_mu: Fraction
    s_comp: Fraction
    s_col: Fraction
    s_dm: Fraction
    s_skills: Fraction


@dataclass(frozen=True)
class SkillReport:
    cohort: frozenset[str]
    per_participant: dict[str, ParticipantScores]
    raw: dict[str, ParticipantMetrics]
    ranking: list[str]  # descending skills score, ties broken by id


def _minmax(values: dict[str, Fraction]) -> dict[str, Fraction]:
    lo, hi = min(values.values()), max(values.values())
    if lo == hi:
        # uninformative cohort: everyone lands on the midpoint
        return {pid: Fraction(1, 2) for pid in values}
    return {pid: (v - lo) / (hi - lo) for pid, v in values.items()}


def compute_skill_report(
    cohort: Sequence[ParticipantMetrics],
    mood_missing_policy: MoodMissingPolicy = MoodMissingPolicy.COHORT_WORST,
) -> SkillReport:
    """Aggregate normalized productivity, competence, collaboration, and mood stability.

    Each raw component is min-max normalized over the cohort to [0, 100/3];
    the stability bonus is 4 * (1 - minmax(mean |mood delta|)), so the final
    score (sum of components divided by 5 minus the bonus) lies in [0, 100].
    """
    if mood_missing_policy is MoodMissingPolicy.EXCLUDE:
        cohort = [m for m in cohort if m.stab is not None]
    if not cohort:
        raise EmptyCohort("no participants to score")

    known_stabs = [m.stab for m in cohort if m.stab is not None]
    worst = max(known_stabs) if known_stabs else Fraction(0)
    stabs = {m.participant: (m.stab if m.stab is not None else worst) for m in cohort}

    n_mu = _minmax({m.participant: m.mu for m in cohort})
    n_comp = _minmax({m.participant: m.comp for m in cohort})
    n_col = _minmax({m.participant: m.col for m in cohort})
    n_stab = _minmax(stabs)

    per_participant = {}
    for m in cohort:
        pid = m.participant
        s_mu = n_mu[pid] * ONE_THIRD_OF_100
        s_comp = n_comp[pid] * ONE_THIRD_OF_100
        s_col = n_col[pid] * ONE_THIRD_OF_100
        s_dm = 4 * (1 - n_stab[pid])
        s_skills = (s_mu + s_comp + s_col) / (5 - s_dm)
        per_participant[pid] = ParticipantScores(
            s_mu=s_mu, s_comp=s_comp, s_col=s_col, s_dm=s_dm, s_skills=s_skills
        )

    ranking = sorted(
        per_participant, key=lambda pid: (-per_participant[pid].s_skills, pid)
    )
    return SkillReport(
        cohort=frozenset(per_participant),
        per_participant=per_participant,
        raw={m.participant: m for m in cohort},
        ranking=ranking,
    )


def pearson_r(
    xs: Sequence[Fraction | float | int], ys: Sequence[Fraction | float | int]
) -> tuple[float, frozenset[float]]:
    """Sample Pearson correlation with two-tailed t-test significance thresholds."""
    if len(xs) != len(ys):
        raise DegenerateInput("sequences must have equal length")
    n = len(xs)
    if n < 3:
        raise DegenerateInput("need at least 3 points")
    fx = [Fraction(x) for x in xs]
    fy = [Fraction(y) for y in ys]
    sxx = n * sum(x * x for x in fx) - sum(fx) ** 2
    syy = n * sum(y * y for y in fy) - sum(fy) ** 2
    sxy = n * sum(x * y for x, y in zip(fx, fy)) - sum(fx) * sum(fy)
    if sxx == 0 or syy == 0:
        raise DegenerateInput("constant sequence")
    if sxy * sxy == sxx * syy:
        r = 1.0 if sxy > 0 else -1.0
    else:
        r = float(sxy) / math.sqrt(float(sxx) * float(syy))
        r = max(-1.0, min(1.0, r))
    df = n - 2
    if abs(r) == 1.0:
        t = math.inf
    else:
        t = abs(r) * math.sqrt(df / (1 - r * r))
    critical = T_CRITICAL.get(df, T_CRITICAL_ASYMPTOTIC)
    significant = frozenset(
        level for level, cutoff in zip((0.05, 0.01), critical) if t > cutoff
    )
    return r, significant
