"""Scrum activity tracking with data-driven skill assessment."""

from .domain import (
    AssignAction,
    CompleteAction,
    LikertScale,
    LikertValue,
    Participant,
    SprintRecord,
    Task,
    TaskStatus,
    Team,
    likert5,
    likert11,
    transition_task,
)
from .events import ActivityEvent, EventKind, WorldState, read_log, replay, write_log
from .metrics import (
    MoodMissingPolicy,
    ParticipantMetrics,
    SkillReport,
    TaskAggregates,
    aggregate_task,
    cohort_metrics,
    compute_collaboration,
    compute_competence,
    compute_mood_deltas,
    compute_productivity,
    compute_skill_report,
    pearson_r,
)
from .reporting import (
    HeatmapMatrix,
    HeatmapMetric,
    ScatterSeries,
    build_competence_productivity_scatter,
    build_heatmap,
    build_skills_vs_external,
)
from .synthgen import ArchetypeSpec, GeneratorConfig, generate, generate_cohort

__version__ = "0.1.0"
