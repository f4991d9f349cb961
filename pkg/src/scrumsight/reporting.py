"""Analysis artifacts: heatmap matrices, scatter series, and CSV/JSON export."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegenerateInput, EmptyCohort, NoOverlap, NoSprints
from .events import WorldState
from .metrics import ParticipantMetrics, SkillReport, pearson_r


def round6(value: Fraction | int | float) -> Decimal:
    """Decimal with exactly six fractional digits, half-even."""
    frac = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = 60
        dec = Decimal(frac.numerator) / Decimal(frac.denominator)
        return dec.quantize(Decimal("0.000001"), rounding=ROUND_HALF_EVEN)


def fmt6(value: Optional[Fraction | int | float]) -> str:
    return "" if value is None else str(round6(value))


def jnum(value: Optional[Fraction | int | float]):
    return None if value is None else float(round6(value))


class HeatmapMetric(Enum):
    COLLABORATORS_PER_TASK = "collaborators_per_task"
    INTRA_WEEK_MOOD_CHANGE = "intra_week_mood_change"


@dataclass(frozen=True)
class HeatmapMatrix:
    rows: list[str]  # participant ids, ranked descending by the row statistic
    cols: list[int]  # sprint indices 1..N
    cells: list[list[Optional[Fraction]]]
    metric: HeatmapMetric
    color_domain: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class ScatterSeries:
    points: list[tuple[str, Fraction, Fraction]]
    x_label: str
    y_label: str
    r: Optional[float]
    significant_at: frozenset[float]
    top_flagged: frozenset[str] = frozenset()


def _row_statistic(cells: Sequence[Optional[Fraction]]) -> Fraction:
    defined = [c for c in cells if c is not None]
    return Fraction(sum(defined), len(defined))


def build_heatmap(
    metric: HeatmapMetric, world: WorldState, cohort: Sequence[ParticipantMetrics]
) -> HeatmapMatrix:
    """Weekly per-participant heatmap, rows ranked descending by their mean defined cell."""
    n_sprints = max(
        (max(sprints) for sprints in world.sprints.values() if sprints), default=0
    )
    if n_sprints == 0:
        raise NoSprints("no sprints have been started")
    cols = list(range(1, n_sprints + 1))

    rows_with_cells = []
    for m in cohort:
        if metric is HeatmapMetric.COLLABORATORS_PER_TASK:
            week_values: dict[int, Fraction] = m.per_week_collaboration
        else:
            week_values = {week: Fraction(d) for week, d in m.mood_deltas.items()}
        cells = [week_values.get(week) for week in cols]
        if any(c is not None for c in cells):
            rows_with_cells.append((m.participant, cells))

    rows_with_cells.sort(key=lambda rc: (-_row_statistic(rc[1]), rc[0]))
    rows = [pid for pid, _ in rows_with_cells]
    cells = [row_cells for _, row_cells in rows_with_cells]
    defined = [c for row_cells in cells for c in row_cells if c is not None]
    domain = (min(defined), max(defined)) if defined else (Fraction(0), Fraction(1))
    return HeatmapMatrix(rows=rows, cols=cols, cells=cells, metric=metric, color_domain=domain)


def build_competence_productivity_scatter(
    cohort: Sequence[ParticipantMetrics],
) -> ScatterSeries:
    """Competence on x, productivity on y, one point per participant."""
    if not cohort:
        raise EmptyCohort("no participants")
    points = [(m.participant, m.comp, m.mu) for m in sorted(cohort, key=lambda m: m.participant)]
    r, significant = _try_pearson([p[1] for p in points], [p[2] for p in points])
    return ScatterSeries(
        points=points,
        x_label="competence",
        y_label="productivity",
        r=r,
        significant_at=significant,
    )


def build_skills_vs_external(
    report: SkillReport,
    external_scores: dict[str, Fraction],
    top_k: int = 3,
) -> ScatterSeries:
    """External (e.g. examination) score on x, skills score on y; top-k flagged."""
    overlap = [pid for pid in report.ranking if pid in external_scores]
    if not overlap:
        raise NoOverlap("no participant has both a skills score and an external score")
    points = [
        (pid, Fraction(external_scores[pid]), report.per_participant[pid].s_skills)
        for pid in sorted(overlap)
    ]
    r, significant = _try_pearson([p[1] for p in points], [p[2] for p in points])
    return ScatterSeries(
        points=points,
        x_label="external_score",
        y_label="skills_score",
        r=r,
        significant_at=significant,
        top_flagged=frozenset(overlap[:top_k]),
    )


def _try_pearson(xs, ys) -> tuple[Optional[float], frozenset[float]]:
    try:
        return pearson_r(xs, ys)
    except DegenerateInput:
        return None, frozenset()


# --- serialization ---------------------------------------------------------


def heatmap_to_csv(matrix: HeatmapMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["participant"] + [str(c) for c in matrix.cols])
    for pid, row_cells in zip(matrix.rows, matrix.cells):
        writer.writerow([pid] + [fmt6(c) for c in row_cells])
    return buf.getvalue()


def heatmap_to_json(matrix: HeatmapMatrix) -> str:
    doc = {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "cells": [[jnum(c) for c in row] for row in matrix.cells],
        "metric": matrix.metric.value,
        "color_domain": [jnum(matrix.color_domain[0]), jnum(matrix.color_domain[1])],
    }
    return json.dumps(doc, indent=2) + "\n"


def scatter_to_csv(series: ScatterSeries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    flagged = bool(series.top_flagged)
    header = ["participant", series.x_label, series.y_label]
    if flagged:
        header.append("top_flagged")
    writer.writerow(header)
    for pid, x, y in series.points:
        row = [pid, fmt6(x), fmt6(y)]
        if flagged:
            row.append("1" if pid in series.top_flagged else "0")
        writer.writerow(row)
    return buf.getvalue()


def scatter_to_json(series: ScatterSeries) -> str:
    doc = {
        "points": [
            {"participant": pid, "x": jnum(x), "y": jnum(y)} for pid, x, y in series.points
        ],
        "x_label": series.x_label,
        "y_label": series.y_label,
        "r": None if series.r is None else float(round6(series.r)),
        "significant_at": sorted(series.significant_at),
    }
    if series.top_flagged:
        doc["top_flagged"] = sorted(series.top_flagged)
    return json.dumps(doc, indent=2) + "\n"


def skill_report_to_csv(report: SkillReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        [
            "participant",
            "mu",
            "alpha",
            "beta",
            "comp",
            "col",
            "stab",
            "s_mu",
            "s_comp",
            "s_col",
            "s_dm",
            "s_skills",
        ]
    )
    for pid in report.ranking:
        raw = report.raw[pid]
        scores = report.per_participant[pid]
        writer.writerow(
            [
                pid,
                fmt6(raw.mu),
                fmt6(raw.alpha),
                fmt6(raw.beta),
                fmt6(raw.comp),
                fmt6(raw.col),
                fmt6(raw.stab),
                fmt6(scores.s_mu),
                fmt6(scores.s_comp),
                fmt6(scores.s_col),
                fmt6(scores.s_dm),
                fmt6(scores.s_skills),
            ]
        )
    return buf.getvalue()


def skill_report_to_json(report: SkillReport) -> str:
    doc = {
        "cohort": sorted(report.cohort),
        "ranking": report.ranking,
        "per_participant": {
            pid: {
                "s_mu": jnum(s.s_mu),
                "s_comp": jnum(s.s_comp),
                "s_col": jnum(s.s_col),
                "s_dm": jnum(s.s_dm),
                "s_skills": jnum(s.s_skills),
            }
            for pid, s in report.per_participant.items()
        },
        "raw": {
            pid: {
                "mu": jnum(m.mu),
                "alpha": jnum(m.alpha),
                "beta": jnum(m.beta),
                "comp": jnum(m.comp),
                "col": jnum(m.col),
                "stab": jnum(m.stab),
                "mood_deltas": {str(k): v for k, v in sorted(m.mood_deltas.items())},
                "history": sorted(m.history),
            }
            for pid, m in report.raw.items()
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_external_scores(text: str) -> dict[str, Fraction]:
    """Parse a participant_id,score CSV (header optional)."""
    scores: dict[str, Fraction] = {}
    for row in csv.reader(io.StringIO(text)):
        if not row or row[0] in ("participant", "participant_id"):
            continue
        if len(row) < 2:
            raise ValueError(f"external score row needs two fields: {row!r}")
        scores[row[0]] = Fraction(row[1])
    return scores
