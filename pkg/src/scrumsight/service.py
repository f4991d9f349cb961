"""HTTP service exposing the Scrum workflow and analytics over an event-sourced store."""

from __future__ import annotations

import json
import os
import secrets
import threading
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from fastapi import Body, Depends, FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .domain import Task, ensure_utc_ms
from .errors import (
    EmptyCohort,
    IllegalTransition,
    NoOverlap,
    NoSprints,
    ScrumsightError,
    TimestampOrderViolation,
)
from .events import (
    ActivityEvent,
    EventKind,
    WorldState,
    apply_event,
    format_timestamp,
    parse_timestamp,
    read_log,
    replay,
    serialize_event,
)
from .metrics import MoodMissingPolicy, cohort_metrics, compute_skill_report
from .reporting import (
    HeatmapMetric,
    build_competence_productivity_scatter,
    build_heatmap,
    build_skills_vs_external,
    heatmap_to_json,
    jnum,
    parse_external_scores,
    scatter_to_json,
    skill_report_to_json,
)


@dataclass
class ServiceConfig:
    listen_address: str = "127.0.0.1:8547"
    data_dir: str = "./data"
    token_file: str = ""  # default: <data_dir>/tokens.json
    sprint_length_days: int = 7
    top_k_flag: int = 3
    mood_missing_policy: MoodMissingPolicy = MoodMissingPolicy.COHORT_WORST
    productivity_all_sprints: bool = False
    static_dir: Optional[str] = None  # optional web UI bundle to serve at /

    def __post_init__(self):
        if self.sprint_length_days < 1:
            raise ValueError("sprint_length_days must be >= 1")
        if not self.token_file:
            self.token_file = str(Path(self.data_dir) / "tokens.json")

    @classmethod
    def from_file(cls, path: str | Path) -> "ServiceConfig":
        doc = json.loads(Path(path).read_text("utf-8"))
        if "mood_missing_policy" in doc:
            doc["mood_missing_policy"] = MoodMissingPolicy(doc["mood_missing_policy"])
        return cls(**doc)

    @property
    def host(self) -> str:
        return self.listen_address.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.listen_address.rsplit(":", 1)[1])


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail: Any = None):
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail


class EventStore:
    """Single-writer append-only store; state is always replay(log)."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self.lock = threading.Lock()
        data_dir = Path(config.data_dir)
        data_dir.mkdir(parents=True, exist_ok=True)
        self.log_path = data_dir / "events.jsonl"
        self.events: list[ActivityEvent] = (
            read_log(self.log_path) if self.log_path.exists() else []
        )
        self.world: WorldState = replay(self.events)
        self.expected_size = self.log_path.stat().st_size if self.log_path.exists() else 0
        self.tokens: dict[str, str] = {}
        token_path = Path(config.token_file)
        if token_path.exists():
            self.tokens = json.loads(token_path.read_text("utf-8"))
        self.external_path = data_dir / "external_scores.csv"
        self.idempotency: dict[str, tuple[int, Any]] = {}

    def save_tokens(self) -> None:
        Path(self.config.token_file).write_text(json.dumps(self.tokens, indent=2), "utf-8")

    def append(self, timestamp: datetime, actor: str, team: Optional[str],
               kind: EventKind, payload: dict[str, Any]) -> ActivityEvent:
        """Validate, apply, and durably append one event. Caller holds the lock."""
        event = ActivityEvent(
            event_id=len(self.events) + 1,
            timestamp=ensure_utc_ms(timestamp),
            actor=actor,
            team=team,
            kind=kind,
            payload=payload,
        )
        try:
            apply_event(self.world, event)
        except IllegalTransition as exc:
            raise ApiError(400, "ILLEGAL_TRANSITION", str(exc)) from exc
        except TimestampOrderViolation as exc:
            raise ApiError(400, "TIMESTAMP_ORDER_VIOLATION", str(exc)) from exc
        except (ValueError, ScrumsightError) as exc:
            raise ApiError(400, "VALIDATION", str(exc)) from exc
        on_disk = self.log_path.stat().st_size if self.log_path.exists() else 0
        if on_disk != self.expected_size:
            raise ApiError(409, "EVENT_LOG_CONFLICT", "event log changed on disk")
        line = (serialize_event(event) + "\n").encode("utf-8")
        with open(self.log_path, "ab") as fh:
            fh.write(line)
            fh.flush()
            os.fsync(fh.fileno())
        self.expected_size += len(line)
        self.events.append(event)
        return event

    def external_scores(self) -> dict[str, Fraction]:
        if not self.external_path.exists():
            return {}
        return parse_external_scores(self.external_path.read_text("utf-8"))


def _likert_map(values: dict) -> dict[str, int]:
    return {pid: v.value for pid, v in sorted(values.items())}


def task_to_json(task: Task) -> dict[str, Any]:
    return {
        "id": task.id,
        "team": task.team,
        "proposer": task.proposer,
        "description": task.description,
        "skills_required": sorted(task.skills_required),
        "status": task.status.value,
        "difficulty_estimates": _likert_map(task.difficulty_estimates),
        "priority_estimates": _likert_map(task.priority_estimates),
        "time_estimates_days": {p: float(d) for p, d in sorted(task.time_estimates_days.items())},
        "assignee": task.assignee,
        "collaborators": sorted(task.collaborators),
        "confidence": task.confidence.value if task.confidence else None,
        "assigned_at": format_timestamp(task.assigned_at) if task.assigned_at else None,
        "completed_at": format_timestamp(task.completed_at) if task.completed_at else None,
        "quality_reviews": _likert_map(task.quality_reviews),
        "sprint_assigned": task.sprint_assigned,
    }


def create_app(config: ServiceConfig) -> FastAPI:
    store = EventStore(config)
    app = FastAPI(title="scrumsight", version="0.1.0", openapi_url="/api/v1/openapi.json")
    app.state.store = store
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ApiError)
    async def api_error_handler(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message, "detail": exc.detail},
        )

    def now() -> datetime:
        return ensure_utc_ms(datetime.now(timezone.utc))

    def authed(request: Request) -> str:
        header = request.headers.get("authorization", "")
        if not header.startswith("Bearer "):
            raise ApiError(401, "UNAUTHENTICATED", "missing bearer token")
        token = header[len("Bearer "):]
        actor = store.tokens.get(token)
        if actor is None or actor not in store.world.participants:
            raise ApiError(401, "UNKNOWN_TOKEN", "token does not map to a participant")
        return actor

    def get_team(team_id: str):
        team = store.world.teams.get(team_id)
        if team is None:
            raise ApiError(404, "UNKNOWN_TEAM", f"no team {team_id!r}")
        return team

    def get_task(task_id: str) -> Task:
        task = store.world.tasks.get(task_id)
        if task is None:
            raise ApiError(404, "UNKNOWN_TASK", f"no task {task_id!r}")
        return task

    def require_member(team_id: str, actor: str) -> None:
        if actor not in get_team(team_id).members:
            raise ApiError(403, "NOT_A_MEMBER", f"{actor!r} is not a member of {team_id!r}")

    def body_timestamp(body: dict) -> datetime:
        if body.get("timestamp"):
            try:
                return parse_timestamp(body["timestamp"])
            except ValueError as exc:
                raise ApiError(400, "VALIDATION", str(exc)) from exc
        return now()

    def auto_open_sprints(team_id: str, at: datetime) -> None:
        """Open weekly sprints up to `at`, continuing from the team's last sprint."""
        sprints = store.world.team_sprints(team_id)
        if not sprints:
            return
        length = timedelta(days=config.sprint_length_days)
        last = sprints[max(sprints)]
        while at >= last.end:
            start, end = last.end, last.end + length
            opener = sorted(store.world.teams[team_id].members)[0]
            store.append(
                at, opener, team_id, EventKind.START_SPRINT,
                {"index": last.index + 1, "start": format_timestamp(start),
                 "end": format_timestamp(end)},
            )
            last = store.world.team_sprints(team_id)[last.index + 1]

    # --- identity ----------------------------------------------------------

    @app.post("/api/v1/participants", status_code=201)
    def register(body: dict = Body(...)):
        pid = body.get("id") or f"p-{secrets.token_hex(4)}"
        with store.lock:
            store.append(
                now(), pid, None, EventKind.REGISTER,
                {"display_name": body.get("display_name", pid),
                 "skill_profile": body.get("skill_profile", {})},
            )
            token = secrets.token_hex(16)
            store.tokens[token] = pid
            store.save_tokens()
        return {"participant": participant_json(pid), "token": token}

    def participant_json(pid: str) -> dict:
        person = store.world.participants[pid]
        return {
            "id": person.id,
            "display_name": person.display_name,
            "skill_profile": _likert_map(person.skill_profile),
            "roles": {team: sorted(roles) for team, roles in sorted(person.roles.items())},
        }

    @app.get("/api/v1/participants")
    def list_participants(actor: str = Depends(authed)):
        return [participant_json(pid) for pid in sorted(store.world.participants)]

    @app.get("/api/v1/participants/{pid}")
    def get_participant(pid: str, actor: str = Depends(authed)):
        if pid not in store.world.participants:
            raise ApiError(404, "UNKNOWN_PARTICIPANT", f"no participant {pid!r}")
        return participant_json(pid)

    # --- teams and sprints --------------------------------------------------

    def team_json(team_id: str) -> dict:
        team = store.world.teams[team_id]
        return {
            "id": team.id,
            "name": team.name,
            "members": sorted(team.members),
            "product_owner": team.product_owner,
            "stakeholders": sorted(team.stakeholders),
        }

    @app.post("/api/v1/teams", status_code=201)
    def create_team(body: dict = Body(...), actor: str = Depends(authed)):
        team_id = body.get("id") or f"team-{secrets.token_hex(4)}"
        with store.lock:
            store.append(
                now(), actor, team_id, EventKind.CREATE_TEAM,
                {"name": body.get("name", team_id),
                 "members": body.get("members", [actor]),
                 "product_owner": body.get("product_owner", actor),
                 "stakeholders": body.get("stakeholders", [])},
            )
        return team_json(team_id)

    @app.get("/api/v1/teams")
    def list_teams(actor: str = Depends(authed)):
        return [team_json(tid) for tid in sorted(store.world.teams)]

    @app.get("/api/v1/teams/{team_id}")
    def show_team(team_id: str, actor: str = Depends(authed)):
        get_team(team_id)
        return team_json(team_id)

    @app.post("/api/v1/teams/{team_id}/members", status_code=201)
    def add_member(team_id: str, body: dict = Body(...), actor: str = Depends(authed)):
        require_member(team_id, actor)
        with store.lock:
            store.append(
                now(), actor, team_id, EventKind.JOIN_TEAM,
                {"participant": body.get("participant", "")},
            )
            for role in body.get("roles", []):
                store.append(
                    now(), actor, team_id, EventKind.ASSIGN_ROLE,
                    {"participant": body["participant"], "role": role},
                )
        return team_json(team_id)

    @app.get("/api/v1/teams/{team_id}/members")
    def list_members(team_id: str, actor: str = Depends(authed)):
        return [participant_json(pid) for pid in sorted(get_team(team_id).members)]

    def sprint_json(team_id: str, index: int) -> dict:
        sprint = store.world.team_sprints(team_id)[index]
        return {
            "id": f"{team_id}:{index}",
            "team": team_id,
            "index": index,
            "start": format_timestamp(sprint.start),
            "end": format_timestamp(sprint.end),
            "mood_begin": _likert_map(sprint.mood_begin),
            "mood_end": _likert_map(sprint.mood_end),
        }

    @app.post("/api/v1/teams/{team_id}/sprints", status_code=201)
    def sprint_action(team_id: str, body: dict = Body(...), actor: str = Depends(authed)):
        require_member(team_id, actor)
        action = body.get("action", "start")
        with store.lock:
            sprints = store.world.team_sprints(team_id)
            if action == "start":
                index = len(sprints) + 1
                start = parse_timestamp(body["start"]) if body.get("start") else now()
                end = (
                    parse_timestamp(body["end"])
                    if body.get("end")
                    else start + timedelta(days=config.sprint_length_days)
                )
                store.append(
                    now(), actor, team_id, EventKind.START_SPRINT,
                    {"index": index, "start": format_timestamp(start),
                     "end": format_timestamp(end)},
                )
            elif action == "end":
                if not sprints:
                    raise ApiError(400, "NO_SPRINTS", "no sprint to end")
                index = max(sprints)
                end = parse_timestamp(body["end"]) if body.get("end") else now()
                store.append(
                    now(), actor, team_id, EventKind.END_SPRINT,
                    {"index": index, "end": format_timestamp(end)},
                )
            else:
                raise ApiError(400, "VALIDATION", f"unknown sprint action {action!r}")
        return sprint_json(team_id, index)

    @app.get("/api/v1/teams/{team_id}/sprints")
    def list_sprints(team_id: str, actor: str = Depends(authed)):
        get_team(team_id)
        return [sprint_json(team_id, i) for i in sorted(store.world.team_sprints(team_id))]

    @app.post("/api/v1/sprints/{sprint_id}/mood", status_code=201)
    def report_mood(sprint_id: str, body: dict = Body(...), actor: str = Depends(authed)):
        if ":" not in sprint_id:
            raise ApiError(404, "UNKNOWN_SPRINT", f"sprint ids look like team:index, got {sprint_id!r}")
        team_id, index_text = sprint_id.rsplit(":", 1)
        require_member(team_id, actor)
        index = int(index_text)
        phase = body.get("phase")
        if phase not in ("begin", "end"):
            raise ApiError(400, "VALIDATION", "phase must be 'begin' or 'end'")
        with store.lock:
            auto_open_sprints(team_id, now())
            sprints = store.world.team_sprints(team_id)
            if index not in sprints:
                raise ApiError(404, "UNKNOWN_SPRINT", f"no sprint {index} for {team_id!r}")
            if index != max(sprints):
                raise ApiError(400, "SPRINT_CLOSED",
                               "mood reports are accepted only for the current sprint")
            kind = EventKind.REPORT_MOOD_BEGIN if phase == "begin" else EventKind.REPORT_MOOD_END
            store.append(now(), actor, team_id, kind,
                         {"sprint": index, "value": body.get("value")})
        return sprint_json(team_id, index)

    # --- tasks ---------------------------------------------------------------

    @app.post("/api/v1/tasks", status_code=201)
    def propose_task(body: dict = Body(...), actor: str = Depends(authed)):
        team_id = body.get("team", "")
        require_member(team_id, actor)
        task_id = body.get("id") or f"task-{secrets.token_hex(4)}"
        with store.lock:
            store.append(
                now(), actor, team_id, EventKind.PROPOSE_TASK,
                {"task": task_id, "description": body.get("description", ""),
                 "skills_required": sorted(body.get("skills_required", []))},
            )
        return task_to_json(store.world.tasks[task_id])

    @app.get("/api/v1/tasks")
    def list_tasks(team: Optional[str] = None, actor: str = Depends(authed)):
        tasks = [
            task_to_json(t)
            for tid, t in sorted(store.world.tasks.items())
            if team is None or t.team == team
        ]
        return tasks

    @app.get("/api/v1/tasks/{task_id}")
    def show_task(task_id: str, actor: str = Depends(authed)):
        return task_to_json(get_task(task_id))

    _ESTIMATE_KINDS = {
        "difficulty": EventKind.ESTIMATE_DIFFICULTY,
        "priority": EventKind.ESTIMATE_PRIORITY,
        "time": EventKind.ESTIMATE_TIME,
    }

    @app.post("/api/v1/tasks/{task_id}/estimates", status_code=201)
    def estimate(task_id: str, body: dict = Body(...), actor: str = Depends(authed)):
        task = get_task(task_id)
        require_member(task.team, actor)
        kind = _ESTIMATE_KINDS.get(body.get("kind", ""))
        if kind is None:
            raise ApiError(400, "VALIDATION", "kind must be difficulty, priority, or time")
        payload = {"task": task_id}
        if kind is EventKind.ESTIMATE_TIME:
            payload["days"] = body.get("days")
        else:
            payload["value"] = body.get("value")
        with store.lock:
            store.append(now(), actor, task.team, kind, payload)
        return task_to_json(store.world.tasks[task_id])

    @app.post("/api/v1/tasks/{task_id}/assign", status_code=201)
    def assign(task_id: str, body: dict = Body(...), actor: str = Depends(authed)):
        task = get_task(task_id)
        require_member(task.team, actor)
        with store.lock:
            store.append(
                body_timestamp(body), actor, task.team, EventKind.ASSIGN_TASK,
                {"task": task_id, "assignee": body.get("assignee"),
                 "sprint": body.get("sprint")},
            )
        return task_to_json(store.world.tasks[task_id])

    @app.post("/api/v1/tasks/{task_id}/confidence", status_code=201)
    def declare_confidence(task_id: str, body: dict = Body(...), actor: str = Depends(authed)):
        task = get_task(task_id)
        require_member(task.team, actor)
        with store.lock:
            store.append(now(), actor, task.team, EventKind.DECLARE_CONFIDENCE,
                         {"task": task_id, "value": body.get("value")})
        return task_to_json(store.world.tasks[task_id])

    @app.post("/api/v1/tasks/{task_id}/collaborators", status_code=201)
    def add_collaborator(task_id: str, body: dict = Body(...), actor: str = Depends(authed)):
        task = get_task(task_id)
        require_member(task.team, actor)
        with store.lock:
            store.append(now(), actor, task.team, EventKind.ADD_COLLABORATOR,
                         {"task": task_id, "participant": body.get("participant")})
        return task_to_json(store.world.tasks[task_id])

    @app.post("/api/v1/tasks/{task_id}/complete", status_code=201)
    def complete(task_id: str, body: dict = Body(default={}), actor: str = Depends(authed)):
        task = get_task(task_id)
        require_member(task.team, actor)
        with store.lock:
            store.append(body_timestamp(body), actor, task.team, EventKind.COMPLETE_TASK,
                         {"task": task_id})
        return task_to_json(store.world.tasks[task_id])

    @app.post("/api/v1/tasks/{task_id}/reviews", status_code=201)
    def review(task_id: str, body: dict = Body(...), actor: str = Depends(authed)):
        task = get_task(task_id)
        require_member(task.team, actor)
        with store.lock:
            store.append(now(), actor, task.team, EventKind.REVIEW_QUALITY,
                         {"task": task_id, "value": body.get("value")})
        return task_to_json(store.world.tasks[task_id])

    # --- analytics -----------------------------------------------------------

    def cohort():
        metrics = cohort_metrics(store.world, all_sprints=config.productivity_all_sprints)
        if not metrics:
            raise ApiError(400, "EMPTY_COHORT", "no team members to analyze")
        return metrics

    def skill_report():
        try:
            return compute_skill_report(cohort(), config.mood_missing_policy)
        except EmptyCohort as exc:
            raise ApiError(400, "EMPTY_COHORT", str(exc)) from exc

    @app.get("/api/v1/analytics/skills")
    def analytics_skills(actor: str = Depends(authed)):
        return json.loads(skill_report_to_json(skill_report()))

    @app.get("/api/v1/analytics/scatter/competence-productivity")
    def analytics_scatter(actor: str = Depends(authed)):
        return json.loads(scatter_to_json(build_competence_productivity_scatter(cohort())))

    @app.get("/api/v1/analytics/heatmap/{kind}")
    def analytics_heatmap(kind: str, actor: str = Depends(authed)):
        metric = {
            "collaboration": HeatmapMetric.COLLABORATORS_PER_TASK,
            "mood": HeatmapMetric.INTRA_WEEK_MOOD_CHANGE,
        }.get(kind)
        if metric is None:
            raise ApiError(404, "UNKNOWN_HEATMAP", f"no heatmap kind {kind!r}")
        try:
            matrix = build_heatmap(metric, store.world, cohort())
        except NoSprints as exc:
            raise ApiError(400, "NO_SPRINTS", str(exc)) from exc
        return json.loads(heatmap_to_json(matrix))

    @app.post("/api/v1/analytics/external-scores", status_code=201)
    async def upload_external(request: Request, actor: str = Depends(authed)):
        text = (await request.body()).decode("utf-8")
        try:
            scores = parse_external_scores(text)
        except ValueError as exc:
            raise ApiError(400, "VALIDATION", str(exc)) from exc
        store.external_path.write_text(text, "utf-8")
        return {"participants": sorted(scores)}

    @app.get("/api/v1/analytics/skills-vs-external")
    def analytics_external(actor: str = Depends(authed)):
        scores = store.external_scores()
        try:
            series = build_skills_vs_external(skill_report(), scores, top_k=config.top_k_flag)
        except NoOverlap as exc:
            raise ApiError(400, "NO_OVERLAP", str(exc)) from exc
        return json.loads(scatter_to_json(series))

    @app.get("/api/v1/spec")
    def openapi_spec():
        return app.openapi()

    # idempotent retries: duplicate Idempotency-Key returns the original result
    @app.middleware("http")
    async def idempotency_middleware(request: Request, call_next):
        key = request.headers.get("idempotency-key")
        if not key or request.method != "POST":
            return await call_next(request)
        if key in store.idempotency:
            status, payload = store.idempotency[key]
            return Response(content=payload, status_code=status, media_type="application/json")
        response = await call_next(request)
        if 200 <= response.status_code < 300:
            body = b""
            async for chunk in response.body_iterator:
                body += chunk
            store.idempotency[key] = (response.status_code, body)
            return Response(
                content=body,
                status_code=response.status_code,
                media_type=response.media_type,
                headers=dict(response.headers),
            )
        return response

    if config.static_dir and Path(config.static_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="webui")

    return app


def run(config: ServiceConfig) -> None:
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level="warning")
