// DOM wiring. All data flows through ApiClient; render.ts produces the markup.

import { ApiClient, ApiError } from "./api.js";
import { renderBoard, renderHeatmap, renderScatter, renderSkillsTable } from "./render.js";
import type { Sprint, Task, Team } from "./types.js";
import { validateDays, validateLikert, validateMood } from "./validation.js";

interface Session {
  client: ApiClient;
  participant: string;
  team: Team;
}

let session: Session | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showError(target: string, message: string | null): void {
  const box = el<HTMLElement>(target);
  box.textContent = message ?? "";
  box.hidden = message === null;
}

function describe(error: unknown): string {
  if (error instanceof ApiError) {
    const detail = error.body.detail ? ` (${JSON.stringify(error.body.detail)})` : "";
    return `${error.body.code}: ${error.body.message}${detail}`;
  }
  return error instanceof Error ? error.message : String(error);
}

async function refreshBoard(): Promise<void> {
  if (!session) return;
  const tasks = await session.client.listTasks(session.team.id);
  el("board-host").innerHTML = renderBoard(tasks);
  const select = el<HTMLSelectElement>("task-select");
  const current = select.value;
  select.innerHTML = tasks
    .map((t) => `<option value="${t.id}">${t.id} — ${t.description}</option>`)
    .join("");
  if (tasks.some((t) => t.id === current)) select.value = current;
  const assignees = el<HTMLSelectElement>("assign-assignee");
  assignees.innerHTML = session.team.members
    .map((m) => `<option value="${m}">${m}</option>`)
    .join("");
}

async function refreshDashboards(): Promise<void> {
  if (!session) return;
  const { client } = session;
  try {
    el("skills-host").innerHTML = renderSkillsTable(await client.skills());
  } catch (error) {
    el("skills-host").textContent = describe(error);
  }
  try {
    el("scatter-host").innerHTML = renderScatter(await client.competenceProductivityScatter());
  } catch (error) {
    el("scatter-host").textContent = describe(error);
  }
  for (const kind of ["collaboration", "mood"] as const) {
    const host = el(`heatmap-${kind}-host`);
    try {
      host.innerHTML = renderHeatmap(await client.heatmap(kind), `${kind} by week`);
    } catch (error) {
      host.textContent = describe(error);
    }
  }
  try {
    el("external-host").innerHTML = renderScatter(await client.skillsVsExternal());
  } catch (error) {
    el("external-host").textContent = describe(error);
  }
}

async function currentSprint(): Promise<Sprint | null> {
  if (!session) return null;
  const sprints = await session.client.listSprints(session.team.id);
  return sprints.length ? sprints[sprints.length - 1] : null;
}

function selectedTask(): string {
  return el<HTMLSelectElement>("task-select").value;
}

function wireLogin(): void {
  el<HTMLFormElement>("login-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    showError("login-error", null);
    const baseUrl = el<HTMLInputElement>("login-url").value.replace(/\/$/, "");
    const participant = el<HTMLInputElement>("login-participant").value.trim();
    const token = el<HTMLInputElement>("login-token").value.trim();
    try {
      const client = new ApiClient(baseUrl, token);
      const teams = await client.listTeams();
      const team = teams.find((t) => t.members.includes(participant)) ?? teams[0];
      if (!team) {
        showError("login-error", "No teams exist yet on this server.");
        return;
      }
      session = { client, participant, team };
      el("login-view").hidden = true;
      el("main-view").hidden = false;
      el("whoami").textContent = `${participant} · ${team.name}`;
      await refreshBoard();
      await refreshDashboards();
    } catch (error) {
      showError("login-error", describe(error));
    }
  });
}

function wirePlanning(): void {
  el<HTMLFormElement>("propose-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    if (!session) return;
    const description = el<HTMLInputElement>("propose-description").value.trim();
    const skills = el<HTMLInputElement>("propose-skills")
      .value.split(",")
      .map((s) => s.trim())
      .filter(Boolean);
    try {
      await session.client.proposeTask(session.team.id, description, skills);
      showError("planning-error", null);
      await refreshBoard();
    } catch (error) {
      showError("planning-error", describe(error));
    }
  });

  el<HTMLFormElement>("estimate-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    if (!session) return;
    const difficulty = Number(el<HTMLInputElement>("estimate-difficulty").value);
    const priority = Number(el<HTMLInputElement>("estimate-priority").value);
    const days = Number(el<HTMLInputElement>("estimate-days").value);
    const problem =
      validateLikert(difficulty, "eleven") ??
      validateLikert(priority, "eleven") ??
      validateDays(days);
    if (problem) {
      showError("planning-error", problem);
      return;
    }
    try {
      const task = selectedTask();
      await session.client.estimate(task, "difficulty", difficulty);
      await session.client.estimate(task, "priority", priority);
      await session.client.estimateTime(task, days);
      showError("planning-error", null);
      await refreshBoard();
    } catch (error) {
      showError("planning-error", describe(error));
    }
  });

  el<HTMLFormElement>("assign-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    if (!session) return;
    const confidence = Number(el<HTMLInputElement>("assign-confidence").value);
    const problem = validateLikert(confidence, "eleven");
    if (problem) {
      showError("planning-error", problem);
      return;
    }
    try {
      const sprint = await currentSprint();
      if (!sprint) {
        showError("planning-error", "Start a sprint before assigning tasks.");
        return;
      }
      const task = selectedTask();
      const assignee = el<HTMLSelectElement>("assign-assignee").value;
      await session.client.assign(task, assignee, sprint.index);
      await session.client.declareConfidence(task, confidence);
      showError("planning-error", null);
      await refreshBoard();
    } catch (error) {
      showError("planning-error", describe(error));
    }
  });
}

function wireReviewAndMood(): void {
  el<HTMLButtonElement>("complete-button").addEventListener("click", async () => {
    if (!session) return;
    try {
      await session.client.complete(selectedTask());
      showError("review-error", null);
      await refreshBoard();
      await refreshDashboards();
    } catch (error) {
      showError("review-error", describe(error));
    }
  });

  el<HTMLFormElement>("review-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    if (!session) return;
    const value = Number(el<HTMLInputElement>("review-value").value);
    const problem = validateLikert(value, "eleven");
    if (problem) {
      showError("review-error", problem);
      return;
    }
    try {
      await session.client.review(selectedTask(), value);
      showError("review-error", null);
      await refreshDashboards();
    } catch (error) {
      showError("review-error", describe(error));
    }
  });

  el<HTMLFormElement>("mood-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    if (!session) return;
    const value = Number(el<HTMLInputElement>("mood-value").value);
    const phase = el<HTMLSelectElement>("mood-phase").value as "begin" | "end";
    const problem = validateMood(value);
    if (problem) {
      showError("mood-error", problem);
      return;
    }
    try {
      const sprint = await currentSprint();
      if (!sprint) {
        showError("mood-error", "No sprint is open for your team.");
        return;
      }
      await session.client.reportMood(sprint.id, phase, value);
      showError("mood-error", null);
      await refreshDashboards();
    } catch (error) {
      showError("mood-error", describe(error));
    }
  });
}

export function boot(): void {
  wireLogin();
  wirePlanning();
  wireReviewAndMood();
  el<HTMLButtonElement>("refresh-button").addEventListener("click", async () => {
    await refreshBoard();
    await refreshDashboards();
  });
}

if (typeof document !== "undefined" && document.getElementById("login-form")) {
  boot();
}
