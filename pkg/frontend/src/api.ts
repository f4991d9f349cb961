import type {
  ApiErrorBody,
  Heatmap,
  Participant,
  Scatter,
  SkillsReport,
  Sprint,
  Task,
  Team,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ApiErrorBody,
  ) {
    super(`${body.code}: ${body.message}`);
  }
}

/** Thin client over the documented /api/v1 surface; the UI talks to nothing else. */
export class ApiClient {
  constructor(
    private baseUrl: string,
    private token: string,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {
      Authorization: `Bearer ${this.token}`,
    };
    let payload: string | undefined;
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
      payload = JSON.stringify(body);
    }
    const response = await fetch(`${this.baseUrl}/api/v1${path}`, {
      method,
      headers,
      body: payload,
    });
    if (!response.ok) {
      let errorBody: ApiErrorBody;
      try {
        errorBody = (await response.json()) as ApiErrorBody;
      } catch {
        errorBody = { code: "HTTP_" + response.status, message: response.statusText };
      }
      throw new ApiError(response.status, errorBody);
    }
    return (await response.json()) as T;
  }

  static async register(
    baseUrl: string,
    id: string,
    displayName: string,
  ): Promise<{ participant: Participant; token: string }> {
    const response = await fetch(`${baseUrl}/api/v1/participants`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ id, display_name: displayName }),
    });
    if (!response.ok) throw new ApiError(response.status, await response.json());
    return response.json();
  }

  listTeams(): Promise<Team[]> {
    return this.request("GET", "/teams");
  }

  listTasks(team: string): Promise<Task[]> {
    return this.request("GET", `/tasks?team=${encodeURIComponent(team)}`);
  }

  listSprints(team: string): Promise<Sprint[]> {
    return this.request("GET", `/teams/${team}/sprints`);
  }

  proposeTask(team: string, description: string, skills: string[]): Promise<Task> {
    return this.request("POST", "/tasks", {
      team,
      description,
      skills_required: skills,
    });
  }

  estimate(taskId: string, kind: "difficulty" | "priority", value: number): Promise<Task> {
    return this.request("POST", `/tasks/${taskId}/estimates`, { kind, value });
  }

  estimateTime(taskId: string, days: number): Promise<Task> {
    return this.request("POST", `/tasks/${taskId}/estimates`, { kind: "time", days });
  }

  assign(taskId: string, assignee: string, sprint: number): Promise<Task> {
    return this.request("POST", `/tasks/${taskId}/assign`, { assignee, sprint });
  }

  declareConfidence(taskId: string, value: number): Promise<Task> {
    return this.request("POST", `/tasks/${taskId}/confidence`, { value });
  }

  addCollaborator(taskId: string, participant: string): Promise<Task> {
    return this.request("POST", `/tasks/${taskId}/collaborators`, { participant });
  }

  complete(taskId: string): Promise<Task> {
    return this.request("POST", `/tasks/${taskId}/complete`, {});
  }

  review(taskId: string, value: number): Promise<Task> {
    return this.request("POST", `/tasks/${taskId}/reviews`, { value });
  }

  reportMood(sprintId: string, phase: "begin" | "end", value: number): Promise<Sprint> {
    return this.request("POST", `/sprints/${sprintId}/mood`, { phase, value });
  }

  skills(): Promise<SkillsReport> {
    return this.request("GET", "/analytics/skills");
  }

  competenceProductivityScatter(): Promise<Scatter> {
    return this.request("GET", "/analytics/scatter/competence-productivity");
  }

  heatmap(kind: "collaboration" | "mood"): Promise<Heatmap> {
    return this.request("GET", `/analytics/heatmap/${kind}`);
  }

  skillsVsExternal(): Promise<Scatter> {
    return this.request("GET", "/analytics/skills-vs-external");
  }
}
