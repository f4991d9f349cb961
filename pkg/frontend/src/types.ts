// Payload shapes served by the /api/v1 endpoints.

export interface Participant {
  id: string;
  display_name: string;
  skill_profile: Record<string, number>;
  roles: Record<string, string[]>;
}

export interface Team {
  id: string;
  name: string;
  members: string[];
  product_owner: string;
  stakeholders: string[];
}

export type TaskStatus = "proposed" | "assigned" | "completed";

export interface Task {
  id: string;
  team: string;
  proposer: string;
  description: string;
  skills_required: string[];
  status: TaskStatus;
  difficulty_estimates: Record<string, number>;
  priority_estimates: Record<string, number>;
  time_estimates_days: Record<string, number>;
  assignee: string | null;
  collaborators: string[];
  confidence: number | null;
  assigned_at: string | null;
  completed_at: string | null;
  quality_reviews: Record<string, number>;
  sprint_assigned: number | null;
}

export interface Sprint {
  id: string;
  team: string;
  index: number;
  start: string;
  end: string;
  mood_begin: Record<string, number>;
  mood_end: Record<string, number>;
}

export interface Heatmap {
  rows: string[];
  cols: number[];
  cells: (number | null)[][];
  metric: string;
  color_domain: [number, number];
}

export interface ScatterPoint {
  participant: string;
  x: number;
  y: number;
}

export interface Scatter {
  points: ScatterPoint[];
  x_label: string;
  y_label: string;
  r: number | null;
  significant_at: number[];
  top_flagged?: string[];
}

export interface ParticipantScores {
  s_mu: number;
  s_comp: number;
  s_col: number;
  s_dm: number;
  s_skills: number;
}

export interface SkillsReport {
  cohort: string[];
  ranking: string[];
  per_participant: Record<string, ParticipantScores>;
  raw: Record<
    string,
    {
      mu: number;
      alpha: number;
      beta: number;
      comp: number;
      col: number;
      stab: number | null;
      mood_deltas: Record<string, number>;
      history: string[];
    }
  >;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  detail?: unknown;
}
