// Pure HTML/SVG builders. Every number shown comes verbatim from a server
// payload field; the only local computation is color/position mapping.

import type { Heatmap, Scatter, SkillsReport, Task } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Linear single-hue scale over the payload's color_domain; darker = higher. */
export function heatmapColor(value: number, domain: [number, number]): string {
  const [lo, hi] = domain;
  const t = hi === lo ? 0.5 : (value - lo) / (hi - lo);
  const lightness = Math.round(90 - 55 * Math.min(1, Math.max(0, t)));
  return `hsl(215, 70%, ${lightness}%)`;
}

export const ABSENT_CELL_COLOR = "#d4d4d4";

export function renderHeatmap(heatmap: Heatmap, title: string): string {
  const header = heatmap.cols.map((c) => `<th>W${c}</th>`).join("");
  const body = heatmap.rows
    .map((pid, i) => {
      const cells = heatmap.cells[i]
        .map((value) => {
          if (value === null) {
            return `<td class="absent" style="background:${ABSENT_CELL_COLOR}"></td>`;
          }
          const color = heatmapColor(value, heatmap.color_domain);
          return `<td data-value="${value}" style="background:${color}" title="${value}">${value}</td>`;
        })
        .join("");
      return `<tr><th>${escapeHtml(pid)}</th>${cells}</tr>`;
    })
    .join("");
  const legend =
    `<span class="legend">scale: ${heatmap.color_domain[0]} – ${heatmap.color_domain[1]}</span>`;
  return (
    `<figure class="heatmap" data-metric="${heatmap.metric}">` +
    `<figcaption>${escapeHtml(title)} ${legend}</figcaption>` +
    `<table><thead><tr><th></th>${header}</tr></thead><tbody>${body}</tbody></table>` +
    `</figure>`
  );
}

export function renderScatter(scatter: Scatter, width = 420, height = 300): string {
  const xs = scatter.points.map((p) => p.x);
  const ys = scatter.points.map((p) => p.y);
  const pad = 30;
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yLo = Math.min(...ys);
  const yHi = Math.max(...ys);
  const sx = (x: number) =>
    xHi === xLo ? width / 2 : pad + ((x - xLo) / (xHi - xLo)) * (width - 2 * pad);
  const sy = (y: number) =>
    yHi === yLo ? height / 2 : height - pad - ((y - yLo) / (yHi - yLo)) * (height - 2 * pad);
  const flagged = new Set(scatter.top_flagged ?? []);
  const dots = scatter.points
    .map((p) => {
      const cls = flagged.has(p.participant) ? "dot flagged" : "dot";
      return (
        `<circle class="${cls}" cx="${sx(p.x)}" cy="${sy(p.y)}" r="4"` +
        ` data-participant="${escapeHtml(p.participant)}" data-x="${p.x}" data-y="${p.y}">` +
        `<title>${escapeHtml(p.participant)}: (${p.x}, ${p.y})</title></circle>`
      );
    })
    .join("");
  const rLabel =
    scatter.r === null
      ? ""
      : `<text x="${width - pad}" y="16" text-anchor="end" class="r">r = ${scatter.r}` +
        (scatter.significant_at.length
          ? ` (p &lt; ${Math.min(...scatter.significant_at)})`
          : "") +
        `</text>`;
  return (
    `<svg class="scatter" viewBox="0 0 ${width} ${height}" role="img">` +
    `<text x="${width / 2}" y="${height - 4}" text-anchor="middle">${escapeHtml(scatter.x_label)}</text>` +
    `<text x="12" y="${height / 2}" transform="rotate(-90 12 ${height / 2})" text-anchor="middle">${escapeHtml(scatter.y_label)}</text>` +
    rLabel +
    dots +
    `</svg>`
  );
}

export function renderSkillsTable(report: SkillsReport, topK = 3): string {
  const rows = report.ranking
    .map((pid, index) => {
      const scores = report.per_participant[pid];
      const cls = index < topK ? ' class="top"' : "";
      return (
        `<tr${cls} data-participant="${escapeHtml(pid)}">` +
        `<td>${index + 1}</td><td>${escapeHtml(pid)}</td>` +
        `<td data-field="s_mu">${scores.s_mu}</td>` +
        `<td data-field="s_comp">${scores.s_comp}</td>` +
        `<td data-field="s_col">${scores.s_col}</td>` +
        `<td data-field="s_dm">${scores.s_dm}</td>` +
        `<td data-field="s_skills">${scores.s_skills}</td></tr>`
      );
    })
    .join("");
  return (
    `<table class="skills"><thead><tr>` +
    `<th>#</th><th>participant</th><th>productivity</th><th>competence</th>` +
    `<th>collaboration</th><th>stability</th><th>skills score</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

const COLUMNS: { status: Task["status"]; label: string }[] = [
  { status: "proposed", label: "Proposed" },
  { status: "assigned", label: "Assigned" },
  { status: "completed", label: "Completed" },
];

export function renderBoard(tasks: Task[]): string {
  const columns = COLUMNS.map(({ status, label }) => {
    const cards = tasks
      .filter((t) => t.status === status)
      .map(
        (t) =>
          `<li class="card" data-task="${escapeHtml(t.id)}">` +
          `<strong>${escapeHtml(t.description)}</strong>` +
          (t.assignee ? `<span class="assignee">${escapeHtml(t.assignee)}</span>` : "") +
          (t.collaborators.length
            ? `<span class="collab">+${t.collaborators.length}</span>`
            : "") +
          `</li>`,
      )
      .join("");
    return `<section class="column" data-status="${status}"><h3>${label}</h3><ul>${cards}</ul></section>`;
  }).join("");
  return `<div class="board">${columns}</div>`;
}
